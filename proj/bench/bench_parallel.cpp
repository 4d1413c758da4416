// Times the OpenMP kernels against their serial references and checks that
// both produce identical results.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "qcorr/dynamics.hpp"
#include "qcorr/parallel.hpp"
#include "qcorr/scan.hpp"

using namespace qcorr;

namespace {

template <class F>
double seconds(F&& f, int reps) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t samples = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 200000;
  const int reps = 3;
  std::printf("threads=%d samples=%llu\n", worker_count(), static_cast<unsigned long long>(samples));

  BoundsScanConfig cfg;
  cfg.samples = samples;
  cfg.seed = 1;
  BoundsScanResult par, ser;
  const double tp = seconds([&] { par = bounds_scan(cfg); }, reps);
  const double ts = seconds([&] { ser = bounds_scan_serial(cfg); }, reps);
  const bool scan_same = par.violations == ser.violations && par.entangled == ser.entangled &&
                         par.min_lower_gap == ser.min_lower_gap && par.min_upper_gap == ser.min_upper_gap;
  std::printf("bounds_scan   serial %.4fs  parallel %.4fs  speedup %.2fx  identical=%s\n", ts, tp, ts / tp,
              scan_same ? "yes" : "no");

  ChannelSpec ch;
  ch.kind = ChannelKind::AmplitudeNonMarkov;
  ch.lam_over_gamma = 1e-3;
  ch.grid = default_grid(ch.kind, ch.lam_over_gamma);
  const Evolution evo(to_density(ewl({EwlKind::Phi, 1.0, 0.6})), ch);
  Trajectory a, b;
  const double sp = seconds([&] { a = sweep(evo); }, reps);
  const double ss = seconds([&] { b = sweep_serial(evo); }, reps);
  bool sweep_same = a.grid.size() == b.grid.size();
  for (std::size_t i = 0; sweep_same && i < a.grid.size(); ++i)
    sweep_same = a.reports[i].B == b.reports[i].B && a.reports[i].D_G == b.reports[i].D_G;
  std::printf("sweep(%zu pts) serial %.4fs  parallel %.4fs  speedup %.2fx  identical=%s\n", a.grid.size(), ss, sp,
              ss / sp, sweep_same ? "yes" : "no");
  return scan_same && sweep_same ? 0 : 1;
}
