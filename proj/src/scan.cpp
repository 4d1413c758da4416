#include "qcorr/scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qcorr/error.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/parallel.hpp"

namespace qcorr {

namespace {

constexpr std::uint64_t kDenseStream = 0xD3E5EULL;

struct Accumulator {
  std::uint64_t lower = 0, upper = 0, both = 0, constraint = 0, entangled = 0, vw = 0;
  double min_lower_gap = std::numeric_limits<double>::infinity();
  double min_upper_gap = std::numeric_limits<double>::infinity();
  double min_delta = std::numeric_limits<double>::infinity();
  std::vector<ScanBin> bins;
  std::uint64_t dense_upper = 0;

  explicit Accumulator(int nbins) : bins(static_cast<std::size_t>(nbins)) {
    for (int b = 0; b < nbins; ++b) {
      bins[b].dg_lo = 0.5 * b / nbins;
      bins[b].dg_hi = 0.5 * (b + 1) / nbins;
      bins[b].B_min = std::numeric_limits<double>::infinity();
      bins[b].B_max = -std::numeric_limits<double>::infinity();
    }
  }

  void merge(const Accumulator& o) {
    lower += o.lower;
    upper += o.upper;
    both += o.both;
    constraint += o.constraint;
    entangled += o.entangled;
    vw += o.vw;
    dense_upper += o.dense_upper;
    min_lower_gap = std::min(min_lower_gap, o.min_lower_gap);
    min_upper_gap = std::min(min_upper_gap, o.min_upper_gap);
    min_delta = std::min(min_delta, o.min_delta);
    for (std::size_t b = 0; b < bins.size(); ++b) {
      bins[b].count += o.bins[b].count;
      bins[b].B_min = std::min(bins[b].B_min, o.bins[b].B_min);
      bins[b].B_max = std::max(bins[b].B_max, o.bins[b].B_max);
    }
  }
};

ScanPoint scan_one(const BoundsScanConfig& cfg, std::uint64_t i, Accumulator& acc) {
  const BellDiagonal state = sample_bell_diagonal(mix_seed(cfg.seed, i));
  const auto& c = state.c();
  const double B = chsh_max_bell(c);
  const double D = discord_bell(c);
  const double C = concurrence_x(as_x_state(state));

  const Corridor cor = theorem_corridor(std::clamp(D, 0.0, 0.5));
  const double lower_gap = B - cor.lo;
  const double upper_gap = cor.hi - B;
  const bool low_bad = lower_gap < -cfg.slack;
  const bool up_bad = upper_gap < -cfg.slack;
  acc.lower += low_bad;
  acc.upper += up_bad;
  acc.both += (low_bad || up_bad);
  acc.min_lower_gap = std::min(acc.min_lower_gap, lower_gap);
  acc.min_upper_gap = std::min(acc.min_upper_gap, upper_gap);
  acc.min_delta = std::min(acc.min_delta, 1.0 + 2.0 * D - 0.25 * B * B);
  acc.constraint += !geometric_constraints_hold(c, cfg.slack);

  if (C > 0.0) {
    ++acc.entangled;
    const Corridor vw = vw_corridor(std::min(C, 1.0));
    if (B < vw.lo - cfg.slack || B > vw.hi + cfg.slack) ++acc.vw;
  }

  const int nb = static_cast<int>(acc.bins.size());
  const int b = std::clamp(static_cast<int>(D / 0.5 * nb), 0, nb - 1);
  auto& bin = acc.bins[static_cast<std::size_t>(b)];
  ++bin.count;
  bin.B_min = std::min(bin.B_min, B);
  bin.B_max = std::max(bin.B_max, B);
  return {D, B, C};
}

void dense_one(const BoundsScanConfig& cfg, std::uint64_t i, Accumulator& acc) {
  Rng rng(mix_seed(cfg.seed ^ kDenseStream, i));
  const BlochForm b = to_bloch(sample_dense_state(rng));
  const double B = chsh_max(b).B;
  const double D = geometric_discord(b).D_G;
  if (B > 2.0 * std::sqrt(1.0 + 2.0 * D) + cfg.slack) ++acc.dense_upper;
}

BoundsScanResult finish(const BoundsScanConfig& cfg, Accumulator acc, std::vector<ScanPoint> points) {
  BoundsScanResult r;
  r.samples = cfg.samples;
  r.seed = cfg.seed;
  r.violations = acc.both;
  r.lower_violations = acc.lower;
  r.upper_violations = acc.upper;
  r.constraint_failures = acc.constraint;
  r.entangled = acc.entangled;
  r.vw_violations = acc.vw;
  r.min_lower_gap = acc.min_lower_gap;
  r.min_upper_gap = acc.min_upper_gap;
  r.min_delta = acc.min_delta;
  for (auto& bin : acc.bins)
    if (bin.count == 0) bin.B_min = bin.B_max = 0.0;
  r.bins = std::move(acc.bins);
  r.points = std::move(points);
  for (int k = 0; k <= 100; ++k) {
    const double d = 0.5 * k / 100.0;
    const Corridor cor = theorem_corridor(d);
    r.lower_curve.push_back({d, cor.lo});
    r.upper_curve.push_back({d, cor.hi});
  }
  r.dense_samples = cfg.dense_samples;
  r.dense_upper_violations = acc.dense_upper;
  return r;
}

void check(const BoundsScanConfig& cfg) {
  if (cfg.samples < 1) throw ValidationError("bounds scan needs samples >= 1");
  if (cfg.bins < 1) throw ValidationError("bounds scan needs bins >= 1");
}

}  // namespace

BoundsScanResult bounds_scan_serial(const BoundsScanConfig& cfg) {
  check(cfg);
  Accumulator acc(cfg.bins);
  std::vector<ScanPoint> points(cfg.keep_points ? cfg.samples : 0);
  for (std::uint64_t i = 0; i < cfg.samples; ++i) {
    const ScanPoint p = scan_one(cfg, i, acc);
    if (cfg.keep_points) points[i] = p;
  }
  for (std::uint64_t i = 0; i < cfg.dense_samples; ++i) dense_one(cfg, i, acc);
  return finish(cfg, std::move(acc), std::move(points));
}

BoundsScanResult bounds_scan(const BoundsScanConfig& cfg) {
  check(cfg);
  Accumulator total(cfg.bins);
  std::vector<ScanPoint> points(cfg.keep_points ? cfg.samples : 0);
  const auto n = static_cast<std::int64_t>(cfg.samples);
  const auto nd = static_cast<std::int64_t>(cfg.dense_samples);

#pragma omp parallel num_threads(worker_count())
  {
    Accumulator local(cfg.bins);
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      const ScanPoint p = scan_one(cfg, static_cast<std::uint64_t>(i), local);
      if (cfg.keep_points) points[static_cast<std::size_t>(i)] = p;
    }
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < nd; ++i) dense_one(cfg, static_cast<std::uint64_t>(i), local);
#pragma omp critical(qcorr_scan_merge)
    total.merge(local);
  }
  return finish(cfg, std::move(total), std::move(points));
}

}  // namespace qcorr
