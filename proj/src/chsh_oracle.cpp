// Settings-space search for the CHSH maximum. Independent of the
// eigenvalue route in chsh_max; used to cross-check it.

#include <cmath>
#include <numbers>

#include "qcorr/error.hpp"
#include "qcorr/measures.hpp"

namespace qcorr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kCoarseSamples = 12;
constexpr double kGolden = 0.6180339887498949;

// angles: (theta, phi) for a, a', b, b' in that order.
double signed_chsh(const Mat3& t, const std::array<double, 8>& ang) {
  const Vec3 a = unit_from_angles(ang[0], ang[1]);
  const Vec3 ap = unit_from_angles(ang[2], ang[3]);
  const Vec3 b = unit_from_angles(ang[4], ang[5]);
  const Vec3 bp = unit_from_angles(ang[6], ang[7]);
  return dot(a, t * (b + bp)) + dot(ap, t * (b - bp));
}

// Maximizes along one angle. The objective is A cos + B sin + C in every
// coordinate, so the best coarse sample sits within one spacing of the peak
// and golden-section search is safe on that bracket.
double line_maximize(const Mat3& t, std::array<double, 8>& ang, std::size_t k) {
  auto eval = [&](double x) {
    ang[k] = x;
    return signed_chsh(t, ang);
  };
  const double start = ang[k];
  const double step = kTwoPi / kCoarseSamples;
  double best_x = start, best_f = eval(start);
  for (int i = 1; i < kCoarseSamples; ++i) {
    const double x = start + i * step;
    const double f = eval(x);
    if (f > best_f) {
      best_f = f;
      best_x = x;
    }
  }
  double lo = best_x - step, hi = best_x + step;
  double x1 = hi - kGolden * (hi - lo), x2 = lo + kGolden * (hi - lo);
  double f1 = eval(x1), f2 = eval(x2);
  while (hi - lo > 1e-10) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kGolden * (hi - lo);
      f2 = eval(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kGolden * (hi - lo);
      f1 = eval(x1);
    }
  }
  const double mid = 0.5 * (lo + hi);
  const double f_mid = eval(mid);
  if (f_mid >= best_f) {
    ang[k] = std::remainder(mid, kTwoPi);
    return f_mid;
  }
  ang[k] = best_x;
  return best_f;
}

}  // namespace

double chsh_brute_force(const BlochForm& b, int restarts, std::uint64_t master_seed) {
  if (restarts < 1) throw ValidationError("chsh_brute_force needs at least one restart");
  double best = 0.0;
  for (int run = 0; run < restarts; ++run) {
    Rng rng(mix_seed(master_seed, static_cast<std::uint64_t>(run)));
    std::array<double, 8> ang{};
    for (auto& x : ang) x = kTwoPi * uniform01(rng);
    double value = signed_chsh(b.t, ang);
    for (int sweep = 0; sweep < 400; ++sweep) {
      const double before = value;
      for (std::size_t k = 0; k < ang.size(); ++k) value = line_maximize(b.t, ang, k);
      if (value - before <= 1e-15) break;
    }
    best = std::max(best, std::abs(value));
  }
  return best;
}

}  // namespace qcorr
