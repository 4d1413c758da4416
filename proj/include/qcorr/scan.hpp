#pragma once

// Monte-Carlo scan of (D_G, B) over Bell-diagonal states, checking the
// discord corridor and the concurrence corridor sample by sample.

#include <cstdint>
#include <vector>

namespace qcorr {

struct BoundsScanConfig {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  int bins = 50;              // D_G bins over [0, 1/2]
  bool keep_points = false;   // retain the (D_G, B) cloud
  std::uint64_t dense_samples = 0;  // optional general-state probe of the upper bound
  double slack = 1e-10;
};

struct ScanBin {
  double dg_lo = 0.0;
  double dg_hi = 0.0;
  std::uint64_t count = 0;
  double B_min = 0.0;
  double B_max = 0.0;
};

struct ScanPoint {
  double D_G = 0.0;
  double B = 0.0;
  double C = 0.0;
};

struct CurvePoint {
  double D_G = 0.0;
  double B = 0.0;
};

struct BoundsScanResult {
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t violations = 0;         // outside 4 sqrt(D) <= B <= 2 sqrt(1 + 2D) by > slack
  std::uint64_t lower_violations = 0;
  std::uint64_t upper_violations = 0;
  std::uint64_t constraint_failures = 0;  // |c_i| <= 1, c_i^2 - c_j^2 - c_k^2 >= -1
  std::uint64_t entangled = 0;
  std::uint64_t vw_violations = 0;        // B outside the concurrence corridor (C > 0)
  double min_lower_gap = 0.0;   // min of B - 4 sqrt(D_G)
  double min_upper_gap = 0.0;   // min of 2 sqrt(1 + 2 D_G) - B
  double min_delta = 0.0;       // min of 1 + 2 D_G - B^2 / 4
  std::vector<ScanBin> bins;
  std::vector<ScanPoint> points;
  std::vector<CurvePoint> lower_curve;  // 101 points of B = 4 sqrt(D_G)
  std::vector<CurvePoint> upper_curve;  // 101 points of B = 2 sqrt(1 + 2 D_G)
  std::uint64_t dense_samples = 0;
  std::uint64_t dense_upper_violations = 0;  // informational only
};

/// OpenMP scan; sample i is drawn from mix_seed(seed, i), so the result is
/// identical to bounds_scan_serial for every thread count.
BoundsScanResult bounds_scan(const BoundsScanConfig& cfg);
BoundsScanResult bounds_scan_serial(const BoundsScanConfig& cfg);

}  // namespace qcorr
