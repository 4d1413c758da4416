#pragma once

// Figure-reproduction datasets: one CSV per panel plus manifest.json.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qcorr/io.hpp"

namespace qcorr {

struct FigureOptions {
  std::uint64_t seed = 0;
  std::uint64_t cloud_samples = 20000;  // fig1 scatter size
  int surface_axis_points = 51;         // r or alpha^2 axis of surface panels
  int surface_time_points = 1001;       // time axis of fig4 surfaces
};

std::vector<std::string> figure_names();

/// Writes the panels of `name` into `dir` (created if needed) and returns
/// the manifest that was also written to dir/manifest.json. Throws
/// ValidationError for an unknown name.
json write_figure(std::string_view name, const std::filesystem::path& dir,
                  const FigureOptions& opts = {});

}  // namespace qcorr
