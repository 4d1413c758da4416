#pragma once

// JSON state/channel specifications and CSV/JSON serialization.
//
// State spec:   {"family": "werner"|"bell_diagonal"|"ewl"|"pure"|"x"|"dense", ...}
// Channel spec: {"channel": "phase_damping"|"amplitude_nonmarkov"|"random_field",
//                "parameters": {...}, "grid": {"start", "stop", "points"}}

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qcorr/dynamics.hpp"
#include "qcorr/scan.hpp"

namespace qcorr {

using nlohmann::json;

enum class StateFamily { Werner, BellDiagonal, Ewl, Pure, X, Dense };

struct StateSpec {
  StateFamily family = StateFamily::Werner;
  double werner_c = 0.0;
  CorrelationTriple bell_c{};
  EWLParams ewl;
  double theta = 0.0;
  XState x;
  CMat4 dense;
};

/// Parses text into JSON; throws ParseError carrying the byte offset.
json parse_json(const std::string& text, const std::string& source);

/// Throws ValidationError for missing or ill-typed fields.
StateSpec parse_state_spec(const json& j);
ChannelSpec parse_channel_spec(const json& j);

/// Throws ValidationError / UnphysicalStateError when the spec is not a state.
DensityMatrix build_state(const StateSpec& spec);

/// Shortest representation of `x` rounded to 12 significant digits,
/// independent of the C locale.
std::string format_number(double x);
/// `x` rounded to 12 significant digits.
double round12(double x);

json to_json(const CorrelationReport& r);
json to_json(const std::vector<Event>& events);
json to_json(const Trajectory& traj);
json to_json(const BoundsScanResult& r);

/// Header "t,B,D_G,C,kernel"; LF line endings.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

/// Writes a CSV with the given header and rows of numbers.
void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Reads back a numeric CSV written by write_csv; throws ParseError.
CsvTable read_csv(std::istream& is);

}  // namespace qcorr
