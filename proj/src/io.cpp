#include "qcorr/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "qcorr/error.hpp"

namespace qcorr {

namespace {

const json& require(const json& j, const char* key, const char* context) {
  if (!j.is_object() || !j.contains(key)) {
    std::ostringstream os;
    os << context << ": missing field \"" << key << "\"";
    throw ValidationError(os.str());
  }
  return j.at(key);
}

double number(const json& j, const char* key, const char* context) {
  const json& v = require(j, key, context);
  if (!v.is_number()) {
    std::ostringstream os;
    os << context << ": field \"" << key << "\" must be a number";
    throw ValidationError(os.str());
  }
  return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback, const char* context) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return number(j, key, context);
}

std::string text(const json& j, const char* key, const char* context) {
  const json& v = require(j, key, context);
  if (!v.is_string()) {
    std::ostringstream os;
    os << context << ": field \"" << key << "\" must be a string";
    throw ValidationError(os.str());
  }
  return v.get<std::string>();
}

std::array<double, 4> matrix_row(const json& row, const char* context) {
  if (!row.is_array() || row.size() != 4) {
    std::ostringstream os;
    os << context << ": dense rows must be arrays of 4 numbers";
    throw ValidationError(os.str());
  }
  std::array<double, 4> out{};
  for (std::size_t k = 0; k < 4; ++k) {
    if (!row[k].is_number()) throw ValidationError(std::string(context) + ": non-numeric matrix entry");
    out[k] = row[k].get<double>();
  }
  return out;
}

void read_matrix_part(const json& m, CMat4& out, bool imaginary, const char* context) {
  if (!m.is_array() || m.size() != 4)
    throw ValidationError(std::string(context) + ": dense matrix must have 4 rows");
  for (std::size_t i = 0; i < 4; ++i) {
    const auto row = matrix_row(m[i], context);
    for (std::size_t k = 0; k < 4; ++k) {
      if (imaginary)
        out(i, k).imag(row[k]);
      else
        out(i, k).real(row[k]);
    }
  }
}

}  // namespace

json parse_json(const std::string& text_in, const std::string& source) {
  try {
    return json::parse(text_in);
  } catch (const json::parse_error& e) {
    std::ostringstream os;
    os << source << ": JSON parse error at byte " << e.byte << ": " << e.what();
    throw ParseError(os.str());
  }
}

StateSpec parse_state_spec(const json& j) {
  constexpr const char* ctx = "state spec";
  if (!j.is_object()) throw ValidationError("state spec must be a JSON object");
  const std::string family = text(j, "family", ctx);
  StateSpec s;
  if (family == "werner") {
    s.family = StateFamily::Werner;
    s.werner_c = number(j, "c", ctx);
  } else if (family == "bell_diagonal") {
    s.family = StateFamily::BellDiagonal;
    if (j.contains("c")) {
      const json& c = j.at("c");
      if (!c.is_array() || c.size() != 3) throw ValidationError("state spec: \"c\" must hold 3 numbers");
      for (std::size_t k = 0; k < 3; ++k) {
        if (!c[k].is_number()) throw ValidationError("state spec: \"c\" must hold 3 numbers");
        s.bell_c[k] = c[k].get<double>();
      }
    } else {
      const json& l = require(j, "lambdas", ctx);
      const BellEigenvalues w{number_or(l, "psi_minus", 0.0, ctx), number_or(l, "phi_minus", 0.0, ctx),
                              number_or(l, "phi_plus", 0.0, ctx), number_or(l, "psi_plus", 0.0, ctx)};
      s.bell_c = BellDiagonal::from_eigenvalues(w).c();
    }
  } else if (family == "ewl") {
    s.family = StateFamily::Ewl;
    const std::string kind = text(j, "kind", ctx);
    if (kind == "phi")
      s.ewl.kind = EwlKind::Phi;
    else if (kind == "psi")
      s.ewl.kind = EwlKind::Psi;
    else
      throw ValidationError("state spec: ewl kind must be \"phi\" or \"psi\"");
    s.ewl.r = number(j, "r", ctx);
    if (j.contains("alpha2")) {
      const double a2 = number(j, "alpha2", ctx);
      if (!(a2 >= 0.0 && a2 <= 1.0)) throw ValidationError("state spec: alpha2 outside [0, 1]");
      s.ewl.alpha = std::sqrt(a2);
    } else {
      s.ewl.alpha = number(j, "alpha", ctx);
    }
  } else if (family == "pure") {
    s.family = StateFamily::Pure;
    s.theta = number(j, "theta", ctx);
  } else if (family == "x") {
    s.family = StateFamily::X;
    s.x = {number(j, "d11", ctx), number(j, "d22", ctx), number(j, "d33", ctx),
           number(j, "d44", ctx), number_or(j, "o14", 0.0, ctx), number_or(j, "o23", 0.0, ctx)};
  } else if (family == "dense") {
    s.family = StateFamily::Dense;
    read_matrix_part(require(j, "re", ctx), s.dense, false, ctx);
    if (j.contains("im")) read_matrix_part(j.at("im"), s.dense, true, ctx);
  } else {
    throw ValidationError("state spec: unknown family \"" + family +
                          "\" (werner, bell_diagonal, ewl, pure, x, dense)");
  }
  return s;
}

DensityMatrix build_state(const StateSpec& s) {
  switch (s.family) {
    case StateFamily::Werner: return to_density(werner(s.werner_c));
    case StateFamily::BellDiagonal: return to_density(BellDiagonal(s.bell_c));
    case StateFamily::Ewl: return to_density(ewl(s.ewl));
    case StateFamily::Pure: return pure_schmidt(s.theta);
    case StateFamily::X: return to_density(s.x);
    case StateFamily::Dense: return DensityMatrix(s.dense);
  }
  throw ValidationError("unknown state family");
}

ChannelSpec parse_channel_spec(const json& j) {
  constexpr const char* ctx = "channel spec";
  if (!j.is_object()) throw ValidationError("channel spec must be a JSON object");
  const std::string name = text(j, "channel", ctx);
  const json params = j.contains("parameters") ? j.at("parameters") : json::object();
  if (!params.is_object()) throw ValidationError("channel spec: \"parameters\" must be an object");

  ChannelSpec c;
  if (name == "phase_damping") {
    c.kind = ChannelKind::PhaseDamping;
    c.grid = default_grid(c.kind);
    if (params.contains("p")) {
      const double p = number(params, "p", ctx);
      c.grid = {p, p, 1};
    }
  } else if (name == "amplitude_nonmarkov") {
    c.kind = ChannelKind::AmplitudeNonMarkov;
    c.lam_over_gamma = number(params, "lam_over_gamma", ctx);
    NonMarkovParams{c.lam_over_gamma, 1.0}.validate();
    c.grid = default_grid(c.kind, c.lam_over_gamma);
  } else if (name == "random_field") {
    c.kind = ChannelKind::RandomField;
    c.g = number_or(params, "g", 1.0, ctx);
    c.grid = default_grid(c.kind);
  } else {
    throw ValidationError("channel spec: unknown channel \"" + name +
                          "\" (phase_damping, amplitude_nonmarkov, random_field)");
  }

  if (j.contains("grid")) {
    const json& g = j.at("grid");
    c.grid.start = number(g, "start", ctx);
    c.grid.stop = number(g, "stop", ctx);
    const json& pts = require(g, "points", ctx);
    if (!pts.is_number_integer()) throw ValidationError("channel spec: grid points must be an integer");
    c.grid.points = pts.get<int>();
  }
  c.validate();
  return c;
}

double round12(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
  double out = 0.0;
  std::from_chars(buf, res.ptr, out);
  return out;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";  // also folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, round12(x));
  return std::string(buf, res.ptr);
}

json to_json(const CorrelationReport& r) {
  json j;
  j["B"] = round12(r.B);
  j["m_rho"] = round12(r.m_rho);
  j["u1"] = round12(r.u[0]);
  j["u2"] = round12(r.u[1]);
  j["u3"] = round12(r.u[2]);
  j["D_G"] = round12(r.D_G);
  j["k_max"] = round12(r.k_max);
  j["C"] = r.C ? json(round12(*r.C)) : json(nullptr);
  return j;
}

json to_json(const std::vector<Event>& events) {
  json arr = json::array();
  for (const auto& e : events)
    arr.push_back({{"kind", std::string(to_string(e.kind))}, {"time", round12(e.time)}, {"value", round12(e.value)}});
  return arr;
}

json to_json(const Trajectory& traj) {
  json rows = json::array();
  for (std::size_t i = 0; i < traj.grid.size(); ++i) {
    const auto& r = traj.reports[i];
    rows.push_back({{"t", round12(traj.grid[i])},
                    {"B", round12(r.B)},
                    {"D_G", round12(r.D_G)},
                    {"C", r.C ? json(round12(*r.C)) : json(nullptr)},
                    {"kernel", round12(traj.kernel[i])}});
  }
  return rows;
}

json to_json(const BoundsScanResult& r) {
  json j;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["violations"] = r.violations;
  j["lower_violations"] = r.lower_violations;
  j["upper_violations"] = r.upper_violations;
  j["constraint_failures"] = r.constraint_failures;
  j["entangled"] = r.entangled;
  j["vw_violations"] = r.vw_violations;
  j["min_lower_gap"] = round12(r.min_lower_gap);
  j["min_upper_gap"] = round12(r.min_upper_gap);
  j["min_delta"] = round12(r.min_delta);
  json bins = json::array();
  for (const auto& b : r.bins)
    bins.push_back({{"dg_lo", round12(b.dg_lo)},
                    {"dg_hi", round12(b.dg_hi)},
                    {"count", b.count},
                    {"B_min", round12(b.B_min)},
                    {"B_max", round12(b.B_max)}});
  j["bins"] = std::move(bins);
  auto curve = [](const std::vector<CurvePoint>& pts) {
    json arr = json::array();
    for (const auto& p : pts) arr.push_back({round12(p.D_G), round12(p.B)});
    return arr;
  };
  j["lower_curve"] = curve(r.lower_curve);
  j["upper_curve"] = curve(r.upper_curve);
  j["dense_samples"] = r.dense_samples;
  j["dense_upper_violations"] = r.dense_upper_violations;
  return j;
}

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  for (std::size_t k = 0; k < header.size(); ++k) os << (k ? "," : "") << header[k];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << format_number(row[k]);
    os << '\n';
  }
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  std::vector<std::vector<double>> rows;
  rows.reserve(traj.grid.size());
  for (std::size_t i = 0; i < traj.grid.size(); ++i) {
    const auto& r = traj.reports[i];
    rows.push_back({traj.grid[i], r.B, r.D_G, r.C.value_or(std::nan("")), traj.kernel[i]});
  }
  write_csv(os, {"t", "B", "D_G", "C", "kernel"}, rows);
}

CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  if (!std::getline(is, line)) throw ParseError("CSV is empty");
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) t.header.push_back(cell);
  }
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      const std::size_t end = std::min(line.find(',', pos), line.size());
      double v = 0.0;
      const std::string_view cell(line.data() + pos, end - pos);
      if (cell == "nan") {
        v = std::nan("");
      } else {
        const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size())
          throw ParseError("CSV line " + std::to_string(lineno) + ": bad number \"" + std::string(cell) + "\"");
      }
      row.push_back(v);
      pos = end + 1;
    }
    if (row.size() != t.header.size())
      throw ParseError("CSV line " + std::to_string(lineno) + ": wrong column count");
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace qcorr
