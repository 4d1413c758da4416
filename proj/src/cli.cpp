#include "qcorr/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "qcorr/error.hpp"
#include "qcorr/figures.hpp"
#include "qcorr/io.hpp"

namespace qcorr::cli {

namespace {

struct RunConfig {
  std::string command;
  std::optional<json> state;
  std::optional<json> channel;
  std::uint64_t samples = 100000;
  std::uint64_t dense_samples = 0;
  std::uint64_t seed = 0;
  std::string output;
  std::string points;
  std::string format = "csv";
  std::string figure;
};

struct Flags {
  std::string config, state, channel, out, format, points, figure;
  std::optional<std::uint64_t> samples, seed, dense_samples;
};

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ValidationError("cannot read " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

// Accepts either a path or an inline JSON object.
json load_json_arg(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return parse_json(arg, "inline JSON");
  return parse_json(slurp(arg), arg);
}

json resolve_section(const json& v) {
  if (v.is_string()) return load_json_arg(v.get<std::string>());
  return v;
}

RunConfig build_config(const std::string& command, const Flags& f) {
  RunConfig c;
  c.command = command;
  if (!f.config.empty()) {
    const json cfg = load_json_arg(f.config);
    if (!cfg.is_object()) throw ValidationError("config file must hold a JSON object");
    if (cfg.contains("state")) c.state = resolve_section(cfg.at("state"));
    if (cfg.contains("channel")) c.channel = resolve_section(cfg.at("channel"));
    auto count = [&](const char* key, std::uint64_t& dst) {
      if (!cfg.contains(key)) return;
      if (!cfg.at(key).is_number_unsigned()) throw ValidationError(std::string("config: ") + key + " must be a non-negative integer");
      dst = cfg.at(key).get<std::uint64_t>();
    };
    count("samples", c.samples);
    count("dense_samples", c.dense_samples);
    count("seed", c.seed);
    auto str = [&](const char* key, std::string& dst) {
      if (!cfg.contains(key)) return;
      if (!cfg.at(key).is_string()) throw ValidationError(std::string("config: ") + key + " must be a string");
      dst = cfg.at(key).get<std::string>();
    };
    str("output", c.output);
    str("points", c.points);
    str("format", c.format);
    str("figure", c.figure);
  }
  if (!f.state.empty()) c.state = load_json_arg(f.state);
  if (!f.channel.empty()) c.channel = load_json_arg(f.channel);
  if (f.samples) c.samples = *f.samples;
  if (f.dense_samples) c.dense_samples = *f.dense_samples;
  if (f.seed) c.seed = *f.seed;
  if (!f.out.empty()) c.output = f.out;
  if (!f.points.empty()) c.points = f.points;
  if (!f.format.empty()) c.format = f.format;
  if (!f.figure.empty()) c.figure = f.figure;
  if (c.format != "csv" && c.format != "json") throw ValidationError("format must be csv or json");
  return c;
}

// Writes `body` to the configured output file, or to `out`.
void emit(const RunConfig& c, std::ostream& out, const std::string& body) {
  if (c.output.empty()) {
    out << body;
    return;
  }
  std::ofstream os(c.output, std::ios::binary);
  if (!os) throw ValidationError("cannot write " + c.output);
  os << body;
}

DensityMatrix require_state(const RunConfig& c) {
  if (!c.state) throw ValidationError(c.command + ": a state spec is required (--state)");
  return build_state(parse_state_spec(*c.state));
}

ChannelSpec require_channel(const RunConfig& c) {
  if (!c.channel) throw ValidationError(c.command + ": a channel spec is required (--channel)");
  return parse_channel_spec(*c.channel);
}

int cmd_measure(const RunConfig& c, std::ostream& out) {
  const CorrelationReport rep = correlation_report(require_state(c));
  if (c.format == "json") {
    emit(c, out, to_json(rep).dump(2) + "\n");
  } else {
    std::ostringstream os;
    write_csv(os, {"B", "m_rho", "u1", "u2", "u3", "D_G", "k_max", "C"},
              {{rep.B, rep.m_rho, rep.u[0], rep.u[1], rep.u[2], rep.D_G, rep.k_max, rep.C.value_or(std::nan(""))}});
    emit(c, out, os.str());
  }
  return kOk;
}

int cmd_bounds_scan(const RunConfig& c, std::ostream& out) {
  BoundsScanConfig cfg;
  cfg.samples = c.samples;
  cfg.seed = c.seed;
  cfg.keep_points = !c.points.empty();
  cfg.dense_samples = c.dense_samples;
  const BoundsScanResult r = bounds_scan(cfg);
  if (!c.points.empty()) {
    std::ofstream os(c.points, std::ios::binary);
    if (!os) throw ValidationError("cannot write " + c.points);
    std::vector<std::vector<double>> rows;
    rows.reserve(r.points.size());
    for (const auto& p : r.points) rows.push_back({p.D_G, p.B, p.C});
    write_csv(os, {"D_G", "B", "C"}, rows);
  }
  emit(c, out, to_json(r).dump(2) + "\n");
  return kOk;
}

Evolution make_evolution(const RunConfig& c) { return Evolution(require_state(c), require_channel(c)); }

int cmd_evolve(const RunConfig& c, std::ostream& out) {
  const Trajectory traj = sweep(make_evolution(c));
  if (c.format == "json") {
    emit(c, out, to_json(traj).dump(2) + "\n");
  } else {
    std::ostringstream os;
    write_trajectory_csv(os, traj);
    emit(c, out, os.str());
  }
  return kOk;
}

int cmd_events(const RunConfig& c, std::ostream& out) {
  const Evolution evo = make_evolution(c);
  const Trajectory traj = sweep(evo);
  EventRefinement refine;
  refine.discord = [&evo](double t) { return correlation_report(evo.at(t).state).D_G; };
  emit(c, out, to_json(detect_events(traj, refine)).dump(2) + "\n");
  return kOk;
}

int cmd_figure(const RunConfig& c, std::ostream& out) {
  if (c.figure.empty()) {
    std::string valid;
    for (const auto& n : figure_names()) valid += (valid.empty() ? "" : ", ") + n;
    throw ValidationError("figure: a figure name is required; valid names: " + valid);
  }
  FigureOptions opts;
  opts.seed = c.seed;
  const std::string dir = c.output.empty() ? "figures/" + c.figure : c.output;
  const json manifest = write_figure(c.figure, dir, opts);
  out << manifest.dump(2) << "\n";
  return kOk;
}

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON run configuration (path or inline object)");
  sub->add_option("--state", f.state, "state spec JSON (path or inline object)");
  sub->add_option("--channel", f.channel, "channel spec JSON (path or inline object)");
  sub->add_option("--samples", f.samples, "number of sampled states");
  sub->add_option("--seed", f.seed, "64-bit seed");
  sub->add_option("--out", f.out, "output path (directory for figure)");
  sub->add_option("--format", f.format, "csv or json");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"qcorr: CHSH violation, geometric discord and concurrence of two-qubit states"};
  app.require_subcommand(1);
  Flags f;

  auto* measure = app.add_subcommand("measure", "correlation report for a state");
  add_common(measure, f);
  auto* scan = app.add_subcommand("bounds-scan", "sample Bell-diagonal states and check the B vs D_G corridor");
  add_common(scan, f);
  scan->add_option("--points", f.points, "write the (D_G, B, C) cloud to this CSV");
  scan->add_option("--dense-samples", f.dense_samples, "also probe the upper bound on general states");
  auto* evolve = app.add_subcommand("evolve", "trajectory of a state through a channel");
  add_common(evolve, f);
  auto* events = app.add_subcommand("events", "violation death/revival, discord zeros and maxima");
  add_common(events, f);
  auto* figure = app.add_subcommand("figure", "write figure datasets");
  add_common(figure, f);
  figure->add_option("name", f.figure, "fig1 .. fig6");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "qcorr: " << e.what() << "\n";
    return kParseError;
  }

  try {
    const std::string command = app.get_subcommands().front()->get_name();
    const RunConfig c = build_config(command, f);
    if (command == "measure") return cmd_measure(c, out);
    if (command == "bounds-scan") return cmd_bounds_scan(c, out);
    if (command == "evolve") return cmd_evolve(c, out);
    if (command == "events") return cmd_events(c, out);
    return cmd_figure(c, out);
  } catch (const ParseError& e) {
    err << "qcorr: " << e.what() << "\n";
    return kParseError;
  } catch (const UnphysicalStateError& e) {
    err << "qcorr: invariant violated (PSD, min eigenvalue " << e.min_eigenvalue() << "): " << e.what() << "\n";
    return kDomainError;
  } catch (const ValidationError& e) {
    err << "qcorr: invariant violated: " << e.what() << "\n";
    return kDomainError;
  } catch (const std::exception& e) {
    err << "qcorr: " << e.what() << "\n";
    return kDomainError;
  }
}

}  // namespace qcorr::cli
