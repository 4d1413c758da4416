#include "qcorr/figures.hpp"

#include <fstream>

#include "qcorr/error.hpp"

namespace qcorr {

namespace {

namespace fs = std::filesystem;

std::vector<double> linspace(double a, double b, int n) {
  return Grid{a, b, n}.values();
}

json grid_json(const Grid& g) { return {{"start", round12(g.start)}, {"stop", round12(g.stop)}, {"points", g.points}}; }

class FigureWriter {
 public:
  FigureWriter(std::string name, fs::path dir) : name_(std::move(name)), dir_(std::move(dir)) {
    fs::create_directories(dir_);
    manifest_ = {{"figure", name_}, {"panels", json::array()}};
  }

  void panel(const std::string& id, const std::vector<std::string>& header,
             const std::vector<std::vector<double>>& rows, json parameters) {
    const std::string file = name_ + "_" + id + ".csv";
    std::ofstream os(dir_ / file, std::ios::binary);
    if (!os) throw ValidationError("cannot write " + (dir_ / file).string());
    write_csv(os, header, rows);
    manifest_["panels"].push_back(
        {{"panel", id}, {"file", file}, {"columns", header}, {"parameters", std::move(parameters)}});
  }

  json finish(json extra) {
    for (auto& [k, v] : extra.items()) manifest_[k] = v;
    std::ofstream os(dir_ / "manifest.json", std::ios::binary);
    os << manifest_.dump(2) << '\n';
    return manifest_;
  }

 private:
  std::string name_;
  fs::path dir_;
  json manifest_;
};

DensityMatrix ewl_state(EwlKind kind, double r, double alpha2) {
  return to_density(ewl({kind, r, std::sqrt(alpha2)}));
}

const char* kind_name(EwlKind k) { return k == EwlKind::Phi ? "phi" : "psi"; }

json fig1(const fs::path& dir, const FigureOptions& o) {
  FigureWriter w("fig1", dir);
  BoundsScanConfig cfg;
  cfg.samples = o.cloud_samples;
  cfg.seed = o.seed;
  cfg.keep_points = true;
  const BoundsScanResult r = bounds_scan(cfg);
  std::vector<std::vector<double>> cloud, lower, upper;
  for (const auto& p : r.points) cloud.push_back({p.D_G, p.B});
  for (const auto& p : r.lower_curve) lower.push_back({p.D_G, p.B});
  for (const auto& p : r.upper_curve) upper.push_back({p.D_G, p.B});
  w.panel("cloud", {"D_G", "B"}, cloud, {{"samples", cfg.samples}, {"seed", cfg.seed}, {"family", "bell_diagonal"}});
  w.panel("lower", {"D_G", "B"}, lower, {{"curve", "B = 4 sqrt(D_G)"}, {"attained_by", "werner"}});
  w.panel("upper", {"D_G", "B"}, upper, {{"curve", "B = 2 sqrt(1 + 2 D_G)"}, {"attained_by", "rank-2 bell diagonal"}});
  return w.finish({{"violations", r.violations}});
}

json fig2(const fs::path& dir, const FigureOptions& o) {
  FigureWriter w("fig2", dir);
  const auto axis = linspace(0.0, 1.0, o.surface_axis_points);
  std::vector<std::vector<double>> b_rows, d_rows;
  for (double a2 : axis)
    for (double r : axis) {
      const CorrelationReport rep = correlation_report(ewl_state(EwlKind::Phi, r, a2));
      b_rows.push_back({a2, r, rep.B});
      d_rows.push_back({a2, r, rep.D_G});
    }
  const json prm = {{"state", "ewl"}, {"kind", "phi"}, {"axis_points", o.surface_axis_points}};
  w.panel("a", {"alpha2", "r", "B"}, b_rows, prm);
  w.panel("b", {"alpha2", "r", "D_G"}, d_rows, prm);
  return w.finish({});
}

// Surface over (time, axis) where `make` builds the initial state for one
// axis value.
template <class Make>
void surface(const ChannelSpec& ch, const std::vector<double>& axis, Make make,
             std::vector<std::vector<double>>& b_rows, std::vector<std::vector<double>>& d_rows) {
  for (double v : axis) {
    const Trajectory traj = sweep(Evolution(make(v), ch));
    for (std::size_t i = 0; i < traj.grid.size(); ++i) {
      b_rows.push_back({traj.grid[i], v, traj.reports[i].B});
      d_rows.push_back({traj.grid[i], v, traj.reports[i].D_G});
    }
  }
}

json fig3(const fs::path& dir, const FigureOptions& o) {
  FigureWriter w("fig3", dir);
  ChannelSpec ch;
  ch.kind = ChannelKind::PhaseDamping;
  ch.grid = default_grid(ch.kind);
  const auto axis = linspace(0.0, 1.0, o.surface_axis_points);

  std::vector<std::vector<double>> a, b, c, d;
  surface(ch, axis, [](double r) { return ewl_state(EwlKind::Phi, r, 0.5); }, a, b);
  surface(ch, axis, [](double a2) { return ewl_state(EwlKind::Phi, 1.0, a2); }, c, d);
  const json werner_like = {{"alpha2", 0.5}, {"kind", "phi"}, {"p_grid", grid_json(ch.grid)}};
  const json bell_like = {{"r", 1.0}, {"kind", "phi"}, {"p_grid", grid_json(ch.grid)}};
  w.panel("a", {"p", "r", "B"}, a, werner_like);
  w.panel("b", {"p", "r", "D_G"}, b, werner_like);
  w.panel("c", {"p", "alpha2", "B"}, c, bell_like);
  w.panel("d", {"p", "alpha2", "D_G"}, d, bell_like);
  return w.finish({});
}

json fig4(const fs::path& dir, const FigureOptions& o) {
  FigureWriter w("fig4", dir);
  ChannelSpec ch;
  ch.kind = ChannelKind::AmplitudeNonMarkov;
  ch.lam_over_gamma = 1e-3;
  ch.grid = default_grid(ch.kind, ch.lam_over_gamma);
  ch.grid.points = o.surface_time_points;
  const auto axis = linspace(0.0, 1.0, o.surface_axis_points);

  const std::array<std::pair<const char*, EwlKind>, 2> branches{{{"a", EwlKind::Phi}, {"c", EwlKind::Psi}}};
  for (const auto& [id, kind] : branches) {
    std::vector<std::vector<double>> over_r, over_a2, unused;
    surface(ch, axis, [kind](double r) { return ewl_state(kind, r, 0.5); }, over_r, unused);
    unused.clear();
    surface(ch, axis, [kind](double a2) { return ewl_state(kind, 1.0, a2); }, over_a2, unused);
    const std::string first = id;
    const std::string second = kind == EwlKind::Phi ? "b" : "d";
    w.panel(first, {"Gamma_t", "r", "B"}, over_r,
            {{"kind", kind_name(kind)}, {"alpha2", 0.5}, {"lam_over_gamma", 1e-3}, {"time_grid", grid_json(ch.grid)}});
    w.panel(second, {"Gamma_t", "alpha2", "B"}, over_a2,
            {{"kind", kind_name(kind)}, {"r", 1.0}, {"lam_over_gamma", 1e-3}, {"time_grid", grid_json(ch.grid)}});
  }
  return w.finish({});
}

std::vector<std::vector<double>> excess_rows(const Trajectory& traj) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < traj.grid.size(); ++i)
    rows.push_back({traj.grid[i], traj.reports[i].B - 2.0, 2.0 * traj.reports[i].D_G, traj.kernel[i]});
  return rows;
}

json fig5(const fs::path& dir, const FigureOptions&) {
  FigureWriter w("fig5", dir);
  ChannelSpec ch;
  ch.kind = ChannelKind::AmplitudeNonMarkov;
  ch.lam_over_gamma = 1e-4;
  ch.grid = default_grid(ch.kind, ch.lam_over_gamma);
  struct Panel {
    const char* id;
    EwlKind kind;
    double alpha2, r;
  };
  const std::array<Panel, 4> panels{{{"a", EwlKind::Phi, 1.0 / 3.0, 1.0},
                                     {"b", EwlKind::Psi, 1.0 / 3.0, 1.0},
                                     {"c", EwlKind::Phi, 0.5, 0.85},
                                     {"d", EwlKind::Psi, 0.5, 0.85}}};
  for (const auto& p : panels) {
    const Trajectory traj = sweep(Evolution(ewl_state(p.kind, p.r, p.alpha2), ch));
    w.panel(p.id, {"Gamma_t", "B_minus_2", "two_D_G", "P_t"}, excess_rows(traj),
            {{"kind", kind_name(p.kind)}, {"alpha2", p.alpha2}, {"r", p.r}, {"lam_over_gamma", 1e-4},
             {"time_grid", grid_json(ch.grid)}});
  }
  return w.finish({});
}

json fig6(const fs::path& dir, const FigureOptions&) {
  FigureWriter w("fig6", dir);
  ChannelSpec ch;
  ch.kind = ChannelKind::RandomField;
  ch.grid = default_grid(ch.kind);
  const BellEigenvalues l0{0.1, 0.0, 0.0, 0.9};
  const Trajectory traj = sweep(Evolution(to_density(BellDiagonal::from_eigenvalues(l0)), ch));
  w.panel("a", {"gt", "B_minus_2", "two_D_G", "f"}, excess_rows(traj),
          {{"lambda_psi_plus", 0.9}, {"lambda_psi_minus", 0.1}, {"lambda_phi_plus", 0.0},
           {"lambda_phi_minus", 0.0}, {"gt_grid", grid_json(ch.grid)}});
  return w.finish({});
}

}  // namespace

std::vector<std::string> figure_names() { return {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6"}; }

json write_figure(std::string_view name, const fs::path& dir, const FigureOptions& opts) {
  if (name == "fig1") return fig1(dir, opts);
  if (name == "fig2") return fig2(dir, opts);
  if (name == "fig3") return fig3(dir, opts);
  if (name == "fig4") return fig4(dir, opts);
  if (name == "fig5") return fig5(dir, opts);
  if (name == "fig6") return fig6(dir, opts);
  std::string valid;
  for (const auto& n : figure_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw ValidationError("unknown figure \"" + std::string(name) + "\"; valid names: " + valid);
}

}  // namespace qcorr
