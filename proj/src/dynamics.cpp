#include "qcorr/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <optional>
#include <sstream>

#include "qcorr/error.hpp"
#include "qcorr/parallel.hpp"
#include "qcorr/tolerances.hpp"

namespace qcorr {

void Grid::validate() const {
  if (points < 1) throw ValidationError("grid needs at least one point");
  if (!std::isfinite(start) || !std::isfinite(stop)) throw ValidationError("grid bounds must be finite");
  if (points > 1 && !(stop > start)) throw ValidationError("grid stop must exceed start");
}

std::vector<double> Grid::values() const {
  validate();
  std::vector<double> out(static_cast<std::size_t>(points));
  if (points == 1) {
    out[0] = start;
    return out;
  }
  const double step = (stop - start) / (points - 1);
  for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = start + step * i;
  out.back() = stop;
  return out;
}

std::string_view to_string(ChannelKind k) {
  switch (k) {
    case ChannelKind::PhaseDamping: return "phase_damping";
    case ChannelKind::AmplitudeNonMarkov: return "amplitude_nonmarkov";
    case ChannelKind::RandomField: return "random_field";
  }
  return "unknown";
}

void ChannelSpec::validate() const {
  grid.validate();
  switch (kind) {
    case ChannelKind::PhaseDamping:
      if (grid.start < 0.0 || grid.stop > 1.0)
        throw ValidationError("phase damping grid must lie inside [0, 1]");
      break;
    case ChannelKind::AmplitudeNonMarkov:
      NonMarkovParams{lam_over_gamma, 1.0}.validate();
      if (grid.start < 0.0) throw ValidationError("non-Markovian grid must start at Gamma t >= 0");
      break;
    case ChannelKind::RandomField:
      if (!(g > 0.0) || !std::isfinite(g)) throw ValidationError("random field coupling g must be > 0");
      break;
  }
}

Grid default_grid(ChannelKind kind, double lam_over_gamma) {
  switch (kind) {
    case ChannelKind::PhaseDamping: return {0.0, 1.0, 401};
    case ChannelKind::AmplitudeNonMarkov: {
      const NonMarkovParams prm{lam_over_gamma, 1.0};
      prm.validate();
      return {0.0, 7.0 * 2.0 * std::numbers::pi / prm.d(), 8001};
    }
    case ChannelKind::RandomField: return {0.0, 2.0 * std::numbers::pi, 2001};
  }
  throw ValidationError("unknown channel kind");
}

Evolution::Evolution(DensityMatrix initial, ChannelSpec channel)
    : initial_(std::move(initial)), channel_(channel) {
  channel_.validate();
}

EvolvedPoint Evolution::at(double t) const {
  switch (channel_.kind) {
    case ChannelKind::PhaseDamping: {
      const KrausSet k = phase_damping_set(t);
      return {apply_local_kraus(initial_, k, k), 1.0 - t};
    }
    case ChannelKind::AmplitudeNonMarkov: {
      const double P = std::clamp(p_kernel(t, {channel_.lam_over_gamma, 1.0}), 0.0, 1.0);
      const KrausSet k = amplitude_decay_set(P);
      return {apply_local_kraus(initial_, k, k), P};
    }
    case ChannelKind::RandomField:
      return {random_field_apply(initial_, t), random_field_f(t)};
  }
  throw ValidationError("unknown channel kind");
}

void Trajectory::validate() const {
  if (reports.size() != grid.size() || kernel.size() != grid.size())
    throw ValidationError("trajectory columns have different lengths");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw ValidationError("trajectory grid is not strictly increasing");
}

namespace {

Trajectory allocate(const Evolution& evo) {
  Trajectory traj;
  traj.grid = evo.channel().grid.values();
  traj.reports.resize(traj.grid.size());
  traj.kernel.resize(traj.grid.size());
  return traj;
}

void evaluate(const Evolution& evo, Trajectory& traj, std::size_t i) {
  try {
    const EvolvedPoint pt = evo.at(traj.grid[i]);
    traj.reports[i] = correlation_report(pt.state);
    traj.kernel[i] = pt.kernel;
  } catch (const ValidationError& e) {
    std::ostringstream os;
    os << "at grid point " << i << " (t = " << traj.grid[i] << "): " << e.what();
    throw ValidationError(os.str());
  }
}

}  // namespace

Trajectory sweep_serial(const Evolution& evo) {
  Trajectory traj = allocate(evo);
  for (std::size_t i = 0; i < traj.grid.size(); ++i) evaluate(evo, traj, i);
  return traj;
}

Trajectory sweep(const Evolution& evo) {
  Trajectory traj = allocate(evo);
  const auto n = static_cast<std::ptrdiff_t>(traj.grid.size());
  // Exceptions cannot leave the parallel region; keep the lowest failing index.
  std::ptrdiff_t failed_at = n;
  std::exception_ptr failure;
#pragma omp parallel for schedule(static) num_threads(worker_count())
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      evaluate(evo, traj, static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(qcorr_sweep_failure)
      if (i < failed_at) {
        failed_at = i;
        failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
  return traj;
}

namespace {

void require_unit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream os;
    os << what << " = " << v << " outside [0, 1]";
    throw ValidationError(os.str());
  }
}

}  // namespace

BDg closed_form_ewl_pd(double r, double alpha, double p) {
  require_unit(r, "r");
  require_unit(alpha, "alpha");
  require_unit(p, "p");
  const double a2 = alpha * alpha, b2 = 1.0 - a2;
  const double q = 1.0 - p;
  const double coherent = 4.0 * q * q * a2 * b2 * r * r;
  return {2.0 * std::sqrt(r * r + coherent), 0.5 * coherent};
}

XBloch closed_form_ewl_nm(EwlKind kind, double r, double alpha, double P) {
  require_unit(r, "r");
  require_unit(alpha, "alpha");
  require_unit(P, "P");
  const double a2 = alpha * alpha, b2 = 1.0 - a2;
  const double ab = alpha * std::sqrt(b2);
  const double decayed = 1.0 - P;
  XBloch out;
  if (kind == EwlKind::Phi) {
    out.c1 = out.c2 = 2.0 * ab * r * P;
    out.c3 = 1.0 - 2.0 * P + (1.0 - r) * P * P;
    out.m = (b2 - a2) * r * P - decayed;
    out.n = (a2 - b2) * r * P - decayed;
  } else {
    const double upper = 0.25 * (1.0 - r) + b2 * r;  // initial weight of the doubly excited level
    out.c1 = 2.0 * ab * r * P;
    out.c2 = -out.c1;
    out.c3 = 1.0 - (1.0 - r) * P - 4.0 * upper * P * decayed;
    out.m = out.n = (b2 - a2) * r * P - decayed;
  }
  return out;
}

BDg closed_form_rf(double f) {
  if (!(f >= 0.0 && f <= 0.5)) throw ValidationError("random-field f outside [0, 1/2]");
  const double hi = 0.9 - f, lo = 0.1 - f;
  const double c1 = 0.8 - 1.6 * f;
  const double tail = f <= 0.1 ? 0.8 * 0.8 : (1.0 - 2.0 * f) * (1.0 - 2.0 * f);
  return {2.0 * std::numbers::sqrt2 * std::sqrt(hi * hi + lo * lo), 0.25 * (c1 * c1 + tail)};
}

XState x_state_from_bloch(const XBloch& p) {
  return {0.25 * (1.0 + p.c3 + p.m + p.n), 0.25 * (1.0 - p.c3 + p.m - p.n),
          0.25 * (1.0 - p.c3 - p.m + p.n), 0.25 * (1.0 + p.c3 - p.m - p.n),
          0.25 * (p.c1 - p.c2),            0.25 * (p.c1 + p.c2)};
}

BlochForm bloch_form(const XBloch& p) {
  BlochForm b;
  b.x[2] = p.m;
  b.y[2] = p.n;
  b.t = Mat3::diag(p.c1, p.c2, p.c3);
  return b;
}

std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::ViolationDeath: return "violation_death";
    case EventKind::ViolationRevival: return "violation_revival";
    case EventKind::DiscordZero: return "discord_zero";
    case EventKind::LocalMaxB: return "local_max_B";
    case EventKind::LocalMaxDG: return "local_max_DG";
  }
  return "unknown";
}

namespace {

// Vertex of the parabola through three equally spaced samples, clamped to
// the bracket. Returns (time, value).
std::pair<double, double> parabolic_vertex(double t0, double t1, double t2, double f0, double f1,
                                           double f2) {
  const double h = t1 - t0;
  const double curv = f0 - 2.0 * f1 + f2;
  if (curv == 0.0 || std::abs(t2 - t1 - h) > 1e-9 * std::abs(h)) return {t1, f1};
  double shift = 0.5 * h * (f0 - f2) / curv;
  shift = std::clamp(shift, -h, h);
  const double value = f1 - 0.25 * (f0 - f2) * shift / h;
  return {t1 + shift, value};
}

double golden_minimize(const std::function<double(double)>& f, double lo, double hi, double& at) {
  constexpr double g = 0.6180339887498949;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, std::abs(hi)); ++it) {
    if (f1 > f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    }
  }
  at = f1 < f2 ? x1 : x2;
  return std::min(f1, f2);
}

}  // namespace

std::vector<Event> detect_events(const Trajectory& traj, const EventRefinement& refine) {
  traj.validate();
  std::vector<Event> events;
  const std::size_t n = traj.grid.size();
  if (n < 3) return events;
  const auto& t = traj.grid;
  auto B = [&](std::size_t i) { return traj.reports[i].B; };
  auto D = [&](std::size_t i) { return traj.reports[i].D_G; };

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double s0 = B(i) - 2.0, s1 = B(i + 1) - 2.0;
    const bool above0 = s0 > 0.0, above1 = s1 > 0.0;
    if (above0 == above1) continue;
    const double frac = s0 / (s0 - s1);
    const double tc = t[i] + frac * (t[i + 1] - t[i]);
    events.push_back({above0 ? EventKind::ViolationDeath : EventKind::ViolationRevival, tc, 2.0});
  }

  // Discord zeros: one event per run of grid points at or below the
  // threshold, plus bracketed interior minima that refine below it.
  std::size_t i = 0;
  while (i < n) {
    if (D(i) <= tol::discord_zero) {
      std::size_t best = i;
      std::size_t j = i;
      while (j < n && D(j) <= tol::discord_zero) {
        if (D(j) < D(best)) best = j;
        ++j;
      }
      events.push_back({EventKind::DiscordZero, t[best], D(best)});
      i = j;
      continue;
    }
    if (i > 0 && i + 1 < n && D(i) < D(i - 1) && D(i) <= D(i + 1) && D(i + 1) > tol::discord_zero) {
      double at = t[i], value;
      if (refine.discord) {
        value = golden_minimize(refine.discord, t[i - 1], t[i + 1], at);
      } else {
        std::tie(at, value) = parabolic_vertex(t[i - 1], t[i], t[i + 1], D(i - 1), D(i), D(i + 1));
      }
      if (value <= tol::discord_zero) events.push_back({EventKind::DiscordZero, at, std::max(0.0, value)});
    }
    ++i;
  }

  constexpr double rise = 1e-13;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (B(k) - B(k - 1) > rise && B(k) >= B(k + 1)) {
      const auto [at, value] = parabolic_vertex(t[k - 1], t[k], t[k + 1], B(k - 1), B(k), B(k + 1));
      events.push_back({EventKind::LocalMaxB, at, std::max(value, B(k))});
    }
    if (D(k) - D(k - 1) > rise && D(k) >= D(k + 1)) {
      const auto [at, value] = parabolic_vertex(t[k - 1], t[k], t[k + 1], D(k - 1), D(k), D(k + 1));
      events.push_back({EventKind::LocalMaxDG, at, std::max(value, D(k))});
    }
  }

  std::stable_sort(events.begin(), events.end(),
                   [](const Event& a, const Event& b) { return a.time < b.time; });
  return events;
}

std::size_t count_events(const std::vector<Event>& events, EventKind kind) {
  return static_cast<std::size_t>(
      std::count_if(events.begin(), events.end(), [&](const Event& e) { return e.kind == kind; }));
}

std::vector<SimultaneityEntry> simultaneity_check(const Evolution& evo,
                                                  const std::vector<double>& zeros) {
  std::vector<SimultaneityEntry> out;
  out.reserve(zeros.size());
  for (double tz : zeros) {
    const EvolvedPoint pt = evo.at(tz);
    const CorrelationReport rep = correlation_report(pt.state);
    SimultaneityEntry e;
    e.t = tz;
    e.kernel = pt.kernel;
    e.B = rep.B;
    e.D_G = rep.D_G;
    e.kernel_zero = pt.kernel <= 1e-12;
    e.simultaneous = e.kernel_zero && rep.D_G <= tol::discord_zero && rep.B <= 2.0 + 1e-9;
    out.push_back(e);
  }
  return out;
}

}  // namespace qcorr
