#pragma once

// Time series of (B, D_G, C) under the three channels, closed-form
// trajectories for the analytically solvable cases, and event detection.

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "qcorr/channels.hpp"
#include "qcorr/measures.hpp"

namespace qcorr {

struct Grid {
  double start = 0.0;
  double stop = 1.0;
  int points = 401;

  /// Throws ValidationError unless points >= 1 and the grid is increasing.
  void validate() const;
  std::vector<double> values() const;
};

enum class ChannelKind { PhaseDamping, AmplitudeNonMarkov, RandomField };

std::string_view to_string(ChannelKind k);

struct ChannelSpec {
  ChannelKind kind = ChannelKind::PhaseDamping;
  double lam_over_gamma = 1e-3;  // AmplitudeNonMarkov only
  double g = 1.0;                // RandomField only; the grid is already g*t
  Grid grid;

  void validate() const;
};

/// Default grids: p in [0,1] (401 points); Gamma t over seven periods of the
/// P_t oscillation (8001 points); g t in [0, 2 pi] (2001 points).
Grid default_grid(ChannelKind kind, double lam_over_gamma = 1e-3);

struct EvolvedPoint {
  DensityMatrix state;
  double kernel;  // 1 - p, P_t, or f(g t)
};

/// An initial state paired with a channel; evaluates at arbitrary times.
class Evolution {
 public:
  Evolution(DensityMatrix initial, ChannelSpec channel);

  EvolvedPoint at(double t) const;
  const DensityMatrix& initial() const noexcept { return initial_; }
  const ChannelSpec& channel() const noexcept { return channel_; }

 private:
  DensityMatrix initial_;
  ChannelSpec channel_;
};

struct Trajectory {
  std::vector<double> grid;
  std::vector<CorrelationReport> reports;
  std::vector<double> kernel;

  /// Throws ValidationError if the grid is not strictly increasing or the
  /// columns have different lengths.
  void validate() const;
};

/// Evaluates every grid point of `evo.channel().grid` in parallel.
Trajectory sweep(const Evolution& evo);
/// Serial reference for sweep; produces identical output.
Trajectory sweep_serial(const Evolution& evo);

struct BDg {
  double B = 0.0;
  double D_G = 0.0;
};

/// EWL state after phase damping p (either branch).
BDg closed_form_ewl_pd(double r, double alpha, double p);

/// Bloch parameters of an EWL state after amplitude decay with survival P.
XBloch closed_form_ewl_nm(EwlKind kind, double r, double alpha, double P);

/// Random-field example with initial weights Psi+ = 0.9, Psi- = 0.1.
BDg closed_form_rf(double f);

/// Inverse of x_state_bloch.
XState x_state_from_bloch(const XBloch& p);
BlochForm bloch_form(const XBloch& p);

enum class EventKind { ViolationDeath, ViolationRevival, DiscordZero, LocalMaxB, LocalMaxDG };

std::string_view to_string(EventKind k);

struct Event {
  EventKind kind;
  double time;
  double value;
};

/// Optional exact curves used to refine discord minima; each maps a grid
/// time to the measured quantity.
struct EventRefinement {
  std::function<double(double)> discord;
};

/// Violation death/revival from sign changes of B - 2 (linear interpolation
/// of the crossing), discord zeros at D_G <= tol::discord_zero, and
/// three-point local maxima of B and D_G. Needs at least three grid points
/// to report anything.
std::vector<Event> detect_events(const Trajectory& traj, const EventRefinement& refine = {});

std::size_t count_events(const std::vector<Event>& events, EventKind kind);

struct SimultaneityEntry {
  double t = 0.0;
  double kernel = 0.0;
  double B = 0.0;
  double D_G = 0.0;
  bool kernel_zero = false;  // P_t <= 1e-12
  bool simultaneous = false; // kernel_zero and D_G <= 1e-9 and B <= 2 + 1e-9
};

/// Re-evaluates the evolution exactly at each supplied time.
std::vector<SimultaneityEntry> simultaneity_check(const Evolution& evo,
                                                  const std::vector<double>& zeros);

}  // namespace qcorr
