#include <doctest.h>

#include <numbers>

#include "qcorr/dynamics.hpp"
#include "qcorr/error.hpp"

using namespace qcorr;

namespace {

ChannelSpec channel(ChannelKind k, double lam = 1e-3) {
  ChannelSpec c;
  c.kind = k;
  c.lam_over_gamma = lam;
  c.grid = default_grid(k, lam);
  return c;
}

Trajectory synthetic(const std::vector<double>& t, const std::vector<double>& b, const std::vector<double>& d) {
  Trajectory tr;
  tr.grid = t;
  for (std::size_t i = 0; i < t.size(); ++i) {
    CorrelationReport r;
    r.B = b[i];
    r.D_G = d[i];
    tr.reports.push_back(r);
    tr.kernel.push_back(0.0);
  }
  return tr;
}

}  // namespace

TEST_CASE("grids") {
  const auto v = Grid{0.0, 1.0, 5}.values();
  CHECK(v == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK_THROWS_AS((Grid{0.0, 1.0, 0}.validate()), ValidationError);
  CHECK(Grid{0.3, 0.3, 1}.values() == std::vector<double>{0.3});
  CHECK_THROWS_AS((Grid{1.0, 0.0, 5}.validate()), ValidationError);
  CHECK(default_grid(ChannelKind::PhaseDamping).points == 401);
  CHECK(default_grid(ChannelKind::RandomField).stop == doctest::Approx(2 * std::numbers::pi));
  ChannelSpec pd = channel(ChannelKind::PhaseDamping);
  pd.grid.stop = 1.5;
  CHECK_THROWS_AS(pd.validate(), ValidationError);
}

TEST_CASE("parallel sweep equals the serial reference") {
  for (auto k : {ChannelKind::PhaseDamping, ChannelKind::AmplitudeNonMarkov, ChannelKind::RandomField}) {
    ChannelSpec c = channel(k);
    c.grid.points = 301;
    const Evolution evo(to_density(ewl({EwlKind::Psi, 0.8, 0.6})), c);
    const Trajectory a = sweep(evo), b = sweep_serial(evo);
    REQUIRE(a.grid.size() == b.grid.size());
    for (std::size_t i = 0; i < a.grid.size(); ++i) {
      CHECK(a.reports[i].B == b.reports[i].B);
      CHECK(a.reports[i].D_G == b.reports[i].D_G);
      CHECK(a.kernel[i] == b.kernel[i]);
    }
    CHECK_NOTHROW(a.validate());
  }
}

TEST_CASE("phase damping closed form matches the Kraus path") {
  const ChannelSpec c = channel(ChannelKind::PhaseDamping);
  for (double r : {0.2, 0.9, 1.0})
    for (double a2 : {0.2, 0.5}) {
      for (auto kind : {EwlKind::Phi, EwlKind::Psi}) {
        const Evolution evo(to_density(ewl({kind, r, std::sqrt(a2)})), c);
        for (double p : {0.0, 0.25, 0.8, 1.0}) {
          const auto rep = correlation_report(evo.at(p).state);
          const BDg cf = closed_form_ewl_pd(r, std::sqrt(a2), p);
          CHECK(std::abs(rep.B - cf.B) < 1e-12);
          CHECK(std::abs(rep.D_G - cf.D_G) < 1e-12);
        }
      }
    }
}

TEST_CASE("non-Markovian closed form matches the Kraus path for both branches") {
  const ChannelSpec c = channel(ChannelKind::AmplitudeNonMarkov, 1e-2);
  const NonMarkovParams prm{1e-2, 1.0};
  for (auto kind : {EwlKind::Phi, EwlKind::Psi})
    for (double r : {0.3, 1.0})
      for (double a2 : {1.0 / 3.0, 0.5, 0.8}) {
        const Evolution evo(to_density(ewl({kind, r, std::sqrt(a2)})), c);
        for (double t : {0.0, 3.0, 17.5, 40.0}) {
          const EvolvedPoint pt = evo.at(t);
          CHECK(pt.kernel == doctest::Approx(p_kernel(t, prm)).epsilon(1e-14));
          const XBloch cf = closed_form_ewl_nm(kind, r, std::sqrt(a2), pt.kernel);
          const auto dense = to_bloch(pt.state);
          CHECK(std::abs(dense.t(0, 0) - cf.c1) < 1e-12);
          CHECK(std::abs(dense.t(1, 1) - cf.c2) < 1e-12);
          CHECK(std::abs(dense.t(2, 2) - cf.c3) < 1e-12);
          CHECK(std::abs(dense.x[2] - cf.m) < 1e-12);
          CHECK(std::abs(dense.y[2] - cf.n) < 1e-12);
          const auto round = x_state_bloch(x_state_from_bloch(cf));
          CHECK(std::abs(round.c3 - cf.c3) < 1e-15);
        }
      }
}

TEST_CASE("Phi and Psi branches agree under phase damping") {
  const ChannelSpec c = channel(ChannelKind::PhaseDamping);
  const Evolution phi(to_density(ewl({EwlKind::Phi, 0.7, 0.5})), c), psi(to_density(ewl({EwlKind::Psi, 0.7, 0.5})), c);
  const Trajectory a = sweep(phi), b = sweep(psi);
  for (std::size_t i = 0; i < a.grid.size(); ++i) {
    CHECK(std::abs(a.reports[i].B - b.reports[i].B) < 1e-13);
    CHECK(std::abs(a.reports[i].D_G - b.reports[i].D_G) < 1e-13);
  }
}

TEST_CASE("random-field closed form") {
  const ChannelSpec c = channel(ChannelKind::RandomField);
  const Evolution evo(to_density(BellDiagonal::from_eigenvalues({0.1, 0.0, 0.0, 0.9})), c);
  for (double gt : {0.0, 0.3, std::numbers::pi / 4, 1.0, std::numbers::pi / 2}) {
    const auto pt = evo.at(gt);
    const auto rep = correlation_report(pt.state);
    const BDg cf = closed_form_rf(pt.kernel);
    CHECK(std::abs(rep.B - cf.B) < 1e-12);
    CHECK(std::abs(rep.D_G - cf.D_G) < 1e-12);
  }
}

TEST_CASE("event detection on synthetic curves") {
  // B crosses 2 downward at 0.25 and upward at 0.75; D_G touches zero at 0.5
  std::vector<double> t, b, d;
  for (int i = 0; i <= 100; ++i) {
    const double x = i / 100.0;
    t.push_back(x);
    b.push_back(2.0 + std::cos(2 * std::numbers::pi * x));
    d.push_back((x - 0.5) * (x - 0.5));
  }
  const auto ev = detect_events(synthetic(t, b, d));
  CHECK(count_events(ev, EventKind::ViolationDeath) == 1);
  CHECK(count_events(ev, EventKind::ViolationRevival) == 1);
  CHECK(count_events(ev, EventKind::DiscordZero) == 1);
  for (const auto& e : ev) {
    if (e.kind == EventKind::ViolationDeath) CHECK(e.time == doctest::Approx(0.25).epsilon(1e-3));
    if (e.kind == EventKind::ViolationRevival) CHECK(e.time == doctest::Approx(0.75).epsilon(1e-3));
    if (e.kind == EventKind::DiscordZero) CHECK(e.time == doctest::Approx(0.5).epsilon(1e-9));
  }
  for (std::size_t i = 1; i < ev.size(); ++i) CHECK(ev[i - 1].time <= ev[i].time);
  CHECK(to_string(EventKind::ViolationRevival) == "violation_revival");
}

TEST_CASE("local maxima are refined between grid points") {
  std::vector<double> t, b, d;
  for (int i = 0; i <= 50; ++i) {
    const double x = i / 50.0;
    t.push_back(x);
    b.push_back(1.0 - (x - 0.413) * (x - 0.413));
    d.push_back(0.1);
  }
  const auto ev = detect_events(synthetic(t, b, d));
  REQUIRE(count_events(ev, EventKind::LocalMaxB) == 1);
  for (const auto& e : ev)
    if (e.kind == EventKind::LocalMaxB) {
      CHECK(e.time == doctest::Approx(0.413).epsilon(1e-12));
      CHECK(e.value == doctest::Approx(1.0).epsilon(1e-12));
    }
  CHECK(count_events(ev, EventKind::LocalMaxDG) == 0);  // flat curve
}

TEST_CASE("simultaneity at kernel zeros") {
  const ChannelSpec c = channel(ChannelKind::AmplitudeNonMarkov, 1e-4);
  const Evolution evo(to_density(ewl({EwlKind::Phi, 1.0, std::sqrt(0.5)})), c);
  const auto zeros = pt_zeros({1e-4, 1.0}, 3);
  for (const auto& e : simultaneity_check(evo, zeros)) {
    CHECK(e.kernel_zero);
    CHECK(e.simultaneous);
  }
}
