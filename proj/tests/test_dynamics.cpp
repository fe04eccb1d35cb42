#include <doctest.h>

#include <cmath>
#include <random>

#include "crn/dynamics.hpp"
#include "crn/error.hpp"
#include "crn/lyapunov.hpp"
#include "crn/parse.hpp"
#include "oracles.hpp"

using namespace crn;

namespace {
Network load(const std::string& name) { return parse_file(oracle::fixture(name)).network; }

double decay_error(double tol) {
  const auto net = load("decay.crn");
  const double x0[2] = {1.0, 0.5};
  SimulateOptions o;
  o.horizon = 10.0;
  o.tol = tol;
  o.samples = 11;  // sparse output so the step size follows the tolerance
  const auto tr = simulate(net, x0, o);
  double worst = 0.0;
  for (std::size_t k = 0; k < tr.times.size(); ++k) worst = std::max(worst, std::abs(tr.states[k][0] - std::exp(-tr.times[k])));
  return worst;
}
}  // namespace

TEST_CASE("trajectories conserve the linear invariant") {
  const auto net = load("wi_endotactic_1d.crn");
  const double x0[2] = {3.0, 0.7};
  const auto tr = simulate(net, x0, 1e3, 1e-9);
  CHECK(tr.times.size() == 1001);
  CHECK(tr.times.back() == doctest::Approx(1e3));
  for (const auto& s : tr.states) {
    CHECK(std::abs(s[0] + s[1] - 3.7) < 1e-8);
    CHECK(std::min(s[0], s[1]) > 0.0);
  }
}

TEST_CASE("positive equilibrium stays put") {
  const auto net = load("isomerization.crn");  // S1 <-> S2 with k = 1, 2
  const double x0[2] = {2.0, 1.0};
  const auto tr = simulate(net, x0, 50.0, 1e-10);
  for (const auto& s : tr.states) {
    CHECK(s[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(s[1] == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("exponential decay and tolerance control") {
  const double coarse = decay_error(1e-5), fine = decay_error(1e-10);
  CHECK(coarse < 1e-3);
  CHECK(fine < 1e-8);
  CHECK(fine < coarse);
}

TEST_CASE("events and probe statistics") {
  const auto net = load("decay.crn");
  const double x0[2] = {1.0, 0.5};
  SimulateOptions o;
  o.horizon = 20.0;
  o.samples = 2001;
  const auto tr = simulate(net, x0, o);
  REQUIRE(tr.events.size() == 1);
  CHECK(tr.events[0].kind == "below_eps");
  CHECK(tr.events[0].time == doctest::Approx(std::log(1e6)).epsilon(1e-3));
  const auto p = probe(tr, 1e-6);
  CHECK(p.bounded);
  CHECK(p.residence_fraction == doctest::Approx(std::log(1e6) / 20.0).epsilon(1e-2));
  CHECK(p.min_concentration[0] == doctest::Approx(std::exp(-20.0)).epsilon(1e-3));
  CHECK_FALSE(p.f_dot_max_violation);
}

TEST_CASE("Lyapunov value does not increase along trajectories") {
  const auto net = load("three_species_separable.crn");
  const auto sol = *separable_ansatz_search(net);
  const double x0[3] = {0.5, 3.0, 1.2};
  const auto tr = simulate(net, x0, 100.0, 1e-10);
  const auto p = probe(tr, 1e-6, &sol);
  REQUIRE(p.f_dot_max_violation);
  CHECK(*p.f_dot_max_violation <= 1e-9);
  CHECK(p.lyapunov_samples_skipped == 0);
}

TEST_CASE("argument validation") {
  const auto net = load("decay.crn");
  const double x0[2] = {1.0, 0.5};
  const double neg[2] = {-1.0, 0.5};
  const double zero[2] = {1.0, 0.0};
  CHECK_THROWS_AS(simulate(net, zero, 1.0, 1e-9), Error);
  CHECK_THROWS_AS(simulate(net, x0, 1.0, 1e-2), Error);
  CHECK_THROWS_AS(simulate(net, x0, 1.0, 1e-13), Error);
  CHECK_THROWS_AS(simulate(net, neg, 1.0, 1e-9), Error);
  const double three[3] = {1, 1, 1};
  CHECK_THROWS_AS(simulate(net, three, 1.0, 1e-9), Error);
}

TEST_CASE("boundary approach classification") {
  const auto iso = parse_text("S1 <-> S2 : 1, 1").network;
  const double xs[2] = {1.0, 1.0};
  const auto G = pseudo_helmholtz(xs);
  const auto scales = default_approach_scales();
  CHECK(scales.size() == 300);
  {
    const double xb[2] = {0.0, 2.0}, path[2] = {1.0, -1.0};
    const auto r = boundary_approach_experiment(iso, xb, G, scales, path);
    CHECK(r.classification == ApproachClass::DivergesToMinusInfinity);
    CHECK(r.f_dot.back() < -1e3);
  }
  {
    const double xb[2] = {0.0, 2.0}, path[2] = {-1.0, 1.0};
    CHECK_THROWS_AS(boundary_approach_experiment(iso, xb, G, scales, path), Error);
  }
  const auto net = load("three_species_separable.crn");
  const auto sol = *separable_ansatz_search(net);
  const double path[3] = {-1.0, -1.0, 1.0};
  {
    // boundary equilibrium x1 = x2^2
    const double xb[3] = {2.25, 1.5, 0.0};
    const auto r = boundary_approach_experiment(net, xb, sol, scales, path);
    CHECK(r.classification == ApproachClass::ApproachesZero);
  }
  {
    const double xb[3] = {1.0, 2.0, 0.0};
    const auto r = boundary_approach_experiment(net, xb, sol, scales, path);
    CHECK(r.classification == ApproachClass::BoundedNegative);
    CHECK(r.limit == doctest::Approx(-(1.0 - 4.0) * (0.0 - 2.0 * std::log(2.0))).epsilon(1e-6));
  }
}
