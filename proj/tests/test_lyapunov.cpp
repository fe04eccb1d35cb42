#include <doctest.h>

#include <cmath>
#include <random>

#include "crn/error.hpp"
#include "crn/kinetics.hpp"
#include "crn/lyapunov.hpp"
#include "crn/parse.hpp"
#include "oracles.hpp"

using namespace crn;

namespace {
Network load(const std::string& name) { return parse_file(oracle::fixture(name)).network; }

std::vector<std::vector<double>> random_points(std::size_t n, int count, std::uint64_t seed, double lo = 0.2, double hi = 5.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(std::log(lo), std::log(hi));
  std::vector<std::vector<double>> pts(count, std::vector<double>(n));
  for (auto& p : pts)
    for (auto& v : p) v = std::exp(U(rng));
  return pts;
}

// sum_i k_i x^v_i (exp(<v'_i - v_i, g>) - 1) for an arbitrary gradient g
double residual_with_gradient(const Network& net, const std::vector<double>& x, const std::vector<double>& g) {
  double r = 0.0;
  for (const auto& rx : net.reactions()) {
    double mono = rx.rate, e = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      mono *= std::pow(x[j], rx.reactant[j]);
      e += (rx.product[j] - rx.reactant[j]) * g[j];
    }
    r += mono * (std::exp(e) - 1.0);
  }
  return r;
}
}  // namespace

TEST_CASE("pseudo-Helmholtz values") {
  const double xs[2] = {1.0, 1.0};
  const auto G = pseudo_helmholtz(xs);
  CHECK(G.family() == SolutionFamily::PseudoHelmholtz);
  CHECK(G.value_at(xs) == doctest::Approx(0.0));
  for (double v : G.grad_at(xs)) CHECK(v == doctest::Approx(0.0));
  const double p[2] = {2.0, 1.0};
  CHECK(G.value_at(p) == doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-14));
  const double q[2] = {4.0, 0.5};
  const auto h = G.hessian_diag_at(q);
  REQUIRE(h);
  CHECK((*h)[0] == doctest::Approx(0.25));
  CHECK((*h)[1] == doctest::Approx(2.0));
  const double bad[2] = {1.0, 0.0};
  CHECK_THROWS_AS(pseudo_helmholtz(bad), Error);
}

TEST_CASE("separable ansatz on the three species fixture") {
  const auto net = load("three_species_separable.crn");
  CHECK(ansatz_monomials_match(net, {1, 2, 1}));
  CHECK_FALSE(ansatz_monomials_match(net, {1, 1, 1}));
  const auto sol = separable_ansatz_search(net);
  REQUIRE(sol);
  const auto* sf = sol->separable_form();
  REQUIRE(sf);
  CHECK(sf->c == std::vector<double>{1, 2, 1});
  for (double v : sf->x_star) CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sol->describe().find("c=(1,2,1)") != std::string::npos);

  const auto pts = random_points(3, 100, 21);
  CHECK(hessian_is_pd_diagonal(*sol, pts));
  for (const auto& x : pts) {
    CHECK(std::abs(pde_residual(net, *sol, x)) < 1e-10);
    // Hessian diag(1/x1, 2/x2, 1/x3)
    const auto h = sol->hessian_diag_at(x);
    CHECK((*h)[1] == doctest::Approx(2.0 / x[1]));
    CHECK(sol->f_dot_at(net, x) <= 1e-12);
  }
  // negative control: grad f = 1 leaves a residual
  double worst = 0.0;
  for (const auto& x : pts) worst = std::max(worst, std::abs(residual_with_gradient(net, x, {1, 1, 1})));
  CHECK(worst > 1e-2);
}

TEST_CASE("separable ansatz reduces to pseudo-Helmholtz on a complex-balanced fixture") {
  const auto net = load("cycle3.crn");
  const auto sol = separable_ansatz_search(net);
  REQUIRE(sol);
  CHECK(sol->family() == SolutionFamily::PseudoHelmholtz);
  const auto* sf = sol->separable_form();
  REQUIRE(sf);
  for (double c : sf->c) CHECK(c == 1.0);
  for (double r : complex_balance_residual(net, sf->x_star)) CHECK(std::abs(r) < 1e-9);
}

TEST_CASE("no separable solution for the dimer network") {
  CHECK_FALSE(separable_ansatz_search(load("dimer_return.crn")));
  CHECK_FALSE(separable_ansatz_search(load("dimer_return.crn").with_rates({1.3, 0.7})));
  CHECK_THROWS_AS(separable_ansatz_search(load("cycle3.crn"), AnsatzOptions{0}), Error);
}

TEST_CASE("detailed balance cancels term by term") {
  const auto net = parse_text("S1 <-> S2 : 2, 2").network;
  const double xs[2] = {1.0, 1.0};
  const auto G = pseudo_helmholtz(xs);
  for (const auto& x : random_points(2, 50, 5)) CHECK(std::abs(pde_residual(net, G, x)) < 1e-12);
}

TEST_CASE("gradients agree with finite differences") {
  std::vector<LyapunovSolution> sols;
  sols.push_back(*separable_ansatz_search(load("three_species_separable.crn")));
  sols.push_back(*separable_ansatz_search(load("cyclic3.crn")));
  for (const auto& sol : sols) {
    for (const auto& x : random_points(3, 100, 9)) {
      const auto g = sol.grad_at(x);
      for (std::size_t l = 0; l < 3; ++l) {
        const double fd = oracle::central_difference(
            [&](double v) {
              auto y = x;
              y[l] = v;
              return sol.value_at(y);
            },
            x[l], 1e-5 * x[l]);
        CHECK(std::abs(g[l] - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
      }
    }
  }
}

TEST_CASE("boundary condition residual") {
  const auto net = load("three_species_separable.crn");
  const auto sol = *separable_ansatz_search(net);
  // interior point degenerates to the PDE itself
  const std::vector<double> x = {1.3, 0.4, 2.0}, d = {1, 1, 1};
  const auto in = boundary_condition_residual(net, sol, x, d);
  CHECK(in.converged);
  CHECK(in.cond_a == doctest::Approx(pde_residual(net, sol, x)));

  // boundary equilibrium x1 = x2^2 on the face x3 = 0, approached along the class
  const std::vector<double> xb = {2.25, 1.5, 0.0}, path = {-1.0, -1.0, 1.0};
  const auto r = boundary_condition_residual(net, sol, xb, path);
  CHECK(std::abs(r.cond_a) < 1e-6);
  CHECK_THROWS_AS(boundary_condition_residual(net, sol, xb, std::vector<double>{1, 1, -1}), Error);

  // detailed-balanced isomerization at (0, c): both conditions vanish
  const auto iso = parse_text("S1 <-> S2 : 1, 1").network;
  const double xs[2] = {1.0, 1.0};
  const auto G = pseudo_helmholtz(xs);
  const std::vector<double> xc = {0.0, 2.0}, pc = {1.0, -1.0};
  const auto ri = boundary_condition_residual(iso, G, xc, pc);
  CHECK(std::abs(ri.cond_a) < 1e-6);
}

TEST_CASE("one dimensional solution exposes no Hessian") {
  const auto net = load("wi_endotactic_1d.crn");
  const double anchor[2] = {1.0, 1.0};
  const auto sol = LyapunovSolution::one_d(net, anchor);
  CHECK(sol.family() == SolutionFamily::OneDIntegral);
  CHECK_FALSE(sol.hessian_diag_at(anchor));
  CHECK_THROWS_AS(hessian_is_pd_diagonal(sol, {{1.0, 1.0}}), Error);
  // normalized value is nonnegative along the class segment and vanishes at its minimum
  double lo = 1e300;
  for (int i = 1; i < 200; ++i) {
    const double t = -1.0 + 2.0 * i / 200.0;
    const double x[2] = {1.0 + t, 1.0 - t};
    const double v = sol.value_at(x);
    CHECK(v >= -1e-9);
    lo = std::min(lo, v);
    CHECK(std::abs(pde_residual(net, sol, x)) < 1e-9);
  }
  CHECK(lo < 1e-3);
}
