#include <doctest.h>

#include <cmath>
#include <random>

#include "crn/error.hpp"
#include "crn/lyapunov.hpp"
#include "crn/lyapunov_1d.hpp"
#include "crn/parse.hpp"
#include "oracles.hpp"

using namespace crn;

namespace {
Network load(const std::string& name) { return parse_file(oracle::fixture(name)).network; }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}
}  // namespace

TEST_CASE("one dimensional decomposition") {
  const auto tri = decompose_1d(load("reversible_triangle.crn"));
  CHECK(tri.b == std::vector<std::int64_t>{1, -1});
  CHECK(tri.m == std::vector<std::int64_t>{-1, 1, -1, 2});
  CHECK(tri.has_both_signs);

  const auto wi = decompose_1d(load("wi_endotactic_1d.crn"));
  CHECK(wi.b == std::vector<std::int64_t>{1, -1});
  CHECK(wi.m == std::vector<std::int64_t>{-1, 2});

  const auto cat = decompose_1d(load("catalyst.crn"));
  CHECK(cat.retained_species == std::vector<std::size_t>{0, 1});
  CHECK(cat.dropped_species == std::vector<std::size_t>{2});

  CHECK_FALSE(decompose_1d(load("one_sided_push.crn")).has_both_signs);
  CHECK(kind_of([] { decompose_1d(load("cyclic3.crn")); }) == ErrorKind::NotOneDimensional);
}

TEST_CASE("u tilde matches the quadratic closed form") {
  for (auto [k1, k2, name] : {std::tuple{1.0, 1.0, "wi_endotactic_1d.crn"}, std::tuple{2.5, 0.3, "wi_endotactic_1d_skewed.crn"}}) {
    const auto s = decompose_1d(load(name));
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> lg(std::log(1e-3), std::log(1e3));
    for (int t = 0; t < 1000; ++t) {
      const double x[2] = {std::exp(lg(rng)), std::exp(lg(rng))};
      const double u = solve_u_tilde(s, x);
      const double ref = oracle::u_tilde_wi(k1, k2, x[0], x[1]);
      CHECK(std::abs(u - ref) <= 1e-9 * ref);
      CHECK(std::abs(h_eval(s, x, u)) <= 1e-9 * (std::abs(h_eval(s, x, 2 * u)) + 1e-300));
    }
  }
}

TEST_CASE("cleared polynomial has one sign change") {
  const auto s = decompose_1d(load("reversible_triangle.crn"));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0.05, 20.0);
  for (int t = 0; t < 200; ++t) {
    const double x[2] = {U(rng), U(rng)};
    const auto c = cleared_polynomial(s, x);
    CHECK(sign_changes(c) == 1);
    // the cleared polynomial evaluates to u^M h
    const double u = 0.7;
    double p = 0.0;
    for (std::size_t j = c.size(); j-- > 0;) p = p * u + c[j];
    CHECK(p == doctest::Approx(u * h_eval(s, x, u)).epsilon(1e-12));
  }
}

TEST_CASE("gradient of ln u tilde agrees with finite differences") {
  const auto s = decompose_1d(load("reversible_triangle.crn"));
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> U(0.2, 5.0);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> x = {U(rng), U(rng)};
    const auto g = grad_log_u_tilde(s, x);
    for (std::size_t l = 0; l < 2; ++l) {
      const double fd = oracle::central_difference(
          [&](double v) {
            auto y = x;
            y[l] = v;
            return std::log(solve_u_tilde(s, y));
          },
          x[l], 1e-5 * x[l]);
      CHECK(g[l] == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("line integral function") {
  const auto net = load("wi_endotactic_1d.crn");
  const double anchor[2] = {1.0, 1.0};
  const auto sol = LyapunovSolution::one_d(net, anchor);
  const auto* form = sol.one_d_form();
  REQUIRE(form);
  const auto& s = form->s;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> U(0.05, 6.0);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> x = {U(rng), U(rng)};
    // raw f against an independent Simpson rule on the closed form
    const auto y = form->line.y_dagger(x);
    const double g = form->line.gamma(x);
    const double ref = oracle::simpson(
        [&](double tau) {
          if (y[0] + tau <= 0 || y[1] - tau <= 0) return 0.0;
          return std::log(oracle::u_tilde_wi(1, 1, y[0] + tau, y[1] - tau));
        },
        0.0, g, 4000);
    if (std::min(y[0], y[1]) > 1e-2) CHECK(f_eval(s, x, form->line) == doctest::Approx(ref).epsilon(1e-6));
    // derivative along b equals ln u tilde
    const double b[2] = {1.0, -1.0};
    CHECK(sol.directional(b, x) == doctest::Approx(std::log(solve_u_tilde(s, x))).epsilon(1e-12));
    CHECK(f_dot_eval(s, x) <= 1e-12);
    // normalization holds on the class segment through the anchor
    const double on[2] = {x[0] * 2.0 / (x[0] + x[1]), x[1] * 2.0 / (x[0] + x[1])};
    CHECK(sol.value_at(on) >= -1e-9);
  }
}

TEST_CASE("boundary limits of u tilde") {
  const auto s = decompose_1d(load("wi_endotactic_1d.crn"));
  // on {x1 = 0} entering along +b the positive flux vanishes
  const double xa[2] = {0.0, 2.0};
  const auto lim = boundary_u_limit(s, xa, +1);
  CHECK_FALSE(lim.diverges);
  CHECK(lim.value == doctest::Approx(0.0));
  CHECK(below_one(lim));
  const double xb[2] = {2.0, 0.0};
  CHECK(boundary_u_limit(s, xb, -1).diverges);
  CHECK(kind_of([&] { boundary_u_limit(s, xa, -1); }) == ErrorKind::DirectionLeavesOrthant);
}

TEST_CASE("errors") {
  const auto s = decompose_1d(load("wi_endotactic_1d.crn"));
  const double neg[2] = {-1.0, 1.0};
  const double zero[2] = {0.0, 1.0};
  const double three[3] = {1, 1, 1};
  CHECK(kind_of([&] { solve_u_tilde(s, neg); }) == ErrorKind::NegativeConcentration);
  CHECK(kind_of([&] { solve_u_tilde(s, zero); }) == ErrorKind::NonPositivePoint);
  CHECK(kind_of([&] { solve_u_tilde(s, three); }) == ErrorKind::DimensionMismatch);
  const auto push = decompose_1d(load("one_sided_push.crn"));
  const double one[2] = {1.0, 1.0};
  CHECK(kind_of([&] { solve_u_tilde(push, one); }) == ErrorKind::MissingSignGroup);
  CHECK(kind_of([&] { line_params(s, zero); }) == ErrorKind::NonPositiveAnchor);
}
