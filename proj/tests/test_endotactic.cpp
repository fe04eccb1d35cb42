#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "crn/endotactic.hpp"
#include "crn/error.hpp"
#include "crn/parse.hpp"
#include "oracles.hpp"

using namespace crn;

namespace {
Network load(const std::string& name) { return parse_file(oracle::fixture(name)).network; }
DirectionVector dir(std::int64_t a, std::int64_t b) { return DirectionVector(std::vector<std::int64_t>{a, b}); }

// The witness must violate the defining inequality when replayed by hand.
void check_witness(const Network& net, const EndotacticVerdict& v) {
  REQUIRE(v.witness);
  const auto& w = v.witness->w;
  const auto d = net.reaction_vector(v.witness->reaction);
  const double wx = static_cast<double>(w[0]), wy = static_cast<double>(w[1]);
  if (v.kind == EndotacticKind::StronglyEndotactic && oracle::endotactic_along(net, wx, wy)) {
    CHECK(w.dot(d) >= 0);
  } else {
    CHECK(w.dot(d) > 0);
    CHECK_FALSE(oracle::endotactic_along(net, wx, wy));
  }
}

std::vector<Network> two_species_fixtures() {
  std::vector<Network> out;
  for (const auto& e : std::filesystem::directory_iterator(CRN_FIXTURE_DIR)) {
    auto net = parse_file(e.path().string()).network;
    if (net.num_species() == 2) out.push_back(std::move(net));
  }
  return out;
}
}  // namespace

TEST_CASE("extremal reactants") {
  const auto dimer = load("dimer_return.crn");  // S1 -> S2, 2S2 -> 2S1
  auto top = extremal_reactants(dimer, dir(1, 0), Side::Max);
  REQUIRE(top.size() == 1);
  CHECK(dimer.complexes()[top[0]] == Complex(std::vector<int>{1, 0}));

  const auto wi = load("wi_endotactic_1d.crn");
  CHECK(extremal_reactants(wi, dir(2, 1), Side::Max).size() == 2);
  CHECK(extremal_reactants(wi, dir(1, 0), Side::Min).size() == 1);

  const auto decay = load("decay.crn");
  CHECK(extremal_reactants(decay, dir(3, -7), Side::Max) == extremal_reactants(decay, dir(3, -7), Side::Min));
}

TEST_CASE("w-endotactic verdicts") {
  CHECK(is_w_endotactic(load("dimer_return.crn"), dir(1, 0)).holds);
  const auto wi = load("wi_endotactic_1d.crn");
  const auto v = is_w_endotactic(wi, dir(2, 1));
  CHECK_FALSE(v.holds);
  REQUIRE(v.witness);
  CHECK(v.witness->reaction == 1);
  check_witness(wi, v);
  CHECK(is_w_endotactic(wi, dir(1, 0)).holds);
  CHECK(is_w_endotactic(wi, dir(1, 1)).holds);
}

TEST_CASE("W_I-endotactic") {
  CHECK(is_WI_endotactic(load("wi_endotactic_1d.crn")).holds);
  // draining network: every siphon direction passes even though S1 is consumed on both sides
  CHECK(is_WI_endotactic(load("one_sided_push.crn")).holds);
  for (const auto& f : {"isomerization.crn", "cycle3.crn", "reversible_triangle.crn"})
    CHECK(is_WI_endotactic(load(f)).holds);
}

TEST_CASE("two species endotactic classifier") {
  CHECK(is_endotactic_2species(load("reversible_triangle.crn")).holds);

  const auto wi = load("wi_endotactic_1d.crn");
  const auto v = is_endotactic_2species(wi);
  CHECK_FALSE(v.holds);
  check_witness(wi, v);
  // inside the open cone of failing directions around (2,1)
  const double ang = std::atan2(static_cast<double>(v.witness->w[1]), static_cast<double>(v.witness->w[0]));
  CHECK(std::abs(ang - std::atan2(1.0, 2.0)) < 0.5);

  const auto dimer = load("dimer_return.crn");
  CHECK(is_w_endotactic(dimer, dir(1, 0)).holds);
  const auto d = is_endotactic_2species(dimer);
  CHECK_FALSE(d.holds);
  check_witness(dimer, d);

  CHECK_THROWS_AS(is_endotactic_2species(load("cyclic3.crn")), Error);
}

TEST_CASE("strongly endotactic") {
  CHECK(is_strongly_endotactic_2species(load("two_step_chain.crn")).holds);
  CHECK_FALSE(is_strongly_endotactic_2species(load("wi_endotactic_1d.crn")).holds);
  const auto decay = load("decay.crn");
  const auto v = is_strongly_endotactic_2species(decay);
  CHECK_FALSE(v.holds);
  check_witness(decay, v);
  CHECK_THROWS_AS(is_strongly_endotactic_2species(load("catalyst.crn")), Error);
}

TEST_CASE("one dimensional endotactic") {
  CHECK(is_1D_endotactic(load("two_step_chain.crn")).holds);
  const auto flow = parse_text("0 -> S1 : 1\nS1 -> 0 : 2").network;
  CHECK(is_1D_endotactic(flow).holds);
  const auto single = parse_text("S1 + S2 -> 2 S2 : 1").network;
  CHECK_FALSE(is_1D_endotactic(single).holds);
  CHECK_THROWS_AS(is_1D_endotactic(load("cyclic3.crn")), Error);
}

TEST_CASE("classifier agrees with the angular sweep on fixtures and random networks") {
  for (const auto& net : two_species_fixtures()) CHECK(is_endotactic_2species(net).holds == oracle::sweep_endotactic(net));
  std::mt19937_64 rng(77);
  int disagreements = 0;
  for (int t = 0; t < 300; ++t) {
    const auto net = oracle::random_network(rng, 2, 1 + rng() % 5, 3);
    const auto v = is_endotactic_2species(net);
    if (v.holds != oracle::sweep_endotactic(net)) ++disagreements;
    if (!v.holds) check_witness(net, v);
  }
  CHECK(disagreements == 0);
}

TEST_CASE("positive scaling of w never changes the verdict") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const auto net = oracle::random_network(rng, 2, 1 + rng() % 5, 3);
    const std::int64_t a = static_cast<std::int64_t>(rng() % 7) - 3, b = static_cast<std::int64_t>(rng() % 7) - 3;
    if (a == 0 && b == 0) continue;
    const std::int64_t lam = 1 + static_cast<std::int64_t>(rng() % 5);
    CHECK(is_w_endotactic(net, dir(a, b)).holds == is_w_endotactic(net, dir(lam * a, lam * b)).holds);
  }
}

TEST_CASE("endotactic implies W_I-endotactic on two species") {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 200; ++t) {
    const auto net = oracle::random_network(rng, 2, 1 + rng() % 5, 3);
    if (is_endotactic_2species(net).holds) CHECK(is_WI_endotactic(net).holds);
    if (is_strongly_endotactic_2species(net).holds) CHECK(is_endotactic_2species(net).holds);
  }
}

TEST_CASE("convex hull of reactant points") {
  const auto h = convex_hull({{0, 0}, {2, 0}, {1, 1}, {2, 2}, {0, 2}, {1, 0}});
  CHECK(h.size() == 4);
  CHECK(convex_hull({{1, 1}}).size() == 1);
}
