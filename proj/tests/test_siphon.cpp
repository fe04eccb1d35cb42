#include <doctest.h>

#include <random>

#include "crn/error.hpp"
#include "crn/kernels.hpp"
#include "crn/kinetics.hpp"
#include "crn/parse.hpp"
#include "crn/siphon.hpp"
#include "crn/stoich.hpp"
#include "oracles.hpp"

using namespace crn;

namespace {
Network load(const std::string& name) { return parse_file(oracle::fixture(name)).network; }

std::vector<std::uint32_t> masks(const std::vector<BoundaryClass>& v) {
  std::vector<std::uint32_t> out;
  for (const auto& c : v) out.push_back(c.w_set.mask());
  std::sort(out.begin(), out.end());
  return out;
}
}  // namespace

TEST_CASE("siphons and locking sets of the wi fixture") {
  const auto net = load("wi_endotactic_1d.crn");
  CHECK(is_siphon(net, {0}));
  CHECK_FALSE(is_siphon(net, {1}));
  CHECK(is_locking(net, {0}));
  CHECK_FALSE(is_locking(net, {1}));
  const auto s = enumerate_siphons(net);
  REQUIRE(s.size() == 2);
  CHECK(s[0].w_set == SpeciesSet{0});
  CHECK(s[1].w_set == SpeciesSet{0, 1});
  CHECK(s[0].w_indicator == std::vector<int>{1, 0});
  CHECK_THROWS_AS(is_siphon(net, SpeciesSet{}), Error);
}

TEST_CASE("vacuous siphon and the isomerization") {
  const auto decay = load("decay.crn");
  CHECK(is_siphon(decay, {0}));
  CHECK(is_locking(decay, {0}));
  const auto iso = enumerate_siphons(load("isomerization.crn"));
  REQUIRE(iso.size() == 1);
  CHECK(iso[0].w_set == SpeciesSet{0, 1});
}

TEST_CASE("separable fixture siphons match the definition") {
  const auto net = load("three_species_separable.crn");
  CHECK(masks(enumerate_siphons(net)) == oracle::brute_force_siphons(net));
}

TEST_CASE("random networks: enumeration equals brute force, locking implies siphon, unions") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 250; ++t) {
    const std::size_t n = 1 + rng() % 8, r = 1 + rng() % 12;
    const auto net = oracle::random_network(rng, n, r, 2);
    const auto got = enumerate_siphons(net);
    const auto ms = masks(got);
    REQUIRE(ms == oracle::brute_force_siphons(net));
    for (const auto& c : got)
      if (c.is_locking) CHECK(c.is_siphon);
    for (auto a : ms)
      for (auto b : ms) CHECK(std::binary_search(ms.begin(), ms.end(), a | b));
    for (std::size_t k = 1; k < got.size(); ++k) CHECK(got[k - 1].w_set < got[k].w_set);
  }
}

TEST_CASE("attainability on the wi fixture") {
  const auto net = load("wi_endotactic_1d.crn");
  const std::vector<double> a{1, 1};
  auto s1 = attainable_in_class(net, {0}, a);
  CHECK(s1.status == Attainability::Yes);
  REQUIRE(s1.representative);
  CHECK((*s1.representative)[0] == 0.0);
  CHECK((*s1.representative)[1] == doctest::Approx(2.0));
  CHECK(attainable_in_class(net, {0, 1}, a).status == Attainability::No);
  CHECK(attainable_in_class(net, {0, 1}, std::vector<double>{3.5, 0.25}).status == Attainability::No);
  CHECK_THROWS_AS(attainable_in_class(net, {0}, std::vector<double>{1, 0}), Error);
}

TEST_CASE("rank one attainability agrees with interval arithmetic on the line") {
  const auto net = load("catalyst.crn");  // b = (1,-1,0), E is constant
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.1, 4.0);
  for (int t = 0; t < 50; ++t) {
    const std::vector<double> a{u(rng), u(rng), u(rng)};
    for (std::uint32_t m = 1; m < 8; ++m) {
      const auto w = SpeciesSet::from_mask(m);
      // oracle: x = a + t (1,-1,0); W coordinates vanish, the rest stay positive
      bool want = !w.contains(2);
      if (want) {
        if (w.contains(0) && w.contains(1)) want = false;
        else if (w.contains(0)) want = a[1] + a[0] > 0;
        else want = a[0] + a[1] > 0;
      }
      CHECK((attainable_in_class(net, w, a).status == Attainability::Yes) == want);
    }
  }
}

TEST_CASE("higher rank attainability and representatives") {
  const auto net = load("three_species_separable.crn");
  const std::vector<double> a{1, 1, 1};
  CHECK(attainable_in_class(net, {0, 1, 2}, a).status == Attainability::No);
  const auto reps = face_representatives(net, {2}, a, 5);
  CHECK(reps.size() == 5);
  const auto st = stoich_structure(net);
  for (const auto& x : reps) {
    CHECK(x[2] == 0.0);
    CHECK(x[0] > 0.0);
    CHECK(x[1] > 0.0);
    CHECK(x[0] + x[1] + 2 * x[2] == doctest::Approx(4.0));
  }
  const auto classes = enumerate_boundary_classes(net, a);
  CHECK(classes.size() == 7);
  for (const auto& c : classes) {
    if (c.is_locking) CHECK(c.is_siphon);
    if (c.representative) {
      for (std::size_t j = 0; j < 3; ++j) CHECK((c.w_set.contains(j) ? (*c.representative)[j] == 0.0 : (*c.representative)[j] > 0.0));
    }
  }
}

TEST_CASE("cyclic fixture: faces with two zero species are single points") {
  const auto net = load("cyclic3.crn");
  const std::vector<double> a{1, 1, 1};
  const auto reps = face_representatives(net, {0, 1}, a, 5);
  REQUIRE(reps.size() == 1);
  CHECK(reps[0][2] == doctest::Approx(3.0));
  CHECK(attainable_in_class(net, {0, 1, 2}, a).status == Attainability::No);
}

TEST_CASE("serial and parallel siphon scans agree") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 50; ++t) {
    const auto net = oracle::random_network(rng, 6, 8, 2);
    kernels::SiphonMasks m;
    m.universe = (1u << 6) - 1;
    for (const auto& r : net.reactions()) {
      std::uint32_t a = 0, b = 0;
      for (std::size_t j = 0; j < 6; ++j) {
        if (r.reactant[j] > 0) a |= 1u << j;
        if (r.product[j] > 0) b |= 1u << j;
      }
      m.reactant.push_back(a);
      m.product.push_back(b);
    }
    auto s = kernels::serial::scan_siphons(m), p = kernels::omp::scan_siphons(m);
    std::sort(s.begin(), s.end());
    std::sort(p.begin(), p.end());
    CHECK(s == p);
    CHECK(s == oracle::brute_force_siphons(net));
  }
}
