#include <doctest.h>

#include <chrono>

#include "crn/diagnose.hpp"
#include "crn/parse.hpp"
#include "oracles.hpp"

using namespace crn;

namespace {
Network load(const std::string& name) { return parse_file(oracle::fixture(name)).network; }

PersistenceReport run(const Network& net, bool probes = false) {
  DiagnoseOptions o;
  o.run_probes = probes;
  const std::vector<double> anchor(net.num_species(), 1.0);
  return diagnose(net, anchor, o);
}

const BoundaryVerdict& verdict_for(const PersistenceReport& r, SpeciesSet w) {
  for (const auto& v : r.boundary_verdicts)
    if (v.boundary_class.w_set == w) return v;
  FAIL("missing boundary class");
  return r.boundary_verdicts.front();
}
}  // namespace

TEST_CASE("wi fixture is persistent through the one dimensional chain") {
  for (const char* name : {"wi_endotactic_1d.crn", "wi_endotactic_1d_skewed.crn"}) {
    const auto r = run(load(name), true);
    CHECK(r.overall == Overall::Persistent);
    CHECK_FALSE(r.error);
    REQUIRE(r.solution);
    CHECK(r.solution->family == SolutionFamily::OneDIntegral);
    CHECK(r.boundedness == BoundednessBasis::WSEndotactic1d);
    CHECK(r.theorem_chain.back() == "Theorem 5.1");
    CHECK(r.boundary_verdicts.size() == 3);
    const auto& s1 = verdict_for(r, {0});
    CHECK(s1.boundary_class.is_siphon);
    CHECK(s1.criterion == Criterion::LocalMax);
    CHECK(verdict_for(r, {1}).criterion == Criterion::NonSiphon);
    CHECK(verdict_for(r, {0, 1}).criterion == Criterion::Unattainable);
    CHECK(r.probes.size() == 10);
    for (const auto& p : r.probes) {
      REQUIRE(p.report);
      CHECK(*std::min_element(p.report->min_concentration.begin(), p.report->min_concentration.end()) > 1e-3);
    }
  }
}

TEST_CASE("cyclic network is persistent by the non-siphon criterion") {
  const auto r = run(load("cyclic3.crn"));
  CHECK(r.overall == Overall::Persistent);
  REQUIRE(r.solution);
  CHECK(r.solution->family == SolutionFamily::Separable);
  for (const auto& v : r.boundary_verdicts) {
    if (v.boundary_class.w_set.size() == 3)
      CHECK(v.criterion == Criterion::Unattainable);
    else
      CHECK(v.criterion == Criterion::NonSiphon);
  }
  CHECK(r.theorem_chain.back() == "Theorem 4.1");
}

TEST_CASE("three species fixture splits into criteria") {
  const auto r = run(load("three_species_separable.crn"));
  REQUIRE(r.solution);
  CHECK(r.solution->description == "separable c=(1,2,1)");
  CHECK(r.boundedness == BoundednessBasis::ConservationLaw);
  // the face x3 = 0 carries a boundary equilibrium, which no criterion excludes,
  // while its non-equilibrium representatives are settled by the Hessian criterion
  int equilibria = 0, settled = 0;
  for (const auto& v : r.boundary_verdicts) {
    if (!(v.boundary_class.w_set == SpeciesSet{2})) continue;
    CHECK(v.boundary_class.is_siphon);
    if (v.is_equilibrium) {
      ++equilibria;
      CHECK(v.criterion == Criterion::Inconclusive);
      REQUIRE(v.representative);
      CHECK((*v.representative)[0] == doctest::Approx((*v.representative)[1] * (*v.representative)[1]));
    } else {
      ++settled;
      CHECK(v.criterion == Criterion::HessianPD);
    }
  }
  CHECK(equilibria >= 1);
  CHECK(settled >= 1);
  CHECK(r.overall == Overall::Inconclusive);
  bool pd = false;
  for (const auto& v : r.boundary_verdicts) pd = pd || v.criterion == Criterion::HessianPD;
  CHECK(pd);
}

TEST_CASE("missing solution is reported, not thrown") {
  for (const char* name : {"decay.crn", "one_sided_push.crn"}) {
    const auto r = run(load(name));
    REQUIRE(r.error);
    CHECK(*r.error == ErrorKind::NoSolutionAvailable);
    CHECK(r.overall == Overall::Inconclusive);
    CHECK_FALSE(r.solution);
    CHECK_FALSE(r.boundary_verdicts.empty());
  }
}

TEST_CASE("JSON and text reports") {
  const auto r = run(load("wi_endotactic_1d.crn"), true);
  const auto j = report_to_json(r);
  const auto back = nlohmann::ordered_json::parse(emit_report(r, ReportFormat::Json));
  CHECK(back == j);
  CHECK(j["overall"] == "Persistent");
  CHECK(j["solution"]["family"] == "one_d_integral");
  CHECK(j["boundary_verdicts"].size() == 3);
  CHECK(j["probes_are_evidence_only"] == true);
  const auto text = emit_report(r, ReportFormat::Text);
  CHECK(text.find("Overall: Persistent (Theorem 5.1)") != std::string::npos);
  CHECK(text.find("LocalMax_Thm5_1") != std::string::npos);
}

TEST_CASE("diagnose is deterministic for a fixed seed") {
  const auto net = load("reversible_triangle.crn");
  DiagnoseOptions o;
  o.probe_starts = 3;
  o.horizon = 50;
  const std::vector<double> anchor = {1.0, 1.0};
  const auto a = report_to_json(diagnose(net, anchor, o)).dump();
  const auto b = report_to_json(diagnose(net, anchor, o)).dump();
  CHECK(a == b);
}

TEST_CASE("verdict does not depend on the rates for the wi fixture") {
  const auto net = load("wi_endotactic_1d.crn");
  for (auto k : {std::vector<double>{0.1, 10.0}, {7.0, 0.02}, {1e-3, 1e3}}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = run(net.with_rates(k));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(r.overall == Overall::Persistent);
    CHECK(secs < 5.0);
  }
}

TEST_CASE("other persistent fixtures") {
  for (const char* name : {"reversible_triangle.crn", "two_step_chain.crn", "dimer_return.crn", "isomerization.crn",
                           "cycle3.crn", "catalyst.crn"}) {
    CAPTURE(name);
    CHECK(run(load(name)).overall == Overall::Persistent);
  }
}
