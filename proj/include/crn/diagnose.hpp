#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "crn/dynamics.hpp"
#include "crn/error.hpp"
#include "crn/lyapunov.hpp"
#include "crn/network.hpp"
#include "crn/siphon.hpp"

namespace crn {

enum class Criterion { NonSiphon, HessianPD, LocalMax, Unattainable, Inconclusive };
// Wire labels used in reports: NonSiphon_Thm4_2, HessianPD_Thm4_3, LocalMax_Thm5_1, ...
const char* criterion_label(Criterion c);
const char* criterion_theorem(Criterion c);

struct BoundaryVerdict {
  BoundaryClass boundary_class;
  std::optional<std::vector<double>> representative;
  bool is_equilibrium = false;
  Criterion criterion = Criterion::Inconclusive;
  nlohmann::ordered_json evidence = nlohmann::ordered_json::object();
};

enum class BoundednessBasis { WSEndotactic1d, ConservationLaw, EmpiricalOnly };
const char* to_string(BoundednessBasis b);

enum class Overall { Persistent, Inconclusive };

struct SolutionProvenance {
  SolutionFamily family;
  std::string description;
  std::string certified_by;
  double max_pde_residual = 0.0;
};

struct NetworkSummary {
  std::vector<std::string> species;
  std::size_t reactions = 0;
  std::size_t rank = 0;
  int deficiency = 0;
  bool weakly_reversible = false;
};

struct ProbeEntry {
  std::vector<double> start;
  std::optional<ProbeReport> report;
  std::string failure;  // set when the simulation stopped early
};

struct PersistenceReport {
  NetworkSummary network;
  std::vector<double> anchor;
  std::optional<SolutionProvenance> solution;
  std::optional<ErrorKind> error;  // NoSolutionAvailable: report is still complete
  std::vector<BoundaryVerdict> boundary_verdicts;
  BoundednessBasis boundedness = BoundednessBasis::EmpiricalOnly;
  std::string boundedness_detail;
  Overall overall = Overall::Inconclusive;
  std::vector<std::string> theorem_chain;
  std::vector<ProbeEntry> probes;
  std::vector<std::string> notes;
};

struct DiagnoseOptions {
  AnsatzOptions ansatz;
  std::size_t representatives = 5;
  bool run_probes = true;
  std::size_t probe_starts = 10;
  double horizon = 1e3;
  double tol = 1e-9;
  double eps = 1e-6;
  std::uint64_t seed = 1;
};

PersistenceReport diagnose(const Network& net, std::span<const double> anchor, const DiagnoseOptions& opts = {});

enum class ReportFormat { Json, Text };
nlohmann::ordered_json report_to_json(const PersistenceReport& report);
std::string emit_report(const PersistenceReport& report, ReportFormat format);

}  // namespace crn
