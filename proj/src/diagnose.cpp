#include "crn/diagnose.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "crn/endotactic.hpp"
#include "crn/kinetics.hpp"
#include "crn/lyapunov_1d.hpp"
#include "crn/parse.hpp"
#include "crn/stoich.hpp"

namespace crn {

using nlohmann::ordered_json;

const char* criterion_label(Criterion c) {
  switch (c) {
    case Criterion::NonSiphon: return "NonSiphon_Thm4_2";
    case Criterion::HessianPD: return "HessianPD_Thm4_3";
    case Criterion::LocalMax: return "LocalMax_Thm5_1";
    case Criterion::Unattainable: return "Unattainable";
    case Criterion::Inconclusive: return "Inconclusive";
  }
  return "?";
}

const char* criterion_theorem(Criterion c) {
  switch (c) {
    case Criterion::NonSiphon: return "Theorem 4.2";
    case Criterion::HessianPD: return "Theorem 4.3";
    case Criterion::LocalMax: return "Theorem 5.1";
    case Criterion::Unattainable: return "not in the class";
    case Criterion::Inconclusive: return "no criterion applies";
  }
  return "?";
}

const char* to_string(BoundednessBasis b) {
  switch (b) {
    case BoundednessBasis::WSEndotactic1d: return "w_S_endotactic_1d";
    case BoundednessBasis::ConservationLaw: return "conservation_law";
    case BoundednessBasis::EmpiricalOnly: return "empirical_only";
  }
  return "?";
}

namespace {

constexpr double kMargin = 1e-6;

std::vector<double> scales_for(const LyapunovSolution& sol) {
  // u~ grows like a negative power of delta on 1d boundaries; stay clear of overflow
  const int last = sol.family() == SolutionFamily::OneDIntegral ? 60 : 300;
  std::vector<double> s;
  for (int k = 1; k <= last; ++k) s.push_back(std::pow(10.0, -k));
  return s;
}

double certificate_residual(const Network& net, const LyapunovSolution& sol, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> logu(std::log(0.2), std::log(5.0));
  std::vector<double> x(net.num_species());
  double worst = 0.0;
  for (int p = 0; p < 20; ++p) {
    for (auto& v : x) v = std::exp(logu(rng));
    worst = std::max(worst, std::abs(pde_residual(net, sol, x)));
  }
  return worst;
}

std::optional<LyapunovSolution> acquire_solution(const Network& net, const StoichStructure& st,
                                                 std::span<const double> anchor, const DiagnoseOptions& opts,
                                                 std::string& certified_by, std::vector<std::string>& notes) {
  if (st.rank == 1) {
    const auto s = decompose_1d(net);
    if (s.has_both_signs) {
      certified_by = "one_d_integral";
      return LyapunovSolution::one_d(net, anchor);
    }
    notes.push_back("rank one but every reaction moves the same way along b");
  }
  try {
    if (auto sol = separable_ansatz_search(net, opts.ansatz)) {
      certified_by = "separable_ansatz";
      return sol;
    }
  } catch (const Error& e) {
    notes.push_back(std::string("separable search skipped: ") + e.what());
  }
  if (auto eq = find_positive_equilibrium(net, anchor)) {
    if (st.deficiency == 0 && st.weakly_reversible) {
      certified_by = "deficiency_zero_weakly_reversible";
      return LyapunovSolution::pseudo_helmholtz(*eq);
    }
    if (max_abs(complex_balance_residual(net, *eq)) < 1e-9) {
      certified_by = "complex_balance_residual";
      return LyapunovSolution::pseudo_helmholtz(*eq);
    }
  }
  return std::nullopt;
}

ordered_json approach_json(const ApproachResult& r) {
  ordered_json j;
  j["classification"] = to_string(r.classification);
  j["smallest_scale"] = r.scales.back();
  j["f_dot_at_smallest_scale"] = r.f_dot.back();
  if (std::isfinite(r.limit)) j["limit"] = r.limit;
  return j;
}

// Which orientation of b enters the orthant from x_bar; 0 if neither.
int entering_sign(const OneDimStructure& s, std::span<const double> x_bar) {
  bool plus = true, minus = true;
  for (std::size_t j = 0; j < x_bar.size(); ++j) {
    if (x_bar[j] != 0.0) continue;
    plus = plus && s.b[j] > 0;
    minus = minus && s.b[j] < 0;
  }
  return plus ? 1 : minus ? -1 : 0;
}

void judge_point(const Network& net, const StoichStructure& st, const LyapunovSolution* sol,
                 std::span<const double> anchor, bool wi_endotactic, BoundaryVerdict& v) {
  const auto& x = *v.representative;
  const auto& cls = v.boundary_class;
  const std::size_t n = net.num_species();
  const double rhs = max_abs(mass_action_rhs(net, x));
  v.is_equilibrium = rhs < 1e-10 * (1.0 + max_abs(x));
  v.evidence["rhs_max_abs"] = rhs;
  if (!sol) {
    v.evidence["reason"] = "no Lyapunov solution";
    return;
  }
  std::vector<double> path(n);
  for (std::size_t j = 0; j < n; ++j) path[j] = anchor[j] - x[j];
  const auto scales = scales_for(*sol);

  if (!cls.is_siphon) {
    const auto r = boundary_approach_experiment(net, x, *sol, scales, path);
    v.evidence["approach"] = approach_json(r);
    if (r.classification == ApproachClass::DivergesToMinusInfinity)
      v.criterion = Criterion::NonSiphon;
    else
      v.evidence["reason"] = "f_dot not seen to diverge";
    return;
  }

  if (const auto* od = sol->one_d_form(); od && st.rank == 1) {
    if (!wi_endotactic) {
      v.evidence["reason"] = "not W_I-endotactic";
      return;
    }
    const int sign = entering_sign(od->s, x);
    if (sign == 0) {
      v.evidence["reason"] = "no orientation of b enters the orthant";
      return;
    }
    const auto lim = boundary_u_limit(od->s, x, sign);
    ordered_json u;
    u["direction_sign"] = sign;
    u["diverges"] = lim.diverges;
    if (!lim.diverges) u["value"] = lim.value;
    u["converged"] = lim.converged;
    v.evidence["u_tilde_limit"] = u;
    v.evidence["margin"] = kMargin;
    // f must decrease going inward: sign * ln u~ < 0
    const bool local_max = sign > 0 ? below_one(lim, kMargin)
                                    : (lim.diverges || (lim.converged && lim.value > 1.0 + kMargin));
    if (!v.is_equilibrium) {
      v.evidence["reason"] = "siphon point of a 1d network is not an equilibrium";
      return;
    }
    if (local_max)
      v.criterion = Criterion::LocalMax;
    else
      v.evidence["reason"] = "u~ limit on the wrong side of 1";
    return;
  }

  if (sol->separable_form()) {
    if (v.is_equilibrium) {
      v.evidence["reason"] = "boundary equilibrium";
      return;
    }
    std::vector<std::vector<double>> samples;
    for (double d : {1e-1, 1e-3, 1e-6}) {
      std::vector<double> p(n);
      for (std::size_t j = 0; j < n; ++j) p[j] = x[j] + d * path[j];
      samples.push_back(std::move(p));
    }
    const bool pd = hessian_is_pd_diagonal(*sol, samples);
    const auto r = boundary_approach_experiment(net, x, *sol, scales, path);
    v.evidence["hessian_pd_diagonal"] = pd;
    v.evidence["approach"] = approach_json(r);
    v.evidence["margin"] = kMargin;
    const bool negative = r.classification == ApproachClass::DivergesToMinusInfinity ||
                          r.classification == ApproachClass::BoundedNegative;
    if (pd && negative)
      v.criterion = Criterion::HessianPD;
    else
      v.evidence["reason"] = pd ? "f_dot limit not negative beyond the margin" : "Hessian not positive definite";
    return;
  }
  v.evidence["reason"] = "siphon with no applicable criterion";
}

bool close_to_any(const std::vector<std::vector<double>>& pts, const std::vector<double>& p) {
  for (const auto& q : pts) {
    double d = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) d = std::max(d, std::abs(p[j] - q[j]));
    if (d < 1e-8 * (1.0 + max_abs(p))) return true;
  }
  return false;
}

}  // namespace

PersistenceReport diagnose(const Network& net, std::span<const double> anchor, const DiagnoseOptions& opts) {
  const std::size_t n = net.num_species();
  if (anchor.size() != n) throw Error(ErrorKind::DimensionMismatch, "anchor length");
  for (double a : anchor)
    if (!(a > 0.0)) throw Error(ErrorKind::NonPositiveAnchor, "anchor must be strictly positive");

  PersistenceReport rep;
  rep.anchor.assign(anchor.begin(), anchor.end());
  const auto st = stoich_structure(net);
  rep.network = {net.species(), net.num_reactions(), st.rank, st.deficiency, st.weakly_reversible};

  std::string certified_by;
  auto sol = acquire_solution(net, st, anchor, opts, certified_by, rep.notes);
  if (sol) {
    const double res = certificate_residual(net, *sol, opts.seed);
    if (res < 1e-8) {
      rep.solution = SolutionProvenance{sol->family(), sol->describe(), certified_by, res};
    } else {
      rep.notes.push_back(sol->describe() + " rejected: PDE residual " + format_double(res));
      sol.reset();
    }
  }
  if (!sol) {
    rep.error = ErrorKind::NoSolutionAvailable;
  }

  const bool wi = st.rank == 1 && is_WI_endotactic(net).holds;
  const auto classes = enumerate_boundary_classes(net, anchor);
  for (const auto& cls : classes) {
    if (cls.attainable == Attainability::No) {
      BoundaryVerdict v;
      v.boundary_class = cls;
      v.criterion = Criterion::Unattainable;
      rep.boundary_verdicts.push_back(std::move(v));
      continue;
    }
    if (cls.attainable == Attainability::Unknown) {
      BoundaryVerdict v;
      v.boundary_class = cls;
      v.evidence["reason"] = "attainability undecided";
      rep.boundary_verdicts.push_back(std::move(v));
      continue;
    }
    auto pts = face_representatives(net, cls.w_set, anchor, opts.representatives);
    if (cls.is_siphon && !pts.empty()) {
      // boundary equilibria on the face get their own verdicts
      const auto face = make_face(net, pts.front(), cls.w_set.members());
      for (auto& e : solve_on_face(net, face))
        if (!close_to_any(pts, e)) pts.push_back(std::move(e));
    }
    for (auto& p : pts) {
      BoundaryVerdict v;
      v.boundary_class = cls;
      v.representative = std::move(p);
      try {
        judge_point(net, st, sol ? &*sol : nullptr, anchor, wi, v);
      } catch (const Error& e) {
        v.criterion = Criterion::Inconclusive;
        v.evidence["reason"] = std::string("evaluation failed: ") + e.what();
      }
      rep.boundary_verdicts.push_back(std::move(v));
    }
  }

  if (st.rank == 1 && is_w_endotactic(net, DirectionVector(std::vector<std::int64_t>(n, 1))).holds) {
    rep.boundedness = BoundednessBasis::WSEndotactic1d;
    rep.boundedness_detail = "1d and w-endotactic for w = (1,...,1)";
  } else if (auto z = positive_conservation_law(net)) {
    rep.boundedness = BoundednessBasis::ConservationLaw;
    std::ostringstream os;
    os << "positive conservation law (";
    for (std::size_t j = 0; j < z->size(); ++j) os << (j ? "," : "") << (*z)[j];
    os << ")";
    rep.boundedness_detail = os.str();
  } else {
    rep.boundedness = BoundednessBasis::EmpiricalOnly;
    rep.boundedness_detail = "no structural bound; see probes";
  }

  bool all_ok = sol.has_value() && rep.boundedness != BoundednessBasis::EmpiricalOnly;
  std::set<Criterion> used;
  for (const auto& v : rep.boundary_verdicts) {
    if (v.criterion == Criterion::Inconclusive) all_ok = false;
    used.insert(v.criterion);
  }
  rep.overall = all_ok ? Overall::Persistent : Overall::Inconclusive;
  if (all_ok) {
    if (sol->family() == SolutionFamily::OneDIntegral && wi) {
      rep.theorem_chain = {"Lemma 5.1", "Lemma 5.3", "Lemma 5.4", "Theorem 5.1"};
    } else {
      for (auto c : used)
        if (c != Criterion::Unattainable) rep.theorem_chain.push_back(criterion_theorem(c));
      rep.theorem_chain.push_back("Theorem 4.1");
    }
  }

  if (opts.run_probes) {
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unif(0.5, 5.0);
    rep.probes.resize(opts.probe_starts);
    for (auto& pe : rep.probes) {
      pe.start.resize(n);
      for (auto& v : pe.start) v = unif(rng);
    }
    SimulateOptions so;
    so.horizon = opts.horizon;
    so.tol = opts.tol;
    so.event_eps = opts.eps;
    for (auto& pe : rep.probes) {
      try {
        const auto tr = simulate(net, pe.start, so);
        pe.report = probe(tr, opts.eps, sol && sol->separable_form() ? &*sol : nullptr);
      } catch (const Error& e) {
        pe.failure = e.what();
      }
    }
  }
  return rep;
}

namespace {

ordered_json vec_json(std::span<const double> v) {
  ordered_json a = ordered_json::array();
  for (double x : v) a.push_back(x);
  return a;
}

std::string set_text(const std::vector<std::string>& species, const SpeciesSet& w) {
  std::string s = "{";
  for (std::size_t k = 0; k < w.members().size(); ++k) s += (k ? "," : "") + species[w.members()[k]];
  return s + "}";
}

std::string vec_text(std::span<const double> v) {
  std::string s = "(";
  for (std::size_t j = 0; j < v.size(); ++j) s += (j ? ", " : "") + format_double(v[j]);
  return s + ")";
}

}  // namespace

ordered_json report_to_json(const PersistenceReport& r) {
  ordered_json j;
  j["network"] = {{"species", r.network.species},
                  {"reactions", r.network.reactions},
                  {"rank", r.network.rank},
                  {"deficiency", r.network.deficiency},
                  {"weakly_reversible", r.network.weakly_reversible}};
  j["anchor"] = vec_json(r.anchor);
  if (r.solution) {
    j["solution"] = {{"family", to_string(r.solution->family)},
                     {"description", r.solution->description},
                     {"certified_by", r.solution->certified_by},
                     {"max_pde_residual", r.solution->max_pde_residual}};
  } else {
    j["solution"] = nullptr;
  }
  j["error"] = r.error ? ordered_json(to_string(*r.error)) : ordered_json(nullptr);
  ordered_json verdicts = ordered_json::array();
  for (const auto& v : r.boundary_verdicts) {
    ordered_json e;
    ordered_json w = ordered_json::array();
    for (auto k : v.boundary_class.w_set.members()) w.push_back(r.network.species[k]);
    e["w"] = w;
    e["is_siphon"] = v.boundary_class.is_siphon;
    e["is_locking"] = v.boundary_class.is_locking;
    e["attainable"] = to_string(v.boundary_class.attainable);
    e["representative"] = v.representative ? vec_json(*v.representative) : ordered_json(nullptr);
    e["is_equilibrium"] = v.is_equilibrium;
    e["criterion"] = criterion_label(v.criterion);
    e["evidence"] = v.evidence;
    verdicts.push_back(std::move(e));
  }
  j["boundary_verdicts"] = verdicts;
  j["boundedness"] = {{"basis", to_string(r.boundedness)}, {"detail", r.boundedness_detail}};
  j["overall"] = r.overall == Overall::Persistent ? "Persistent" : "Inconclusive";
  j["theorem_chain"] = r.theorem_chain;
  ordered_json probes = ordered_json::array();
  for (const auto& p : r.probes) {
    ordered_json e;
    e["start"] = vec_json(p.start);
    if (p.report) {
      e["min_concentration"] = vec_json(p.report->min_concentration);
      e["bounded"] = p.report->bounded;
      e["max_norm"] = p.report->max_norm;
      e["residence_fraction"] = p.report->residence_fraction;
      e["f_dot_max_violation"] =
          p.report->f_dot_max_violation ? ordered_json(*p.report->f_dot_max_violation) : ordered_json(nullptr);
    } else {
      e["failure"] = p.failure;
    }
    probes.push_back(std::move(e));
  }
  j["probes"] = probes;
  j["probes_are_evidence_only"] = true;
  j["notes"] = r.notes;
  return j;
}

std::string emit_report(const PersistenceReport& r, ReportFormat format) {
  if (format == ReportFormat::Json) return report_to_json(r).dump(2) + "\n";
  std::ostringstream os;
  const auto& sp = r.network.species;
  os << "Network: " << sp.size() << " species, " << r.network.reactions << " reactions, rank " << r.network.rank
     << ", deficiency " << r.network.deficiency << (r.network.weakly_reversible ? ", weakly reversible" : "") << "\n";
  os << "Anchor: " << vec_text(r.anchor) << "\n";
  if (r.solution)
    os << "Lyapunov solution: " << r.solution->description << " [" << r.solution->certified_by
       << ", max PDE residual " << format_double(r.solution->max_pde_residual) << "]\n";
  else
    os << "Lyapunov solution: none (NoSolutionAvailable)\n";
  os << "Boundary classes:\n";
  for (const auto& v : r.boundary_verdicts) {
    os << "  W=" << set_text(sp, v.boundary_class.w_set) << (v.boundary_class.is_siphon ? " siphon" : " non-siphon")
       << " attainable=" << to_string(v.boundary_class.attainable);
    if (v.representative) os << " x=" << vec_text(*v.representative) << (v.is_equilibrium ? " equilibrium" : "");
    os << " -> " << criterion_label(v.criterion);
    if (v.criterion != Criterion::Inconclusive && v.criterion != Criterion::Unattainable)
      os << " (" << criterion_theorem(v.criterion) << ")";
    if (v.evidence.contains("reason")) os << " [" << v.evidence["reason"].get<std::string>() << "]";
    os << "\n";
  }
  os << "Boundedness: " << to_string(r.boundedness) << " - " << r.boundedness_detail << "\n";
  if (r.overall == Overall::Persistent)
    os << "Overall: Persistent (" << r.theorem_chain.back() << ")\n";
  else
    os << "Overall: Inconclusive\n";
  if (!r.probes.empty()) {
    os << "Probes (simulation evidence, not proof):\n";
    os << "  start | min concentration | bounded | residence\n";
    for (const auto& p : r.probes) {
      os << "  " << vec_text(p.start) << " | ";
      if (p.report)
        os << format_double(*std::min_element(p.report->min_concentration.begin(), p.report->min_concentration.end()))
           << " | " << (p.report->bounded ? "yes" : "no") << " | " << format_double(p.report->residence_fraction);
      else
        os << "failed: " << p.failure;
      os << "\n";
    }
  }
  for (const auto& note : r.notes) os << "Note: " << note << "\n";
  return os.str();
}

}  // namespace crn
