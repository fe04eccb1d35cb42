// crn-persist: command-line front end for the persistence library.
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "crn/diagnose.hpp"
#include "crn/dynamics.hpp"
#include "crn/endotactic.hpp"
#include "crn/error.hpp"
#include "crn/kinetics.hpp"
#include "crn/lyapunov.hpp"
#include "crn/lyapunov_1d.hpp"
#include "crn/parse.hpp"
#include "crn/siphon.hpp"
#include "crn/stoich.hpp"

using namespace crn;
using nlohmann::ordered_json;

namespace {

struct Args {
  std::string file;
  std::string anchor;
  double horizon = 1e3;
  double tol = 1e-9;
  double eps = 1e-6;
  std::string format = "text";
  std::uint64_t seed = 1;
  int max_coeff = 6;
  int points = 101;
};

std::string read_input(const std::string& file) {
  if (file.empty() || file == "-") {
    return {std::istreambuf_iterator<char>(std::cin), {}};
  }
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> parse_anchor(const std::string& s, std::size_t n) {
  if (s.empty()) return std::vector<double>(n, 1.0);
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(std::stod(item));
  if (v.size() != n) throw Error(ErrorKind::DimensionMismatch, "anchor needs " + std::to_string(n) + " components");
  return v;
}

ordered_json int_vec(const std::vector<std::int64_t>& v) {
  ordered_json a = ordered_json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

std::string join(const std::vector<std::int64_t>& v) {
  std::string s = "(";
  for (std::size_t j = 0; j < v.size(); ++j) s += (j ? "," : "") + std::to_string(v[j]);
  return s + ")";
}

int cmd_validate(const NetworkDocument& doc, const Args& a) {
  if (a.format == "json")
    std::cout << to_json(doc).dump(2) << "\n";
  else
    std::cout << format_network(doc);
  return 0;
}

int cmd_analyze(const NetworkDocument& doc, const Args& a) {
  const auto& net = doc.network;
  const auto st = stoich_structure(net);
  const auto z = positive_conservation_law(net);
  if (a.format == "json") {
    ordered_json j;
    j["species"] = net.species();
    j["reactions"] = net.num_reactions();
    j["complexes"] = net.complexes().size();
    j["rank"] = st.rank;
    ordered_json basis = ordered_json::array();
    for (const auto& b : st.basis) basis.push_back(int_vec(b));
    j["basis"] = basis;
    j["linkage_classes"] = st.linkage_classes.size();
    j["weakly_reversible"] = st.weakly_reversible;
    j["deficiency"] = st.deficiency;
    ordered_json laws = ordered_json::array();
    for (const auto& c : st.conservation_laws) laws.push_back(int_vec(c));
    j["conservation_laws"] = laws;
    j["positive_conservation_law"] = z ? int_vec(*z) : ordered_json(nullptr);
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << net.num_species() << " species, " << net.num_reactions() << " reactions, " << net.complexes().size()
            << " complexes\n";
  std::cout << "rank " << st.rank << ", deficiency " << st.deficiency << ", " << st.linkage_classes.size()
            << " linkage classes, " << (st.weakly_reversible ? "weakly reversible" : "not weakly reversible") << "\n";
  std::cout << "basis:";
  for (const auto& b : st.basis) std::cout << " " << join(b);
  std::cout << "\nconservation laws:";
  for (const auto& c : st.conservation_laws) std::cout << " " << join(c);
  std::cout << "\npositive conservation law: " << (z ? join(*z) : std::string("none")) << "\n";
  return 0;
}

int cmd_siphons(const NetworkDocument& doc, const Args& a) {
  const auto& net = doc.network;
  const auto anchor = parse_anchor(a.anchor, net.num_species());
  auto siphons = enumerate_siphons(net);
  ordered_json arr = ordered_json::array();
  for (auto& s : siphons) {
    auto att = attainable_in_class(net, s.w_set, anchor);
    if (a.format == "json") {
      ordered_json e;
      ordered_json w = ordered_json::array();
      for (auto j : s.w_set.members()) w.push_back(net.species()[j]);
      e["w"] = w;
      e["is_locking"] = s.is_locking;
      e["attainable"] = to_string(att.status);
      arr.push_back(e);
    } else {
      std::cout << s.w_set.to_string(net) << (s.is_locking ? " locking" : "") << " attainable=" << to_string(att.status)
                << "\n";
    }
  }
  if (a.format == "json") std::cout << arr.dump(2) << "\n";
  if (siphons.empty() && a.format != "json") std::cout << "no siphons\n";
  return 0;
}

ordered_json verdict_json(const Network& net, const EndotacticVerdict& v) {
  ordered_json j;
  j["holds"] = v.holds;
  if (v.witness) {
    j["witness_direction"] = int_vec(v.witness->w.components());
    j["witness_reaction"] = v.witness->reaction;
    if (v.witness->siphon) j["witness_siphon"] = v.witness->siphon->to_string(net);
  }
  return j;
}

int cmd_endotactic(const NetworkDocument& doc, const Args& a) {
  const auto& net = doc.network;
  const auto st = stoich_structure(net);
  std::vector<std::pair<std::string, EndotacticVerdict>> rows;
  rows.emplace_back("w_i_endotactic", is_WI_endotactic(net));
  if (net.num_species() == 2) {
    rows.emplace_back("endotactic", is_endotactic_2species(net));
    rows.emplace_back("strongly_endotactic", is_strongly_endotactic_2species(net));
  }
  if (st.rank == 1) {
    try {
      rows.emplace_back("one_d_endotactic", is_1D_endotactic(net));
    } catch (const Error&) {
    }
  }
  if (a.format == "json") {
    ordered_json j;
    for (const auto& [name, v] : rows) j[name] = verdict_json(net, v);
    if (net.num_species() != 2) j["endotactic"] = "not decided";
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  for (const auto& [name, v] : rows) {
    std::cout << name << ": " << (v.holds ? "yes" : "no");
    if (v.witness)
      std::cout << " (w=" << v.witness->w.to_string() << ", reaction " << v.witness->reaction
                << (v.witness->siphon ? ", siphon " + v.witness->siphon->to_string(net) : std::string()) << ")";
    std::cout << "\n";
  }
  if (net.num_species() != 2) std::cout << "endotactic: not decided\n";
  return 0;
}

std::optional<LyapunovSolution> any_solution(const Network& net, std::span<const double> anchor, int max_coeff) {
  const auto st = stoich_structure(net);
  if (st.rank == 1 && decompose_1d(net).has_both_signs) return LyapunovSolution::one_d(net, anchor);
  AnsatzOptions o;
  o.max_coeff = max_coeff;
  return separable_ansatz_search(net, o);
}

int cmd_lyapunov(const NetworkDocument& doc, const Args& a) {
  const auto& net = doc.network;
  const std::size_t n = net.num_species();
  const auto anchor = parse_anchor(a.anchor, n);
  const auto sol = any_solution(net, anchor, a.max_coeff);
  if (!sol) throw Error(ErrorKind::NoSolutionAvailable, "no Lyapunov solution found");
  if (a.format == "json") {
    ordered_json j;
    j["family"] = to_string(sol->family());
    j["description"] = sol->describe();
    if (const auto* sf = sol->separable_form()) {
      j["c"] = sf->c;
      j["x_star"] = sf->x_star;
    }
    std::mt19937_64 rng(a.seed);
    std::uniform_real_distribution<double> logu(std::log(0.2), std::log(5.0));
    double worst = 0.0, fdot = -std::numeric_limits<double>::infinity();
    std::vector<double> x(n);
    const int pts = std::max(a.points, 1);
    for (int p = 0; p < pts; ++p) {
      for (auto& v : x) v = std::exp(logu(rng));
      worst = std::max(worst, std::abs(pde_residual(net, *sol, x)));
      fdot = std::max(fdot, sol->f_dot_at(net, x));
    }
    j["certificate"] = {{"points", pts}, {"max_pde_residual", worst}, {"max_f_dot", fdot}};
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  // CSV along the class line through the anchor, in the direction of the first basis vector
  const auto st = stoich_structure(net);
  std::vector<double> b(n);
  for (std::size_t j = 0; j < n; ++j) b[j] = static_cast<double>(st.basis.front()[j]);
  double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    if (b[j] > 0) lo = std::max(lo, -anchor[j] / b[j]);
    if (b[j] < 0) hi = std::min(hi, -anchor[j] / b[j]);
  }
  if (!std::isfinite(lo)) lo = -10.0;
  if (!std::isfinite(hi)) hi = 10.0;
  const std::optional<OneDimStructure> s1 =
      sol->family() == SolutionFamily::OneDIntegral ? std::optional(sol->one_d_form()->s) : std::nullopt;
  std::cout << "gamma";
  for (const auto& name : net.species()) std::cout << "," << name;
  std::cout << ",u_tilde,f,f_dot\n";
  const int pts = std::max(a.points, 2);
  std::vector<double> x(n);
  for (int k = 0; k < pts; ++k) {
    const double t = lo + (hi - lo) * (k + 1.0) / (pts + 1.0);
    for (std::size_t j = 0; j < n; ++j) x[j] = anchor[j] + t * b[j];
    std::cout << format_double(t);
    for (double v : x) std::cout << "," << format_double(v);
    std::cout << "," << (s1 ? format_double(solve_u_tilde(*s1, x)) : std::string("nan"));
    std::cout << "," << format_double(sol->value_at(x)) << "," << format_double(sol->f_dot_at(net, x)) << "\n";
  }
  return 0;
}

int cmd_simulate(const NetworkDocument& doc, const Args& a) {
  const auto& net = doc.network;
  const auto x0 = parse_anchor(a.anchor, net.num_species());
  SimulateOptions o;
  o.horizon = a.horizon;
  o.tol = a.tol;
  o.event_eps = a.eps;
  o.samples = static_cast<std::size_t>(std::max(a.points, 1001));
  const auto tr = simulate(net, x0, o);
  std::cout << "time";
  for (const auto& name : net.species()) std::cout << "," << name;
  std::cout << "\n";
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    std::cout << format_double(tr.times[k]);
    for (double v : tr.states[k]) std::cout << "," << format_double(v);
    std::cout << "\n";
  }
  return 0;
}

int cmd_diagnose(const NetworkDocument& doc, const Args& a) {
  const auto& net = doc.network;
  const auto anchor = parse_anchor(a.anchor, net.num_species());
  DiagnoseOptions o;
  o.ansatz.max_coeff = a.max_coeff;
  o.horizon = a.horizon;
  o.tol = a.tol;
  o.eps = a.eps;
  o.seed = a.seed;
  const auto rep = diagnose(net, anchor, o);
  std::cout << emit_report(rep, a.format == "json" ? ReportFormat::Json : ReportFormat::Text);
  return rep.error ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Persistence diagnosis for mass-action reaction networks"};
  app.require_subcommand(1);
  Args a;
  const std::vector<std::pair<std::string, std::string>> subs = {
      {"validate", "parse and print the network in canonical form"},
      {"analyze", "stoichiometric and graph structure"},
      {"siphons", "enumerate siphons and their attainability"},
      {"endotactic", "endotactic classifications"},
      {"lyapunov", "tabulate the Lyapunov solution (CSV) or its certificate (json)"},
      {"simulate", "integrate the mass-action ODE from --anchor (CSV)"},
      {"diagnose", "full persistence diagnosis"},
  };
  for (const auto& [name, help] : subs) {
    auto* sc = app.add_subcommand(name, help);
    sc->add_option("file", a.file, "network file (stdin if omitted)");
    sc->add_option("--anchor", a.anchor, "comma-separated positive point");
    sc->add_option("--horizon", a.horizon, "simulation horizon");
    sc->add_option("--tol", a.tol, "integrator tolerance");
    sc->add_option("--eps", a.eps, "boundary proximity threshold");
    sc->add_option("--format", a.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sc->add_option("--seed", a.seed, "random seed");
    sc->add_option("--max-coeff", a.max_coeff, "largest separable ansatz coefficient")->check(CLI::Range(1, 6));
    sc->add_option("--points", a.points, "samples for tables and certificates");
  }
  CLI11_PARSE(app, argc, argv);
  const std::string cmd = app.get_subcommands().front()->get_name();

  NetworkDocument doc = [&]() -> NetworkDocument {
    try {
      return parse_text(read_input(a.file), a.file.empty() ? "<stdin>" : a.file);
    } catch (const ParseError& e) {
      std::cerr << (a.file.empty() ? "<stdin>" : a.file) << ":" << e.what() << "\n";
      std::exit(2);
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      std::exit(2);
    }
  }();
  try {
    if (cmd == "validate") return cmd_validate(doc, a);
    if (cmd == "analyze") return cmd_analyze(doc, a);
    if (cmd == "siphons") return cmd_siphons(doc, a);
    if (cmd == "endotactic") return cmd_endotactic(doc, a);
    if (cmd == "lyapunov") return cmd_lyapunov(doc, a);
    if (cmd == "simulate") return cmd_simulate(doc, a);
    return cmd_diagnose(doc, a);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
