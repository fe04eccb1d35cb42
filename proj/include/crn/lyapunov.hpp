#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "crn/lyapunov_1d.hpp"
#include "crn/network.hpp"

namespace crn {

enum class SolutionFamily { PseudoHelmholtz, Separable, OneDIntegral };
const char* to_string(SolutionFamily f);

// f(x) = sum_j c_j (x_j ln(x_j / x*_j) - x_j + x*_j)
struct SeparableForm {
  std::vector<double> c;
  std::vector<double> x_star;
};

// f(x) = int_0^gamma(x) ln u~(y_dagger + tau b) dtau - offset
struct OneDIntegralForm {
  OneDimStructure s;
  LineParam line;
  double offset = 0.0;
};

class LyapunovSolution {
 public:
  static LyapunovSolution pseudo_helmholtz(std::vector<double> x_star);
  static LyapunovSolution separable(std::vector<double> c, std::vector<double> x_star);
  // Offset so that the minimum over the class segment through anchor is zero.
  static LyapunovSolution one_d(const Network& net, std::span<const double> anchor);

  SolutionFamily family() const { return family_; }
  const SeparableForm* separable_form() const { return std::get_if<SeparableForm>(&form_); }
  const OneDIntegralForm* one_d_form() const { return std::get_if<OneDIntegralForm>(&form_); }
  std::string describe() const;

  double value_at(std::span<const double> x) const;
  std::vector<double> grad_at(std::span<const double> x) const;
  std::optional<std::vector<double>> hessian_diag_at(std::span<const double> x) const;
  // d^T grad f(x); exact in ln u~ for d parallel to b
  double directional(std::span<const double> d, std::span<const double> x) const;
  // sum_i k_i x^v_i (v'_i - v_i)^T grad f(x)
  double f_dot_at(const Network& net, std::span<const double> x) const;

 private:
  SolutionFamily family_ = SolutionFamily::PseudoHelmholtz;
  std::variant<SeparableForm, OneDIntegralForm> form_;
};

inline LyapunovSolution pseudo_helmholtz(std::span<const double> x_star) {
  return LyapunovSolution::pseudo_helmholtz({x_star.begin(), x_star.end()});
}

double pde_residual(const Network& net, const LyapunovSolution& sol, std::span<const double> x);

struct BoundaryResidual {
  double cond_a = 0.0;  // reactions with reactant (resp. product) support inside supp(x_bar)
  double cond_b = 0.0;  // the complementary sums
  bool converged = false;
};

BoundaryResidual boundary_condition_residual(const Network& net, const LyapunovSolution& sol,
                                             std::span<const double> x_bar, std::span<const double> path_direction);

bool hessian_is_pd_diagonal(const LyapunovSolution& sol, const std::vector<std::vector<double>>& samples);

struct AnsatzOptions {
  int max_coeff = 6;
  int certify_points = 50;
  double certify_tol = 1e-9;
  std::uint64_t seed = 7;
};

// First c in lexicographic order over {1..max_coeff}^n admitting an x* that solves
// the PDE, certified by the residual at random points.
std::optional<LyapunovSolution> separable_ansatz_search(const Network& net, const AnsatzOptions& opts = {});

// Structural part of the search: do the shifted monomials v_i + c o (v'_i - v_i)
// reproduce exactly the reactant monomials?
bool ansatz_monomials_match(const Network& net, const std::vector<int>& c);
std::optional<std::vector<double>> ansatz_solve_x_star(const Network& net, const std::vector<int>& c);

}  // namespace crn
