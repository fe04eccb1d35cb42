#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "crn/network.hpp"

namespace crn {

// Rank-one view of a network: every reaction vector is m_i * b.
struct OneDimStructure {
  std::vector<std::int64_t> b;               // primitive, first nonzero entry positive
  std::vector<std::int64_t> m;               // per reaction
  std::vector<std::size_t> retained_species;  // b_j != 0
  std::vector<std::size_t> dropped_species;   // b_j == 0, constant along trajectories
  bool has_both_signs = false;
  std::vector<Complex> reactants;
  std::vector<double> rates;
};

OneDimStructure decompose_1d(const Network& net);

// h(x,u) = sum_{m>0} k x^v sum_{j=0}^{m-1} u^j - sum_{m<0} k x^v sum_{j=m}^{-1} u^j
double h_eval(const OneDimStructure& s, std::span<const double> x, double u);
double h_du(const OneDimStructure& s, std::span<const double> x, double u);

// Coefficients (low degree first) of u^M h(x,u), M = max |m_i| over m_i < 0.
std::vector<double> cleared_polynomial(const OneDimStructure& s, std::span<const double> x);
int sign_changes(std::span<const double> coeffs);

// Unique positive root of h(x, .).
double solve_u_tilde(const OneDimStructure& s, std::span<const double> x);
std::vector<double> grad_log_u_tilde(const OneDimStructure& s, std::span<const double> x);

struct LineParam {
  std::vector<double> anchor;
  std::vector<double> b;
  double bb = 1.0;

  double gamma(std::span<const double> x) const;
  std::vector<double> y_dagger(std::span<const double> x) const;
  std::vector<double> at(std::span<const double> y, double tau) const;
  // open interval of t with anchor + t b positive on the retained species
  std::pair<double, double> segment() const;
};

LineParam line_params(const OneDimStructure& s, std::span<const double> anchor);

// Raw integral  int_0^gamma(x) ln u~(y_dagger(x) + tau b) dtau  (not offset).
double f_eval(const OneDimStructure& s, std::span<const double> x, const LineParam& line);
// int_{t0}^{t1} ln u~(y + tau b) dtau; endpoints may lie on the boundary.
double line_integral(const OneDimStructure& s, const LineParam& line, std::span<const double> y, double t0, double t1);

// (sum_i m_i k_i x^v_i) ln u~(x); never positive.
double f_dot_eval(const OneDimStructure& s, std::span<const double> x);
double net_flux(const OneDimStructure& s, std::span<const double> x);

struct ULimit {
  bool diverges = false;
  double value = 0.0;       // extrapolated limit when !diverges
  bool converged = false;
  int direction_sign = 1;   // approach along x + delta * sign * b
  std::vector<double> samples;
};

// Limit of u~(x_bar + delta * sign * b) as delta -> 0+, from delta_k = delta0 2^-k, k = 0..40.
ULimit boundary_u_limit(const OneDimStructure& s, std::span<const double> x_bar, int direction_sign);
bool below_one(const ULimit& lim, double margin = 1e-6);

}  // namespace crn
