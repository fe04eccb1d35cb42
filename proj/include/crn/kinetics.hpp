#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "crn/network.hpp"

namespace crn {

// x^v with the convention 0^0 = 1; integer powers by repeated multiplication.
double monomial(std::span<const double> x, const Complex& v);

std::vector<double> mass_action_rhs(const Network& net, std::span<const double> x);
Eigen::MatrixXd rhs_jacobian(const Network& net, std::span<const double> x);

// Per complex (net.complexes() order): outflow minus inflow.
std::vector<double> complex_balance_residual(const Network& net, std::span<const double> x);

double max_abs(std::span<const double> v);

// Affine piece of a stoichiometric class: origin + span(directions), with the
// coordinates in `zero_coords` pinned at 0 and all others required positive.
struct AffineFace {
  std::vector<double> origin;
  Eigen::MatrixXd directions;  // orthonormal columns
  std::vector<bool> pinned;
};

// Orthonormal basis of {d in S : d_j = 0 for j in zero_coords}.
Eigen::MatrixXd face_directions(const Network& net, const std::vector<std::size_t>& zero_coords);
AffineFace make_face(const Network& net, std::vector<double> origin, const std::vector<std::size_t>& zero_coords);

// Orthogonal projection into the face, pulled back toward the origin until feasible.
std::vector<double> project_into(const AffineFace& face, std::span<const double> y);

struct EquilibriumOptions {
  int starts = 32;
  int max_iter = 100;
  double tol = 1e-10;
  std::uint64_t seed = 20240917;
};

// Damped Newton from the origin and from log-uniform random starts in [1e-3, 1e3]^n.
// Returns every distinct converged point, origin-start first.
std::vector<std::vector<double>> solve_on_face(const Network& net, const AffineFace& face,
                                               const EquilibriumOptions& opts = {});

std::optional<std::vector<double>> find_positive_equilibrium(const Network& net, std::span<const double> anchor,
                                                             const EquilibriumOptions& opts = {});

}  // namespace crn
