#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crn/lyapunov.hpp"
#include "crn/network.hpp"

namespace crn {

struct TrajectoryEvent {
  double time = 0.0;
  std::string kind;  // "below_eps" or "above_eps"
};

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  std::vector<TrajectoryEvent> events;
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
};

struct SimulateOptions {
  double horizon = 1e3;
  double tol = 1e-9;
  std::size_t samples = 1001;
  double event_eps = 1e-6;
  std::size_t max_steps = 50'000'000;
};

// Dormand-Prince 5(4). Steps that would leave the orthant are rejected, never clamped.
Trajectory simulate(const Network& net, std::span<const double> x0, const SimulateOptions& opts);
Trajectory simulate(const Network& net, std::span<const double> x0, double horizon, double tol);

struct ProbeReport {
  std::vector<double> min_concentration;
  bool bounded = false;
  double max_norm = 0.0;
  double residence_fraction = 0.0;
  std::optional<double> f_dot_max_violation;
  std::size_t lyapunov_samples_skipped = 0;
};

ProbeReport probe(const Trajectory& traj, double eps, const LyapunovSolution* lyap = nullptr,
                  double ceiling = 1e6);

enum class ApproachClass { DivergesToMinusInfinity, BoundedNegative, ApproachesZero, Indeterminate };
const char* to_string(ApproachClass c);

struct ApproachResult {
  std::vector<double> scales;
  std::vector<double> f_dot;
  ApproachClass classification = ApproachClass::Indeterminate;
  double limit = 0.0;  // extrapolated; meaningful unless diverging
};

// 10^-1, 10^-2, ..., 10^-300
std::vector<double> default_approach_scales();

// f_dot at x_bar + delta * path for each delta; path must enter the orthant at x_bar.
ApproachResult boundary_approach_experiment(const Network& net, std::span<const double> x_bar,
                                            const LyapunovSolution& lyap, std::span<const double> scales,
                                            std::span<const double> path);

}  // namespace crn
