#pragma once

#include <functional>

namespace crn::quad {

// Adaptive Simpson with Richardson correction; the interval is first split into
// `panels` pieces so that a lucky initial stencil cannot stop the refinement.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double abs_tol = 1e-9,
                        int max_depth = 40, int panels = 8);

// Same, after the substitution t = a + (b-a)(3s^2 - 2s^3). The Jacobian vanishes at
// both ends, so integrable endpoint singularities (e.g. logarithmic) are never sampled.
double integrate_graded(const std::function<double(double)>& f, double a, double b, double abs_tol = 1e-9);

}  // namespace crn::quad
