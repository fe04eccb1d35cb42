#include "crn/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "crn/error.hpp"
#include "crn/kinetics.hpp"

namespace crn {

namespace {

// Dormand-Prince tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

double min_of(const std::vector<double>& x) { return *std::min_element(x.begin(), x.end()); }

}  // namespace

Trajectory simulate(const Network& net, std::span<const double> x0, const SimulateOptions& opts) {
  const std::size_t n = net.num_species();
  if (x0.size() != n) throw Error(ErrorKind::DimensionMismatch, "initial state length");
  for (double v : x0)
    if (!(v > 0.0)) throw Error(ErrorKind::NonPositivePoint, "initial state must be strictly positive");
  if (!(opts.horizon > 0.0)) throw Error(ErrorKind::InvalidArgument, "horizon must be positive");
  if (!(opts.tol >= 1e-12 && opts.tol <= 1e-3)) throw Error(ErrorKind::InvalidArgument, "tol must lie in [1e-12, 1e-3]");
  const std::size_t N = std::max<std::size_t>(opts.samples, 2);

  Trajectory tr;
  std::vector<double> x(x0.begin(), x0.end());
  tr.times.push_back(0.0);
  tr.states.push_back(x);
  bool below = min_of(x) < opts.event_eps;

  auto rhs = [&](const std::vector<double>& y) { return mass_action_rhs(net, y); };
  std::vector<double> k1 = rhs(x), k2, k3, k4, k5, k6, k7;
  std::vector<double> y(n), xn(n);

  double t = 0.0;
  double h = std::min(opts.horizon / static_cast<double>(N - 1), 1e-3 * opts.horizon);
  {
    const double fmax = max_abs(k1);
    if (fmax > 0.0) h = std::min(h, 1e-2 * (1.0 + max_abs(x)) / fmax);
  }
  std::size_t next = 1;
  while (next < N) {
    const double t_target = opts.horizon * static_cast<double>(next) / static_cast<double>(N - 1);
    const bool clipped = t + h >= t_target;
    const double hs = clipped ? t_target - t : h;
    if (tr.accepted_steps + tr.rejected_steps >= opts.max_steps)
      throw Error(ErrorKind::StepSizeUnderflow, "step budget exhausted at t = " + std::to_string(t));
    if (hs < 1e-14 * std::max(1.0, t))
      throw Error(ErrorKind::StepSizeUnderflow, "step size underflow at t = " + std::to_string(t));

    auto stage = [&](std::initializer_list<std::pair<double, const std::vector<double>*>> terms) {
      for (std::size_t j = 0; j < n; ++j) {
        double s = x[j];
        for (const auto& [a, k] : terms) s += hs * a * (*k)[j];
        y[j] = s;
      }
      return rhs(y);
    };
    k2 = stage({{a21, &k1}});
    k3 = stage({{a31, &k1}, {a32, &k2}});
    k4 = stage({{a41, &k1}, {a42, &k2}, {a43, &k3}});
    k5 = stage({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
    k6 = stage({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
    for (std::size_t j = 0; j < n; ++j)
      xn[j] = x[j] + hs * (b1 * k1[j] + b3 * k3[j] + b4 * k4[j] + b5 * k5[j] + b6 * k6[j]);
    k7 = rhs(xn);
    double err = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double e = hs * (e1 * k1[j] + e3 * k3[j] + e4 * k4[j] + e5 * k5[j] + e6 * k6[j] + e7 * k7[j]);
      err = std::max(err, std::abs(e) / (opts.tol * (1.0 + std::max(std::abs(x[j]), std::abs(xn[j])))));
    }
    if (min_of(xn) < 0.0 || !std::isfinite(err)) {
      ++tr.rejected_steps;
      h = 0.5 * hs;
      continue;
    }
    if (err > 1.0) {
      ++tr.rejected_steps;
      h = hs * std::max(0.2, 0.9 * std::pow(err, -0.2));
      continue;
    }
    ++tr.accepted_steps;
    t = clipped ? t_target : t + hs;
    x.swap(xn);
    k1.swap(k7);
    const bool now_below = min_of(x) < opts.event_eps;
    if (now_below != below) {
      tr.events.push_back({t, now_below ? "below_eps" : "above_eps"});
      below = now_below;
    }
    const double grow = err > 0.0 ? std::min(5.0, 0.9 * std::pow(err, -0.2)) : 5.0;
    // a clipped step says nothing about the natural step length
    h = clipped ? std::max(h, hs * grow) : hs * grow;
    if (clipped) {
      tr.times.push_back(t);
      tr.states.push_back(x);
      ++next;
    }
  }
  return tr;
}

Trajectory simulate(const Network& net, std::span<const double> x0, double horizon, double tol) {
  SimulateOptions o;
  o.horizon = horizon;
  o.tol = tol;
  return simulate(net, x0, o);
}

ProbeReport probe(const Trajectory& traj, double eps, const LyapunovSolution* lyap, double ceiling) {
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "eps must be positive");
  ProbeReport r;
  if (traj.states.empty()) return r;
  const std::size_t n = traj.states.front().size();
  r.min_concentration.assign(n, std::numeric_limits<double>::infinity());
  for (const auto& s : traj.states) {
    for (std::size_t j = 0; j < n; ++j) r.min_concentration[j] = std::min(r.min_concentration[j], s[j]);
    r.max_norm = std::max(r.max_norm, max_abs(s));
  }
  r.bounded = std::isfinite(r.max_norm) && r.max_norm < ceiling;

  const double T = traj.times.back() - traj.times.front();
  if (T > 0.0) {
    double inside = 0.0;
    for (std::size_t k = 0; k + 1 < traj.times.size(); ++k) {
      const double a = min_of(traj.states[k]) > eps ? 1.0 : 0.0;
      const double b = min_of(traj.states[k + 1]) > eps ? 1.0 : 0.0;
      inside += 0.5 * (a + b) * (traj.times[k + 1] - traj.times[k]);
    }
    r.residence_fraction = std::clamp(inside / T, 0.0, 1.0);
  } else {
    r.residence_fraction = min_of(traj.states.front()) > eps ? 1.0 : 0.0;
  }

  if (lyap) {
    std::vector<double> f(traj.states.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
      try {
        f[k] = lyap->value_at(traj.states[k]);
      } catch (const Error&) {
        ++r.lyapunov_samples_skipped;
      }
    }
    double worst = 0.0;
    for (std::size_t k = 0; k + 1 < f.size(); ++k)
      if (std::isfinite(f[k]) && std::isfinite(f[k + 1])) worst = std::max(worst, f[k + 1] - f[k]);
    r.f_dot_max_violation = worst;
  }
  return r;
}

const char* to_string(ApproachClass c) {
  switch (c) {
    case ApproachClass::DivergesToMinusInfinity: return "diverges_to_minus_infinity";
    case ApproachClass::BoundedNegative: return "bounded_negative";
    case ApproachClass::ApproachesZero: return "approaches_zero";
    case ApproachClass::Indeterminate: return "indeterminate";
  }
  return "?";
}

std::vector<double> default_approach_scales() {
  std::vector<double> s;
  for (int k = 1; k <= 300; ++k) s.push_back(std::pow(10.0, -k));
  return s;
}

ApproachResult boundary_approach_experiment(const Network& net, std::span<const double> x_bar,
                                            const LyapunovSolution& lyap, std::span<const double> scales,
                                            std::span<const double> path) {
  const std::size_t n = net.num_species();
  if (x_bar.size() != n || path.size() != n) throw Error(ErrorKind::DimensionMismatch, "point length");
  if (scales.size() < 2) throw Error(ErrorKind::InvalidArgument, "need at least two scales");
  for (std::size_t k = 1; k < scales.size(); ++k)
    if (!(scales[k] < scales[k - 1] && scales[k] > 0.0))
      throw Error(ErrorKind::InvalidArgument, "scales must be positive and decreasing");
  for (std::size_t j = 0; j < n; ++j) {
    if (x_bar[j] < 0.0) throw Error(ErrorKind::NegativeConcentration, "boundary point must be nonnegative");
    if (x_bar[j] == 0.0 && !(path[j] > 0.0)) throw Error(ErrorKind::DirectionLeavesOrthant, "path must enter the orthant");
  }
  ApproachResult res;
  res.scales.assign(scales.begin(), scales.end());
  std::vector<double> x(n);
  for (double d : scales) {
    for (std::size_t j = 0; j < n; ++j) {
      x[j] = x_bar[j] + d * path[j];
      if (!(x[j] > 0.0)) throw Error(ErrorKind::DirectionLeavesOrthant, "path leaves the orthant at this scale");
    }
    res.f_dot.push_back(lyap.f_dot_at(net, x));
  }

  const auto& v = res.f_dot;
  const std::size_t K = v.size();
  if (K >= 5) {
    std::array<double, 4> dec{};
    for (std::size_t i = 0; i < 4; ++i) {
      const std::size_t a = K - 5 + i;
      dec[i] = (v[a] - v[a + 1]) / std::log10(scales[a] / scales[a + 1]);
    }
    const double floor = 1e-8 * (1.0 + std::abs(v.back()));
    const bool all_pos = std::all_of(dec.begin(), dec.end(), [&](double d) { return d > floor; });
    if (all_pos && dec[3] >= 0.5 * dec[0]) {
      res.classification = ApproachClass::DivergesToMinusInfinity;
      res.limit = -std::numeric_limits<double>::infinity();
      return res;
    }
  }
  const double dl = scales[K - 1], dp = scales[K - 2];
  res.limit = v[K - 1] + (v[K - 1] - v[K - 2]) * dl / (dp - dl);
  if (res.limit <= -1e-6)
    res.classification = ApproachClass::BoundedNegative;
  else if (std::abs(res.limit) <= 1e-6)
    res.classification = ApproachClass::ApproachesZero;
  else
    res.classification = ApproachClass::Indeterminate;
  return res;
}

}  // namespace crn
