#include "crn/lyapunov_1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "crn/error.hpp"
#include "crn/kinetics.hpp"
#include "crn/quadrature.hpp"
#include "crn/stoich.hpp"

namespace crn {

OneDimStructure decompose_1d(const Network& net) {
  const auto st = stoich_structure(net);
  if (st.rank != 1) throw Error(ErrorKind::NotOneDimensional, "stoichiometric subspace has rank " + std::to_string(st.rank));
  OneDimStructure s;
  s.b = st.basis[0];
  for (std::size_t j = 0; j < s.b.size(); ++j) (s.b[j] != 0 ? s.retained_species : s.dropped_species).push_back(j);
  const std::size_t pivot = s.retained_species.front();
  bool pos = false, neg = false;
  for (std::size_t i = 0; i < net.num_reactions(); ++i) {
    const auto d = net.reaction_vector(i);
    if (d[pivot] % s.b[pivot] != 0) throw Error(ErrorKind::NonIntegerMultiple, "reaction vector is not an integer multiple of b");
    const std::int64_t m = d[pivot] / s.b[pivot];
    for (std::size_t j = 0; j < d.size(); ++j)
      if (d[j] != m * s.b[j]) throw Error(ErrorKind::NonIntegerMultiple, "reaction vector is not an integer multiple of b");
    s.m.push_back(m);
    pos = pos || m > 0;
    neg = neg || m < 0;
    s.reactants.push_back(net.reaction(i).reactant);
    s.rates.push_back(net.reaction(i).rate);
  }
  s.has_both_signs = pos && neg;
  return s;
}

namespace {

void check_x(const OneDimStructure& s, std::span<const double> x) {
  if (x.size() != s.b.size()) throw Error(ErrorKind::DimensionMismatch, "state length differs from species count");
  for (double v : x)
    if (!(v >= 0.0)) throw Error(ErrorKind::NegativeConcentration, "concentration must be nonnegative");
  for (auto j : s.retained_species)
    if (!(x[j] > 0.0)) throw Error(ErrorKind::NonPositivePoint, "retained species must be strictly positive");
}

void require_both(const OneDimStructure& s) {
  if (!s.has_both_signs) throw Error(ErrorKind::MissingSignGroup, "all reactions move in the same direction along b");
}

// sum_{j=0}^{m-1} u^j for m > 0, -sum_{j=m}^{-1} u^j for m < 0
double group_sum(std::int64_t m, double u) {
  double s = 0.0, p = 1.0;
  if (m > 0) {
    for (std::int64_t j = 0; j < m; ++j, p *= u) s += p;
    return s;
  }
  const double inv = 1.0 / u;
  for (std::int64_t j = 0; j < -m; ++j) {
    p *= inv;
    s += p;
  }
  return -s;
}

double group_sum_du(std::int64_t m, double u) {
  double s = 0.0;
  if (m > 0) {
    double p = 1.0;
    for (std::int64_t j = 1; j < m; ++j, p *= u) s += static_cast<double>(j) * p;
    return s;
  }
  // d/du of -(u^-1 + ... + u^m) = sum_q q u^{-q-1}
  const double inv = 1.0 / u;
  double p = inv;
  for (std::int64_t q = 1; q <= -m; ++q) {
    p *= inv;
    s += static_cast<double>(q) * p;
  }
  return s;
}

std::vector<double> weights(const OneDimStructure& s, std::span<const double> x) {
  std::vector<double> P(s.m.size());
  for (std::size_t i = 0; i < P.size(); ++i) P[i] = s.rates[i] * monomial(x, s.reactants[i]);
  return P;
}

double ipow(double b, int e) {
  double r = 1.0;
  for (int k = 0; k < e; ++k) r *= b;
  return r;
}

double monomial_partial(std::span<const double> x, const Complex& v, std::size_t l) {
  if (v[l] == 0) return 0.0;
  double r = v[l];
  for (std::size_t j = 0; j < x.size(); ++j) r *= ipow(x[j], j == l ? v[j] - 1 : v[j]);
  return r;
}

double root_from_weights(const OneDimStructure& s, const std::vector<double>& P) {
  double pos = 0.0, neg = 0.0;
  for (std::size_t i = 0; i < P.size(); ++i) (s.m[i] > 0 ? pos : neg) += P[i];
  if (!(pos > 0.0 && neg > 0.0)) throw Error(ErrorKind::NonPositivePoint, "both reaction groups must be active at x");
  // g(t) = h(e^t) is strictly increasing
  auto g = [&](double t, double* dg) {
    const double u = std::exp(t);
    double h = 0.0, hu = 0.0;
    for (std::size_t i = 0; i < P.size(); ++i) {
      h += P[i] * group_sum(s.m[i], u);
      if (dg) hu += P[i] * group_sum_du(s.m[i], u);
    }
    if (dg) *dg = u * hu;
    return h;
  };
  double t = 0.5 * std::log(neg / pos);
  double lo = t, hi = t;
  double step = 1.0;
  for (int k = 0; k < 200 && g(lo, nullptr) > 0.0; ++k, step *= 2.0) lo -= step;
  step = 1.0;
  for (int k = 0; k < 200 && g(hi, nullptr) < 0.0; ++k, step *= 2.0) hi += step;
  t = std::clamp(t, lo, hi);
  for (int it = 0; it < 300; ++it) {
    double dg = 0.0;
    const double v = g(t, &dg);
    if (v == 0.0) break;
    (v < 0.0 ? lo : hi) = t;
    double next = t - v / dg;
    if (!std::isfinite(next) || next <= lo || next >= hi) next = 0.5 * (lo + hi);
    const double moved = std::abs(next - t);
    t = next;
    if (moved <= 1e-15 * std::max(1.0, std::abs(t)) || hi - lo <= 4e-16 * std::max(1.0, std::abs(t))) break;
  }
  return std::exp(t);
}

}  // namespace

double h_eval(const OneDimStructure& s, std::span<const double> x, double u) {
  check_x(s, x);
  if (!(u > 0.0)) throw Error(ErrorKind::InvalidArgument, "u must be positive");
  const auto P = weights(s, x);
  double h = 0.0;
  for (std::size_t i = 0; i < P.size(); ++i) h += P[i] * group_sum(s.m[i], u);
  return h;
}

double h_du(const OneDimStructure& s, std::span<const double> x, double u) {
  check_x(s, x);
  const auto P = weights(s, x);
  double h = 0.0;
  for (std::size_t i = 0; i < P.size(); ++i) h += P[i] * group_sum_du(s.m[i], u);
  return h;
}

std::vector<double> cleared_polynomial(const OneDimStructure& s, std::span<const double> x) {
  check_x(s, x);
  std::int64_t M = 0, top = 0;
  for (auto m : s.m) {
    if (m < 0) M = std::max(M, -m);
    if (m > 0) top = std::max(top, m);
  }
  const auto P = weights(s, x);
  std::vector<double> c(static_cast<std::size_t>(M + std::max<std::int64_t>(top, 1)), 0.0);
  for (std::size_t i = 0; i < P.size(); ++i) {
    const std::int64_t m = s.m[i];
    if (m > 0)
      for (std::int64_t j = 0; j < m; ++j) c[static_cast<std::size_t>(j + M)] += P[i];
    else
      for (std::int64_t j = m; j < 0; ++j) c[static_cast<std::size_t>(j + M)] -= P[i];
  }
  return c;
}

int sign_changes(std::span<const double> coeffs) {
  int changes = 0, last = 0;
  for (double v : coeffs) {
    const int sg = v > 0 ? 1 : (v < 0 ? -1 : 0);
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++changes;
    last = sg;
  }
  return changes;
}

double solve_u_tilde(const OneDimStructure& s, std::span<const double> x) {
  require_both(s);
  check_x(s, x);
  return root_from_weights(s, weights(s, x));
}

std::vector<double> grad_log_u_tilde(const OneDimStructure& s, std::span<const double> x) {
  const double u = solve_u_tilde(s, x);
  const double hu = h_du(s, x, u);
  std::vector<double> g(x.size(), 0.0);
  for (std::size_t i = 0; i < s.m.size(); ++i) {
    const double S = group_sum(s.m[i], u);
    for (std::size_t l = 0; l < x.size(); ++l) g[l] += s.rates[i] * monomial_partial(x, s.reactants[i], l) * S;
  }
  for (auto& e : g) e = -e / (hu * u);
  return g;
}

double LineParam::gamma(std::span<const double> x) const {
  double d = 0.0;
  for (std::size_t j = 0; j < b.size(); ++j) d += b[j] * (x[j] - anchor[j]);
  return d / bb;
}

std::vector<double> LineParam::y_dagger(std::span<const double> x) const {
  const double g = gamma(x);
  std::vector<double> y(x.begin(), x.end());
  for (std::size_t j = 0; j < y.size(); ++j) y[j] -= g * b[j];
  return y;
}

std::vector<double> LineParam::at(std::span<const double> y, double tau) const {
  std::vector<double> x(y.begin(), y.end());
  for (std::size_t j = 0; j < x.size(); ++j) x[j] += tau * b[j];
  return x;
}

std::pair<double, double> LineParam::segment() const {
  double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (b[j] > 0) lo = std::max(lo, -anchor[j] / b[j]);
    if (b[j] < 0) hi = std::min(hi, -anchor[j] / b[j]);
  }
  return {lo, hi};
}

LineParam line_params(const OneDimStructure& s, std::span<const double> anchor) {
  if (anchor.size() != s.b.size()) throw Error(ErrorKind::DimensionMismatch, "anchor length");
  for (double a : anchor)
    if (!(a > 0.0)) throw Error(ErrorKind::NonPositiveAnchor, "anchor must be strictly positive");
  LineParam p;
  p.anchor.assign(anchor.begin(), anchor.end());
  p.b.assign(s.b.begin(), s.b.end());
  p.bb = 0.0;
  for (double v : p.b) p.bb += v * v;
  return p;
}

double line_integral(const OneDimStructure& s, const LineParam& line, std::span<const double> y, double t0, double t1) {
  require_both(s);
  std::vector<double> pt(y.size());
  auto integrand = [&](double tau) {
    for (std::size_t j = 0; j < pt.size(); ++j) pt[j] = y[j] + tau * line.b[j];
    return std::log(root_from_weights(s, weights(s, pt)));
  };
  return quad::integrate_graded(integrand, t0, t1, 1e-9);
}

double f_eval(const OneDimStructure& s, std::span<const double> x, const LineParam& line) {
  require_both(s);
  check_x(s, x);
  auto y = line.y_dagger(x);
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  for (auto j : s.retained_species) {
    if (y[j] < -1e-13 * scale) throw Error(ErrorKind::SegmentHitsBoundary, "segment from the anchor hyperplane leaves the orthant");
    y[j] = std::max(y[j], 0.0);
  }
  return line_integral(s, line, y, 0.0, line.gamma(x));
}

double net_flux(const OneDimStructure& s, std::span<const double> x) {
  check_x(s, x);
  const auto P = weights(s, x);
  double f = 0.0;
  for (std::size_t i = 0; i < P.size(); ++i) f += static_cast<double>(s.m[i]) * P[i];
  return f;
}

double f_dot_eval(const OneDimStructure& s, std::span<const double> x) {
  return net_flux(s, x) * std::log(solve_u_tilde(s, x));
}

ULimit boundary_u_limit(const OneDimStructure& s, std::span<const double> x_bar, int direction_sign) {
  require_both(s);
  if (x_bar.size() != s.b.size()) throw Error(ErrorKind::DimensionMismatch, "point length differs from species count");
  if (direction_sign != 1 && direction_sign != -1) throw Error(ErrorKind::InvalidArgument, "direction sign must be +1 or -1");
  double delta0 = std::numeric_limits<double>::infinity();
  for (auto j : s.retained_species) {
    const double d = static_cast<double>(direction_sign * s.b[j]);
    if (x_bar[j] < 0.0) throw Error(ErrorKind::NegativeConcentration, "boundary point must be nonnegative");
    if (x_bar[j] == 0.0 && d <= 0.0) throw Error(ErrorKind::DirectionLeavesOrthant, "approach direction leaves the orthant");
    if (x_bar[j] > 0.0) delta0 = std::min(delta0, x_bar[j] / std::abs(d));
  }
  delta0 = std::isfinite(delta0) ? 1e-2 * delta0 : 1e-2;
  ULimit res;
  res.direction_sign = direction_sign;
  std::vector<double> x(x_bar.begin(), x_bar.end());
  for (int k = 0; k <= 40; ++k) {
    const double delta = std::ldexp(delta0, -k);
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = x_bar[j] + delta * direction_sign * static_cast<double>(s.b[j]);
    res.samples.push_back(solve_u_tilde(s, x));
  }
  const auto& v = res.samples;
  const std::size_t n = v.size();
  bool rising = true;
  for (std::size_t k = n - 5; k < n; ++k) rising = rising && v[k] > v[k - 1];
  if (rising && v[n - 1] > 1.3 * v[n - 6]) {
    res.diverges = true;
    res.value = std::numeric_limits<double>::infinity();
    return res;
  }
  const double d1 = v[n - 2] - v[n - 3], d2 = v[n - 1] - v[n - 2];
  const double mag = std::max(1.0, std::abs(v[n - 1]));
  double limit = v[n - 1];
  if (std::abs(d2) <= 1e-15 * mag) {
    res.converged = true;
  } else {
    const double r = d1 / d2;  // 2^p for an error term proportional to delta^p
    if (r > 1.0001 && r < 1e6) {
      limit = v[n - 1] - d2 / (r - 1.0);
      res.converged = std::abs(d2 / (r - 1.0)) < 1e-6 * mag;
    } else {
      res.converged = std::abs(d2) < 1e-8 * mag;
    }
  }
  res.value = std::max(limit, 0.0);
  return res;
}

bool below_one(const ULimit& lim, double margin) { return !lim.diverges && lim.converged && lim.value < 1.0 - margin; }

}  // namespace crn
