#include "crn/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include <Eigen/Dense>

#include "crn/error.hpp"
#include "crn/kernels.hpp"
#include "crn/kinetics.hpp"
#include "crn/quadrature.hpp"

namespace crn {

const char* to_string(SolutionFamily f) {
  switch (f) {
    case SolutionFamily::PseudoHelmholtz: return "pseudo_helmholtz";
    case SolutionFamily::Separable: return "separable";
    case SolutionFamily::OneDIntegral: return "one_d_integral";
  }
  return "?";
}

namespace {

void require_positive(std::span<const double> x) {
  for (double v : x)
    if (!(v > 0.0)) throw Error(ErrorKind::NonPositivePoint, "point must be strictly positive");
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

// int_0^gamma(x) g(y_dagger + tau b) . ln-gradient-of-u~ dtau, for a fixed weight vector g
double perp_integral(const OneDIntegralForm& f, std::span<const double> x, std::span<const double> weight) {
  auto y = f.line.y_dagger(x);
  for (auto j : f.s.retained_species) y[j] = std::max(y[j], 0.0);
  std::vector<double> pt(y.size());
  auto integrand = [&](double tau) {
    for (std::size_t j = 0; j < pt.size(); ++j) pt[j] = y[j] + tau * f.line.b[j];
    return dot(weight, grad_log_u_tilde(f.s, pt));
  };
  return quad::integrate_graded(integrand, 0.0, f.line.gamma(x), 1e-10);
}

}  // namespace

LyapunovSolution LyapunovSolution::pseudo_helmholtz(std::vector<double> x_star) {
  require_positive(x_star);
  LyapunovSolution s;
  s.family_ = SolutionFamily::PseudoHelmholtz;
  s.form_ = SeparableForm{std::vector<double>(x_star.size(), 1.0), std::move(x_star)};
  return s;
}

LyapunovSolution LyapunovSolution::separable(std::vector<double> c, std::vector<double> x_star) {
  require_positive(x_star);
  require_positive(c);
  if (c.size() != x_star.size()) throw Error(ErrorKind::DimensionMismatch, "coefficient and x* lengths differ");
  LyapunovSolution s;
  s.family_ = std::all_of(c.begin(), c.end(), [](double v) { return v == 1.0; }) ? SolutionFamily::PseudoHelmholtz
                                                                                   : SolutionFamily::Separable;
  s.form_ = SeparableForm{std::move(c), std::move(x_star)};
  return s;
}

LyapunovSolution LyapunovSolution::one_d(const Network& net, std::span<const double> anchor) {
  OneDIntegralForm f;
  f.s = decompose_1d(net);
  if (!f.s.has_both_signs) throw Error(ErrorKind::MissingSignGroup, "all reactions move in the same direction along b");
  f.line = line_params(f.s, anchor);
  auto [lo, hi] = f.line.segment();
  double amax = 1.0;
  for (double a : anchor) amax = std::max(amax, a);
  if (!std::isfinite(lo)) lo = -1e3 * amax;
  if (!std::isfinite(hi)) hi = 1e3 * amax;
  const double width = hi - lo;
  lo += 1e-12 * width;
  hi -= 1e-12 * width;
  auto ln_u = [&](double t) { return std::log(solve_u_tilde(f.s, f.line.at(f.line.anchor, t))); };
  auto F = [&](double t) { return line_integral(f.s, f.line, f.line.anchor, 0.0, t); };
  double best = std::min(F(lo), F(hi));
  const int N = 200;
  double t_prev = lo + 0.5 * width / N, g_prev = ln_u(t_prev);
  for (int k = 1; k < N; ++k) {
    const double t = lo + (k + 0.5) * width / N;
    const double g = ln_u(t);
    if (g_prev <= 0.0 && g > 0.0) {
      double a = t_prev, b = t;
      for (int it = 0; it < 80; ++it) {
        const double m = 0.5 * (a + b);
        (ln_u(m) <= 0.0 ? a : b) = m;
      }
      best = std::min(best, F(0.5 * (a + b)));
    }
    t_prev = t;
    g_prev = g;
  }
  f.offset = best;
  LyapunovSolution s;
  s.family_ = SolutionFamily::OneDIntegral;
  s.form_ = std::move(f);
  return s;
}

std::string LyapunovSolution::describe() const {
  std::string out = to_string(family_);
  if (const auto* sf = separable_form()) {
    out += " c=(";
    for (std::size_t j = 0; j < sf->c.size(); ++j) out += (j ? "," : "") + std::to_string(static_cast<int>(sf->c[j]));
    out += ")";
  }
  return out;
}

double LyapunovSolution::value_at(std::span<const double> x) const {
  if (const auto* f = one_d_form()) return f_eval(f->s, x, f->line) - f->offset;
  const auto& sf = std::get<SeparableForm>(form_);
  if (x.size() != sf.c.size()) throw Error(ErrorKind::DimensionMismatch, "point length");
  double v = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] < 0.0) throw Error(ErrorKind::NegativeConcentration, "concentration must be nonnegative");
    const double xs = sf.x_star[j];
    v += sf.c[j] * ((x[j] > 0.0 ? x[j] * std::log(x[j] / xs) : 0.0) - x[j] + xs);
  }
  return v;
}

std::vector<double> LyapunovSolution::grad_at(std::span<const double> x) const {
  if (const auto* f = one_d_form()) {
    const double lu = std::log(solve_u_tilde(f->s, x));
    std::vector<double> g(x.size(), 0.0);
    // P_perp applied to the integrated gradient, one unit vector at a time
    for (std::size_t l = 0; l < x.size(); ++l) {
      std::vector<double> e(x.size(), 0.0);
      e[l] = 1.0;
      const double par = f->line.b[l] / f->line.bb;
      for (std::size_t j = 0; j < x.size(); ++j) e[j] -= par * f->line.b[j];
      g[l] = par * lu + perp_integral(*f, x, e);
    }
    return g;
  }
  const auto& sf = std::get<SeparableForm>(form_);
  require_positive(x);
  std::vector<double> g(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) g[j] = sf.c[j] * std::log(x[j] / sf.x_star[j]);
  return g;
}

std::optional<std::vector<double>> LyapunovSolution::hessian_diag_at(std::span<const double> x) const {
  const auto* sf = separable_form();
  if (!sf) return std::nullopt;
  require_positive(x);
  std::vector<double> h(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) h[j] = sf->c[j] / x[j];
  return h;
}

double LyapunovSolution::directional(std::span<const double> d, std::span<const double> x) const {
  if (const auto* f = one_d_form()) {
    const double par = dot(d, f->line.b) / f->line.bb;
    std::vector<double> perp(d.begin(), d.end());
    double pmax = 0.0, dmax = 0.0;
    for (std::size_t j = 0; j < perp.size(); ++j) {
      perp[j] -= par * f->line.b[j];
      pmax = std::max(pmax, std::abs(perp[j]));
      dmax = std::max(dmax, std::abs(d[j]));
    }
    double v = par * std::log(solve_u_tilde(f->s, x));
    if (pmax > 1e-14 * dmax) v += perp_integral(*f, x, perp);
    return v;
  }
  return dot(d, grad_at(x));
}

double LyapunovSolution::f_dot_at(const Network& net, std::span<const double> x) const {
  if (const auto* f = one_d_form()) return f_dot_eval(f->s, x);
  const auto g = grad_at(x);
  double s = 0.0;
  for (std::size_t i = 0; i < net.num_reactions(); ++i) {
    const auto d = net.reaction_vector(i);
    double e = 0.0;
    for (std::size_t j = 0; j < d.size(); ++j) e += d[j] * g[j];
    s += net.reaction(i).rate * monomial(x, net.reaction(i).reactant) * e;
  }
  return s;
}

double pde_residual(const Network& net, const LyapunovSolution& sol, std::span<const double> x) {
  require_positive(x);
  long double out = 0.0L, in = 0.0L;
  for (std::size_t i = 0; i < net.num_reactions(); ++i) {
    const auto d = net.reaction_vector(i);
    std::vector<double> dd(d.begin(), d.end());
    const double P = net.reaction(i).rate * monomial(x, net.reaction(i).reactant);
    out += P;
    in += P * std::exp(static_cast<long double>(sol.directional(dd, x)));
  }
  return static_cast<double>(out - in);
}

namespace {

bool support_inside(const Complex& c, std::span<const double> x_bar) {
  for (std::size_t j = 0; j < x_bar.size(); ++j)
    if (c[j] > 0 && x_bar[j] == 0.0) return false;
  return true;
}

}  // namespace

BoundaryResidual boundary_condition_residual(const Network& net, const LyapunovSolution& sol,
                                             std::span<const double> x_bar, std::span<const double> path_direction) {
  const std::size_t n = net.num_species();
  if (x_bar.size() != n || path_direction.size() != n) throw Error(ErrorKind::DimensionMismatch, "point length");
  bool interior = true;
  double delta0 = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    if (x_bar[j] < 0.0) throw Error(ErrorKind::NegativeConcentration, "boundary point must be nonnegative");
    if (x_bar[j] == 0.0) {
      interior = false;
      if (!(path_direction[j] > 0.0)) throw Error(ErrorKind::DirectionLeavesOrthant, "path must enter the orthant");
    } else if (path_direction[j] != 0.0) {
      delta0 = std::min(delta0, x_bar[j] / std::abs(path_direction[j]));
    }
  }
  if (interior) return {pde_residual(net, sol, x_bar), 0.0, true};
  delta0 = std::isfinite(delta0) ? 1e-2 * delta0 : 1e-2;

  auto eval = [&](double delta, double& a, double& b) {
    std::vector<double> x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = x_bar[j] + delta * path_direction[j];
    long double ra = 0.0L, rb = 0.0L;
    for (std::size_t i = 0; i < net.num_reactions(); ++i) {
      const auto& r = net.reaction(i);
      const auto d = net.reaction_vector(i);
      std::vector<double> dd(d.begin(), d.end());
      const double P = r.rate * monomial(x, r.reactant);
      const long double inflow = P * std::exp(static_cast<long double>(sol.directional(dd, x)));
      (support_inside(r.reactant, x_bar) ? ra : rb) += P;
      (support_inside(r.product, x_bar) ? ra : rb) -= inflow;
    }
    a = static_cast<double>(ra);
    b = static_cast<double>(rb);
  };
  const int K = 30;
  std::vector<double> va(K + 1), vb(K + 1);
  for (int k = 0; k <= K; ++k) eval(std::ldexp(delta0, -k), va[k], vb[k]);
  // linear Richardson on the two smallest scales
  const double ea = 2.0 * va[K] - va[K - 1], eb = 2.0 * vb[K] - vb[K - 1];
  const double pa = 2.0 * va[K - 1] - va[K - 2], pb = 2.0 * vb[K - 1] - vb[K - 2];
  BoundaryResidual res{ea, eb, false};
  const double scale = 1.0 + std::abs(va[0]) + std::abs(vb[0]);
  res.converged = std::abs(ea - pa) < 1e-6 * scale && std::abs(eb - pb) < 1e-6 * scale;
  return res;
}

bool hessian_is_pd_diagonal(const LyapunovSolution& sol, const std::vector<std::vector<double>>& samples) {
  const auto* sf = sol.separable_form();
  if (!sf) throw Error(ErrorKind::HessianUnavailable, "no closed-form Hessian for this family");
  for (const auto& x : samples) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[j] < 0.0) return false;
      // c_j / x_j, read as +infinity on the boundary
      if (!(sf->c[j] > 0.0)) return false;
    }
  }
  return true;
}

bool ansatz_monomials_match(const Network& net, const std::vector<int>& c) {
  const std::size_t n = net.num_species();
  std::vector<std::vector<int>> lhs, rhs;
  for (std::size_t i = 0; i < net.num_reactions(); ++i) {
    const auto& r = net.reaction(i);
    std::vector<int> v(n), e(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = r.reactant[j];
    lhs.push_back(std::move(v));
    for (std::size_t j = 0; j < n; ++j) {
      e[j] = r.reactant[j] + c[j] * (r.product[j] - r.reactant[j]);
      if (e[j] < 0) return false;
    }
    rhs.push_back(std::move(e));
  }
  std::sort(lhs.begin(), lhs.end());
  lhs.erase(std::unique(lhs.begin(), lhs.end()), lhs.end());
  std::sort(rhs.begin(), rhs.end());
  rhs.erase(std::unique(rhs.begin(), rhs.end()), rhs.end());
  return lhs == rhs;
}

std::optional<std::vector<double>> ansatz_solve_x_star(const Network& net, const std::vector<int>& c) {
  const std::size_t n = net.num_species();
  struct Term {
    double k;
    Eigen::VectorXd a;  // c o (v' - v)
  };
  std::map<std::vector<int>, double> lhs;
  std::map<std::vector<int>, std::vector<Term>> groups;
  for (std::size_t i = 0; i < net.num_reactions(); ++i) {
    const auto& r = net.reaction(i);
    std::vector<int> v(n), e(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = r.reactant[j];
    lhs[v] += r.rate;
    Eigen::VectorXd a(static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) {
      const int d = r.product[j] - r.reactant[j];
      e[j] = r.reactant[j] + c[j] * d;
      a(static_cast<Eigen::Index>(j)) = c[j] * d;
    }
    groups[e].push_back({r.rate, a});
  }
  if (groups.size() != lhs.size()) return std::nullopt;
  for (const auto& [e, terms] : groups)
    if (!lhs.count(e)) return std::nullopt;

  const auto m = static_cast<Eigen::Index>(groups.size());
  const auto nn = static_cast<Eigen::Index>(n);
  auto residual = [&](const Eigen::VectorXd& y, Eigen::VectorXd& r, Eigen::MatrixXd* J) {
    r.resize(m);
    if (J) J->setZero(m, nn);
    Eigen::Index row = 0;
    for (const auto& [e, terms] : groups) {
      double top = -std::numeric_limits<double>::infinity();
      for (const auto& t : terms) top = std::max(top, std::log(t.k) - t.a.dot(y));
      double sum = 0.0;
      Eigen::VectorXd grad = Eigen::VectorXd::Zero(nn);
      for (const auto& t : terms) {
        const double w = std::exp(std::log(t.k) - t.a.dot(y) - top);
        sum += w;
        grad -= w * t.a;
      }
      r(row) = top + std::log(sum) - std::log(lhs.at(e));
      if (J) J->row(row) = grad.transpose() / sum;
      ++row;
    }
  };

  bool linear = true;
  for (const auto& [e, terms] : groups) linear = linear && terms.size() == 1;
  Eigen::VectorXd y = Eigen::VectorXd::Zero(nn);
  Eigen::VectorXd r;
  Eigen::MatrixXd J;
  if (linear) {
    // a.y = ln(k / L): minimum-norm least squares
    residual(y, r, &J);
    y = J.completeOrthogonalDecomposition().solve(-r);
  } else {
    double lambda = 1e-3;
    residual(y, r, &J);
    for (int it = 0; it < 300 && r.lpNorm<Eigen::Infinity>() > 1e-14; ++it) {
      const Eigen::MatrixXd A = J.transpose() * J + lambda * Eigen::MatrixXd::Identity(nn, nn);
      const Eigen::VectorXd step = A.ldlt().solve(-J.transpose() * r);
      Eigen::VectorXd r2;
      Eigen::MatrixXd J2;
      residual(y + step, r2, &J2);
      if (r2.squaredNorm() < r.squaredNorm()) {
        y += step;
        r = r2;
        J = J2;
        lambda = std::max(lambda * 0.3, 1e-12);
      } else {
        lambda *= 10.0;
        if (lambda > 1e12) break;
      }
    }
  }
  residual(y, r, nullptr);
  if (!(r.lpNorm<Eigen::Infinity>() < 1e-10)) return std::nullopt;
  std::vector<double> xs(n);
  for (std::size_t j = 0; j < n; ++j) xs[j] = std::exp(y(static_cast<Eigen::Index>(j)));
  return xs;
}

std::optional<LyapunovSolution> separable_ansatz_search(const Network& net, const AnsatzOptions& opts) {
  const std::size_t n = net.num_species();
  if (opts.max_coeff < 1) throw Error(ErrorKind::InvalidArgument, "max_coeff must be at least 1");
  double total_d = std::pow(static_cast<double>(opts.max_coeff), static_cast<double>(n));
  if (total_d > 4e6) throw Error(ErrorKind::TooManySpecies, "ansatz search space too large");
  const auto total = static_cast<std::size_t>(total_d);
  auto decode = [&](std::size_t idx) {
    std::vector<int> c(n);
    for (std::size_t j = n; j-- > 0;) {
      c[j] = 1 + static_cast<int>(idx % static_cast<std::size_t>(opts.max_coeff));
      idx /= static_cast<std::size_t>(opts.max_coeff);
    }
    return c;
  };
  auto build = [&](const std::vector<int>& c) -> std::optional<LyapunovSolution> {
    if (!ansatz_monomials_match(net, c)) return std::nullopt;
    auto xs = ansatz_solve_x_star(net, c);
    if (!xs) return std::nullopt;
    return LyapunovSolution::separable(std::vector<double>(c.begin(), c.end()), *xs);
  };
  auto certified = [&](std::size_t idx) {
    auto sol = build(decode(idx));
    if (!sol) return false;
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> logu(std::log(0.2), std::log(5.0));
    std::vector<double> x(n);
    for (int p = 0; p < opts.certify_points; ++p) {
      for (auto& v : x) v = std::exp(logu(rng));
      if (!(std::abs(pde_residual(net, *sol, x)) < opts.certify_tol)) return false;
    }
    return true;
  };
  const std::size_t hit = kernels::omp::first_true(total, certified);
  if (hit == total) return std::nullopt;
  return build(decode(hit));
}

}  // namespace crn
