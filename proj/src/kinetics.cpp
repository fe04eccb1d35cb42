#include "crn/kinetics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "crn/error.hpp"
#include "crn/stoich.hpp"

namespace crn {

namespace {

void check_point(const Network& net, std::span<const double> x) {
  if (x.size() != net.num_species()) throw Error(ErrorKind::DimensionMismatch, "state length differs from species count");
  for (double v : x)
    if (!(v >= 0.0)) throw Error(ErrorKind::NegativeConcentration, "concentration must be nonnegative");
}

double ipow(double b, int e) {
  double r = 1.0;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

double monomial_partial(std::span<const double> x, const Complex& v, std::size_t l) {
  if (v[l] == 0) return 0.0;
  double r = v[l];
  for (std::size_t j = 0; j < x.size(); ++j) r *= ipow(x[j], j == l ? v[j] - 1 : v[j]);
  return r;
}

}  // namespace

double monomial(std::span<const double> x, const Complex& v) {
  double r = 1.0;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (v[j] != 0) r *= ipow(x[j], v[j]);
  return r;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double e : v) m = std::max(m, std::abs(e));
  return m;
}

std::vector<double> mass_action_rhs(const Network& net, std::span<const double> x) {
  check_point(net, x);
  std::vector<double> dx(net.num_species(), 0.0);
  for (const auto& r : net.reactions()) {
    const double rate = r.rate * monomial(x, r.reactant);
    if (rate == 0.0) continue;
    for (std::size_t j = 0; j < dx.size(); ++j) dx[j] += rate * (r.product[j] - r.reactant[j]);
  }
  return dx;
}

Eigen::MatrixXd rhs_jacobian(const Network& net, std::span<const double> x) {
  check_point(net, x);
  const std::size_t n = net.num_species();
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (const auto& r : net.reactions()) {
    for (std::size_t l = 0; l < n; ++l) {
      const double d = r.rate * monomial_partial(x, r.reactant, l);
      if (d == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j)
        J(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(l)) += d * (r.product[j] - r.reactant[j]);
    }
  }
  return J;
}

std::vector<double> complex_balance_residual(const Network& net, std::span<const double> x) {
  check_point(net, x);
  for (double v : x)
    if (v == 0.0) throw Error(ErrorKind::NonPositivePoint, "complex balance is checked at positive points");
  std::vector<double> res(net.complexes().size(), 0.0);
  for (std::size_t i = 0; i < net.num_reactions(); ++i) {
    const auto& r = net.reaction(i);
    const double rate = r.rate * monomial(x, r.reactant);
    res[net.reactant_complex(i)] += rate;
    res[net.product_complex(i)] -= rate;
  }
  return res;
}

Eigen::MatrixXd face_directions(const Network& net, const std::vector<std::size_t>& zero_coords) {
  const auto s = stoich_structure(net);
  const auto n = static_cast<Eigen::Index>(net.num_species());
  const auto k = static_cast<Eigen::Index>(s.rank);
  Eigen::MatrixXd B(n, k);
  for (Eigen::Index c = 0; c < k; ++c)
    for (Eigen::Index j = 0; j < n; ++j) B(j, c) = static_cast<double>(s.basis[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)]);
  Eigen::MatrixXd D = B;
  if (!zero_coords.empty()) {
    Eigen::MatrixXd BW(static_cast<Eigen::Index>(zero_coords.size()), k);
    for (std::size_t i = 0; i < zero_coords.size(); ++i) BW.row(static_cast<Eigen::Index>(i)) = B.row(static_cast<Eigen::Index>(zero_coords[i]));
    Eigen::FullPivLU<Eigen::MatrixXd> lu(BW);
    lu.setThreshold(1e-10);
    const Eigen::MatrixXd K = lu.kernel();
    if (lu.rank() == k) return Eigen::MatrixXd(n, 0);
    D = B * K;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(D);
  qr.setThreshold(1e-10);
  const Eigen::Index rk = qr.rank();
  Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, rk);
  for (auto j : zero_coords) Q.row(static_cast<Eigen::Index>(j)).setZero();
  return Q;
}

AffineFace make_face(const Network& net, std::vector<double> origin, const std::vector<std::size_t>& zero_coords) {
  AffineFace f;
  f.pinned.assign(net.num_species(), false);
  for (auto j : zero_coords) {
    f.pinned[j] = true;
    origin[j] = 0.0;
  }
  f.origin = std::move(origin);
  f.directions = face_directions(net, zero_coords);
  return f;
}

namespace {

bool feasible(const AffineFace& face, const Eigen::VectorXd& x) {
  for (Eigen::Index j = 0; j < x.size(); ++j)
    if (!face.pinned[static_cast<std::size_t>(j)] && !(x(j) > 0.0)) return false;
  return true;
}

Eigen::VectorXd to_eigen(std::span<const double> v) {
  Eigen::VectorXd e(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) e(static_cast<Eigen::Index>(i)) = v[i];
  return e;
}

std::vector<double> from_eigen(const Eigen::VectorXd& e) { return {e.data(), e.data() + e.size()}; }

void pin(const AffineFace& face, Eigen::VectorXd& x) {
  for (Eigen::Index j = 0; j < x.size(); ++j)
    if (face.pinned[static_cast<std::size_t>(j)]) x(j) = 0.0;
}

Eigen::VectorXd face_residual(const Network& net, const AffineFace& face, const Eigen::VectorXd& x) {
  const auto rhs = mass_action_rhs(net, from_eigen(x));
  return face.directions.transpose() * to_eigen(rhs);
}

std::optional<Eigen::VectorXd> newton(const Network& net, const AffineFace& face, Eigen::VectorXd x,
                                      const EquilibriumOptions& opts) {
  const auto& N = face.directions;
  for (int it = 0; it <= opts.max_iter; ++it) {
    const auto xs = from_eigen(x);
    if (max_abs(mass_action_rhs(net, xs)) < opts.tol) return x;
    if (it == opts.max_iter || N.cols() == 0) break;
    const Eigen::VectorXd F = face_residual(net, face, x);
    const Eigen::MatrixXd JF = N.transpose() * rhs_jacobian(net, xs) * N;
    const Eigen::VectorXd step = JF.colPivHouseholderQr().solve(-F);
    if (!step.allFinite()) break;
    const double f0 = F.norm();
    double lambda = 1.0;
    bool moved = false;
    for (int h = 0; h < 60; ++h, lambda *= 0.5) {
      Eigen::VectorXd trial = x + lambda * (N * step);
      pin(face, trial);
      if (!feasible(face, trial)) continue;
      if (face_residual(net, face, trial).norm() < (1.0 - 1e-4 * lambda) * f0) {
        x = trial;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  return std::nullopt;
}

}  // namespace

std::vector<double> project_into(const AffineFace& face, std::span<const double> y) {
  const Eigen::VectorXd o = to_eigen(face.origin);
  const auto& N = face.directions;
  Eigen::VectorXd p = o + N * (N.transpose() * (to_eigen(y) - o));
  pin(face, p);
  double theta = 1.0;
  for (int h = 0; h < 80 && !feasible(face, p); ++h) {
    theta *= 0.5;
    p = o + theta * (p - o);
    pin(face, p);
  }
  if (!feasible(face, p)) p = o;
  return from_eigen(p);
}

std::vector<std::vector<double>> solve_on_face(const Network& net, const AffineFace& face,
                                               const EquilibriumOptions& opts) {
  std::vector<std::vector<double>> found;
  auto record = [&](const Eigen::VectorXd& x) {
    for (const auto& f : found) {
      double d = 0.0, s = 0.0;
      for (std::size_t j = 0; j < f.size(); ++j) {
        d = std::max(d, std::abs(f[j] - x(static_cast<Eigen::Index>(j))));
        s = std::max(s, std::abs(f[j]));
      }
      if (d <= 1e-7 * (1.0 + s)) return;
    }
    found.push_back(from_eigen(x));
  };
  if (auto r = newton(net, face, to_eigen(face.origin), opts)) record(*r);
  if (face.directions.cols() == 0) return found;
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> logu(std::log(1e-3), std::log(1e3));
  std::vector<double> y(net.num_species());
  for (int s = 1; s < opts.starts; ++s) {
    for (auto& v : y) v = std::exp(logu(rng));
    const auto start = project_into(face, y);
    if (auto r = newton(net, face, to_eigen(start), opts)) record(*r);
  }
  return found;
}

std::optional<std::vector<double>> find_positive_equilibrium(const Network& net, std::span<const double> anchor,
                                                             const EquilibriumOptions& opts) {
  if (anchor.size() != net.num_species()) throw Error(ErrorKind::DimensionMismatch, "anchor length");
  for (double a : anchor)
    if (!(a > 0.0)) throw Error(ErrorKind::NonPositiveAnchor, "anchor must be strictly positive");
  const auto face = make_face(net, {anchor.begin(), anchor.end()}, {});
  // a point that only looks stationary because it hugs the boundary is not accepted,
  // nor one whose rhs is small only because every flux is small
  for (auto& x : solve_on_face(net, face, opts)) {
    if (!(*std::min_element(x.begin(), x.end()) > 1e-6 * max_abs(x))) continue;
    double flux = 0.0;
    for (const auto& r : net.reactions()) {
      double v = r.rate;
      for (std::size_t j = 0; j < x.size(); ++j) v *= std::pow(x[j], r.reactant[j]);
      flux = std::max(flux, v);
    }
    if (max_abs(mass_action_rhs(net, x)) <= 1e-8 * flux) return x;
  }
  return std::nullopt;
}

}  // namespace crn
