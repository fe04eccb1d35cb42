#include "crn/siphon.hpp"

#include <algorithm>
#include <cmath>

#include "crn/error.hpp"
#include "crn/kernels.hpp"
#include "crn/kinetics.hpp"
#include "crn/lp.hpp"
#include "crn/stoich.hpp"

namespace crn {

SpeciesSet::SpeciesSet(std::initializer_list<std::size_t> idx) : SpeciesSet(std::vector<std::size_t>(idx)) {}

SpeciesSet::SpeciesSet(std::vector<std::size_t> idx) : idx_(std::move(idx)) {
  std::sort(idx_.begin(), idx_.end());
  idx_.erase(std::unique(idx_.begin(), idx_.end()), idx_.end());
}

SpeciesSet SpeciesSet::from_mask(std::uint32_t mask) {
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < 32; ++j)
    if (mask >> j & 1u) idx.push_back(j);
  return SpeciesSet(std::move(idx));
}

bool SpeciesSet::contains(std::size_t j) const { return std::binary_search(idx_.begin(), idx_.end(), j); }

std::uint32_t SpeciesSet::mask() const {
  std::uint32_t m = 0;
  for (auto j : idx_) {
    if (j >= 32) throw Error(ErrorKind::TooManySpecies, "species index does not fit a 32-bit mask");
    m |= 1u << j;
  }
  return m;
}

std::vector<int> SpeciesSet::indicator(std::size_t n) const {
  std::vector<int> w(n, 0);
  for (auto j : idx_)
    if (j < n) w[j] = 1;
  return w;
}

std::string SpeciesSet::to_string(const Network& net) const {
  std::string s = "{";
  for (std::size_t k = 0; k < idx_.size(); ++k) {
    if (k) s += ",";
    s += net.species()[idx_[k]];
  }
  return s + "}";
}

bool operator<(const SpeciesSet& a, const SpeciesSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.idx_ < b.idx_;
}

const char* to_string(Attainability a) {
  switch (a) {
    case Attainability::Yes: return "yes";
    case Attainability::No: return "no";
    case Attainability::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

void check_set(const Network& net, const SpeciesSet& w) {
  if (w.empty()) throw Error(ErrorKind::EmptySet, "species set must be nonempty");
  if (w.members().back() >= net.num_species()) throw Error(ErrorKind::InvalidArgument, "species index out of range");
}

bool meets(const Complex& c, const SpeciesSet& w) {
  for (auto j : w.members())
    if (c[j] > 0) return true;
  return false;
}

kernels::SiphonMasks masks_of(const Network& net) {
  kernels::SiphonMasks m;
  const std::size_t n = net.num_species();
  m.universe = n >= 32 ? ~0u : ((1u << n) - 1u);
  for (const auto& r : net.reactions()) {
    std::uint32_t a = 0, b = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (r.reactant[j] > 0) a |= 1u << j;
      if (r.product[j] > 0) b |= 1u << j;
    }
    m.reactant.push_back(a);
    m.product.push_back(b);
    // a species produced from the empty complex can never be in a siphon
    if (a == 0) m.universe &= ~b;
  }
  return m;
}

void check_anchor(const Network& net, std::span<const double> anchor) {
  if (anchor.size() != net.num_species()) throw Error(ErrorKind::DimensionMismatch, "anchor length");
  for (double a : anchor)
    if (!(a > 0.0)) throw Error(ErrorKind::NonPositiveAnchor, "anchor must be strictly positive");
}

struct FaceLp {
  std::size_t n = 0, s = 0;
  std::vector<std::vector<double>> B;  // n rows, s cols
};

FaceLp face_lp_data(const Network& net) {
  const auto st = stoich_structure(net);
  FaceLp f;
  f.n = net.num_species();
  f.s = st.rank;
  f.B.assign(f.n, std::vector<double>(f.s, 0.0));
  for (std::size_t c = 0; c < f.s; ++c)
    for (std::size_t j = 0; j < f.n; ++j) f.B[j][c] = static_cast<double>(st.basis[c][j]);
  return f;
}

// Variables: xi+ (s), xi- (s), slack per free coordinate, then `extra` trailing columns.
lp::Problem<double> face_problem(const FaceLp& f, const SpeciesSet& w, std::span<const double> a, std::size_t extra,
                                 std::vector<std::size_t>& slack_col) {
  const std::size_t nfree = f.n - w.size();
  const std::size_t nv = 2 * f.s + nfree + extra;
  lp::Problem<double> p;
  slack_col.assign(f.n, nv);
  std::size_t k = 2 * f.s;
  for (std::size_t j = 0; j < f.n; ++j) {
    std::vector<double> row(nv, 0.0);
    for (std::size_t c = 0; c < f.s; ++c) {
      row[c] = f.B[j][c];
      row[f.s + c] = -f.B[j][c];
    }
    if (!w.contains(j)) {
      slack_col[j] = k;
      row[k++] = -1.0;
    }
    p.A.push_back(std::move(row));
    p.b.push_back(-a[j]);
  }
  p.c.assign(nv, 0.0);
  return p;
}

std::vector<double> point_from(const FaceLp& f, const SpeciesSet& w, std::span<const double> a, const std::vector<double>& y) {
  std::vector<double> x(a.begin(), a.end());
  for (std::size_t j = 0; j < f.n; ++j)
    for (std::size_t c = 0; c < f.s; ++c) x[j] += f.B[j][c] * (y[c] - y[f.s + c]);
  for (auto j : w.members()) x[j] = 0.0;
  return x;
}

AttainabilityResult attainable_rank_one(const Network& net, const linalg::IntVector& b, const SpeciesSet& w,
                                        std::span<const double> a) {
  double tau = 0.0;
  bool first = true;
  for (auto j : w.members()) {
    if (b[j] == 0) return {Attainability::No, std::nullopt};
    const double t = -a[j] / static_cast<double>(b[j]);
    if (first) {
      tau = t;
      first = false;
    } else if (std::abs(t - tau) > 1e-12 * (1.0 + std::abs(tau))) {
      return {Attainability::No, std::nullopt};
    }
  }
  std::vector<double> x(a.begin(), a.end());
  double scale = 0.0;
  for (double v : a) scale = std::max(scale, v);
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (w.contains(j)) {
      x[j] = 0.0;
      continue;
    }
    x[j] = a[j] + tau * static_cast<double>(b[j]);
    // a vanishing coordinate would put the point on a smaller face
    if (!(x[j] > 1e-12 * scale)) return {Attainability::No, std::nullopt};
  }
  (void)net;
  return {Attainability::Yes, std::move(x)};
}

}  // namespace

bool is_siphon(const Network& net, const SpeciesSet& w) {
  check_set(net, w);
  for (const auto& r : net.reactions())
    if (meets(r.product, w) && !meets(r.reactant, w)) return false;
  return true;
}

bool is_locking(const Network& net, const SpeciesSet& w) {
  check_set(net, w);
  for (const auto& r : net.reactions())
    if (!meets(r.reactant, w)) return false;
  return true;
}

std::vector<BoundaryClass> enumerate_siphons(const Network& net) {
  const std::size_t n = net.num_species();
  if (n > kMaxEnumerationSpecies) throw Error(ErrorKind::TooManySpecies, "siphon enumeration supports at most 24 species");
  const auto masks = masks_of(net);
  std::vector<BoundaryClass> out;
  for (auto m : kernels::omp::scan_siphons(masks)) {
    BoundaryClass bc;
    bc.w_set = SpeciesSet::from_mask(m);
    bc.is_siphon = true;
    bc.is_locking = is_locking(net, bc.w_set);
    bc.w_indicator = bc.w_set.indicator(n);
    out.push_back(std::move(bc));
  }
  return out;
}

AttainabilityResult attainable_in_class(const Network& net, const SpeciesSet& w, std::span<const double> anchor) {
  check_set(net, w);
  check_anchor(net, anchor);
  const auto st = stoich_structure(net);
  if (st.rank == 1) return attainable_rank_one(net, st.basis[0], w, anchor);

  const FaceLp f = face_lp_data(net);
  std::vector<std::size_t> slack;
  auto p = face_problem(f, w, anchor, 2, slack);
  const std::size_t t_col = p.c.size() - 2, cap_col = p.c.size() - 1;
  for (std::size_t j = 0; j < f.n; ++j)
    if (!w.contains(j)) p.A[j][t_col] = -1.0;
  double cap = 1.0;
  for (double v : anchor) cap = std::max(cap, v);
  std::vector<double> cap_row(p.c.size(), 0.0);
  cap_row[t_col] = 1.0;
  cap_row[cap_col] = 1.0;
  p.A.push_back(cap_row);
  p.b.push_back(cap);
  p.c[t_col] = 1.0;
  const auto res = lp::maximize(p);
  if (res.status == lp::Status::Infeasible) return {Attainability::No, std::nullopt};
  if (res.status != lp::Status::Optimal) return {Attainability::Unknown, std::nullopt};
  if (w.size() == f.n) return {Attainability::Yes, std::vector<double>(f.n, 0.0)};
  if (res.objective <= 1e-9) return {Attainability::Unknown, std::nullopt};
  return {Attainability::Yes, point_from(f, w, anchor, res.y)};
}

std::vector<BoundaryClass> enumerate_boundary_classes(const Network& net, std::span<const double> anchor) {
  const std::size_t n = net.num_species();
  if (n > 16) throw Error(ErrorKind::TooManySpecies, "boundary class enumeration supports at most 16 species");
  check_anchor(net, anchor);
  std::vector<SpeciesSet> sets;
  for (std::uint32_t m = 1; m < (1u << n); ++m) sets.push_back(SpeciesSet::from_mask(m));
  std::sort(sets.begin(), sets.end());
  std::vector<BoundaryClass> out(sets.size());
  kernels::omp::map(sets.size(), [&](std::size_t i) {
    auto& bc = out[i];
    bc.w_set = sets[i];
    bc.is_siphon = is_siphon(net, bc.w_set);
    bc.is_locking = is_locking(net, bc.w_set);
    bc.w_indicator = bc.w_set.indicator(n);
    auto a = attainable_in_class(net, bc.w_set, anchor);
    bc.attainable = a.status;
    bc.representative = std::move(a.representative);
  });
  return out;
}

std::vector<std::vector<double>> face_representatives(const Network& net, const SpeciesSet& w,
                                                      std::span<const double> anchor, std::size_t count) {
  const auto att = attainable_in_class(net, w, anchor);
  if (att.status != Attainability::Yes || count == 0) return {};
  const auto center = *att.representative;
  std::vector<std::vector<double>> reps{center};
  if (face_directions(net, w.members()).cols() == 0) return reps;

  const FaceLp f = face_lp_data(net);
  std::vector<std::vector<double>> vertices;
  auto far_enough = [](const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0, s = 1.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
      d = std::max(d, std::abs(a[j] - b[j]));
      s = std::max(s, std::abs(a[j]));
    }
    return d > 1e-9 * s;
  };
  for (std::size_t j = 0; j < f.n && vertices.size() < 2; ++j) {
    if (w.contains(j)) continue;
    for (double sense : {1.0, -1.0}) {
      if (vertices.size() >= 2) break;
      std::vector<std::size_t> slack;
      auto p = face_problem(f, w, anchor, 0, slack);
      for (std::size_t c = 0; c < f.s; ++c) {
        p.c[c] = sense * f.B[j][c];
        p.c[f.s + c] = -sense * f.B[j][c];
      }
      const auto res = lp::maximize(p);
      if (res.status != lp::Status::Optimal) continue;
      auto v = point_from(f, w, anchor, res.y);
      for (auto& e : v) e = std::max(e, 0.0);
      bool fresh = far_enough(v, center);
      for (const auto& u : vertices) fresh = fresh && far_enough(v, u);
      if (fresh) vertices.push_back(std::move(v));
    }
  }
  for (double theta : {0.15, 0.3})
    for (const auto& v : vertices) {
      if (reps.size() >= count) break;
      std::vector<double> x(center.size());
      for (std::size_t j = 0; j < x.size(); ++j) x[j] = w.contains(j) ? 0.0 : center[j] + theta * (v[j] - center[j]);
      reps.push_back(std::move(x));
    }
  return reps;
}

}  // namespace crn
