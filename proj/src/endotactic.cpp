#include "crn/endotactic.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "crn/error.hpp"
#include "crn/stoich.hpp"

namespace crn {

DirectionVector::DirectionVector(std::vector<std::int64_t> components) : v_(std::move(components)) {
  std::int64_t g = 0;
  for (auto e : v_) g = std::gcd(g, e);
  if (g == 0) throw Error(ErrorKind::InvalidArgument, "direction must be nonzero");
  for (auto& e : v_) e /= g;
}

DirectionVector DirectionVector::from_rational(const std::vector<linalg::Rational>& c) {
  std::int64_t l = 1;
  for (const auto& e : c)
    if (e.numerator() != 0) l = std::lcm(l, e.denominator());
  std::vector<std::int64_t> v(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) v[j] = c[j].numerator() * (l / c[j].denominator());
  return DirectionVector(std::move(v));
}

std::int64_t DirectionVector::dot(const Complex& c) const {
  std::int64_t s = 0;
  for (std::size_t j = 0; j < v_.size(); ++j) s += v_[j] * c[j];
  return s;
}

std::int64_t DirectionVector::dot(const std::vector<int>& d) const {
  std::int64_t s = 0;
  for (std::size_t j = 0; j < v_.size() && j < d.size(); ++j) s += v_[j] * d[j];
  return s;
}

std::string DirectionVector::to_string() const {
  std::string s = "(";
  for (std::size_t j = 0; j < v_.size(); ++j) {
    if (j) s += ",";
    s += std::to_string(v_[j]);
  }
  return s + ")";
}

const char* to_string(EndotacticKind k) {
  switch (k) {
    case EndotacticKind::WEndotactic: return "w-endotactic";
    case EndotacticKind::WIEndotactic: return "W_I-endotactic";
    case EndotacticKind::Endotactic: return "endotactic";
    case EndotacticKind::StronglyEndotactic: return "strongly endotactic";
    case EndotacticKind::OneDEndotactic: return "1D endotactic";
  }
  return "?";
}

namespace {

void check_dim(const Network& net, const DirectionVector& w) {
  if (w.size() != net.num_species()) throw Error(ErrorKind::DimensionMismatch, "direction length differs from species count");
}

std::vector<std::size_t> all_reactions(const Network& net) {
  std::vector<std::size_t> p(net.num_reactions());
  std::iota(p.begin(), p.end(), 0);
  return p;
}

// Reactions in pool whose reactant attains the extreme value of <w, .> over the pool.
std::vector<std::size_t> extremal_reactions(const Network& net, const DirectionVector& w, Side side,
                                            const std::vector<std::size_t>& pool) {
  std::vector<std::size_t> out;
  std::int64_t best = 0;
  for (auto i : pool) {
    const std::int64_t v = w.dot(net.reaction(i).reactant);
    const bool better = out.empty() || (side == Side::Max ? v > best : v < best);
    if (better) {
      out.clear();
      best = v;
    }
    if (v == best) out.push_back(i);
  }
  return out;
}

struct V2 {
  std::int64_t x, y;
};

int half(const V2& v) { return (v.y < 0 || (v.y == 0 && v.x < 0)) ? 1 : 0; }

bool angle_less(const V2& a, const V2& b) {
  const int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return a.x * b.y - a.y * b.x > 0;
}

V2 prim(V2 v) {
  const std::int64_t g = std::gcd(v.x, v.y);
  return {v.x / g, v.y / g};
}

void require_two_species(const Network& net) {
  if (net.num_species() != 2) throw Error(ErrorKind::WrongSpeciesCount, "classifier is defined for exactly two species");
}

// Strong condition at w: some globally <=w-maximal reactant reacts strictly inward.
std::optional<std::size_t> strong_failure(const Network& net, const DirectionVector& w) {
  const auto top = extremal_reactions(net, w, Side::Max, all_reactions(net));
  for (auto i : top)
    if (w.dot(net.reaction_vector(i)) < 0) return std::nullopt;
  return top.front();
}

}  // namespace

std::vector<std::size_t> extremal_reactants(const Network& net, const DirectionVector& w, Side side,
                                            const std::vector<std::size_t>& pool) {
  check_dim(net, w);
  const auto reacts = extremal_reactions(net, w, side, pool.empty() ? all_reactions(net) : pool);
  std::vector<std::size_t> cx;
  for (auto i : reacts) cx.push_back(net.reactant_complex(i));
  std::sort(cx.begin(), cx.end());
  cx.erase(std::unique(cx.begin(), cx.end()), cx.end());
  return cx;
}

EndotacticVerdict is_w_endotactic(const Network& net, const DirectionVector& w) {
  check_dim(net, w);
  EndotacticVerdict v{EndotacticKind::WEndotactic, true, std::nullopt};
  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < net.num_reactions(); ++i)
    if (w.dot(net.reaction_vector(i)) != 0) pool.push_back(i);
  if (pool.empty()) return v;
  for (auto i : extremal_reactions(net, w, Side::Max, pool))
    if (w.dot(net.reaction_vector(i)) > 0) {
      v.holds = false;
      v.witness = EndotacticWitness{w, i, std::nullopt};
      return v;
    }
  return v;
}

EndotacticVerdict is_WI_endotactic(const Network& net) {
  EndotacticVerdict v{EndotacticKind::WIEndotactic, true, std::nullopt};
  for (const auto& bc : enumerate_siphons(net)) {
    std::vector<std::int64_t> wi(bc.w_indicator.begin(), bc.w_indicator.end());
    const auto r = is_w_endotactic(net, DirectionVector(wi));
    if (!r.holds) {
      v.holds = false;
      v.witness = r.witness;
      v.witness->siphon = bc.w_set;
      return v;
    }
  }
  return v;
}

std::vector<std::pair<std::int64_t, std::int64_t>> convex_hull(std::vector<std::pair<std::int64_t, std::int64_t>> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  auto cross = [](const auto& o, const auto& a, const auto& b) {
    return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
  };
  std::vector<std::pair<std::int64_t, std::int64_t>> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

std::vector<DirectionVector> candidate_directions_2species(const Network& net) {
  require_two_species(net);
  std::vector<V2> crit{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  auto add_perp = [&](std::int64_t dx, std::int64_t dy) {
    if (dx == 0 && dy == 0) return;
    const V2 p = prim({-dy, dx});
    crit.push_back(p);
    crit.push_back({-p.x, -p.y});
  };
  std::vector<std::pair<std::int64_t, std::int64_t>> pts;
  for (std::size_t i = 0; i < net.num_reactions(); ++i) {
    const auto d = net.reaction_vector(i);
    add_perp(d[0], d[1]);
    const auto& y = net.reaction(i).reactant;
    pts.emplace_back(y[0], y[1]);
  }
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) add_perp(pts[a].first - pts[b].first, pts[a].second - pts[b].second);
  const auto hull = convex_hull(pts);
  if (hull.size() >= 2)
    for (std::size_t e = 0; e < hull.size(); ++e) {
      const auto& p = hull[e];
      const auto& q = hull[(e + 1) % hull.size()];
      add_perp(q.first - p.first, q.second - p.second);
    }
  std::sort(crit.begin(), crit.end(), angle_less);
  crit.erase(std::unique(crit.begin(), crit.end(), [](const V2& a, const V2& b) { return a.x == b.x && a.y == b.y; }),
             crit.end());
  std::vector<DirectionVector> out;
  for (std::size_t k = 0; k < crit.size(); ++k) {
    const V2& a = crit[k];
    const V2& b = crit[(k + 1) % crit.size()];
    out.emplace_back(std::vector<std::int64_t>{a.x, a.y});
    const V2 mid = prim({a.x + b.x, a.y + b.y});
    out.emplace_back(std::vector<std::int64_t>{mid.x, mid.y});
  }
  return out;
}

EndotacticVerdict is_endotactic_2species(const Network& net) {
  EndotacticVerdict v{EndotacticKind::Endotactic, true, std::nullopt};
  for (const auto& w : candidate_directions_2species(net)) {
    const auto r = is_w_endotactic(net, w);
    if (!r.holds) {
      v.holds = false;
      v.witness = r.witness;
      return v;
    }
  }
  return v;
}

EndotacticVerdict is_strongly_endotactic_2species(const Network& net) {
  EndotacticVerdict v{EndotacticKind::StronglyEndotactic, true, std::nullopt};
  const auto endo = is_endotactic_2species(net);
  if (!endo.holds) {
    v.holds = false;
    v.witness = endo.witness;
    return v;
  }
  const auto st = stoich_structure(net);
  for (const auto& w : candidate_directions_2species(net)) {
    bool orthogonal = true;
    for (const auto& b : st.basis) orthogonal = orthogonal && linalg::dot(w.components(), b) == 0;
    if (orthogonal) continue;
    if (auto i = strong_failure(net, w)) {
      v.holds = false;
      v.witness = EndotacticWitness{w, *i, std::nullopt};
      return v;
    }
  }
  return v;
}

EndotacticVerdict is_1D_endotactic(const Network& net) {
  const auto st = stoich_structure(net);
  if (st.rank != 1) throw Error(ErrorKind::NotOneDimensional, "network rank is not 1");
  bool has_zero = false;
  for (const auto& c : net.complexes()) has_zero = has_zero || c.is_zero();
  if (st.linkage_classes.size() != 1 && !has_zero)
    throw Error(ErrorKind::NotOneDimensional, "1D endotacticity needs one linkage class or the empty complex");
  EndotacticVerdict v{EndotacticKind::OneDEndotactic, true, std::nullopt};
  if (has_zero) return v;
  const DirectionVector b(st.basis[0]);
  const auto all = all_reactions(net);
  const auto left = extremal_reactions(net, b, Side::Min, all);
  const auto right = extremal_reactions(net, b, Side::Max, all);
  for (auto i : all) {
    const std::int64_t step = b.dot(net.reaction_vector(i));
    const bool is_left = std::find(left.begin(), left.end(), i) != left.end();
    const bool is_right = std::find(right.begin(), right.end(), i) != right.end();
    if ((is_left && step <= 0) || (is_right && step >= 0)) {
      v.holds = false;
      v.witness = EndotacticWitness{b, i, std::nullopt};
      return v;
    }
  }
  return v;
}

}  // namespace crn
