#include "crn/stoich.hpp"

#include <algorithm>
#include <numeric>

#include "crn/lp.hpp"

namespace crn {

namespace {

struct UnionFind {
  std::vector<std::size_t> p;
  explicit UnionFind(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  std::size_t find(std::size_t a) { return p[a] == a ? a : p[a] = find(p[a]); }
  void unite(std::size_t a, std::size_t b) { p[find(a)] = find(b); }
};

// Weak reversibility: every reaction's product reaches back to its reactant.
bool strongly_connected_classes(const Network& net) {
  const std::size_t c = net.complexes().size();
  std::vector<std::vector<bool>> reach(c, std::vector<bool>(c, false));
  for (std::size_t i = 0; i < c; ++i) reach[i][i] = true;
  for (std::size_t i = 0; i < net.num_reactions(); ++i)
    reach[net.reactant_complex(i)][net.product_complex(i)] = true;
  for (std::size_t k = 0; k < c; ++k)
    for (std::size_t i = 0; i < c; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < c; ++j)
          if (reach[k][j]) reach[i][j] = true;
  for (std::size_t i = 0; i < net.num_reactions(); ++i)
    if (!reach[net.product_complex(i)][net.reactant_complex(i)]) return false;
  return true;
}

}  // namespace

StoichStructure stoich_structure(const Network& net) {
  StoichStructure s;
  const std::size_t n = net.num_species();
  const std::size_t r = net.num_reactions();
  s.gamma = linalg::IntMatrix(n, r);
  for (std::size_t i = 0; i < r; ++i) {
    const auto d = net.reaction_vector(i);
    for (std::size_t j = 0; j < n; ++j) s.gamma(j, i) = d[j];
  }
  s.basis = linalg::column_space_basis(s.gamma);
  s.rank = s.basis.size();
  s.conservation_laws = linalg::left_null_space(s.gamma);

  const std::size_t c = net.complexes().size();
  UnionFind uf(c);
  for (std::size_t i = 0; i < r; ++i) uf.unite(net.reactant_complex(i), net.product_complex(i));
  std::vector<std::size_t> root_order;
  for (std::size_t k = 0; k < c; ++k) {
    const std::size_t root = uf.find(k);
    auto it = std::find(root_order.begin(), root_order.end(), root);
    if (it == root_order.end()) {
      root_order.push_back(root);
      s.linkage_classes.push_back({k});
    } else {
      s.linkage_classes[static_cast<std::size_t>(it - root_order.begin())].push_back(k);
    }
  }
  s.weakly_reversible = strongly_connected_classes(net);
  s.deficiency = static_cast<int>(c) - static_cast<int>(s.linkage_classes.size()) - static_cast<int>(s.rank);
  return s;
}

std::optional<linalg::IntVector> positive_conservation_law(const Network& net) {
  using linalg::Rational;
  const auto s = stoich_structure(net);
  const std::size_t n = net.num_species();
  const std::size_t r = net.num_reactions();
  // z = 1 + y, y >= 0, gamma^T z = 0  <=>  gamma^T y = -gamma^T 1
  lp::Problem<Rational> p;
  p.A.assign(r, std::vector<Rational>(n, Rational(0)));
  p.b.assign(r, Rational(0));
  p.c.assign(n, Rational(0));
  for (std::size_t i = 0; i < r; ++i) {
    std::int64_t row_sum = 0;
    for (std::size_t j = 0; j < n; ++j) {
      p.A[i][j] = Rational(s.gamma(j, i));
      row_sum += s.gamma(j, i);
    }
    p.b[i] = Rational(-row_sum);
  }
  const auto res = lp::maximize(p);
  if (res.status != lp::Status::Optimal) return std::nullopt;
  std::vector<Rational> z(n);
  for (std::size_t j = 0; j < n; ++j) z[j] = res.y[j] + 1;
  return linalg::primitive(z);
}

std::vector<std::vector<double>> basis_as_double(const StoichStructure& s) {
  std::vector<std::vector<double>> out;
  for (const auto& b : s.basis) out.emplace_back(b.begin(), b.end());
  return out;
}

}  // namespace crn
