#include "crn/network.hpp"

#include <algorithm>
#include <set>

#include "crn/error.hpp"

namespace crn {

Complex::Complex(std::vector<int> exponents) : exps_(std::move(exponents)) {
  for (int e : exps_)
    if (e < 0) throw Error(ErrorKind::InvalidArgument, "negative stoichiometric coefficient");
}

Complex Complex::from_terms(std::size_t n, const std::vector<std::pair<std::size_t, int>>& terms) {
  std::vector<int> e(n, 0);
  for (auto [j, c] : terms) {
    if (j >= n) throw Error(ErrorKind::InvalidArgument, "species index out of range");
    e[j] += c;
  }
  return Complex(std::move(e));
}

bool Complex::is_zero() const {
  return std::all_of(exps_.begin(), exps_.end(), [](int e) { return e == 0; });
}

int Complex::molecularity() const {
  int s = 0;
  for (int e : exps_) s += e;
  return s;
}

std::vector<std::size_t> Complex::support() const {
  std::vector<std::size_t> s;
  for (std::size_t j = 0; j < exps_.size(); ++j)
    if (exps_[j] > 0) s.push_back(j);
  return s;
}

void Complex::resize(std::size_t n) {
  for (std::size_t j = n; j < exps_.size(); ++j)
    if (exps_[j] != 0) throw Error(ErrorKind::InvalidArgument, "species index out of range");
  exps_.resize(n, 0);
}

bool operator==(const Complex& a, const Complex& b) {
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t j = 0; j < n; ++j)
    if (a[j] != b[j]) return false;
  return true;
}

bool operator<(const Complex& a, const Complex& b) {
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t j = 0; j < n; ++j)
    if (a[j] != b[j]) return a[j] < b[j];
  return false;
}

Network::Network(std::vector<std::string> species, std::vector<Reaction> reactions)
    : species_(std::move(species)), reactions_(std::move(reactions)) {
  if (reactions_.empty()) throw Error(ErrorKind::EmptyReactionList, "network has no reactions");
  std::set<std::string> seen;
  for (const auto& s : species_)
    if (!seen.insert(s).second) throw Error(ErrorKind::DuplicateSpecies, "species '" + s + "' declared twice");
  const std::size_t n = species_.size();
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < reactions_.size(); ++i) {
    auto& r = reactions_[i];
    r.reactant.resize(n);
    r.product.resize(n);
    if (r.reactant == r.product)
      throw Error(ErrorKind::SelfLoopReaction, "reaction " + std::to_string(i) + " has identical sides");
    if (!(r.rate > 0.0))
      throw Error(ErrorKind::NonPositiveRate, "reaction " + std::to_string(i) + " has a non-positive rate");
    for (auto j : r.reactant.support()) used[j] = true;
    for (auto j : r.product.support()) used[j] = true;
  }
  for (std::size_t j = 0; j < n; ++j)
    if (!used[j]) throw Error(ErrorKind::OrphanSpecies, "species '" + species_[j] + "' appears in no complex");

  auto index_of = [this](const Complex& c) {
    for (std::size_t k = 0; k < complexes_.size(); ++k)
      if (complexes_[k] == c) return k;
    complexes_.push_back(c);
    return complexes_.size() - 1;
  };
  for (const auto& r : reactions_) {
    src_.push_back(index_of(r.reactant));
    dst_.push_back(index_of(r.product));
  }
}

std::vector<int> Network::reaction_vector(std::size_t i) const {
  const auto& r = reactions_[i];
  std::vector<int> d(num_species());
  for (std::size_t j = 0; j < d.size(); ++j) d[j] = r.product[j] - r.reactant[j];
  return d;
}

std::optional<std::size_t> Network::species_index(std::string_view name) const {
  for (std::size_t j = 0; j < species_.size(); ++j)
    if (species_[j] == name) return j;
  return std::nullopt;
}

std::vector<double> Network::rates() const {
  std::vector<double> k;
  for (const auto& r : reactions_) k.push_back(r.rate);
  return k;
}

Network Network::with_rates(const std::vector<double>& k) const {
  if (k.size() != reactions_.size()) throw Error(ErrorKind::DimensionMismatch, "rate vector length");
  auto rs = reactions_;
  for (std::size_t i = 0; i < rs.size(); ++i) rs[i].rate = k[i];
  return Network(species_, std::move(rs));
}

}  // namespace crn
