#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace crn {

// Nonnegative integer combination of species, stored densely.
class Complex {
 public:
  Complex() = default;
  explicit Complex(std::vector<int> exponents);
  static Complex from_terms(std::size_t n, const std::vector<std::pair<std::size_t, int>>& terms);

  int operator[](std::size_t j) const { return j < exps_.size() ? exps_[j] : 0; }
  std::size_t size() const { return exps_.size(); }
  const std::vector<int>& exponents() const { return exps_; }

  bool is_zero() const;
  int molecularity() const;
  std::vector<std::size_t> support() const;
  void resize(std::size_t n);

  friend bool operator==(const Complex& a, const Complex& b);
  friend bool operator<(const Complex& a, const Complex& b);

 private:
  std::vector<int> exps_;
};

struct Reaction {
  Complex reactant;
  Complex product;
  double rate = 1.0;
};

class Network {
 public:
  // Validates: nonempty reaction list, no self loops, positive rates,
  // distinct species names, every species in some complex.
  Network(std::vector<std::string> species, std::vector<Reaction> reactions);

  std::size_t num_species() const { return species_.size(); }
  std::size_t num_reactions() const { return reactions_.size(); }
  const std::vector<std::string>& species() const { return species_; }
  const std::vector<Reaction>& reactions() const { return reactions_; }
  const Reaction& reaction(std::size_t i) const { return reactions_[i]; }

  // Distinct complexes in order of first appearance (reactant before product).
  const std::vector<Complex>& complexes() const { return complexes_; }
  std::size_t reactant_complex(std::size_t i) const { return src_[i]; }
  std::size_t product_complex(std::size_t i) const { return dst_[i]; }

  std::vector<int> reaction_vector(std::size_t i) const;
  std::optional<std::size_t> species_index(std::string_view name) const;

  std::vector<double> rates() const;
  Network with_rates(const std::vector<double>& k) const;

 private:
  std::vector<std::string> species_;
  std::vector<Reaction> reactions_;
  std::vector<Complex> complexes_;
  std::vector<std::size_t> src_, dst_;
};

inline Network build_network(std::vector<std::string> species, std::vector<Reaction> reactions) {
  return Network(std::move(species), std::move(reactions));
}

}  // namespace crn
