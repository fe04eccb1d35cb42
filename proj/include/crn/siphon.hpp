#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crn/network.hpp"

namespace crn {

// Sorted, duplicate-free set of species indices.
class SpeciesSet {
 public:
  SpeciesSet() = default;
  SpeciesSet(std::initializer_list<std::size_t> idx);
  explicit SpeciesSet(std::vector<std::size_t> idx);
  static SpeciesSet from_mask(std::uint32_t mask);

  const std::vector<std::size_t>& members() const { return idx_; }
  std::size_t size() const { return idx_.size(); }
  bool empty() const { return idx_.empty(); }
  bool contains(std::size_t j) const;
  std::uint32_t mask() const;
  std::vector<int> indicator(std::size_t n) const;
  std::string to_string(const Network& net) const;

  friend bool operator==(const SpeciesSet&, const SpeciesSet&) = default;
  // cardinality first, then lexicographic
  friend bool operator<(const SpeciesSet& a, const SpeciesSet& b);

 private:
  std::vector<std::size_t> idx_;
};

enum class Attainability { Yes, No, Unknown };
const char* to_string(Attainability a);

struct BoundaryClass {
  SpeciesSet w_set;
  bool is_siphon = false;
  bool is_locking = false;
  std::vector<int> w_indicator;
  Attainability attainable = Attainability::Unknown;
  std::optional<std::vector<double>> representative;  // x_j = 0 exactly on w_set
};

bool is_siphon(const Network& net, const SpeciesSet& w);
bool is_locking(const Network& net, const SpeciesSet& w);

inline constexpr std::size_t kMaxEnumerationSpecies = 24;

// All siphons, sorted by cardinality then lexicographically. Attainability is left Unknown.
std::vector<BoundaryClass> enumerate_siphons(const Network& net);

struct AttainabilityResult {
  Attainability status = Attainability::Unknown;
  std::optional<std::vector<double>> representative;
};

// Does L_W meet the class anchor + S?  Exact along the line for rank 1,
// maximal-margin linear program otherwise.
AttainabilityResult attainable_in_class(const Network& net, const SpeciesSet& w, std::span<const double> anchor);

// Every nonempty W (siphon or not) with attainability in the class of anchor.
std::vector<BoundaryClass> enumerate_boundary_classes(const Network& net, std::span<const double> anchor);

// Up to `count` points of L_W within the class: the maximal-margin point first,
// then points pulled from it toward extreme points of the closed face.
std::vector<std::vector<double>> face_representatives(const Network& net, const SpeciesSet& w,
                                                      std::span<const double> anchor, std::size_t count = 5);

}  // namespace crn
