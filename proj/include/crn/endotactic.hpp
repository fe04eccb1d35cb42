#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crn/linalg.hpp"
#include "crn/network.hpp"
#include "crn/siphon.hpp"

namespace crn {

// Nonzero direction, kept as a primitive integer vector (positive scaling does not
// change any verdict).
class DirectionVector {
 public:
  explicit DirectionVector(std::vector<std::int64_t> components);
  static DirectionVector from_rational(const std::vector<linalg::Rational>& components);

  const linalg::IntVector& components() const { return v_; }
  std::size_t size() const { return v_.size(); }
  std::int64_t operator[](std::size_t j) const { return v_[j]; }
  std::int64_t dot(const Complex& c) const;
  std::int64_t dot(const std::vector<int>& d) const;
  std::string to_string() const;

  friend bool operator==(const DirectionVector&, const DirectionVector&) = default;

 private:
  linalg::IntVector v_;
};

enum class Side { Max, Min };

// Complex indices of the reactants of `pool` (all reactions if empty) that are
// extremal along w.
std::vector<std::size_t> extremal_reactants(const Network& net, const DirectionVector& w, Side side,
                                            const std::vector<std::size_t>& pool = {});

enum class EndotacticKind { WEndotactic, WIEndotactic, Endotactic, StronglyEndotactic, OneDEndotactic };
const char* to_string(EndotacticKind k);

struct EndotacticWitness {
  DirectionVector w;
  std::size_t reaction;
  std::optional<SpeciesSet> siphon;
};

struct EndotacticVerdict {
  EndotacticKind kind;
  bool holds = true;
  std::optional<EndotacticWitness> witness;  // present iff !holds
};

// Among reactions not orthogonal to w, every <=w-maximal reactant must react with <w, v'-v> < 0.
EndotacticVerdict is_w_endotactic(const Network& net, const DirectionVector& w);
EndotacticVerdict is_WI_endotactic(const Network& net);

// Two-species classifiers over a finite candidate set that covers every critical
// direction and one direction inside every arc between them.
std::vector<DirectionVector> candidate_directions_2species(const Network& net);
EndotacticVerdict is_endotactic_2species(const Network& net);
EndotacticVerdict is_strongly_endotactic_2species(const Network& net);

EndotacticVerdict is_1D_endotactic(const Network& net);

// Counterclockwise convex hull of integer points (no collinear points kept).
std::vector<std::pair<std::int64_t, std::int64_t>> convex_hull(std::vector<std::pair<std::int64_t, std::int64_t>> pts);

}  // namespace crn
