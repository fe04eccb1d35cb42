#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "crn/linalg.hpp"
#include "crn/network.hpp"

namespace crn {

struct StoichStructure {
  linalg::IntMatrix gamma;                      // n x r, column i = reaction vector i
  std::size_t rank = 0;
  std::vector<linalg::IntVector> basis;         // primitive, first nonzero entry positive
  std::vector<std::vector<std::size_t>> linkage_classes;  // complex indices
  bool weakly_reversible = false;
  int deficiency = 0;
  std::vector<linalg::IntVector> conservation_laws;       // basis of the left kernel of gamma
};

StoichStructure stoich_structure(const Network& net);

// A strictly positive integer z with z^T gamma = 0, if one exists (exact).
std::optional<linalg::IntVector> positive_conservation_law(const Network& net);

// Stoichiometric subspace basis as doubles, one vector per column.
std::vector<std::vector<double>> basis_as_double(const StoichStructure& s);

}  // namespace crn
