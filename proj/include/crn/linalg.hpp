#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/rational.hpp>

namespace crn::linalg {

using Rational = boost::rational<std::int64_t>;
using IntVector = std::vector<std::int64_t>;

// Dense row-major integer matrix.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int64_t> data;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

  std::int64_t& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  IntMatrix transposed() const;
  IntVector column(std::size_t j) const;
};

// Nonzero rows of the reduced row echelon form; pivot columns appended to *pivots if given.
std::vector<std::vector<Rational>> rref(std::vector<std::vector<Rational>> rows,
                                        std::vector<std::size_t>* pivots = nullptr);

std::size_t rank(const IntMatrix& m);

// Canonical basis of the column space: rows of rref(m^T), each scaled to a primitive
// integer vector (gcd 1, first nonzero entry positive).
std::vector<IntVector> column_space_basis(const IntMatrix& m);

// Basis of {z : z^T m = 0}, primitive integer vectors.
std::vector<IntVector> left_null_space(const IntMatrix& m);

// Clears denominators, divides by the gcd and makes the first nonzero entry positive.
IntVector primitive(const std::vector<Rational>& v);
IntVector primitive(const IntVector& v);

std::int64_t dot(const IntVector& a, const IntVector& b);

}  // namespace crn::linalg
