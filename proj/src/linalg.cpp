#include "crn/linalg.hpp"

#include <numeric>
#include <utility>

#include <boost/integer/common_factor.hpp>

namespace crn::linalg {

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntVector IntMatrix::column(std::size_t j) const {
  IntVector c(rows);
  for (std::size_t i = 0; i < rows; ++i) c[i] = (*this)(i, j);
  return c;
}

std::vector<std::vector<Rational>> rref(std::vector<std::vector<Rational>> rows,
                                        std::vector<std::size_t>* pivots) {
  if (rows.empty()) return rows;
  const std::size_t ncols = rows.front().size();
  std::size_t lead = 0;
  for (std::size_t col = 0; col < ncols && lead < rows.size(); ++col) {
    std::size_t p = lead;
    while (p < rows.size() && rows[p][col].numerator() == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[lead]);
    const Rational inv = Rational(1) / rows[lead][col];
    for (auto& e : rows[lead]) e *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == lead || rows[i][col].numerator() == 0) continue;
      const Rational f = rows[i][col];
      for (std::size_t j = 0; j < ncols; ++j) rows[i][j] -= f * rows[lead][j];
    }
    if (pivots) pivots->push_back(col);
    ++lead;
  }
  rows.resize(lead);
  return rows;
}

namespace {

std::vector<std::vector<Rational>> to_rational_rows(const IntMatrix& m) {
  std::vector<std::vector<Rational>> rows(m.rows, std::vector<Rational>(m.cols));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) rows[i][j] = Rational(m(i, j));
  return rows;
}

}  // namespace

std::size_t rank(const IntMatrix& m) { return rref(to_rational_rows(m)).size(); }

std::vector<IntVector> column_space_basis(const IntMatrix& m) {
  std::vector<IntVector> out;
  for (const auto& row : rref(to_rational_rows(m.transposed()))) out.push_back(primitive(row));
  return out;
}

std::vector<IntVector> left_null_space(const IntMatrix& m) {
  // z^T m = 0  <=>  m^T z = 0
  const IntMatrix mt = m.transposed();
  std::vector<std::size_t> piv;
  const auto r = rref(to_rational_rows(mt), &piv);
  const std::size_t n = mt.cols;
  std::vector<bool> is_pivot(n, false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<IntVector> out;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> z(n, Rational(0));
    z[f] = 1;
    for (std::size_t i = 0; i < r.size(); ++i) z[piv[i]] = -r[i][f];
    out.push_back(primitive(z));
  }
  return out;
}

IntVector primitive(const std::vector<Rational>& v) {
  std::int64_t l = 1;
  for (const auto& e : v)
    if (e.numerator() != 0) l = boost::integer::lcm(l, e.denominator());
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = v[i].numerator() * (l / v[i].denominator());
  return primitive(out);
}

IntVector primitive(const IntVector& v) {
  std::int64_t g = 0;
  for (auto e : v) g = std::gcd(g, e);
  IntVector out = v;
  if (g == 0) return out;
  std::int64_t sign = 1;
  for (auto e : v)
    if (e != 0) {
      sign = e > 0 ? 1 : -1;
      break;
    }
  for (auto& e : out) e = sign * e / g;
  return out;
}

std::int64_t dot(const IntVector& a, const IntVector& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace crn::linalg
