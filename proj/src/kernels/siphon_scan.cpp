#include <algorithm>
#include <bit>

#include <omp.h>

#include "crn/kernels.hpp"

namespace crn::kernels {

bool mask_is_siphon(const SiphonMasks& m, std::uint32_t w) {
  for (std::size_t i = 0; i < m.reactant.size(); ++i)
    if ((m.product[i] & w) && !(m.reactant[i] & w)) return false;
  return true;
}

namespace {

bool by_size_then_lex(std::uint32_t a, std::uint32_t b) {
  const int pa = std::popcount(a), pb = std::popcount(b);
  if (pa != pb) return pa < pb;
  // lexicographic on ascending index lists
  while (a && b) {
    const int la = std::countr_zero(a), lb = std::countr_zero(b);
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return false;
}

}  // namespace

namespace serial {

std::vector<std::uint32_t> scan_siphons(const SiphonMasks& m) {
  std::vector<std::uint32_t> out;
  const std::uint32_t u = m.universe;
  for (std::uint32_t w = u; w != 0; w = (w - 1) & u)
    if (mask_is_siphon(m, w)) out.push_back(w);
  std::sort(out.begin(), out.end(), by_size_then_lex);
  return out;
}

}  // namespace serial

namespace omp {

std::vector<std::uint32_t> scan_siphons(const SiphonMasks& m) {
  const std::uint32_t u = m.universe;
  const int bits = std::popcount(u);
  std::vector<int> pos;
  for (int j = 0; j < 32; ++j)
    if (u >> j & 1u) pos.push_back(j);
  const std::int64_t total = std::int64_t{1} << bits;
  std::vector<std::vector<std::uint32_t>> local(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
  {
    auto& mine = local[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
    for (std::int64_t c = 1; c < total; ++c) {
      std::uint32_t w = 0;
      for (int b = 0; b < bits; ++b)
        if (c >> b & 1) w |= 1u << pos[static_cast<std::size_t>(b)];
      if (mask_is_siphon(m, w)) mine.push_back(w);
    }
  }
  std::vector<std::uint32_t> out;
  for (auto& l : local) out.insert(out.end(), l.begin(), l.end());
  std::sort(out.begin(), out.end(), by_size_then_lex);
  return out;
}

}  // namespace omp

}  // namespace crn::kernels
