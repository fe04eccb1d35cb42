#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

// Data-parallel kernels. Each has a serial reference used by the tests and the
// benchmark; the library calls the OpenMP version.
namespace crn::kernels {

struct SiphonMasks {
  std::vector<std::uint32_t> reactant;  // support mask per reaction
  std::vector<std::uint32_t> product;
  std::uint32_t universe = 0;           // species allowed in any siphon
};

namespace serial {
std::vector<std::uint32_t> scan_siphons(const SiphonMasks& m);
void map(std::size_t count, const std::function<void(std::size_t)>& body);
std::size_t first_true(std::size_t count, const std::function<bool(std::size_t)>& pred);
}  // namespace serial

namespace omp {
std::vector<std::uint32_t> scan_siphons(const SiphonMasks& m);
void map(std::size_t count, const std::function<void(std::size_t)>& body);
// Smallest i with pred(i), or count. pred must be side-effect free.
std::size_t first_true(std::size_t count, const std::function<bool(std::size_t)>& pred);
}  // namespace omp

bool mask_is_siphon(const SiphonMasks& m, std::uint32_t w);

}  // namespace crn::kernels
