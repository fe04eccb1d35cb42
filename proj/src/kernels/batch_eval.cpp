#include <algorithm>
#include <exception>
#include <mutex>

#include "crn/kernels.hpp"

namespace crn::kernels {

namespace serial {

void map(std::size_t count, const std::function<void(std::size_t)>& body) {
  for (std::size_t i = 0; i < count; ++i) body(i);
}

std::size_t first_true(std::size_t count, const std::function<bool(std::size_t)>& pred) {
  for (std::size_t i = 0; i < count; ++i)
    if (pred(i)) return i;
  return count;
}

}  // namespace serial

namespace omp {

namespace {

// Exceptions must not escape a parallel region; keep the one from the lowest index.
struct FirstError {
  std::mutex mu;
  std::exception_ptr err;
  std::int64_t at = -1;
  void capture(std::int64_t i) {
    std::lock_guard<std::mutex> lock(mu);
    if (at < 0 || i < at) {
      at = i;
      err = std::current_exception();
    }
  }
  void rethrow() {
    if (err) std::rethrow_exception(err);
  }
};

}  // namespace

void map(std::size_t count, const std::function<void(std::size_t)>& body) {
  const auto n = static_cast<std::int64_t>(count);
  FirstError fe;
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      fe.capture(i);
    }
  }
  fe.rethrow();
}

std::size_t first_true(std::size_t count, const std::function<bool(std::size_t)>& pred) {
  const auto n = static_cast<std::int64_t>(count);
  std::int64_t best = n;
  FirstError fe;
#pragma omp parallel for schedule(dynamic, 1) reduction(min : best)
  for (std::int64_t i = 0; i < n; ++i) {
    if (i >= best) continue;
    try {
      if (pred(static_cast<std::size_t>(i))) best = std::min(best, i);
    } catch (...) {
      fe.capture(i);
    }
  }
  if (fe.err && fe.at < best) fe.rethrow();
  return static_cast<std::size_t>(best);
}

}  // namespace omp

}  // namespace crn::kernels
