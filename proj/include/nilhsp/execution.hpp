#ifndef NILHSP_EXECUTION_HPP
#define NILHSP_EXECUTION_HPP

#include <cstddef>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nilhsp {

/// Selects between the OpenMP kernel and the serial reference path.
/// Both paths produce bit-identical results; only scheduling differs.
enum class Execution { serial, parallel };

namespace detail {

/// Runs body(i) for i in [0, count). Exceptions thrown by any iteration are
/// captured and the one from the lowest index is rethrown after the loop.
template <typename Body>
void for_each_index(std::size_t count, Execution exec, Body&& body) {
  if (exec == Execution::serial || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr first_error;
  std::size_t first_index = count;
  std::mutex error_mutex;
  const long long n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (static_cast<std::size_t>(i) < first_index) {
        first_index = static_cast<std::size_t>(i);
        first_error = std::current_exception();
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace detail
}  // namespace nilhsp

#endif
