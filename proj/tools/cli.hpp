#ifndef NILHSP_TOOLS_CLI_HPP
#define NILHSP_TOOLS_CLI_HPP

// Command layer behind the nilhsp executable, kept separate from main() so
// tests can run commands against string streams.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nilhsp/execution.hpp"

namespace nilhsp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitTooShort = 3;
inline constexpr int kExitVerification = 4;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct BenchRecord {
  std::uint32_t p = 0;
  std::uint64_t n = 0;
  std::uint64_t length = 0;
  std::size_t trials = 0;
  /// Median wall time of one find_zero_sum call.
  double seconds = 0;
  std::size_t certificate_size = 0;
  bool verified = false;
};

/// Times find_zero_sum on seeded random sequences of length required_length(p, n).
BenchRecord bench_point(std::uint32_t p, std::uint64_t n, std::size_t trials, std::uint64_t seed,
                        Execution exec = Execution::parallel);

}  // namespace nilhsp::cli

#endif
