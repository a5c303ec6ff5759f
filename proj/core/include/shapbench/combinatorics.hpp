#pragma once

#include <array>
#include <cstdint>

#include "shapbench/errors.hpp"

namespace shapbench {

namespace detail {

// Pascal-triangle table for n <= 63; C(63,31) still fits in 64 bits.
inline constexpr auto kBinomialTable = [] {
  std::array<std::array<std::uint64_t, 64>, 64> c{};
  for (int n = 0; n < 64; ++n) {
    c[n][0] = 1;
    for (int k = 1; k <= n; ++k) {
      c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0);
    }
  }
  return c;
}();

}  // namespace detail

// Exact binomial coefficient C(n, k) for 0 <= n <= 63.
inline std::uint64_t binomial(int n, int k) {
  if (n < 0 || n > 63) {
    throw_error(ErrorKind::kArgument, "binomial: n out of [0, 63]");
  }
  if (k < 0 || k > n) return 0;
  return detail::kBinomialTable[static_cast<std::size_t>(n)]
                               [static_cast<std::size_t>(k)];
}

}  // namespace shapbench
