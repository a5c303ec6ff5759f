#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "shapbench/errors.hpp"

namespace shapbench {

// A coalition of features out of a universe of m <= 63 features, stored as a
// bitmask over the low m bits. Feature indices are 0-based.
class Coalition {
 public:
  static constexpr int kMaxFeatures = 63;

  Coalition() = default;

  Coalition(std::uint64_t bits, int m) : bits_(bits), m_(m) {
    if (m < 0 || m > kMaxFeatures) {
      throw_error(ErrorKind::kArgument,
                  "coalition universe size must be in [0, 63]");
    }
    if (m < 64 && (bits >> m) != 0) {
      throw_error(ErrorKind::kArgument,
                  "coalition mask has bits outside the universe");
    }
  }

  static Coalition empty(int m) { return Coalition(0, m); }

  static Coalition universe(int m) {
    return Coalition(m == 0 ? 0 : ((std::uint64_t{1} << m) - 1), m);
  }

  static Coalition single(int i, int m) {
    return Coalition(std::uint64_t{1} << i, m);
  }

  std::uint64_t bits() const { return bits_; }
  int universe_size() const { return m_; }
  int size() const { return std::popcount(bits_); }
  bool is_empty() const { return bits_ == 0; }

  bool contains(int i) const { return (bits_ >> i) & 1; }

  Coalition with(int i) const {
    return Coalition(bits_ | (std::uint64_t{1} << i), m_);
  }

  Coalition without(int i) const {
    return Coalition(bits_ & ~(std::uint64_t{1} << i), m_);
  }

  Coalition unite(const Coalition& other) const {
    return Coalition(bits_ | other.bits_, m_);
  }

  Coalition intersect(const Coalition& other) const {
    return Coalition(bits_ & other.bits_, m_);
  }

  // Set difference within the shared universe.
  Coalition minus(const Coalition& other) const {
    return Coalition(bits_ & ~other.bits_, m_);
  }

  Coalition complement() const {
    return Coalition(~bits_ & universe(m_).bits_, m_);
  }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (int i = 0; i < m_; ++i) {
      if (contains(i)) out.push_back(i);
    }
    return out;
  }

  friend bool operator==(const Coalition& a, const Coalition& b) {
    return a.bits_ == b.bits_ && a.m_ == b.m_;
  }

 private:
  std::uint64_t bits_ = 0;
  int m_ = 0;
};

// All subsets of `mask.bits()` in increasing mask-value order, including the
// empty set and mask itself.
inline std::vector<Coalition> subsets_of(const Coalition& mask) {
  std::vector<Coalition> out;
  const std::uint64_t m = mask.bits();
  std::uint64_t sub = 0;
  while (true) {
    out.emplace_back(sub, mask.universe_size());
    if (sub == m) break;
    sub = (sub - m) & m;
  }
  return out;
}

}  // namespace shapbench
