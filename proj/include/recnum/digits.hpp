#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "recnum/base.hpp"

namespace recnum {

/// Greedy digit string eps_0 .. eps_l, little-endian. The expansion of 0 is
/// empty.
struct Expansion {
  std::vector<std::uint64_t> digits;
  Natural value = 0;

  [[nodiscard]] bool empty() const { return digits.empty(); }
  /// Highest index l with a digit, or -1 for the empty expansion.
  [[nodiscard]] long top_index() const { return static_cast<long>(digits.size()) - 1; }
  [[nodiscard]] std::uint64_t digit_sum() const;
};

Expansion expand(const BaseContext& ctx, Natural value);

/// sum_j eps_j G_j, exact.
Natural value_of(const BaseContext& ctx, std::span<const std::uint64_t> digits);
inline Natural value_of(const BaseContext& ctx, const Expansion& e) { return value_of(ctx, e.digits); }

/// s_G(value); s_G(0) = 0.
std::uint64_t sum_of_digits(const BaseContext& ctx, Natural value);

/// Parry condition: every window (eps_t, eps_{t-1}, ..., eps_{t-d+1}),
/// read from the most significant digit down and zero-padded below eps_0,
/// is lexicographically smaller than (a_1, ..., a_d).
///
/// For bases with G_k = a_1 G_{k-1} + ... + a_k G_0 + 1 (1 <= k < d) this
/// characterizes greedy expansions exactly. For other bases it is only a
/// necessary condition.
bool is_parry_admissible(const BaseContext& ctx, std::span<const std::uint64_t> digits);

/// True when G_k = a_1 G_{k-1} + ... + a_k G_0 + 1 for 1 <= k < d.
bool is_strengthened(const BaseContext& ctx);

/// s_G(k) for 0 <= k < limit, filled in O(limit) using
/// s_G(k) = 1 + s_G(k - G_m) with G_m the largest term <= k.
std::vector<std::uint16_t> digit_sum_table(const BaseContext& ctx, std::uint64_t limit);

}  // namespace recnum
