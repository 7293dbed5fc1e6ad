#include "recnum/digits.hpp"

#include <fmt/format.h>

namespace recnum {

std::uint64_t Expansion::digit_sum() const {
  std::uint64_t s = 0;
  for (auto e : digits) s += e;
  return s;
}

Expansion expand(const BaseContext& ctx, Natural value) {
  Expansion e;
  e.value = value;
  if (value == 0) return e;
  // l is the unique index with G_l <= value < G_{l+1}.
  const std::size_t top = ctx.index_above(value) - 1;
  e.digits.assign(top + 1, 0);
  Natural rest = value;
  for (std::size_t j = top + 1; j-- > 0;) {
    const Natural g = ctx.term(j);
    const Natural q = rest / g;
    e.digits[j] = static_cast<std::uint64_t>(q);
    rest -= q * g;
  }
  return e;
}

Natural value_of(const BaseContext& ctx, std::span<const std::uint64_t> digits) {
  Natural v = 0;
  for (std::size_t j = 0; j < digits.size(); ++j) {
    if (digits[j] == 0) continue;
    v = checked_add(v, checked_mul(digits[j], ctx.term(j), "value_of"), "value_of");
  }
  return v;
}

std::uint64_t sum_of_digits(const BaseContext& ctx, Natural value) {
  return expand(ctx, value).digit_sum();
}

bool is_parry_admissible(const BaseContext& ctx, std::span<const std::uint64_t> digits) {
  const std::size_t d = ctx.order();
  const auto& a = ctx.spec().coeffs;
  for (std::size_t t = 0; t < digits.size(); ++t) {
    // Compare (eps_t, eps_{t-1}, ...) against (a_1, a_2, ...).
    bool smaller = false;
    for (std::size_t i = 0; i < d; ++i) {
      const std::uint64_t e = (t >= i) ? digits[t - i] : 0;
      if (e < a[i]) {
        smaller = true;
        break;
      }
      if (e > a[i]) return false;
    }
    if (!smaller) return false;  // equal window
  }
  return true;
}

bool is_strengthened(const BaseContext& ctx) {
  const std::size_t d = ctx.order();
  for (std::size_t k = 1; k < d; ++k) {
    Natural sum = 1;
    for (std::size_t i = 1; i <= k; ++i) sum += ctx.coeff(i) * ctx.term(k - i);
    if (sum != ctx.term(k)) return false;
  }
  return true;
}

std::vector<std::uint16_t> digit_sum_table(const BaseContext& ctx, std::uint64_t limit) {
  if (limit > (std::uint64_t{1} << 32)) {
    throw GuardError(fmt::format("digit sum table of {} entries refused", limit));
  }
  std::vector<std::uint16_t> s(limit, 0);
  std::size_t m = 0;  // largest index with G_m <= k
  for (std::uint64_t k = 1; k < limit; ++k) {
    while (m + 1 < ctx.term_count() && ctx.term(m + 1) <= k) ++m;
    s[k] = static_cast<std::uint16_t>(1 + s[k - static_cast<std::uint64_t>(ctx.term(m))]);
  }
  return s;
}

}  // namespace recnum
