#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "recnum/integer.hpp"

namespace recnum {

/// Coefficients a_1..a_d and initial terms G_0..G_{d-1} of a linear
/// recurrence G_{n+d} = a_1 G_{n+d-1} + ... + a_d G_n.
struct RecurrenceSpec {
  std::vector<std::uint64_t> coeffs;
  std::vector<std::uint64_t> initials;

  [[nodiscard]] std::size_t order() const { return coeffs.size(); }
  bool operator==(const RecurrenceSpec&) const = default;

  /// Fibonacci/Zeckendorf base: G = 1, 2, 3, 5, 8, ...
  static RecurrenceSpec zeckendorf() { return {{1, 1}, {1, 2}}; }
  /// d = 2 family G_{n+2} = a G_{n+1} + G_n with G_0 = 1, G_1 = a + 1.
  static RecurrenceSpec quadratic(std::uint64_t a) { return {{a, 1}, {1, a + 1}}; }
};

struct ValidationReport {
  bool ok = true;
  /// Short machine-readable names of each violated condition, e.g.
  /// "condition_3" for the lexicographic coefficient condition.
  std::vector<std::string> violations;
  std::vector<std::string> messages;
};

/// Checks every admissibility condition for a linear recurrence base.
/// Violations are reported as data; this never throws.
ValidationReport validate_spec(const RecurrenceSpec& spec);

/// Unique root of X^d - a_1 X^{d-1} - ... - a_d in [a_1, a_1 + 1), by
/// bisection to 1e-14 absolute.
double dominant_root(const RecurrenceSpec& spec);

/// Characteristic polynomial evaluated by Horner's scheme.
long double characteristic_polynomial(const RecurrenceSpec& spec, long double x);

struct GrowthConstant {
  double c = 0.0;
  /// |G_N / alpha^N - G_{N-1} / alpha^{N-1}|
  double bracket = 0.0;
  int n_used = 0;
  /// True when the requested N exceeded the exact term range and was reduced.
  bool reduced = false;
};

/// Validated base with every term G_n that fits into 128 bits precomputed.
/// Immutable after construction, so it can be shared freely across threads.
class BaseContext {
 public:
  /// Throws PreconditionError listing the violated conditions if the spec
  /// is not a valid linear recurrence base.
  explicit BaseContext(RecurrenceSpec spec);

  [[nodiscard]] const RecurrenceSpec& spec() const { return spec_; }
  [[nodiscard]] std::size_t order() const { return spec_.coeffs.size(); }
  /// 1-based coefficient a_j; zero outside 1..d.
  [[nodiscard]] std::uint64_t coeff(std::size_t j) const {
    return (j >= 1 && j <= order()) ? spec_.coeffs[j - 1] : 0;
  }
  [[nodiscard]] std::uint64_t a1() const { return spec_.coeffs.front(); }
  [[nodiscard]] std::uint64_t coeff_sum() const;

  /// Exact G_n. Throws OverflowError naming n when G_n exceeds 128 bits.
  [[nodiscard]] Natural term(std::size_t n) const;
  /// Number of exactly representable terms (G_0 .. G_{count-1}).
  [[nodiscard]] std::size_t term_count() const { return terms_.size(); }
  [[nodiscard]] std::span<const Natural> terms() const { return terms_; }
  /// Smallest n with G_n > value; throws OverflowError if no cached term is.
  [[nodiscard]] std::size_t index_above(Natural value) const;

  [[nodiscard]] double alpha() const { return alpha_; }
  /// I = { j : a_j != 0 }, ascending, 1-based.
  [[nodiscard]] const std::vector<std::size_t>& index_set() const { return index_set_; }

  /// c in G_n ~ c alpha^n, measured as G_N / alpha^N.
  [[nodiscard]] GrowthConstant growth_constant(int n = 64) const;
  /// Empirical dominance gap delta in G_n = c alpha^n + O(alpha^{(1-delta) n}).
  /// Reported for information only; certified bounds never use it.
  [[nodiscard]] double decay_exponent_estimate() const;

 private:
  RecurrenceSpec spec_;
  std::vector<Natural> terms_;
  std::vector<std::size_t> index_set_;
  double alpha_ = 0.0;
};

/// Alias used by the CLI and docs: G_n for a context.
inline Natural sequence_term(const BaseContext& ctx, std::size_t n) { return ctx.term(n); }

}  // namespace recnum
