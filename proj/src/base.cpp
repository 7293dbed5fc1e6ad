#include "recnum/base.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace recnum {

namespace {

void add_violation(ValidationReport& r, std::string code, std::string msg) {
  r.ok = false;
  r.violations.push_back(std::move(code));
  r.messages.push_back(std::move(msg));
}

}  // namespace

ValidationReport validate_spec(const RecurrenceSpec& spec) {
  ValidationReport r;
  const std::size_t d = spec.coeffs.size();
  if (d == 0) {
    add_violation(r, "order", "order d must be at least 1");
    return r;
  }
  if (spec.initials.size() != d) {
    add_violation(r, "order",
                  fmt::format("expected {} initial terms, got {}", d, spec.initials.size()));
    return r;
  }
  if (spec.coeffs.back() == 0) add_violation(r, "a_d_positive", "a_d must be positive");
  if (spec.initials.front() != 1) add_violation(r, "g0_equals_one", "G_0 must equal 1");

  for (std::size_t k = 1; k < d; ++k) {
    if (spec.initials[k] <= spec.initials[k - 1]) {
      add_violation(r, "initials_increasing",
                    fmt::format("G_{} = {} is not larger than G_{} = {}", k, spec.initials[k],
                                k - 1, spec.initials[k - 1]));
      break;
    }
  }

  // a_1 G_{k-1} + ... + a_k G_0 < G_k for 1 <= k < d
  for (std::size_t k = 1; k < d; ++k) {
    Natural sum = 0;
    bool overflow = false;
    for (std::size_t i = 1; i <= k; ++i) {
      Natural prod;
      overflow |= mul_overflows(spec.coeffs[i - 1], spec.initials[k - i], &prod);
      overflow |= add_overflows(sum, prod, &sum);
    }
    if (overflow || sum >= spec.initials[k]) {
      add_violation(r, "condition_1",
                    fmt::format("a_1 G_{} + ... + a_{} G_0 = {} is not below G_{} = {}", k - 1, k,
                                overflow ? std::string("overflow") : to_string(sum), k,
                                spec.initials[k]));
    }
  }

  // (a_k, ..., a_d) <= (a_1, ..., a_{d-k+1}) lexicographically for 1 < k <= d
  for (std::size_t k = 2; k <= d; ++k) {
    for (std::size_t i = 0; k - 1 + i < d; ++i) {
      const auto lhs = spec.coeffs[k - 1 + i];
      const auto rhs = spec.coeffs[i];
      if (lhs < rhs) break;
      if (lhs > rhs) {
        add_violation(r, "condition_3",
                      fmt::format("(a_{}, ..., a_{}) is lexicographically larger than (a_1, ..., "
                                  "a_{})",
                                  k, d, d - k + 1));
        break;
      }
    }
  }

  if (r.ok) {
    // The generated term G_d must keep the sequence strictly increasing
    // (only restrictive for d = 1, where it forces a_1 >= 2).
    Natural next = 0;
    bool overflow = false;
    for (std::size_t i = 1; i <= d; ++i) {
      Natural prod;
      overflow |= mul_overflows(spec.coeffs[i - 1], spec.initials[d - i], &prod);
      overflow |= add_overflows(next, prod, &next);
    }
    if (!overflow && next <= spec.initials[d - 1]) {
      add_violation(r, "sequence_increasing", "the recurrence does not produce increasing terms");
    }
  }
  return r;
}

long double characteristic_polynomial(const RecurrenceSpec& spec, long double x) {
  long double acc = 1.0L;
  for (auto a : spec.coeffs) acc = acc * x - static_cast<long double>(a);
  return acc;
}

double dominant_root(const RecurrenceSpec& spec) {
  long double lo = static_cast<long double>(spec.coeffs.front());
  long double hi = lo + 1.0L;
  long double plo = characteristic_polynomial(spec, lo);
  const long double phi = characteristic_polynomial(spec, hi);
  if (plo == 0.0L) return static_cast<double>(lo);
  if (!(plo < 0.0L && phi > 0.0L)) {
    throw PreconditionError("characteristic polynomial has no sign change on [a_1, a_1 + 1)");
  }
  while (hi - lo > 1e-14L) {
    const long double mid = 0.5L * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const long double pm = characteristic_polynomial(spec, mid);
    if (pm == 0.0L) return static_cast<double>(mid);
    if (pm < 0.0L) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return static_cast<double>(0.5L * (lo + hi));
}

BaseContext::BaseContext(RecurrenceSpec spec) : spec_(std::move(spec)) {
  const auto report = validate_spec(spec_);
  if (!report.ok) {
    std::string msg = "invalid linear recurrence base:";
    for (const auto& m : report.messages) msg += " " + m + ";";
    throw PreconditionError(msg);
  }
  const std::size_t d = order();
  for (auto g : spec_.initials) terms_.push_back(g);
  for (;;) {
    const std::size_t n = terms_.size();
    Natural next = 0;
    bool overflow = false;
    for (std::size_t i = 1; i <= d && !overflow; ++i) {
      Natural prod;
      overflow |= mul_overflows(spec_.coeffs[i - 1], terms_[n - i], &prod);
      overflow |= add_overflows(next, prod, &next);
    }
    // Keep headroom so that sums of a few terms (digit values) stay exact.
    if (overflow || next > (~Natural{0} >> 1)) break;
    terms_.push_back(next);
  }
  for (std::size_t j = 1; j <= d; ++j) {
    if (coeff(j) != 0) index_set_.push_back(j);
  }
  alpha_ = dominant_root(spec_);
}

std::uint64_t BaseContext::coeff_sum() const {
  std::uint64_t s = 0;
  for (auto a : spec_.coeffs) s += a;
  return s;
}

Natural BaseContext::term(std::size_t n) const {
  if (n >= terms_.size()) {
    throw OverflowError(fmt::format("G_{} exceeds the 127-bit exact range (last exact index {})", n,
                                    terms_.size() - 1));
  }
  return terms_[n];
}

std::size_t BaseContext::index_above(Natural value) const {
  // Terms are strictly increasing; binary search.
  std::size_t lo = 0;
  std::size_t hi = terms_.size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (terms_[mid] > value) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  if (lo == terms_.size()) {
    throw OverflowError(fmt::format("no exact term exceeds {}; G_{} would overflow",
                                    to_string(value), terms_.size()));
  }
  return lo;
}

GrowthConstant BaseContext::growth_constant(int n) const {
  GrowthConstant g;
  if (n < 1) n = 1;
  const int limit = static_cast<int>(terms_.size()) - 1;
  if (n > limit) {
    n = limit;
    g.reduced = true;
  }
  const long double alpha = alpha_;
  const long double cn = to_long_double(terms_[n]) / std::pow(alpha, static_cast<long double>(n));
  const long double cp =
      to_long_double(terms_[n - 1]) / std::pow(alpha, static_cast<long double>(n - 1));
  g.c = static_cast<double>(cn);
  g.bracket = static_cast<double>(std::fabs(cn - cp));
  g.n_used = n;
  return g;
}

double BaseContext::decay_exponent_estimate() const {
  // Fit 1 - delta as the largest observed log_alpha |G_n - c alpha^n| / n over
  // the range where the residual is well above rounding noise.
  const auto gc = growth_constant();
  const long double alpha = alpha_;
  const long double log_alpha = std::log(alpha);
  long double worst = -std::numeric_limits<long double>::infinity();
  const int hi = std::min<int>(gc.n_used, 60);
  for (int n = 4; n <= hi; ++n) {
    const long double g = to_long_double(terms_[n]);
    const long double model = gc.c * std::pow(alpha, static_cast<long double>(n));
    const long double resid = std::fabs(g - model);
    if (resid < 1e-9L * g || resid <= 0.0L) continue;
    worst = std::max(worst, std::log(resid) / (n * log_alpha));
  }
  if (!std::isfinite(static_cast<double>(worst))) return 1.0;
  return static_cast<double>(1.0L - worst);
}

}  // namespace recnum
