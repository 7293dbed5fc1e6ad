#include "recnum/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "recnum/digits.hpp"

namespace recnum {

namespace {

void require_modulus(std::uint64_t s) {
  if (s == 0) throw PreconditionError("modulus s must be positive");
}

void require_count_limit(std::uint64_t x, std::uint64_t limit, const char* what) {
  if (x > limit) throw GuardError(fmt::format("{}: x = {} exceeds the limit {}", what, x, limit));
}

}  // namespace

bool SieveCache::is_almost_prime(std::uint64_t n) const {
  if (n < 2) return false;
  const std::uint64_t p = spf[n];
  if (p == n) return true;
  const std::uint64_t m = n / p;
  return spf[m] == m;
}

std::uint64_t SieveCache::prime_count() const {
  std::uint64_t c = 0;
  for (std::uint64_t n = 2; n <= limit; ++n) c += is_prime(n) ? 1 : 0;
  return c;
}

SieveCache sieve_spf(std::uint64_t x) {
  require_count_limit(x, kSieveLimit, "sieve_spf");
  SieveCache cache;
  cache.limit = x;
  cache.spf.assign(x + 1, 0);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= x; ++i) {
    if (cache.spf[i] == 0) {
      cache.spf[i] = static_cast<std::uint32_t>(i);
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    // Linear sieve: each composite is struck once, by its smallest prime.
    for (std::uint32_t p : primes) {
      if (p > cache.spf[i] || i * p > x) break;
      cache.spf[i * p] = p;
    }
  }
  return cache;
}

void require_coprime_modulus(const BaseContext& ctx, std::uint64_t s) {
  require_modulus(s);
  const std::uint64_t t = ctx.coeff_sum() - 1;
  if (std::gcd(t, s) != 1) {
    throw PreconditionError(
        fmt::format("gcd(a_1 + ... + a_d - 1, s) = gcd({}, {}) = {} is not 1", t, s,
                    std::gcd(t, s)));
  }
}

std::uint64_t class_progression_count(const BaseContext& ctx, std::uint64_t z, std::uint64_t r,
                                      std::uint64_t s, std::uint64_t h, std::uint64_t q) {
  require_modulus(s);
  if (q == 0 || h < 1 || h > q) throw PreconditionError("need 1 <= h <= q");
  require_count_limit(z, kCountLimit, "class_progression_count");
  const auto sums = digit_sum_table(ctx, z);
  const std::uint64_t residue = h % q;
  std::uint64_t count = 0;
  for (std::uint64_t k = residue; k < z; k += q) {
    if (sums[k] % s == r % s) ++count;
  }
  return count;
}

std::vector<std::uint64_t> geometric_z_samples(std::uint64_t x, std::uint64_t limit) {
  std::vector<std::uint64_t> z;
  if (x == 0) return z;
  for (std::uint64_t d = 1;; d *= 2) {
    const std::uint64_t v = (x + d - 1) / d;
    z.push_back(v);
    if (v <= 1 || d > x) break;
  }
  std::sort(z.begin(), z.end());
  z.erase(std::unique(z.begin(), z.end()), z.end());
  if (limit > 0 && z.size() > limit) z.erase(z.begin(), z.end() - static_cast<long>(limit));
  return z;
}

DiscrepancyReport bv_discrepancy(const BaseContext& ctx, std::uint64_t x, std::uint64_t r,
                                 std::uint64_t s, double theta, double eps, double A,
                                 std::uint64_t z_samples) {
  require_coprime_modulus(ctx, s);
  require_count_limit(x, kCountLimit, "bv_discrepancy");
  if (x == 0) throw PreconditionError("x must be positive");
  DiscrepancyReport rep;
  rep.x = x;
  rep.r = r;
  rep.s = s;
  rep.theta = theta;
  rep.eps = eps;
  rep.A = A;
  rep.q_bound = std::pow(static_cast<double>(x), theta - eps);
  rep.z_samples = geometric_z_samples(x, z_samples);

  // q runs over 1 <= q < q_bound.
  std::uint64_t q_max = 0;
  while (static_cast<double>(q_max + 1) < rep.q_bound) ++q_max;
  rep.per_q.assign(q_max, 0.0);

  const auto sums = digit_sum_table(ctx, x);
  // counts[q][c] = #{k < z matching : k = c (mod q)} for the current z.
  std::vector<std::vector<std::uint64_t>> counts(q_max + 1);
  for (std::uint64_t q = 1; q <= q_max; ++q) counts[q].assign(q, 0);
  std::uint64_t matching = 0;

  std::size_t next = 0;
  const std::uint64_t target = r % s;
  for (std::uint64_t k = 0; k <= x && next < rep.z_samples.size(); ++k) {
    while (next < rep.z_samples.size() && rep.z_samples[next] == k) {
      // Counts now cover exactly k' < z = k.
      for (std::uint64_t q = 1; q <= q_max; ++q) {
        const double mean = static_cast<double>(matching) / static_cast<double>(q);
        double worst = 0.0;
        for (std::uint64_t c = 0; c < q; ++c) {
          worst = std::max(worst, std::fabs(static_cast<double>(counts[q][c]) - mean));
        }
        rep.per_q[q - 1] = std::max(rep.per_q[q - 1], worst);
      }
      ++next;
    }
    if (k == x) break;
    if (sums[k] % s != target) continue;
    ++matching;
    for (std::uint64_t q = 1; q <= q_max; ++q) ++counts[q][k % q];
  }
  rep.total = std::accumulate(rep.per_q.begin(), rep.per_q.end(), 0.0);
  rep.normalizer = static_cast<double>(x) * std::pow(std::log(2.0 * static_cast<double>(x)), -A);
  rep.normalized = rep.total / rep.normalizer;
  return rep;
}

std::vector<std::uint64_t> residue_histogram(const BaseContext& ctx, std::uint64_t x,
                                             std::uint64_t s) {
  require_modulus(s);
  require_count_limit(x, kSieveLimit, "residue_histogram");
  std::vector<std::uint64_t> counts(s, 0);
  const auto sums = digit_sum_table(ctx, x);
  for (std::uint64_t k = 0; k < x; ++k) ++counts[sums[k] % s];
  return counts;
}

std::uint64_t almost_prime_count(const BaseContext& ctx, std::uint64_t x, std::uint64_t r,
                                 std::uint64_t s, const SieveCache& sieve) {
  require_modulus(s);
  if (sieve.limit < x) {
    throw PreconditionError(fmt::format("sieve limit {} is below x = {}", sieve.limit, x));
  }
  const auto sums = digit_sum_table(ctx, x + 1);
  std::uint64_t count = 0;
  for (std::uint64_t k = 2; k <= x; ++k) {
    if (sums[k] % s == r % s && sieve.is_almost_prime(k)) ++count;
  }
  return count;
}

std::vector<double> generalized_von_mangoldt(std::uint64_t x, unsigned ell,
                                             const SieveCache& sieve) {
  if (ell < 1) throw PreconditionError("ell must be at least 1");
  require_count_limit(x, kCountLimit, "generalized_von_mangoldt");
  if (x > 0 && sieve.limit < x - 1) {
    throw PreconditionError(fmt::format("sieve limit {} is below x - 1 = {}", sieve.limit, x - 1));
  }
  // Lambda(n) = log p for n = p^k.
  std::vector<double> lambda(x, 0.0);
  for (std::uint64_t n = 2; n < x; ++n) {
    const std::uint64_t p = sieve.spf[n];
    std::uint64_t m = n;
    while (m % p == 0) m /= p;
    if (m == 1) lambda[n] = std::log(static_cast<double>(p));
  }
  std::vector<double> current = lambda;
  for (unsigned l = 2; l <= ell; ++l) {
    std::vector<double> next(x, 0.0);
    for (std::uint64_t n = 2; n < x; ++n) next[n] = current[n] * std::log(static_cast<double>(n));
    for (std::uint64_t e = 2; e < x; ++e) {
      if (lambda[e] == 0.0) continue;
      for (std::uint64_t d = 2, n = 2 * e; n < x; ++d, n += e) next[n] += current[d] * lambda[e];
    }
    current.swap(next);
  }
  return current;
}

VonMangoldtSum von_mangoldt_sum(const BaseContext& ctx, std::uint64_t x, unsigned ell,
                                std::uint64_t r, std::uint64_t s, const SieveCache& sieve) {
  if (ell < 2) throw PreconditionError("ell must be at least 2");
  require_coprime_modulus(ctx, s);
  const auto values = generalized_von_mangoldt(x, ell, sieve);
  const auto sums = digit_sum_table(ctx, x);
  VonMangoldtSum out;
  for (std::uint64_t k = 0; k < x; ++k) {
    if (sums[k] % s == r % s) out.lhs += values[k];
  }
  const double xd = static_cast<double>(x);
  out.main_term = static_cast<double>(ell) / static_cast<double>(s) * xd *
                  std::pow(std::log(xd), static_cast<double>(ell) - 1.0);
  out.ratio = out.main_term > 0.0 ? out.lhs / out.main_term : 0.0;
  return out;
}

}  // namespace recnum
