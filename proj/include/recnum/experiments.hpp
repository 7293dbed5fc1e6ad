#pragma once

#include <cstdint>
#include <vector>

#include "recnum/base.hpp"

namespace recnum {

/// Smallest prime factor of every n <= limit; spf[0] = spf[1] = 0.
struct SieveCache {
  std::uint64_t limit = 0;
  std::vector<std::uint32_t> spf;

  [[nodiscard]] bool is_prime(std::uint64_t n) const { return n >= 2 && spf[n] == n; }
  /// Prime or product of two (not necessarily distinct) primes.
  [[nodiscard]] bool is_almost_prime(std::uint64_t n) const;
  [[nodiscard]] std::uint64_t prime_count() const;
};

inline constexpr std::uint64_t kSieveLimit = 100'000'000;
inline constexpr std::uint64_t kCountLimit = 10'000'000;

SieveCache sieve_spf(std::uint64_t x);

/// Throws PreconditionError unless gcd(a_1 + ... + a_d - 1, s) = 1.
void require_coprime_modulus(const BaseContext& ctx, std::uint64_t s);

/// #{k < z : s_G(k) = r (mod s), k = h (mod q)}, 1 <= h <= q.
std::uint64_t class_progression_count(const BaseContext& ctx, std::uint64_t z, std::uint64_t r,
                                      std::uint64_t s, std::uint64_t h, std::uint64_t q);

struct DiscrepancyReport {
  std::uint64_t x = 0;
  std::uint64_t r = 0;
  std::uint64_t s = 1;
  double theta = 0.0;
  double eps = 0.0;
  double A = 0.0;
  /// Moduli run over 1 <= q < q_bound = x^(theta - eps).
  double q_bound = 0.0;
  std::vector<std::uint64_t> z_samples;
  /// per_q[q - 1] = max over sampled z and all h of the count difference.
  std::vector<double> per_q;
  double total = 0.0;
  double normalizer = 0.0;  // x (log 2x)^(-A)
  double normalized = 0.0;  // total / normalizer
};

/// {ceil(x / 2^i) : i >= 0} together with x, ascending, at most `limit`
/// values (0 for all), always keeping the largest ones.
std::vector<std::uint64_t> geometric_z_samples(std::uint64_t x, std::uint64_t limit = 0);

/// Left-hand side of the Bombieri-Vinogradov type sum with the max over z
/// taken over geometric_z_samples(x, z_samples).
DiscrepancyReport bv_discrepancy(const BaseContext& ctx, std::uint64_t x, std::uint64_t r,
                                 std::uint64_t s, double theta, double eps, double A,
                                 std::uint64_t z_samples = 0);

/// counts[c] = #{k < x : s_G(k) = c (mod s)}.
std::vector<std::uint64_t> residue_histogram(const BaseContext& ctx, std::uint64_t x,
                                             std::uint64_t s);

/// #{k <= x : s_G(k) = r (mod s), k prime or a product of two primes}.
std::uint64_t almost_prime_count(const BaseContext& ctx, std::uint64_t x, std::uint64_t r,
                                 std::uint64_t s, const SieveCache& sieve);

/// Lambda_ell(n) for 0 <= n < x (Lambda_ell(0) = Lambda_ell(1) = 0).
std::vector<double> generalized_von_mangoldt(std::uint64_t x, unsigned ell,
                                             const SieveCache& sieve);

struct VonMangoldtSum {
  double lhs = 0.0;
  double main_term = 0.0;
  double ratio = 0.0;
};

/// sum_{k < x, s_G(k) = r (mod s)} Lambda_ell(k) against (ell / s) x (log x)^(ell - 1).
VonMangoldtSum von_mangoldt_sum(const BaseContext& ctx, std::uint64_t x, unsigned ell,
                                std::uint64_t r, std::uint64_t s, const SieveCache& sieve);

}  // namespace recnum
