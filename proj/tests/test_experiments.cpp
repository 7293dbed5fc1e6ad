#include <doctest.h>

#include <cmath>

#include "recnum/digits.hpp"
#include "recnum/experiments.hpp"

using namespace recnum;

namespace {

int mobius(std::uint64_t n) {
  int mu = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  return n > 1 ? -mu : mu;
}

double lambda_by_mobius(std::uint64_t n, unsigned ell) {
  double acc = 0.0;
  for (std::uint64_t d = 1; d <= n; ++d) {
    if (n % d == 0) acc += mobius(d) * std::pow(std::log(static_cast<double>(n / d)), ell);
  }
  return acc;
}

bool naive_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("sieve") {
  const auto s = sieve_spf(10000);
  CHECK(s.limit == 10000);
  std::uint64_t count = 0;
  for (std::uint64_t n = 0; n <= 10000; ++n) {
    CHECK(s.is_prime(n) == naive_prime(n));
    count += naive_prime(n);
  }
  CHECK(s.prime_count() == count);
  CHECK(sieve_spf(100).prime_count() == 25);
  CHECK(s.is_almost_prime(7));
  CHECK(s.is_almost_prime(9));
  CHECK(s.is_almost_prime(6));
  CHECK_FALSE(s.is_almost_prime(8));
  CHECK_FALSE(s.is_almost_prime(1));
  CHECK_FALSE(s.is_almost_prime(30));
}

TEST_CASE("modulus must be coprime to the coefficient sum minus one") {
  CHECK_NOTHROW(require_coprime_modulus(BaseContext(RecurrenceSpec::zeckendorf()), 6));
  CHECK_THROWS_AS(require_coprime_modulus(BaseContext({{7, 1}, {1, 8}}), 7), PreconditionError);
  CHECK_THROWS_AS(require_coprime_modulus(BaseContext(RecurrenceSpec::quadratic(100)), 2),
                  PreconditionError);
  CHECK_NOTHROW(require_coprime_modulus(BaseContext(RecurrenceSpec::quadratic(99)), 2));
}

TEST_CASE("progression counts against a direct loop") {
  const BaseContext ctx({{7, 1}, {1, 8}});
  for (std::uint64_t q : {1u, 3u, 10u}) {
    for (std::uint64_t h = 1; h <= q; ++h) {
      std::uint64_t expected = 0;
      for (std::uint64_t k = 0; k < 1000; ++k) {
        if (k % q == h % q && sum_of_digits(ctx, k) % 3 == 2) ++expected;
      }
      CHECK(class_progression_count(ctx, 1000, 2, 3, h, q) == expected);
    }
  }
  CHECK_THROWS_AS((void)class_progression_count(ctx, 10, 0, 2, 0, 3), PreconditionError);
}

TEST_CASE("geometric samples of z") {
  CHECK(geometric_z_samples(100) == std::vector<std::uint64_t>{1, 2, 4, 7, 13, 25, 50, 100});
  CHECK(geometric_z_samples(100, 3) == std::vector<std::uint64_t>{25, 50, 100});
}

TEST_CASE("discrepancy matches progression counts") {
  const BaseContext z(RecurrenceSpec::zeckendorf());
  const std::uint64_t x = 3000;
  const auto rep = bv_discrepancy(z, x, 1, 2, 0.5, 0.1, 1.0);
  CHECK(rep.q_bound == doctest::Approx(std::pow(3000.0, 0.4)));
  REQUIRE(rep.per_q.size() == 24);  // 3000^0.4 = 24.6
  for (std::uint64_t q = 1; q <= rep.per_q.size(); ++q) {
    double worst = 0.0;
    for (std::uint64_t zz : rep.z_samples) {
      const double mean = static_cast<double>(class_progression_count(z, zz, 1, 2, 1, 1)) / q;
      for (std::uint64_t h = 1; h <= q; ++h) {
        worst = std::max(worst, std::fabs(class_progression_count(z, zz, 1, 2, h, q) - mean));
      }
    }
    CHECK(rep.per_q[q - 1] == doctest::Approx(worst));
  }
  CHECK(rep.normalizer == doctest::Approx(3000.0 / std::log(6000.0)));
  CHECK(rep.normalized == doctest::Approx(rep.total / rep.normalizer));
}

TEST_CASE("residue histogram") {
  const BaseContext z(RecurrenceSpec::zeckendorf());
  const auto h = residue_histogram(z, 1000, 3);
  REQUIRE(h.size() == 3);
  CHECK(h[0] + h[1] + h[2] == 1000);
  std::uint64_t c1 = 0;
  for (std::uint64_t k = 0; k < 1000; ++k) c1 += sum_of_digits(z, k) % 3 == 1;
  CHECK(h[1] == c1);
}

TEST_CASE("almost prime count against a direct loop") {
  const BaseContext z(RecurrenceSpec::zeckendorf());
  const auto sieve = sieve_spf(5000);
  std::uint64_t expected = 0;
  for (std::uint64_t k = 2; k <= 5000; ++k) {
    if (sum_of_digits(z, k) % 2 != 1) continue;
    std::uint64_t m = k, factors = 0;
    for (std::uint64_t p = 2; p * p <= m; ++p)
      while (m % p == 0) m /= p, ++factors;
    factors += m > 1;
    expected += factors <= 2;
  }
  CHECK(almost_prime_count(z, 5000, 1, 2, sieve) == expected);
}

TEST_CASE("generalized von Mangoldt function") {
  const auto sieve = sieve_spf(3000);
  const auto l2 = generalized_von_mangoldt(3000, 2, sieve);
  CHECK(l2[6] == doctest::Approx(2.0 * std::log(2.0) * std::log(3.0)));
  CHECK(l2[6] == doctest::Approx(1.523000021));
  CHECK(l2[0] == 0.0);
  CHECK(l2[1] == 0.0);
  const auto l3 = generalized_von_mangoldt(3000, 3, sieve);
  for (std::uint64_t n = 2; n < 3000; n += 7) {
    CHECK(l2[n] == doctest::Approx(lambda_by_mobius(n, 2)).epsilon(1e-9).scale(1.0));
    CHECK(l3[n] == doctest::Approx(lambda_by_mobius(n, 3)).epsilon(1e-9).scale(1.0));
  }
  // Lambda_ell vanishes on integers with more than ell distinct prime factors.
  CHECK(std::fabs(l2[30]) < 1e-9);
}

TEST_CASE("von Mangoldt sum main term") {
  const BaseContext z(RecurrenceSpec::zeckendorf());
  const auto sieve = sieve_spf(100000);
  const auto v = von_mangoldt_sum(z, 100000, 2, 0, 2, sieve);
  CHECK(v.main_term == doctest::Approx(100000.0 * std::log(100000.0)));
  CHECK(v.ratio == doctest::Approx(v.lhs / v.main_term));
  CHECK(v.ratio > 0.5);
  CHECK(v.ratio < 1.5);
  CHECK_THROWS_AS((void)von_mangoldt_sum(z, 1000, 1, 0, 2, sieve), PreconditionError);
}
