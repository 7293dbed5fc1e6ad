#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "recnum/base.hpp"

using namespace recnum;

namespace {

RecurrenceSpec random_valid_spec(std::mt19937_64& rng) {
  for (;;) {
    const std::size_t d = 1 + rng() % 5;
    RecurrenceSpec s;
    s.coeffs.resize(d);
    s.coeffs[0] = 1 + rng() % 50;
    for (std::size_t i = 1; i < d; ++i) s.coeffs[i] = rng() % (s.coeffs[0] + 1);
    if (s.coeffs[d - 1] == 0) s.coeffs[d - 1] = 1;
    s.initials.assign(d, 1);
    for (std::size_t k = 1; k < d; ++k) {
      std::uint64_t sum = 0;
      for (std::size_t i = 1; i <= k; ++i) sum += s.coeffs[i - 1] * s.initials[k - i];
      s.initials[k] = sum + 1 + rng() % 4;
    }
    if (validate_spec(s).ok) return s;
  }
}

Natural companion_term(const RecurrenceSpec& s, std::size_t n) {
  std::vector<Natural> state(s.initials.begin(), s.initials.end());  // G_k .. G_{k+d-1}
  const std::size_t d = s.order();
  for (std::size_t k = 0; k < n; ++k) {
    Natural next = 0;
    for (std::size_t i = 0; i < d; ++i) next += static_cast<Natural>(s.coeffs[i]) * state[d - 1 - i];
    std::vector<Natural> shifted(state.begin() + 1, state.end());
    shifted.push_back(next);
    state = shifted;
  }
  return state[0];
}

}  // namespace

TEST_CASE("validation examples") {
  CHECK(validate_spec(RecurrenceSpec::zeckendorf()).ok);
  CHECK(validate_spec({{7, 1}, {1, 8}}).ok);
  const auto bad = validate_spec({{1, 2}, {1, 2}});
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.violations.size() == 1);
  CHECK(bad.violations[0] == "condition_3");
}

TEST_CASE("each violated condition is named") {
  CHECK(validate_spec({{2, 1}, {2, 5}}).violations.front() == "g0_equals_one");
  CHECK(validate_spec({{2, 0}, {1, 5}}).violations.front() == "a_d_positive");
  const auto c1 = validate_spec({{3, 1}, {1, 3}});
  CHECK_FALSE(c1.ok);
  CHECK(std::find(c1.violations.begin(), c1.violations.end(), "condition_1") != c1.violations.end());
  CHECK(validate_spec({{1, 1}, {1}}).violations.front() == "order");
  // (a_2, a_3) = (1, 2) > (a_1, a_2) = (1, 1)
  CHECK_FALSE(validate_spec({{1, 1, 2}, {1, 2, 4}}).ok);
}

TEST_CASE("sequence terms") {
  const BaseContext z(RecurrenceSpec::zeckendorf());
  const std::uint64_t expected[] = {1, 2, 3, 5, 8, 13, 21};
  for (std::size_t n = 0; n < 7; ++n) CHECK(sequence_term(z, n) == expected[n]);
  const BaseContext b7({{7, 1}, {1, 8}});
  CHECK(b7.term(2) == 57);
  for (std::size_t n = 1; n < z.term_count(); ++n) CHECK(z.term(n) > z.term(n - 1));
}

TEST_CASE("overflow is reported with the index") {
  const BaseContext z(RecurrenceSpec::zeckendorf());
  CHECK_THROWS_AS((void)z.term(400), OverflowError);
  try {
    (void)z.term(400);
  } catch (const OverflowError& e) {
    CHECK(std::string(e.what()).find("G_400") != std::string::npos);
  }
  CHECK(z.term_count() > 150);
}

TEST_CASE("term ratio converges to the dominant root") {
  const BaseContext b(RecurrenceSpec::quadratic(39));
  const double oracle = (39.0 + std::sqrt(39.0 * 39.0 + 4.0)) / 2.0;
  const long double ratio = to_long_double(b.term(20)) / to_long_double(b.term(19));
  CHECK(static_cast<double>(ratio) == doctest::Approx(oracle).epsilon(1e-14));
  CHECK(b.alpha() == doctest::Approx(39.02562419).epsilon(1e-9));
}

TEST_CASE("dominant root") {
  CHECK(dominant_root(RecurrenceSpec::zeckendorf()) ==
        doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-14));
  CHECK(std::llround(std::pow(dominant_root(RecurrenceSpec::quadratic(39)), 3)) == 59436);
  CHECK(std::llround(std::pow(dominant_root(RecurrenceSpec::quadratic(15)), 3)) == 3420);
}

TEST_CASE("growth constant") {
  const BaseContext z(RecurrenceSpec::zeckendorf());
  const auto c = z.growth_constant(64);
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(c.c == doctest::Approx(phi * phi / std::sqrt(5.0)).epsilon(1e-10));
  CHECK(c.bracket < 1e-12);
  const BaseContext b7({{7, 1}, {1, 8}});
  const auto c7 = b7.growth_constant(40);
  CHECK(c7.bracket < 1e-10);
  CHECK(c7.c > 0.0);
  // N beyond the exact range is reduced, not an error.
  const auto big = b7.growth_constant(1000);
  CHECK(big.reduced);
  CHECK(big.c > 0.0);
}

TEST_CASE("recurrence agrees with the companion matrix") {
  const std::vector<RecurrenceSpec> specs = {RecurrenceSpec::zeckendorf(),
                                             {{7, 1}, {1, 8}},
                                             {{3, 2, 1}, {1, 4, 15}},
                                             {{2, 2}, {1, 3}}};
  for (const auto& s : specs) {
    const BaseContext ctx(s);
    for (std::size_t n = 0; n < 30; ++n) CHECK(ctx.term(n) == companion_term(s, n));
  }
}

TEST_CASE("normalized error term shrinks") {
  for (const auto& s : {RecurrenceSpec::zeckendorf(), RecurrenceSpec{{2, 2}, {1, 3}}}) {
    const BaseContext ctx(s);
    const long double alpha = ctx.alpha();
    const long double c = ctx.growth_constant(64).c;
    auto err = [&](int n) {
      const long double an = std::pow(alpha, static_cast<long double>(n));
      return std::fabs(to_long_double(ctx.term(n)) - c * an) / an;
    };
    CHECK(err(60) < err(20));
  }
}

TEST_CASE("random valid specs have alpha in [a1, a1 + 1)") {
  std::mt19937_64 rng(12345);
  for (int i = 0; i < 100; ++i) {
    const auto s = random_valid_spec(rng);
    const double a = dominant_root(s);
    CHECK(a >= static_cast<double>(s.coeffs[0]));
    CHECK(a < static_cast<double>(s.coeffs[0]) + 1.0);
    CHECK(std::fabs(static_cast<double>(characteristic_polynomial(s, a))) <
          1e-9 * std::pow(a, static_cast<double>(s.order())));
  }
}

TEST_CASE("index set and index_above") {
  const BaseContext ctx({{3, 0, 1}, {1, 4, 13}});
  CHECK(ctx.index_set() == std::vector<std::size_t>{1, 3});
  const BaseContext z(RecurrenceSpec::zeckendorf());
  CHECK(z.index_above(0) == 0);
  CHECK(z.index_above(1) == 1);
  CHECK(z.index_above(4) == 3);
  CHECK(z.index_above(5) == 4);
}

TEST_CASE("invalid spec cannot build a context") {
  CHECK_THROWS_AS(BaseContext({{1, 2}, {1, 2}}), PreconditionError);
}
