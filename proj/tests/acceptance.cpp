// Acceptance gate. Each criterion prints one line
//   criterion <id>: PASS|FAIL - <detail>
// and the process exits 0 on PASS, 1 on FAIL.

#include <cmath>
#include <algorithm>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "recnum/blockcert.hpp"
#include "recnum/bounds.hpp"
#include "recnum/digits.hpp"
#include "recnum/experiments.hpp"
#include "recnum/expsum.hpp"
#include "recnum/parallel.hpp"

using namespace recnum;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

constexpr double kThetaTarget = 0.5113939;
constexpr double kEtaExponent = 0.4886061;

GridParams reference_grid(std::uint64_t a) {
  const auto e = table1_entry(a);
  return {e->eps, e->eta, 1e-10};
}

bool within(double value, double ref, double rel) { return std::fabs(value / ref - 1.0) <= rel; }

Outcome table_row(std::uint64_t a, bool check_m2, bool check_kappa) {
  const auto row = reproduce_table1({a}, reference_grid(a)).front();
  const auto& r = row.report;
  bool pass = true;
  if (check_m2) pass = pass && within(r.M2, row.reference.M2, 0.02);
  if (check_kappa) pass = pass && r.kappa < kKappaTarget;
  return {pass, fmt::format("a={} eps={} eta={} M2={:.1f} (table {:.1f}, rel diff {:+.2f}%) kappa={:.5f} "
                            "(target {}, table {}) main_term={:.1f} literal_M2={:.1f} "
                            "literal_kappa={:.5f} runtime={:.1f}s",
                            a, r.grid.eps, r.grid.eta, r.M2, row.reference.M2, 100.0 * row.M2_relative_diff,
                            r.kappa, kKappaTarget, row.reference.kappa, r.main_term, r.literal_M2,
                            r.literal_kappa, r.runtime_seconds)};
}

Outcome criterion_1a() { return table_row(39, true, true); }
Outcome criterion_1b() { return table_row(30, true, false); }
Outcome criterion_1c() { return table_row(15, false, true); }

Outcome criterion_2() {
  std::string bad;
  for (std::uint64_t a = 15; a <= 39; ++a) {
    const QuadraticFamily f(a);
    const auto rounded = std::llround(static_cast<double>(f.alpha * f.alpha * f.alpha));
    if (rounded != static_cast<long long>(table1_entry(a)->alpha3)) bad += fmt::format(" a={}", a);
  }
  return {bad.empty(), bad.empty() ? "round(alpha^3) matches for a=15..39" : "mismatch at" + bad};
}

Outcome criterion_3() {
  double worst_mg = -1e9;
  double worst_shift = -1e9;
  bool pass = true;
  for (std::uint64_t a = 40; a <= 100; ++a) {
    const BaseContext ctx(RecurrenceSpec::quadratic(a));
    const double limit = std::pow(ctx.alpha(), kEtaExponent);
    if (a >= 59) {
      const double gap = m_G(ctx) + 3.0 - limit;
      worst_mg = std::max(worst_mg, gap);
      pass = pass && gap < 0.0;
    } else {
      const double gap = m_shifted(ctx, 2) + 2.0 - limit;
      worst_shift = std::max(worst_shift, gap);
      pass = pass && gap < 0.0;
    }
  }
  return {pass, fmt::format("max(m_G + 3 - alpha^e) over a=59..100 is {:.4f}; "
                            "max(m^(2) + 2 - alpha^e) over a=40..58 is {:.4f}",
                            worst_mg, worst_shift)};
}

Outcome criterion_4() {
  double worst = -1e9;
  std::string bad;
  for (std::uint64_t a = 3; a <= 100; ++a) {
    for (std::uint64_t a2 : {std::uint64_t{1}, a}) {
      const BaseContext ctx({{a, a2}, {1, a + 1}});
      const double gap = m_G(ctx) - m_closed_form(a);
      worst = std::max(worst, gap);
      if (gap > 0.0) bad += fmt::format(" ({},{})", a, a2);
    }
  }
  return {bad.empty(), fmt::format("max(m_G - closed form) = {:.6f}{}", worst,
                                   bad.empty() ? "" : "; violated at" + bad)};
}

Outcome criterion_5() {
  const auto t59 = theta_lower_bound(BaseContext(RecurrenceSpec::quadratic(59)));
  const auto block = certify_block_bound(15, reference_grid(15));
  ThetaOptions opt;
  opt.block_kappa = block.kappa;
  const auto t15 = theta_lower_bound(BaseContext(RecurrenceSpec::quadratic(15)), opt);
  const bool pass = t59.theta >= kThetaTarget && block.status == "certified" && t15.theta >= kThetaTarget;
  return {pass, fmt::format("theta(59,1)={:.7f} via {}; theta(15,1)={:.7f} via {} (kappa={:.5f})",
                            t59.theta, t59.source, t15.theta, t15.source, block.kappa)};
}

Outcome criterion_6() {
  const std::vector<RecurrenceSpec> specs = {RecurrenceSpec::zeckendorf(),
                                             {{7, 1}, {1, 8}},
                                             {{3, 2, 1}, {1, 4, 15}},
                                             {{2, 2}, {1, 3}},
                                             {{39, 1}, {1, 40}}};
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  bool bounded = true;
  std::string ranges;
  for (const auto& spec : specs) {
    const BaseContext ctx(spec);
    std::size_t n_max = 0;
    while (n_max < 12 && ctx.term(n_max + 1) <= kDirectSumLimit) ++n_max;
    ranges += fmt::format(" ({}):n<={}", fmt::join(spec.coeffs, ","), n_max);
    for (int t = 0; t < 20; ++t) {
      const ExpSumParams p{Frequency::real(unit(rng)), Frequency::real(unit(rng))};
      const auto table = exp_sum_recurrent(ctx, n_max, p);
      for (std::size_t n = 0; n <= n_max; ++n) {
        const Complex direct = exp_sum_direct(ctx, n, p);
        worst = std::max(worst, std::abs(table.values[n] - direct) / std::max(std::abs(direct), 1.0));
        const double g = static_cast<double>(ctx.term(n));
        bounded = bounded && std::abs(table.values[n]) <= g * (1.0 + 1e-12);
      }
    }
  }
  return {worst <= 1e-9 && bounded,
          fmt::format("max relative difference {:.3e}; |S_n| <= G_n: {};{}", worst, bounded, ranges)};
}

Outcome criterion_7() {
  bool pass = true;
  std::string detail;
  std::uint64_t seed = 7;
  for (std::uint64_t a : {39u, 30u, 15u}) {
    const auto grid = reference_grid(a);
    const auto cert = certify_M2_2(a, grid);
    const double sampled = sample_M2_2(a, grid, 100000, seed++);
    pass = pass && sampled <= cert.bound;
    detail += fmt::format(" a={}: sampled max {:.1f} <= certified {:.1f};", a, sampled, cert.bound);
  }
  return {pass, detail};
}

Outcome criterion_8() {
  const std::vector<RecurrenceSpec> specs = {RecurrenceSpec::zeckendorf(),
                                             {{7, 1}, {1, 8}},
                                             {{3, 2, 1}, {1, 4, 15}},
                                             {{2, 2}, {1, 3}},
                                             {{3, 0, 1}, {1, 4, 13}}};
  std::mt19937_64 rng(88);
  bool pass = true;
  double worst_ratio = 0.0;
  for (int t = 0; t < 10; ++t) {
    const BaseContext ctx(specs[rng() % specs.size()]);
    std::size_t n = 1 + rng() % 6;
    while (n > 1 && ctx.term(n) > 5000) --n;  // keeps the quadrature small
    const std::uint64_t Q = 1 + rng() % 10;
    const auto beta = Frequency::real(std::uniform_real_distribution<double>(0.0, 1.0)(rng));
    const auto r = gallagher_check(ctx, n, beta, Q);
    pass = pass && r.ok;
    worst_ratio = std::max(worst_ratio, r.lhs / r.rhs);
  }
  return {pass, fmt::format("10 checks, max lhs/rhs = {:.4f}", worst_ratio)};
}

void enumerate(const BaseContext& ctx, std::size_t len, std::vector<std::uint64_t>& cur,
               std::vector<std::uint64_t>& out) {
  if (cur.size() == len) {
    std::vector<std::uint64_t> little(cur.rbegin(), cur.rend());
    while (!little.empty() && little.back() == 0) little.pop_back();
    if (is_parry_admissible(ctx, little)) out.push_back(static_cast<std::uint64_t>(value_of(ctx, little)));
    return;
  }
  for (std::uint64_t e = 0; e <= ctx.a1(); ++e) {
    cur.push_back(e);
    enumerate(ctx, len, cur, out);
    cur.pop_back();
  }
}

Outcome criterion_9() {
  const std::vector<RecurrenceSpec> specs = {RecurrenceSpec::zeckendorf(),
                                             {{7, 1}, {1, 8}},
                                             {{3, 2, 1}, {1, 4, 15}},
                                             {{2, 2}, {1, 3}},
                                             {{39, 1}, {1, 40}}};
  std::uint64_t failures = 0;
  for (const auto& spec : specs) {
    const BaseContext ctx(spec);
    for (std::uint64_t v = 0; v <= 1'000'000; ++v) {
      const auto e = expand(ctx, v);
      if (value_of(ctx, e) != v) ++failures;
      Natural prefix = 0;
      for (std::size_t j = 0; j < e.digits.size(); ++j) {
        prefix += e.digits[j] * ctx.term(j);
        if (prefix >= ctx.term(j + 1)) ++failures;
      }
    }
  }
  const BaseContext b7({{7, 1}, {1, 8}});
  bool set_equal = is_strengthened(b7);
  for (std::size_t len = 1; len <= 6; ++len) {
    std::vector<std::uint64_t> values;
    std::vector<std::uint64_t> cur;
    enumerate(b7, len, cur, values);
    std::sort(values.begin(), values.end());
    const auto g = static_cast<std::uint64_t>(b7.term(len));
    bool ok = values.size() == g;
    for (std::uint64_t v = 0; ok && v < g; ++v) ok = values[v] == v;
    // Greedy expansions below G_len are themselves admissible.
    for (std::uint64_t v = 0; ok && v < g; v += 97) ok = is_parry_admissible(b7, expand(b7, v).digits);
    set_equal = set_equal && ok;
  }
  return {failures == 0 && set_equal,
          fmt::format("round-trip/prefix failures: {}; Parry set equals [0, G_len) for len<=6 "
                      "(G_6 = {}): {}",
                      failures, to_string(b7.term(6)), set_equal)};
}

Outcome criterion_10() {
  const BaseContext z(RecurrenceSpec::zeckendorf());
  const auto small = bv_discrepancy(z, 10'000, 1, 2, 0.5, 0.2, 1.0);
  const auto large = bv_discrepancy(z, 1'000'000, 1, 2, 0.5, 0.2, 1.0);
  return {large.normalized < small.normalized,
          fmt::format("normalized at 1e4 = {:.6f}, at 1e6 = {:.6f} (A=1)", small.normalized,
                      large.normalized)};
}

Outcome criterion_11a() {
  const BaseContext z(RecurrenceSpec::zeckendorf());
  const auto sieve = sieve_spf(10'000'000);
  double lo = 1e300, hi = 0.0;
  std::string detail;
  for (std::uint64_t x : {100'000u, 1'000'000u, 10'000'000u}) {
    const double ratio = almost_prime_count(z, x, 1, 2, sieve) / (x / std::log(static_cast<double>(x)));
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    detail += fmt::format(" x={}: {:.4f};", x, ratio);
  }
  return {hi <= 2.0 * lo, fmt::format("count/(x/log x):{} spread {:.3f}", detail, hi / lo)};
}

Outcome criterion_11b() {
  const BaseContext ctx(RecurrenceSpec::quadratic(99));
  const std::uint64_t x = 1'000'000;
  const auto sieve = sieve_spf(x);
  const auto v = von_mangoldt_sum(ctx, x, 2, 0, 2, sieve);
  return {v.ratio >= 0.5 && v.ratio <= 1.5,
          fmt::format("base (99,1), x=1e6, ell=2, s=2, r=0: lhs/main = {:.4f}", v.ratio)};
}

Outcome criterion_11c() {
  const std::uint64_t x = 1'000'000;
  const auto sieve = sieve_spf(x);
  const auto l2 = generalized_von_mangoldt(x + 1, 2, sieve);
  double sum = 0.0;
  for (double v : l2) sum += v;
  const double ratio = sum / (2.0 * 1e6 * std::log(1e6));
  return {ratio >= 0.85 && ratio <= 1.15, fmt::format("sum Lambda_2(n), n<=1e6, over 2x log x = {:.4f}", ratio)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::string id;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--criterion", id)->required();
  app.add_option("--threads", threads);
  CLI11_PARSE(app, argc, argv);
  set_thread_count(threads);

  const std::map<std::string, std::function<Outcome()>> criteria = {
      {"1a", criterion_1a}, {"1b", criterion_1b}, {"1c", criterion_1c}, {"2", criterion_2},
      {"3", criterion_3},   {"4", criterion_4},   {"5", criterion_5},   {"6", criterion_6},
      {"7", criterion_7},   {"8", criterion_8},   {"9", criterion_9},   {"10", criterion_10},
      {"11a", criterion_11a}, {"11b", criterion_11b}, {"11c", criterion_11c}};
  const auto it = criteria.find(id);
  if (it == criteria.end()) {
    std::cerr << "unknown criterion " << id << "\n";
    return 2;
  }
  Outcome o;
  try {
    o = it->second();
  } catch (const std::exception& e) {
    o = {false, std::string("error: ") + e.what()};
  }
  std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail << std::endl;
  return o.pass ? 0 : 1;
}
