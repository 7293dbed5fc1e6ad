#include "recnum/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <numbers>

#include <fmt/format.h>

#include "recnum/digits.hpp"
#include "recnum/parallel.hpp"

namespace recnum {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_index(const BaseContext& ctx, std::size_t n, std::size_t j) {
  if (j < 1 || j > ctx.order() || ctx.coeff(j) == 0) {
    throw PreconditionError(fmt::format("index j = {} is not in I", j));
  }
  if (n < j) throw PreconditionError(fmt::format("A_(n,j) needs n >= j (n = {}, j = {})", n, j));
}

std::uint64_t guarded_size(const BaseContext& ctx, std::size_t n, std::uint64_t limit,
                           const char* what) {
  const Natural g = ctx.term(n);
  if (g > limit) {
    throw GuardError(fmt::format("{}: G_{} = {} exceeds the limit {}", what, n, to_string(g),
                                 limit));
  }
  return static_cast<std::uint64_t>(g);
}

struct DirectSums {
  Complex value;
  Complex derivative;
};

DirectSums direct_sums(const BaseContext& ctx, std::size_t n, const ExpSumParams& p,
                       bool with_derivative) {
  const std::uint64_t count = guarded_size(ctx, n, kDirectSumLimit, "exp_sum_direct");
  const auto digit_sums = digit_sum_table(ctx, count);
  std::vector<Complex> terms(count);
  std::vector<Complex> dterms(with_derivative ? count : 0);
  for (std::uint64_t k = 0; k < count; ++k) {
    const long double phase = p.beta.times(digit_sums[k]) + p.y.times(k);
    terms[k] = unit_phase(phase);
    if (with_derivative) {
      dterms[k] = Complex(0.0, kTwoPi * static_cast<double>(k)) * terms[k];
    }
  }
  DirectSums out;
  out.value = pairwise_sum(terms);
  if (with_derivative) out.derivative = pairwise_sum(dterms);
  return out;
}

/// A_{n,j} and optionally its y-derivative.
std::pair<Complex, Complex> coefficient_with_derivative(const BaseContext& ctx, std::size_t n,
                                                        std::size_t j, const ExpSumParams& p,
                                                        bool with_derivative) {
  Natural offset = 0;
  std::uint64_t digit_offset = 0;
  for (std::size_t k = 1; k < j; ++k) {
    offset += static_cast<Natural>(ctx.coeff(k)) * ctx.term(n - k);
    digit_offset += ctx.coeff(k);
  }
  const Natural step = ctx.term(n - j);
  Complex value{};
  Complex derivative{};
  Natural position = offset;
  for (std::uint64_t l = 0; l < ctx.coeff(j); ++l) {
    const long double phase = p.y.times(position) + p.beta.times(digit_offset + l);
    const Complex e = unit_phase(phase);
    value += e;
    if (with_derivative) {
      derivative += Complex(0.0, kTwoPi * static_cast<double>(position)) * e;
    }
    position += step;
  }
  return {value, derivative};
}

}  // namespace

Complex exp_sum_direct(const BaseContext& ctx, std::size_t n, const ExpSumParams& params) {
  return direct_sums(ctx, n, params, false).value;
}

Complex exp_sum_derivative_direct(const BaseContext& ctx, std::size_t n,
                                  const ExpSumParams& params) {
  return direct_sums(ctx, n, params, true).derivative;
}

Complex coefficient_A(const BaseContext& ctx, std::size_t n, std::size_t j,
                      const ExpSumParams& params) {
  require_index(ctx, n, j);
  return coefficient_with_derivative(ctx, n, j, params, false).first;
}

ExpSumTable exp_sum_recurrent(const BaseContext& ctx, std::size_t n, const ExpSumParams& params) {
  ExpSumTable table{params, {}};
  table.values.reserve(n + 1);
  const std::size_t d = ctx.order();
  for (std::size_t k = 0; k <= n; ++k) {
    if (k < d) {
      table.values.push_back(exp_sum_direct(ctx, k, params));
      continue;
    }
    Complex s{};
    for (std::size_t j : ctx.index_set()) {
      s += coefficient_with_derivative(ctx, k, j, params, false).first * table.values[k - j];
    }
    table.values.push_back(s);
  }
  return table;
}

std::pair<Complex, Complex> exp_sum_and_derivative(const BaseContext& ctx, std::size_t n,
                                                   const ExpSumParams& params) {
  const std::size_t d = ctx.order();
  std::vector<Complex> s(n + 1);
  std::vector<Complex> ds(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    if (k < d) {
      const auto direct = direct_sums(ctx, k, params, true);
      s[k] = direct.value;
      ds[k] = direct.derivative;
      continue;
    }
    Complex v{};
    Complex dv{};
    for (std::size_t j : ctx.index_set()) {
      const auto [a, da] = coefficient_with_derivative(ctx, k, j, params, true);
      v += a * s[k - j];
      dv += da * s[k - j] + a * ds[k - j];
    }
    s[k] = v;
    ds[k] = dv;
  }
  return {s[n], ds[n]};
}

double dirichlet_ratio(std::uint64_t a, long double x) {
  const long double f = x - std::nearbyint(x);
  if (std::fabs(f) < 1e-12L) return static_cast<double>(a);
  const long double pi = std::numbers::pi_v<long double>;
  return static_cast<double>(
      std::fabs(std::sin(pi * static_cast<long double>(a) * f) / std::sin(pi * f)));
}

double kernel_f(const BaseContext& ctx, std::size_t k, std::size_t j, const Frequency& y,
                const Frequency& beta) {
  require_index(ctx, k, j);
  const long double x = beta.value() + y.times(ctx.term(k - j));
  return dirichlet_ratio(ctx.coeff(j), x);
}

namespace {

QuadratureResult quadrature(const BaseContext& ctx, std::size_t n, const Frequency& beta,
                            unsigned samples, bool derivative) {
  const std::uint64_t g = guarded_size(ctx, n, kQuadratureLimit, "one_norm");
  if (samples == 0) throw PreconditionError("samples_per_oscillation must be positive");
  const std::uint64_t nodes = static_cast<std::uint64_t>(samples) * g;
  std::vector<double> values(nodes);
  parallel_for(nodes, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t i = begin; i < end; ++i) {
      // Midpoint node (2i + 1) / (2N), kept rational so phases are exact.
      const ExpSumParams p{Frequency::rational(static_cast<std::int64_t>(2 * i + 1), 2 * nodes),
                           beta};
      const auto [s, ds] = exp_sum_and_derivative(ctx, n, p);
      values[i] = derivative ? std::abs(ds) : std::abs(s);
    }
  });
  QuadratureResult r;
  r.nodes = nodes;
  r.value = pairwise_sum(values) / static_cast<double>(nodes);
  return r;
}

}  // namespace

QuadratureResult one_norm(const BaseContext& ctx, std::size_t n, const Frequency& beta,
                          unsigned samples_per_oscillation) {
  return quadrature(ctx, n, beta, samples_per_oscillation, false);
}

QuadratureResult derivative_one_norm(const BaseContext& ctx, std::size_t n,
                                     const Frequency& beta, unsigned samples_per_oscillation) {
  return quadrature(ctx, n, beta, samples_per_oscillation, true);
}

GallagherReport gallagher_check(const BaseContext& ctx, std::size_t n, const Frequency& beta,
                                std::uint64_t farey_order, unsigned samples_per_oscillation) {
  if (farey_order == 0 || farey_order * farey_order > 10'000) {
    throw GuardError(fmt::format("Farey order Q = {} must satisfy 1 <= Q^2 <= 10^4", farey_order));
  }
  GallagherReport r;
  r.n = n;
  r.farey_order = farey_order;
  r.spacing = 1.0 / static_cast<double>(farey_order * farey_order);

  std::vector<double> magnitudes;
  for (std::uint64_t q = 1; q <= farey_order; ++q) {
    for (std::uint64_t h = 0; h < q; ++h) {
      if (std::gcd(h, q) != 1) continue;  // also drops 0/q for q > 1
      const ExpSumParams p{Frequency::rational(static_cast<std::int64_t>(h), q), beta};
      magnitudes.push_back(std::abs(exp_sum_recurrent(ctx, n, p).values.back()));
    }
  }
  r.farey_count = magnitudes.size();
  r.lhs = pairwise_sum(magnitudes);
  r.one_norm = one_norm(ctx, n, beta, samples_per_oscillation).value;
  r.derivative_one_norm = derivative_one_norm(ctx, n, beta, samples_per_oscillation).value;
  r.rhs = r.one_norm / r.spacing + 0.5 * r.derivative_one_norm;
  r.ok = r.lhs <= r.rhs * (1.0 + 1e-6);
  return r;
}

}  // namespace recnum
