#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "recnum/base.hpp"
#include "recnum/frequency.hpp"

namespace recnum {

using Complex = std::complex<double>;

struct ExpSumParams {
  Frequency y;
  Frequency beta;
};

/// S_0 .. S_n for fixed (y, beta).
struct ExpSumTable {
  ExpSumParams params;
  std::vector<Complex> values;
};

/// Largest G_n accepted by exp_sum_direct.
inline constexpr std::uint64_t kDirectSumLimit = 10'000'000;
/// Largest G_n accepted by the 1-norm quadratures.
inline constexpr std::uint64_t kQuadratureLimit = 100'000;

/// S_n(y, beta) = sum_{k < G_n} e(beta s_G(k) + y k), summed pairwise.
Complex exp_sum_direct(const BaseContext& ctx, std::size_t n, const ExpSumParams& params);

/// dS_n/dy = sum_{k < G_n} 2 pi i k e(beta s_G(k) + y k), summed pairwise.
Complex exp_sum_derivative_direct(const BaseContext& ctx, std::size_t n,
                                  const ExpSumParams& params);

/// A_{n,j}(y, beta) = sum_{l < a_j} e(y (sum_{k<j} a_k G_{n-k} + l G_{n-j})
///                                    + beta (sum_{k<j} a_k + l)).
Complex coefficient_A(const BaseContext& ctx, std::size_t n, std::size_t j,
                      const ExpSumParams& params);

/// S_k for k <= n: direct summation for k < d, then
/// S_k = sum_{j in I} A_{k,j} S_{k-j}.
ExpSumTable exp_sum_recurrent(const BaseContext& ctx, std::size_t n, const ExpSumParams& params);

/// S_n together with dS_n/dy, both through the recurrence (the derivative by
/// the product rule). Used by the quadratures.
std::pair<Complex, Complex> exp_sum_and_derivative(const BaseContext& ctx, std::size_t n,
                                                   const ExpSumParams& params);

/// |sin(pi a_j x) / sin(pi x)| with x = beta + y G_{k-j}; a_j when x is within
/// 1e-12 of an integer.
double kernel_f(const BaseContext& ctx, std::size_t k, std::size_t j, const Frequency& y,
                const Frequency& beta);

/// |sin(pi a x) / sin(pi x)| for a fractional argument, a at integers.
double dirichlet_ratio(std::uint64_t a, long double x);

struct QuadratureResult {
  double value = 0.0;
  std::uint64_t nodes = 0;
};

/// Midpoint-rule estimate of int_0^1 |S_n(y, beta)| dy with
/// samples_per_oscillation * G_n nodes.
QuadratureResult one_norm(const BaseContext& ctx, std::size_t n, const Frequency& beta,
                          unsigned samples_per_oscillation = 16);

/// Same for int_0^1 |dS_n/dy (y, beta)| dy.
QuadratureResult derivative_one_norm(const BaseContext& ctx, std::size_t n,
                                     const Frequency& beta, unsigned samples_per_oscillation = 16);

struct GallagherReport {
  std::size_t n = 0;
  std::uint64_t farey_order = 0;
  std::uint64_t farey_count = 0;
  double spacing = 0.0;
  double lhs = 0.0;
  double one_norm = 0.0;
  double derivative_one_norm = 0.0;
  double rhs = 0.0;
  bool ok = false;
};

/// Numeric check of sum_{h/q in F_Q} |S_n(h/q, beta)|
///   <= Q^2 ||S_n||_1 + 1/2 ||dS_n/dy||_1.
GallagherReport gallagher_check(const BaseContext& ctx, std::size_t n, const Frequency& beta,
                                std::uint64_t farey_order, unsigned samples_per_oscillation = 16);

}  // namespace recnum
