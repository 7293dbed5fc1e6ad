#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "recnum/base.hpp"
#include "recnum/expsum.hpp"

namespace recnum {

struct GridParams {
  double eps = 0.005;    // y-grid step
  double eta = 0.0005;   // gamma-grid step
  double delta = 1e-10;
};

/// Throws PreconditionError unless every step is positive, eps <= 0.01 and
/// eta <= 0.001.
void validate_grid(const GridParams& grid);

/// Target exponent for width-2 blocks: M_2 < alpha^kKappaTarget.
inline constexpr double kKappaTarget = 2.9772122;

/// A^(w)_{n,j} for j in {w, w+1} on a d = 2 base, built by the recursion
///   A^(l)_{n,l}   = A^(l-1)_{n,l-1} A_{n-l+1,1} + A^(l-1)_{n,l}
///   A^(l)_{n,l+1} = A^(l-1)_{n,l-1} A_{n-l+1,2}
/// seeded with A^(1)_{n,j} = A_{n,j}. Needs n >= w + 1.
Complex block_coefficient(const BaseContext& ctx, unsigned w, unsigned j, std::size_t n,
                          const ExpSumParams& params);

/// Quantities of the family G_{n+2} = a G_{n+1} + G_n shared by the kernels.
struct QuadraticFamily {
  std::uint64_t a = 0;
  long double alpha = 0.0L;
  long double inv_alpha = 0.0L;
  std::uint64_t floor_alpha2 = 0;
  std::uint64_t floor_alpha3 = 0;

  explicit QuadraticFamily(std::uint64_t a);
};

/// sin(pi a x) / sin(pi x), with the limit value +-a at integers.
double dirichlet_g(std::uint64_t a, double x);

struct M22Result {
  double bound = 0.0;          // certified upper bound for M_2(2)
  double main_term = 0.0;      // max_q max_gamma0 sum_b max_y0 |h(y0, gamma0, q)|
  double literal_bound = 0.0;  // same main term with the global correction terms
  std::uint64_t y_nodes = 0;
  std::uint64_t gamma_nodes = 0;
  std::uint64_t worst_q = 0;
  double worst_gamma = 0.0;
};

/// Certified upper bound for M_2(2).
///
/// The y-axis is covered by cells of radius eps/2 around multiples of eps and
/// the gamma-axis by cells of radius eta/2 around multiples of eta. On each
/// cell |h| is bounded by its centre value plus first-order terms whose
/// derivative factors are themselves bounded from the centre values using
/// |g'| <= pi a (a - 1) and |g''| <= pi^2 a (a^2 - 1) / 3.
M22Result certify_M2_2(std::uint64_t a, const GridParams& grid);

/// max_q sum_{b=0}^{floor(alpha^3)+1} sup_{(b/a, (b+1)/a)} |g(y + q/a)| + (floor(alpha^3)+2) delta.
double certify_M2_3(std::uint64_t a, const GridParams& grid);

struct BlockBoundReport {
  std::uint64_t a = 0;
  unsigned width = 2;
  GridParams grid;
  double alpha = 0.0;
  /// "certified" or "not_certified" (widths other than 2).
  std::string status;
  double M2_2 = 0.0;
  double M2_3 = 0.0;
  double M2 = 0.0;
  double kappa = 0.0;
  bool pass = false;
  double main_term = 0.0;
  double literal_M2 = 0.0;
  double literal_kappa = 0.0;
  std::uint64_t y_nodes = 0;
  std::uint64_t gamma_nodes = 0;
  double runtime_seconds = 0.0;
};

/// max(M_w(w), 1) + max(M_w(w+1), 1)^(w / (w + 1)).
double combine_block_bounds(double m_w, double m_w1, unsigned w);

BlockBoundReport certify_block_bound(std::uint64_t a, const GridParams& grid, unsigned width = 2);

/// Largest of `samples` random evaluations of
///   floor(alpha^2) + 1 + sum_b |h(y_b, gamma, q)| + delta'
/// with y_b uniform in (b/a, (b+1)/a), gamma uniform in [0, 1) and q uniform
/// in {0, ..., a-1}. Every value is a lower bound for the quantity that
/// certify_M2_2 bounds from above.
double sample_M2_2(std::uint64_t a, const GridParams& grid, std::uint64_t samples,
                   std::uint64_t seed);

struct Table1Entry {
  std::uint64_t a;
  double eps;
  double eta;
  double M2;
  double kappa;
  std::uint64_t alpha3;
};

/// Published reference rows, a = 39 down to 15.
const std::vector<Table1Entry>& table1_reference();
std::optional<Table1Entry> table1_entry(std::uint64_t a);

struct Table1Row {
  Table1Entry reference;
  BlockBoundReport report;
  std::uint64_t alpha3_rounded = 0;
  double M2_relative_diff = 0.0;
  double kappa_diff = 0.0;
};

/// Certifies each requested row, using the reference grid unless an
/// override is given.
std::vector<Table1Row> reproduce_table1(const std::vector<std::uint64_t>& rows,
                                        const std::optional<GridParams>& grid_override = {});

}  // namespace recnum
