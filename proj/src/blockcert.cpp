#include "recnum/blockcert.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "recnum/bounds.hpp"
#include "recnum/parallel.hpp"

namespace recnum {

namespace {

constexpr double kPi = std::numbers::pi;
// Cells are widened by this factor so rounding in the grid points can never
// open a gap in the cover.
constexpr double kCellWiden = 1.0 + 1e-8;
// Final relative allowance for floating-point error in the certified sums.
constexpr double kRoundingAllowance = 1e-10;
// Below this distance to an integer |g'| is bounded by |f| sup|g''|.
constexpr double kNearInteger = 1e-4;

struct Derivs {
  double d1;  // bound for |g'|
  double d2;  // bound for |g''|
};

Derivs derivative_bounds(std::uint64_t a) {
  const double ad = static_cast<double>(a);
  return {kPi * ad * (ad - 1.0), kPi * kPi * ad * (ad * ad - 1.0) / 3.0};
}

/// |g(x)| and |g'(x)| at one point.
void g_and_slope(double a, double x, const Derivs& bound, double& value, double& slope) {
  const double f = x - std::nearbyint(x);
  if (std::fabs(f) < kNearInteger) {
    value = std::fabs(f) < 1e-12 ? a : std::fabs(std::sin(kPi * a * f) / std::sin(kPi * f));
    slope = std::fabs(f) * bound.d2;
    return;
  }
  const double s = std::sin(kPi * f);
  const double c = std::cos(kPi * f);
  const double sa = std::sin(kPi * a * f);
  const double ca = std::cos(kPi * a * f);
  value = std::fabs(sa / s);
  slope = std::fabs(kPi * a * ca / s - kPi * sa * c / (s * s));
}

/// Bounds of |g| and |g'| over a cell of radius r around a point.
struct CellBounds {
  double value;      // |g| at the centre
  double value_hat;  // sup |g| on the cell
  double slope_hat;  // sup |g'| on the cell
};

CellBounds cell_bounds(double a, double x, double r, const Derivs& bound) {
  CellBounds cb;
  double slope = 0.0;
  g_and_slope(a, x, bound, cb.value, slope);
  cb.slope_hat = std::min(bound.d1, slope + r * bound.d2);
  cb.value_hat = std::min(a, cb.value + r * cb.slope_hat);
  return cb;
}

struct Window {
  std::size_t lo;
  std::size_t hi;  // inclusive
};

/// Indices l with l * eps in (b/a - eps/2, (b+1)/a + eps/2), b = 0 .. count-1.
std::vector<Window> y_windows(std::uint64_t a, double eps, std::uint64_t count) {
  std::vector<Window> w(count);
  const double ad = static_cast<double>(a);
  for (std::uint64_t b = 0; b < count; ++b) {
    const double left = static_cast<double>(b) / ad - eps / 2.0;
    const double right = static_cast<double>(b + 1) / ad + eps / 2.0;
    const double lo = std::max(0.0, std::ceil(left / eps - 1e-9));
    const double hi = std::floor(right / eps + 1e-9);
    w[b] = {static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)};
  }
  return w;
}

/// Certified sup of |g'| on (lo, hi) by sampling plus the |g''| bound.
double slope_sup(std::uint64_t a, double lo, double hi, const Derivs& bound) {
  const std::size_t points = 2001;
  const double step = (hi - lo) / static_cast<double>(points - 1);
  double m = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    double v = 0.0;
    double s = 0.0;
    g_and_slope(static_cast<double>(a), lo + static_cast<double>(i) * step, bound, v, s);
    m = std::max(m, s);
  }
  return std::min(bound.d1, m + 0.5 * step * bound.d2);
}

double periodic_window_sum(const std::vector<double>& per_residue, std::uint64_t count) {
  const std::uint64_t a = per_residue.size();
  double best = 0.0;
  for (std::uint64_t q = 0; q < a; ++q) {
    double s = 0.0;
    for (std::uint64_t b = 0; b < count; ++b) s += per_residue[(b + q) % a];
    best = std::max(best, s);
  }
  return best;
}

}  // namespace

void validate_grid(const GridParams& grid) {
  if (!(grid.eps > 0.0) || !(grid.eta > 0.0) || !(grid.delta > 0.0)) {
    throw PreconditionError("grid steps eps, eta and delta must be positive");
  }
  if (grid.eps > 0.01) throw PreconditionError(fmt::format("eps = {} exceeds 0.01", grid.eps));
  if (grid.eta > 0.001) throw PreconditionError(fmt::format("eta = {} exceeds 0.001", grid.eta));
}

Complex block_coefficient(const BaseContext& ctx, unsigned w, unsigned j, std::size_t n,
                          const ExpSumParams& params) {
  if (ctx.order() != 2) {
    throw PreconditionError(fmt::format("block coefficients need d = 2, got d = {}", ctx.order()));
  }
  if (w == 0) throw PreconditionError("block width must be positive");
  if (j != w && j != w + 1) {
    throw PreconditionError(fmt::format("j = {} must be w = {} or w + 1", j, w));
  }
  if (n < w + 1) throw PreconditionError(fmt::format("A^({})_(n,j) needs n >= {}", w, w + 1));
  Complex p = coefficient_A(ctx, n, 1, params);
  Complex q = coefficient_A(ctx, n, 2, params);
  for (unsigned l = 1; l < w; ++l) {
    const Complex next_p = p * coefficient_A(ctx, n - l, 1, params) + q;
    q = p * coefficient_A(ctx, n - l, 2, params);
    p = next_p;
  }
  return j == w ? p : q;
}

QuadraticFamily::QuadraticFamily(std::uint64_t a_) : a(a_) {
  if (a < 1) throw PreconditionError("a must be positive");
  const BaseContext ctx(RecurrenceSpec::quadratic(a));
  const long double al = static_cast<long double>(a);
  long double x = ctx.alpha();
  x -= (x * x - al * x - 1.0L) / (2.0L * x - al);
  alpha = x;
  inv_alpha = x - al;  // alpha^2 = a alpha + 1
  const long double a2 = al * alpha + 1.0L;
  const long double a3 = al * a2 + alpha;
  floor_alpha2 = static_cast<std::uint64_t>(std::floor(a2));
  floor_alpha3 = static_cast<std::uint64_t>(std::floor(a3));
}

double dirichlet_g(std::uint64_t a, double x) {
  const double f = x - std::nearbyint(x);
  const double ad = static_cast<double>(a);
  const double sign = (a % 2 == 0 && std::fmod(std::fabs(std::nearbyint(x)), 2.0) == 1.0) ? -1.0
                                                                                          : 1.0;
  if (std::fabs(f) < 1e-12) return sign * ad;
  return sign * std::sin(kPi * ad * f) / std::sin(kPi * f);
}

M22Result certify_M2_2(std::uint64_t a, const GridParams& grid) {
  validate_grid(grid);
  if (a < 2) throw PreconditionError("certify_M2_2 needs a >= 2");
  const QuadraticFamily fam(a);
  const double ad = static_cast<double>(a);
  const double ia = static_cast<double>(fam.inv_alpha);
  const Derivs bound = derivative_bounds(a);
  const std::uint64_t nb = fam.floor_alpha2 + 2;
  const auto windows = y_windows(a, grid.eps, nb);
  const std::size_t L = windows.back().hi + 1;

  const double r1 = 0.5 * grid.eps * kCellWiden;
  const double r2 = ia * r1 + 0.5 * grid.eta * kCellWiden;
  const double cross = r1 * ia + 0.5 * grid.eta * kCellWiden;

  // Factor one: g(y0 + q/a) on every cell, per q.
  std::vector<double> g1(a * L), g1_hat(a * L), g1_slope(a * L);
  for (std::uint64_t q = 0; q < a; ++q) {
    for (std::size_t l = 0; l < L; ++l) {
      const double x = static_cast<double>(l) * grid.eps + static_cast<double>(q) / ad;
      const auto cb = cell_bounds(ad, x, r1, bound);
      g1[q * L + l] = cb.value;
      g1_hat[q * L + l] = cb.value_hat;
      g1_slope[q * L + l] = cb.slope_hat;
    }
  }

  std::size_t gamma_count = 0;
  while (static_cast<double>(gamma_count) * grid.eta < 1.0 + grid.eta / 2.0) ++gamma_count;

  struct Best {
    double bound = -1.0;
    double main = -1.0;
    std::uint64_t q = 0;
    std::size_t gamma = 0;
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(thread_count(),
                                                                            gamma_count));
  std::vector<Best> partial(workers);

  parallel_for(gamma_count, [&](std::size_t begin, std::size_t end, std::size_t worker) {
    std::vector<double> g2(L), g2_hat(L), g2_slope(L), u(L), p(L);
    Best best;
    for (std::size_t k = begin; k < end; ++k) {
      const double gamma = static_cast<double>(k) * grid.eta;
      for (std::size_t l = 0; l < L; ++l) {
        const auto cb = cell_bounds(ad, ia * static_cast<double>(l) * grid.eps + gamma, r2, bound);
        g2[l] = cb.value;
        g2_hat[l] = cb.value_hat;
        g2_slope[l] = cb.slope_hat;
      }
      for (std::uint64_t q = 0; q < a; ++q) {
        const double* v1 = &g1[q * L];
        const double* h1 = &g1_hat[q * L];
        const double* s1 = &g1_slope[q * L];
        for (std::size_t l = 0; l < L; ++l) {
          p[l] = v1[l] * g2[l];
          u[l] = p[l] + r1 * s1[l] * g2_hat[l] + cross * h1[l] * g2_slope[l];
        }
        double sum_u = 0.0;
        double sum_p = 0.0;
        for (const auto& w : windows) {
          double mu = 0.0;
          double mp = 0.0;
          for (std::size_t l = w.lo; l <= w.hi; ++l) {
            mu = std::max(mu, u[l]);
            mp = std::max(mp, p[l]);
          }
          sum_u += mu;
          sum_p += mp;
        }
        if (sum_u > best.bound) best = {sum_u, std::max(best.main, sum_p), q, k};
        best.main = std::max(best.main, sum_p);
      }
    }
    partial[worker] = best;
  });

  Best total;
  for (const auto& b : partial) {
    if (b.bound > total.bound) {
      total.bound = b.bound;
      total.q = b.q;
      total.gamma = b.gamma;
    }
    total.main = std::max(total.main, b.main);
  }

  const double floor_part = static_cast<double>(fam.floor_alpha2 + 1);
  const double delta_prime = static_cast<double>(fam.floor_alpha2 + 2) * grid.delta;

  M22Result r;
  r.bound = (floor_part + total.bound + delta_prime) * (1.0 + kRoundingAllowance);
  r.main_term = total.main;
  r.y_nodes = L;
  r.gamma_nodes = gamma_count;
  r.worst_q = total.q;
  r.worst_gamma = static_cast<double>(total.gamma) * grid.eta;

  // The same main term with the three global correction terms.
  std::vector<double> sup_g(a), sup_slope(a);
  for (std::uint64_t c = 0; c < a; ++c) {
    const double lo = static_cast<double>(c) / ad - grid.eps / 2.0;
    const double hi = static_cast<double>(c + 1) / ad + grid.eps / 2.0;
    sup_g[c] = dirichlet_sup(a, lo, hi).bound;
    sup_slope[c] = slope_sup(a, lo, hi, bound);
  }
  const double sum_g = periodic_window_sum(sup_g, nb);
  const double sum_slope = periodic_window_sum(sup_slope, nb);
  r.literal_bound = floor_part + total.main + grid.eps * ad * sum_slope +
                    grid.eps * ia * bound.d1 * sum_g + grid.eta * bound.d1 * sum_g + delta_prime;
  return r;
}

double certify_M2_3(std::uint64_t a, const GridParams& grid) {
  validate_grid(grid);
  if (a < 2) throw PreconditionError("certify_M2_3 needs a >= 2");
  const QuadraticFamily fam(a);
  const double ad = static_cast<double>(a);
  std::vector<double> sup(a);
  for (std::uint64_t c = 0; c < a; ++c) {
    sup[c] = dirichlet_sup(a, static_cast<double>(c) / ad, static_cast<double>(c + 1) / ad).bound;
  }
  const std::uint64_t count = fam.floor_alpha3 + 2;
  const double s = periodic_window_sum(sup, count);
  return (s + static_cast<double>(count) * grid.delta) * (1.0 + kRoundingAllowance);
}

double combine_block_bounds(double m_w, double m_w1, unsigned w) {
  const double e = static_cast<double>(w) / static_cast<double>(w + 1);
  return std::max(m_w, 1.0) + std::pow(std::max(m_w1, 1.0), e);
}

BlockBoundReport certify_block_bound(std::uint64_t a, const GridParams& grid, unsigned width) {
  const auto start = std::chrono::steady_clock::now();
  BlockBoundReport rep;
  rep.a = a;
  rep.width = width;
  rep.grid = grid;
  const QuadraticFamily fam(a);
  rep.alpha = static_cast<double>(fam.alpha);
  if (width != 2) {
    rep.status = "not_certified";
    return rep;
  }
  const auto m22 = certify_M2_2(a, grid);
  rep.M2_2 = m22.bound;
  rep.M2_3 = certify_M2_3(a, grid);
  rep.M2 = combine_block_bounds(rep.M2_2, rep.M2_3, 2);
  const double log_alpha = std::log(static_cast<double>(fam.alpha));
  rep.kappa = std::log(rep.M2) / log_alpha;
  rep.pass = rep.kappa < kKappaTarget;
  rep.main_term = m22.main_term;
  rep.literal_M2 = combine_block_bounds(m22.literal_bound, rep.M2_3, 2);
  rep.literal_kappa = std::log(rep.literal_M2) / log_alpha;
  rep.y_nodes = m22.y_nodes;
  rep.gamma_nodes = m22.gamma_nodes;
  rep.status = "certified";
  rep.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

double sample_M2_2(std::uint64_t a, const GridParams& grid, std::uint64_t samples,
                   std::uint64_t seed) {
  const QuadraticFamily fam(a);
  const double ad = static_cast<double>(a);
  const double ia = static_cast<double>(fam.inv_alpha);
  const std::uint64_t nb = fam.floor_alpha2 + 2;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::uint64_t> pick_q(0, a - 1);
  const double base = static_cast<double>(fam.floor_alpha2 + 1) +
                      static_cast<double>(nb) * grid.delta;
  double best = 0.0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const std::uint64_t q = pick_q(rng);
    const double gamma = unit(rng);
    double sum = 0.0;
    for (std::uint64_t b = 0; b < nb; ++b) {
      const double y = (static_cast<double>(b) + unit(rng)) / ad;
      sum += std::fabs(dirichlet_g(a, y + static_cast<double>(q) / ad) *
                       dirichlet_g(a, ia * y + gamma));
    }
    best = std::max(best, base + sum);
  }
  return best;
}

const std::vector<Table1Entry>& table1_reference() {
  static const std::vector<Table1Entry> rows = {
      {39, 0.005, 0.0005, 46695.7, 2.93416, 59436}, {38, 0.005, 0.0005, 43255.2, 2.93405, 54986},
      {37, 0.005, 0.0005, 39994.9, 2.93398, 50764}, {36, 0.005, 0.0005, 36989.9, 2.93458, 46764},
      {35, 0.005, 0.0008, 39595.4, 2.97694, 42980}, {34, 0.005, 0.0008, 36279.6, 2.97656, 39406},
      {33, 0.005, 0.0008, 33182.6, 2.97641, 36036}, {32, 0.005, 0.0008, 30243.8, 2.97603, 32864},
      {31, 0.005, 0.0008, 27544.8, 2.97627, 29884}, {30, 0.005, 0.0008, 24991.4, 2.97630, 27090},
      {29, 0.005, 0.0008, 22665.7, 2.97719, 24476}, {28, 0.005, 0.0007, 19735.6, 2.96693, 22036},
      {27, 0.005, 0.0007, 17807.7, 2.96839, 19764}, {26, 0.005, 0.0007, 16017.7, 2.97016, 17654},
      {25, 0.005, 0.0007, 14374.2, 2.97261, 15700}, {24, 0.005, 0.0007, 12841.2, 2.97517, 13896},
      {23, 0.005, 0.0006, 11122.8, 2.96960, 12236}, {22, 0.005, 0.0006, 9885.92, 2.97399, 10714},
      {21, 0.005, 0.0005, 8524.75, 2.97059, 9324},  {20, 0.005, 0.0005, 7518.04, 2.97678, 8060},
      {19, 0.005, 0.0004, 6454.22, 2.97655, 6916},  {18, 0.001, 0.0004, 5303.48, 2.96398, 5886},
      {17, 0.001, 0.0004, 4613.01, 2.97415, 4964},  {16, 0.001, 0.0001, 3773.67, 2.96628, 4144},
      {15, 0.001, 0.00003, 3212.43, 2.97692, 3420},
  };
  return rows;
}

std::optional<Table1Entry> table1_entry(std::uint64_t a) {
  for (const auto& e : table1_reference()) {
    if (e.a == a) return e;
  }
  return std::nullopt;
}

std::vector<Table1Row> reproduce_table1(const std::vector<std::uint64_t>& rows,
                                        const std::optional<GridParams>& grid_override) {
  std::vector<Table1Row> out;
  for (auto a : rows) {
    const auto ref = table1_entry(a);
    if (!ref) throw PreconditionError(fmt::format("no reference row for a = {}", a));
    GridParams grid{ref->eps, ref->eta, 1e-10};
    if (grid_override) grid = *grid_override;
    Table1Row row;
    row.reference = *ref;
    row.report = certify_block_bound(a, grid, 2);
    const QuadraticFamily fam(a);
    const long double a3 = static_cast<long double>(a) * (static_cast<long double>(a) * fam.alpha + 1.0L) + fam.alpha;
    row.alpha3_rounded = static_cast<std::uint64_t>(std::llround(a3));
    row.M2_relative_diff = (row.report.M2 - ref->M2) / ref->M2;
    row.kappa_diff = row.report.kappa - ref->kappa;
    out.push_back(row);
  }
  return out;
}

}  // namespace recnum
