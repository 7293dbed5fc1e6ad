#include "recnum/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "recnum/parallel.hpp"

namespace recnum {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRelativeSlack = 1e-3;
constexpr std::size_t kCoarsePoints = 65;
constexpr std::size_t kMaxPoints = std::size_t{1} << 23;

double ratio(std::uint64_t a, double x) {
  const double f = x - std::nearbyint(x);
  if (std::fabs(f) < 1e-12) return static_cast<double>(a);
  return std::fabs(std::sin(kPi * static_cast<double>(a) * f) / std::sin(kPi * f));
}

double grid_max(std::uint64_t a, double lo, double step, std::size_t points) {
  double m = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    m = std::max(m, ratio(a, lo + static_cast<double>(i) * step));
  }
  return m;
}

double log_alpha(const BaseContext& ctx, double v) { return std::log(v) / std::log(ctx.alpha()); }

void require_index(const BaseContext& ctx, std::size_t j) {
  if (j < 1 || j > ctx.order() || ctx.coeff(j) == 0) {
    throw PreconditionError(fmt::format("index j = {} is not in I", j));
  }
}

double average(const std::vector<SupremumCertificate>& table) {
  std::vector<double> v;
  v.reserve(table.size());
  for (const auto& c : table) v.push_back(c.bound);
  return pairwise_sum(v) / static_cast<double>(v.size());
}

double shifted_max(const BaseContext& ctx, unsigned r) {
  double best = 0.0;
  for (std::size_t j : ctx.index_set()) {
    for (unsigned i = 0; i < r; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(r);
      best = std::max(best, average(m_table(ctx, j, t)));
    }
  }
  return best;
}

ThetaResult assemble_theta(const BaseContext& ctx, double mG, std::optional<double> mshift,
                           std::optional<double> kappa, unsigned width) {
  ThetaResult r;
  r.eta = 0.5;
  r.source = "trivial";
  r.eta_mG = log_alpha(ctx, mG + 3.0);
  if (r.eta_mG < r.eta) {
    r.eta = r.eta_mG;
    r.source = "m_G";
  }
  if (mshift) {
    r.eta_shifted = log_alpha(ctx, *mshift + 2.0);
    if (*r.eta_shifted < r.eta) {
      r.eta = *r.eta_shifted;
      r.source = "m_shifted";
    }
  }
  if (kappa) {
    r.eta_block = *kappa / static_cast<double>(width) - 1.0;
    if (*r.eta_block < r.eta) {
      r.eta = *r.eta_block;
      r.source = "block";
    }
  }
  r.theta = 1.0 - r.eta;
  return r;
}

}  // namespace

SupremumCertificate dirichlet_sup(std::uint64_t a, double lo, double hi) {
  if (a == 0) throw PreconditionError("dirichlet_sup needs a >= 1");
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi) || hi - lo > 1.0) {
    throw PreconditionError(fmt::format("degenerate interval ({}, {})", lo, hi));
  }
  SupremumCertificate c;
  c.lo = lo;
  c.hi = hi;
  const double ad = static_cast<double>(a);
  if (a == 1) {
    c.bound = 1.0;
    c.note = "constant";
    return c;
  }
  if (std::ceil(lo) <= hi) {
    c.bound = ad;
    c.note = "integer_endpoint";
    return c;
  }
  c.lipschitz = kPi * ad * (ad - 1.0);
  const double width = hi - lo;
  const double coarse =
      grid_max(a, lo, width / static_cast<double>(kCoarsePoints - 1), kCoarsePoints);
  // Points needed so that (step / 2) * L <= slack * coarse <= slack * sampled max.
  const double wanted = std::ceil(width * c.lipschitz / (2.0 * kRelativeSlack * coarse)) + 1.0;
  const std::size_t points =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::min(wanted, 1e18)), kCoarsePoints,
                              kMaxPoints);
  c.grid_step = width / static_cast<double>(points - 1);
  const double sampled = grid_max(a, lo, c.grid_step, points);
  // 1e-12 a absorbs rounding in the sampled values.
  c.bound = std::min(ad, sampled + 0.5 * c.grid_step * c.lipschitz + 1e-12 * ad);
  c.note = "grid_lipschitz";
  return c;
}

std::vector<SupremumCertificate> m_table(const BaseContext& ctx, std::size_t j, double t) {
  require_index(ctx, j);
  const std::uint64_t a = ctx.a1();
  const std::uint64_t aj = ctx.coeff(j);
  const double ad = static_cast<double>(a);
  std::vector<SupremumCertificate> table(a);
  parallel_for(a, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t b = begin; b < end; ++b) {
      const double bd = static_cast<double>(b);
      table[b] = dirichlet_sup(aj, (bd + t) / ad, (bd + t + 1.0) / ad);
    }
  });
  return table;
}

double m_of_j(const BaseContext& ctx, std::size_t j) { return average(m_table(ctx, j)); }

double m_G(const BaseContext& ctx) {
  double best = 0.0;
  for (std::size_t j : ctx.index_set()) best = std::max(best, m_of_j(ctx, j));
  return best;
}

double m_closed_form(std::uint64_t a1) {
  if (a1 < 3) throw PreconditionError(fmt::format("closed form needs a_1 >= 3, got {}", a1));
  const double a = static_cast<double>(a1);
  return 2.0 + 2.0 / (a * std::sin(kPi / a)) - (2.0 / kPi) * std::log(std::tan(kPi / (2.0 * a)));
}

double shift_threshold(const BaseContext& ctx) {
  const double alpha = ctx.alpha();
  return std::floor(alpha) + 1.0 - alpha - kShiftSlack;
}

unsigned smallest_shift(const BaseContext& ctx) {
  const double u = shift_threshold(ctx);
  if (u <= 0.0) {
    throw PreconditionError(fmt::format("u = {} is not positive; no shift r exists", u));
  }
  return static_cast<unsigned>(std::floor(1.0 / u)) + 1;
}

double m_shifted(const BaseContext& ctx, unsigned r) {
  if (r == 0) throw PreconditionError("shift r must be positive");
  const double u = shift_threshold(ctx);
  if (r > 1 && !(1.0 / static_cast<double>(r) < u)) {
    throw PreconditionError(fmt::format("shift r = {} needs 1/r < u = {}", r, u));
  }
  return shifted_max(ctx, r);
}

MBoundReport m_bound_report(const BaseContext& ctx, unsigned shift_r) {
  MBoundReport rep;
  rep.indices = ctx.index_set();
  for (std::size_t j : rep.indices) {
    const auto table = m_table(ctx, j);
    std::vector<double> row;
    row.reserve(table.size());
    for (const auto& c : table) row.push_back(c.bound);
    rep.m_jb.push_back(row);
    rep.m_j.push_back(average(table));
    rep.m_G = std::max(rep.m_G, rep.m_j.back());
  }
  std::optional<double> shifted;
  if (shift_r > 0) {
    rep.shift_r = shift_r;
    rep.m_shifted = m_shifted(ctx, shift_r);
    shifted = rep.m_shifted;
  }
  if (ctx.a1() >= 3) rep.closed_form = m_closed_form(ctx.a1());
  const auto theta = assemble_theta(ctx, rep.m_G, shifted, std::nullopt, 2);
  rep.theta = theta.theta;
  rep.theta_source = theta.source;
  return rep;
}

ThetaResult theta_lower_bound(const BaseContext& ctx, const ThetaOptions& options) {
  std::optional<double> shifted;
  if (options.use_shifted) {
    const unsigned r = options.shift_r ? options.shift_r : smallest_shift(ctx);
    shifted = m_shifted(ctx, r);
  }
  if (options.block_width == 0) throw PreconditionError("block width must be positive");
  return assemble_theta(ctx, m_G(ctx), shifted, options.block_kappa, options.block_width);
}

}  // namespace recnum
