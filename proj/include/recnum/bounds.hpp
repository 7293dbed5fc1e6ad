#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "recnum/base.hpp"

namespace recnum {

struct SupremumCertificate {
  double lo = 0.0;
  double hi = 0.0;
  double bound = 0.0;
  double grid_step = 0.0;
  double lipschitz = 0.0;
  /// "constant", "integer_endpoint" or "grid_lipschitz".
  std::string note;
};

/// Certified upper bound for sup_{y in (lo, hi)} |sin(pi a y) / sin(pi y)|.
///
/// Intervals whose closure contains an integer return a exactly. Otherwise
/// the ratio is sampled on a uniform grid and the maximum is raised by
/// (step / 2) * pi a (a - 1); the step is picked so this slack is at most
/// 1e-3 of the sampled maximum.
SupremumCertificate dirichlet_sup(std::uint64_t a, double lo, double hi);

/// m(j, b) for b = 0 .. a_1 - 1, shifted by t (t = 0 is the unshifted table).
std::vector<SupremumCertificate> m_table(const BaseContext& ctx, std::size_t j, double t = 0.0);

/// m(j) = (1 / a_1) sum_b m(j, b).
double m_of_j(const BaseContext& ctx, std::size_t j);
/// m_G = max_{j in I} m(j).
double m_G(const BaseContext& ctx);

/// 2 + 2 / (a sin(pi / a)) - (2 / pi) log tan(pi / (2a)), for a >= 3.
double m_closed_form(std::uint64_t a1);

inline constexpr double kShiftSlack = 1e-6;

/// u = floor(alpha) + 1 - alpha - kShiftSlack.
double shift_threshold(const BaseContext& ctx);

/// m^(r) = max over j in I and t in {0, 1/r, ..., (r-1)/r} of the shifted
/// averages. Requires 1/r < u, except r = 1 which only uses t = 0.
double m_shifted(const BaseContext& ctx, unsigned r);

struct MBoundReport {
  std::vector<std::size_t> indices;              // j in I
  std::vector<std::vector<double>> m_jb;         // per j, b = 0..a_1-1
  std::vector<double> m_j;
  double m_G = 0.0;
  unsigned shift_r = 0;                          // 0 when not requested
  double m_shifted = 0.0;
  std::optional<double> closed_form;             // a_1 >= 3 only
  double theta = 0.5;
  std::string theta_source;
};

MBoundReport m_bound_report(const BaseContext& ctx, unsigned shift_r = 0);

struct ThetaOptions {
  bool use_shifted = false;
  unsigned shift_r = 0;                 // 0 picks the smallest r with 1/r < u
  std::optional<double> block_kappa;    // log_alpha M_2 from a width-2 report
  unsigned block_width = 2;
};

struct ThetaResult {
  double theta = 0.5;
  double eta = 0.5;
  /// "trivial", "m_G", "m_shifted" or "block".
  std::string source;
  double eta_mG = 0.0;
  std::optional<double> eta_shifted;
  std::optional<double> eta_block;
};

/// theta = 1 - eta, eta the smallest of 1/2, log_alpha(m_G + 3),
/// log_alpha(m^(r) + 2) and kappa / w - 1 among the enabled estimates.
ThetaResult theta_lower_bound(const BaseContext& ctx, const ThetaOptions& options = {});

/// Smallest r >= 1 with 1/r < u.
unsigned smallest_shift(const BaseContext& ctx);

}  // namespace recnum
