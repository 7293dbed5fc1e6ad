#include "recnum/cli.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "recnum/blockcert.hpp"
#include "recnum/bounds.hpp"
#include "recnum/digits.hpp"
#include "recnum/experiments.hpp"
#include "recnum/expsum.hpp"
#include "recnum/parallel.hpp"
#include "recnum/report_io.hpp"

namespace recnum::cli {

namespace {

struct Globals {
  std::string coeffs;
  std::string initials;
  std::string config;
  std::string out;
  std::string format;  // empty: the subcommand's default
  unsigned threads = 1;
  bool strict = false;
};

RecurrenceSpec resolve_spec(const Globals& g) {
  const bool flags = !g.coeffs.empty() || !g.initials.empty();
  if (flags && !g.config.empty()) {
    throw PreconditionError("give the base either by --coeffs/--initials or by --config, not both");
  }
  if (!g.config.empty()) {
    const auto cfg = read_config_file(g.config);
    const auto c = cfg.find("coeffs");
    const auto i = cfg.find("initials");
    if (c == cfg.end() || i == cfg.end()) {
      throw PreconditionError("config file needs both 'coeffs' and 'initials'");
    }
    return {parse_u64_list(c->second), parse_u64_list(i->second)};
  }
  if (flags) {
    if (g.coeffs.empty() || g.initials.empty()) {
      throw PreconditionError("--coeffs and --initials must be given together");
    }
    return {parse_u64_list(g.coeffs), parse_u64_list(g.initials)};
  }
  return RecurrenceSpec::zeckendorf();
}

class Output {
 public:
  Output(const Globals& g, std::ostream& out) : g_(g), out_(out) {}

  void text(const std::string& s) {
    if (g_.out.empty()) {
      out_ << s;
      return;
    }
    std::ofstream f(g_.out);
    if (!f) throw PreconditionError(fmt::format("cannot write '{}'", g_.out));
    f << s;
  }

  void json(const Json& j) {
    if (g_.format == "csv") {
      text(to_key_value_csv(j));
    } else {
      text(dump(j));
    }
  }

 private:
  const Globals& g_;
  std::ostream& out_;
};

std::string num(double v) { return fmt::format("{:.10g}", v); }

}  // namespace

std::vector<unsigned long> parse_rows(const std::string& text) {
  std::vector<unsigned long> rows;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const auto lo = std::stoul(text.substr(0, dots));
    const auto hi = std::stoul(text.substr(dots + 2));
    if (lo > hi) throw PreconditionError(fmt::format("empty row range '{}'", text));
    for (auto a = hi + 1; a-- > lo;) rows.push_back(a);
    return rows;
  }
  for (auto v : parse_u64_list(text)) rows.push_back(v);
  std::sort(rows.begin(), rows.end(), std::greater<>());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  return rows;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Digit expansions, exponential sums and certified bounds for linear recurrence "
               "numeration systems",
               "recnum"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--coeffs", g.coeffs, "recurrence coefficients a1,...,ad");
  app.add_option("--initials", g.initials, "initial terms G0,...,G(d-1)");
  app.add_option("--config", g.config, "key=value file with coeffs and initials");
  app.add_option("--out", g.out, "write output to this file instead of stdout");
  app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--strict", g.strict, "exit 2 when validation fails");

  auto* validate = app.add_subcommand("validate", "check the base conditions");

  auto* expand_cmd = app.add_subcommand("expand", "greedy expansion of a value");
  std::string value_text = "0";
  expand_cmd->add_option("--value", value_text, "non-negative integer")->required();

  auto* sumdigits = app.add_subcommand("sumdigits", "CSV of s_G(n) for A <= n <= B");
  std::uint64_t from = 0, to = 0, mod = 1;
  sumdigits->add_option("--from", from)->required();
  sumdigits->add_option("--to", to)->required();
  sumdigits->add_option("--mod", mod)->check(CLI::PositiveNumber);

  auto* expsum = app.add_subcommand("expsum", "S_n(y, beta)");
  std::size_t n = 0;
  std::string y_text = "0", beta_text = "0";
  bool direct = false, recurrent = false;
  expsum->add_option("--n", n)->required();
  expsum->add_option("--y", y_text, "H/Q or decimal");
  expsum->add_option("--beta", beta_text, "R/S or decimal");
  auto* direct_flag = expsum->add_flag("--direct", direct);
  expsum->add_flag("--recurrent", recurrent)->excludes(direct_flag);

  auto* onenorm = app.add_subcommand("onenorm", "midpoint estimate of the 1-norm of S_n");
  unsigned density = 16;
  bool derivative = false;
  onenorm->add_option("--n", n)->required();
  onenorm->add_option("--beta", beta_text);
  onenorm->add_option("--density", density, "nodes per oscillation")->check(CLI::PositiveNumber);
  onenorm->add_flag("--derivative", derivative, "integrate |dS_n/dy| instead");

  auto* gallagher = app.add_subcommand("gallagher", "Sobolev-Gallagher numeric check");
  std::uint64_t farey = 1;
  gallagher->add_option("--n", n)->required();
  gallagher->add_option("--beta", beta_text);
  gallagher->add_option("--Q", farey, "Farey order")->required();
  gallagher->add_option("--density", density)->check(CLI::PositiveNumber);

  auto* mbound = app.add_subcommand("mbound", "certified m(j,b), m(j), m_G");
  unsigned shift_r = 0;
  mbound->add_option("--shifted", shift_r, "also compute m^(R)");

  auto* theta = app.add_subcommand("theta", "lower bound for the level of distribution");
  bool use_shifted = false;
  std::string block_file;
  theta->add_flag("--shifted", use_shifted, "use m^(r) with the smallest admissible r");
  theta->add_option("--shift-r", shift_r, "explicit r for --shifted");
  theta->add_option("--with-block", block_file, "JSON report from blockbound");

  auto* blockbound = app.add_subcommand("blockbound", "certified width-2 block bound");
  std::uint64_t a = 39;
  GridParams grid;
  unsigned width = 2;
  blockbound->add_option("--a", a, "a in G_{n+2} = a G_{n+1} + G_n")->required();
  blockbound->add_option("--eps", grid.eps);
  blockbound->add_option("--eta", grid.eta);
  blockbound->add_option("--delta", grid.delta);
  blockbound->add_option("--width", width);

  auto* table1 = app.add_subcommand("table1", "reproduce the width-2 table for a = 15..39");
  std::string rows_text = "15..39";
  std::optional<double> eps_override, eta_override, delta_override;
  table1->add_option("--rows", rows_text, "15..39, 39 or 15,20,39");
  table1->add_option("--eps", eps_override);
  table1->add_option("--eta", eta_override);
  table1->add_option("--delta", delta_override);

  auto* discrepancy = app.add_subcommand("discrepancy", "Bombieri-Vinogradov type sum");
  std::uint64_t x = 1000, r = 0, s = 1, z_samples = 0;
  double theta_value = 0.5, eps = 0.2, A = 1.0;
  discrepancy->add_option("--x", x)->required();
  discrepancy->add_option("--s", s)->required()->check(CLI::PositiveNumber);
  discrepancy->add_option("--r", r)->required();
  discrepancy->add_option("--theta", theta_value);
  discrepancy->add_option("--eps", eps);
  discrepancy->add_option("--A", A);
  discrepancy->add_option("--z-samples", z_samples, "keep the largest N sampled z (0: all)");

  auto* almostprimes = app.add_subcommand("almostprimes", "count P2 numbers in a digit class");
  almostprimes->add_option("--x", x)->required();
  almostprimes->add_option("--s", s)->required()->check(CLI::PositiveNumber);
  almostprimes->add_option("--r", r)->required();

  auto* vmsum = app.add_subcommand("vmsum", "generalized von Mangoldt sum in a digit class");
  unsigned ell = 2;
  vmsum->add_option("--x", x)->required();
  vmsum->add_option("--ell", ell)->required();
  vmsum->add_option("--s", s)->required()->check(CLI::PositiveNumber);
  vmsum->add_option("--r", r)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    set_thread_count(g.threads);
    Output o(g, out);

    if (validate->parsed()) {
      const auto spec = resolve_spec(g);
      const auto report = validate_spec(spec);
      Json j{{"spec", to_json(spec)}};
      j.update(to_json(report));
      if (report.ok) j["alpha"] = round10(dominant_root(spec));
      o.json(j);
      return (!report.ok && g.strict) ? kExitFailed : kExitOk;
    }

    if (expand_cmd->parsed()) {
      const BaseContext ctx(resolve_spec(g));
      const auto e = expand(ctx, parse_natural(value_text));
      Json j = to_json(e);
      j["parry_admissible"] = is_parry_admissible(ctx, e.digits);
      o.json(j);
      return kExitOk;
    }

    if (sumdigits->parsed()) {
      const BaseContext ctx(resolve_spec(g));
      if (from > to) throw PreconditionError("--from must not exceed --to");
      std::string csv = fmt::format("n,s_G(n),s_G(n) mod {}\n", mod);
      for (std::uint64_t k = from; k <= to; ++k) {
        const auto sg = sum_of_digits(ctx, k);
        csv += fmt::format("{},{},{}\n", k, sg, sg % mod);
        if (k == to) break;
      }
      o.text(csv);
      return kExitOk;
    }

    if (expsum->parsed()) {
      const BaseContext ctx(resolve_spec(g));
      const ExpSumParams p{Frequency::parse(y_text), Frequency::parse(beta_text)};
      const Complex v = direct ? exp_sum_direct(ctx, n, p) : exp_sum_recurrent(ctx, n, p).values.back();
      Json j{{"n", n},
             {"G_n", to_string(ctx.term(n))},
             {"y", p.y.to_string()},
             {"beta", p.beta.to_string()},
             {"method", direct ? "direct" : "recurrent"}};
      j.update(to_json(v));
      o.json(j);
      return kExitOk;
    }

    if (onenorm->parsed()) {
      const BaseContext ctx(resolve_spec(g));
      const auto beta = Frequency::parse(beta_text);
      const auto q = derivative ? derivative_one_norm(ctx, n, beta, density)
                                : one_norm(ctx, n, beta, density);
      o.json(Json{{"n", n},
                  {"beta", beta.to_string()},
                  {"integrand", derivative ? "|dS_n/dy|" : "|S_n|"},
                  {"density", density},
                  {"value", round10(q.value)},
                  {"nodes", q.nodes}});
      return kExitOk;
    }

    if (gallagher->parsed()) {
      const BaseContext ctx(resolve_spec(g));
      const auto rep = gallagher_check(ctx, n, Frequency::parse(beta_text), farey, density);
      o.json(to_json(rep));
      return rep.ok ? kExitOk : kExitFailed;
    }

    if (mbound->parsed()) {
      const BaseContext ctx(resolve_spec(g));
      o.json(to_json(m_bound_report(ctx, shift_r)));
      return kExitOk;
    }

    if (theta->parsed()) {
      const BaseContext ctx(resolve_spec(g));
      ThetaOptions opt;
      opt.use_shifted = use_shifted || shift_r > 0;
      opt.shift_r = shift_r;
      if (!block_file.empty()) {
        std::ifstream in(block_file);
        if (!in) throw PreconditionError(fmt::format("cannot open '{}'", block_file));
        const auto block = block_report_from_json(Json::parse(in));
        const auto& sp = ctx.spec();
        if (sp.order() != 2 || sp.coeffs[0] != block.a || sp.coeffs[1] != 1) {
          throw PreconditionError(
              fmt::format("block report for a = {} does not belong to this base", block.a));
        }
        if (block.status != "certified") {
          throw PreconditionError("block report is not certified");
        }
        opt.block_kappa = block.kappa;
        opt.block_width = block.width;
      }
      Json j{{"spec", to_json(ctx.spec())}, {"alpha", round10(ctx.alpha())}};
      j.update(to_json(theta_lower_bound(ctx, opt)));
      o.json(j);
      return kExitOk;
    }

    if (blockbound->parsed()) {
      const auto rep = certify_block_bound(a, grid, width);
      o.json(to_json(rep));
      return rep.pass ? kExitOk : kExitFailed;
    }

    if (table1->parsed()) {
      std::vector<Table1Row> result;
      for (auto row : parse_rows(rows_text)) {
        const auto ref = table1_entry(row);
        if (!ref) throw PreconditionError(fmt::format("no reference row for a = {}", row));
        // Unset overrides fall back to the row's own reference grid.
        const GridParams gp{eps_override.value_or(ref->eps), eta_override.value_or(ref->eta),
                            delta_override.value_or(1e-10)};
        result.push_back(reproduce_table1({row}, gp).front());
      }
      bool all = true;
      for (const auto& t : result) all = all && t.report.pass;
      if (g.format == "json") {
        Json arr = Json::array();
        for (const auto& t : result) arr.push_back(to_json(t));
        o.json(Json{{"rows", arr}, {"all_pass", all}});
      } else {
        std::string csv =
            "a,eps,eta,M2,kappa,alpha3,pass,ref_M2,ref_kappa,M2_rel_diff,kappa_diff,"
            "main_term,literal_M2,literal_kappa\n";
        for (const auto& t : result) {
          csv += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", t.reference.a,
                             num(t.report.grid.eps), num(t.report.grid.eta), num(t.report.M2),
                             num(t.report.kappa), t.alpha3_rounded, t.report.pass ? 1 : 0,
                             num(t.reference.M2), num(t.reference.kappa), num(t.M2_relative_diff),
                             num(t.kappa_diff), num(t.report.main_term),
                             num(t.report.literal_M2), num(t.report.literal_kappa));
        }
        o.text(csv);
      }
      return all ? kExitOk : kExitFailed;
    }

    if (discrepancy->parsed()) {
      const BaseContext ctx(resolve_spec(g));
      o.json(to_json(bv_discrepancy(ctx, x, r, s, theta_value, eps, A, z_samples)));
      return kExitOk;
    }

    if (almostprimes->parsed()) {
      const BaseContext ctx(resolve_spec(g));
      const auto sieve = sieve_spf(x);
      const auto count = almost_prime_count(ctx, x, r, s, sieve);
      const double scale = x > 1 ? static_cast<double>(x) / std::log(static_cast<double>(x)) : 0.0;
      o.json(Json{{"x", x},
                  {"r", r},
                  {"s", s},
                  {"count", count},
                  {"x_over_log_x", round10(scale)},
                  {"ratio", round10(scale > 0.0 ? static_cast<double>(count) / scale : 0.0)}});
      return kExitOk;
    }

    if (vmsum->parsed()) {
      const BaseContext ctx(resolve_spec(g));
      const auto sieve = sieve_spf(x);
      Json j{{"x", x}, {"ell", ell}, {"r", r}, {"s", s}};
      j.update(to_json(von_mangoldt_sum(ctx, x, ell, r, s, sieve)));
      o.json(j);
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace recnum::cli
