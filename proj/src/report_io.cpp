#include "recnum/report_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace recnum {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

Json reals(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(round10(x));
  return out;
}

}  // namespace

double round10(double v) {
  if (!std::isfinite(v) || v == 0.0) return v;
  return std::stod(fmt::format("{:.10g}", v));
}

Json to_json(const RecurrenceSpec& spec) {
  return Json{{"coeffs", spec.coeffs}, {"initials", spec.initials}};
}

RecurrenceSpec spec_from_json(const Json& j) {
  RecurrenceSpec s;
  s.coeffs = j.at("coeffs").get<std::vector<std::uint64_t>>();
  s.initials = j.at("initials").get<std::vector<std::uint64_t>>();
  return s;
}

Json to_json(const ValidationReport& r) {
  return Json{{"ok", r.ok}, {"violations", r.violations}, {"messages", r.messages}};
}

Json to_json(const Expansion& e) {
  return Json{{"value", to_string(e.value)},
              {"digits", e.digits},
              {"top_index", e.top_index()},
              {"digit_sum", e.digit_sum()}};
}

Json to_json(Complex z) {
  return Json{{"re", round10(z.real())}, {"im", round10(z.imag())}, {"abs", round10(std::abs(z))}};
}

Json to_json(const GallagherReport& r) {
  return Json{{"n", r.n},
              {"farey_order", r.farey_order},
              {"farey_count", r.farey_count},
              {"spacing", round10(r.spacing)},
              {"lhs", round10(r.lhs)},
              {"one_norm", round10(r.one_norm)},
              {"derivative_one_norm", round10(r.derivative_one_norm)},
              {"rhs", round10(r.rhs)},
              {"ok", r.ok}};
}

Json to_json(const SupremumCertificate& c) {
  return Json{{"lo", round10(c.lo)},           {"hi", round10(c.hi)},
              {"bound", round10(c.bound)},     {"grid_step", round10(c.grid_step)},
              {"lipschitz", round10(c.lipschitz)}, {"note", c.note}};
}

Json to_json(const MBoundReport& r) {
  Json tables = Json::array();
  for (std::size_t i = 0; i < r.indices.size(); ++i) {
    tables.push_back(Json{{"j", r.indices[i]}, {"m_j", round10(r.m_j[i])}, {"m_jb", reals(r.m_jb[i])}});
  }
  Json out{{"tables", tables}, {"m_G", round10(r.m_G)}};
  if (r.shift_r > 0) {
    out["shift_r"] = r.shift_r;
    out["m_shifted"] = round10(r.m_shifted);
  }
  out["closed_form"] = r.closed_form ? Json(round10(*r.closed_form)) : Json(nullptr);
  out["theta"] = round10(r.theta);
  out["theta_source"] = r.theta_source;
  return out;
}

Json to_json(const ThetaResult& r) {
  Json out{{"theta", round10(r.theta)},
           {"eta", round10(r.eta)},
           {"source", r.source},
           {"eta_m_G", round10(r.eta_mG)}};
  out["eta_shifted"] = r.eta_shifted ? Json(round10(*r.eta_shifted)) : Json(nullptr);
  out["eta_block"] = r.eta_block ? Json(round10(*r.eta_block)) : Json(nullptr);
  return out;
}

Json to_json(const GridParams& g) {
  return Json{{"eps", round10(g.eps)}, {"eta", round10(g.eta)}, {"delta", round10(g.delta)}};
}

Json to_json(const BlockBoundReport& r) {
  return Json{{"a", r.a},
              {"width", r.width},
              {"grid", to_json(r.grid)},
              {"alpha", round10(r.alpha)},
              {"status", r.status},
              {"M2_2", round10(r.M2_2)},
              {"M2_3", round10(r.M2_3)},
              {"M2", round10(r.M2)},
              {"kappa", round10(r.kappa)},
              {"kappa_target", kKappaTarget},
              {"pass", r.pass},
              {"main_term", round10(r.main_term)},
              {"literal_M2", round10(r.literal_M2)},
              {"literal_kappa", round10(r.literal_kappa)},
              {"y_nodes", r.y_nodes},
              {"gamma_nodes", r.gamma_nodes},
              {"timing", Json{{"runtime_seconds", round10(r.runtime_seconds)}}}};
}

BlockBoundReport block_report_from_json(const Json& j) {
  BlockBoundReport r;
  r.a = j.at("a").get<std::uint64_t>();
  r.width = j.value("width", 2u);
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    r.grid = {g.at("eps").get<double>(), g.at("eta").get<double>(), g.at("delta").get<double>()};
  }
  r.alpha = j.value("alpha", 0.0);
  r.status = j.value("status", std::string("certified"));
  r.M2_2 = j.at("M2_2").get<double>();
  r.M2_3 = j.at("M2_3").get<double>();
  r.M2 = j.at("M2").get<double>();
  r.kappa = j.at("kappa").get<double>();
  r.pass = j.at("pass").get<bool>();
  r.main_term = j.value("main_term", 0.0);
  r.literal_M2 = j.value("literal_M2", 0.0);
  r.literal_kappa = j.value("literal_kappa", 0.0);
  r.y_nodes = j.value("y_nodes", std::uint64_t{0});
  r.gamma_nodes = j.value("gamma_nodes", std::uint64_t{0});
  if (j.contains("timing")) r.runtime_seconds = j["timing"].value("runtime_seconds", 0.0);
  return r;
}

Json to_json(const Table1Row& r) {
  return Json{{"a", r.reference.a},
              {"report", to_json(r.report)},
              {"alpha3_rounded", r.alpha3_rounded},
              {"reference",
               Json{{"eps", r.reference.eps},
                    {"eta", r.reference.eta},
                    {"M2", r.reference.M2},
                    {"kappa", r.reference.kappa},
                    {"alpha3", r.reference.alpha3}}},
              {"M2_relative_diff", round10(r.M2_relative_diff)},
              {"kappa_diff", round10(r.kappa_diff)}};
}

Json to_json(const DiscrepancyReport& r) {
  return Json{{"x", r.x},
              {"r", r.r},
              {"s", r.s},
              {"theta", round10(r.theta)},
              {"eps", round10(r.eps)},
              {"A", round10(r.A)},
              {"q_bound", round10(r.q_bound)},
              {"z_samples", r.z_samples},
              {"max_over_z", "sampled"},
              {"per_q", reals(r.per_q)},
              {"total", round10(r.total)},
              {"normalizer", round10(r.normalizer)},
              {"normalized", round10(r.normalized)}};
}

Json to_json(const VonMangoldtSum& r) {
  return Json{{"lhs", round10(r.lhs)},
              {"main_term", round10(r.main_term)},
              {"ratio", round10(r.ratio)}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string to_key_value_csv(const Json& j) {
  std::string out = "key,value\n";
  for (const auto& [k, v] : j.items()) {
    if (v.is_structured()) continue;
    out += fmt::format("{},{}\n", k, v.is_string() ? v.get<std::string>() : v.dump());
  }
  return out;
}

std::map<std::string, std::string> parse_config(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw PreconditionError(fmt::format("config line {}: expected key=value", number));
    }
    out[trim(std::string_view(t).substr(0, eq))] = trim(std::string_view(t).substr(eq + 1));
  }
  return out;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError(fmt::format("cannot open config file '{}'", path));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::vector<std::uint64_t> parse_u64_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::string_view rest = text;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string item = trim(rest.substr(0, comma));
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
      throw PreconditionError(fmt::format("cannot parse integer list '{}'", text));
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace recnum
