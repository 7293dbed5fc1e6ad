#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "recnum/base.hpp"
#include "recnum/blockcert.hpp"
#include "recnum/bounds.hpp"
#include "recnum/digits.hpp"
#include "recnum/expsum.hpp"
#include "recnum/experiments.hpp"

namespace recnum {

using Json = nlohmann::ordered_json;

/// v rounded to 10 significant digits; every real in a report goes through it.
double round10(double v);

Json to_json(const RecurrenceSpec& spec);
RecurrenceSpec spec_from_json(const Json& j);

Json to_json(const ValidationReport& r);
Json to_json(const Expansion& e);
Json to_json(Complex z);
Json to_json(const GallagherReport& r);
Json to_json(const SupremumCertificate& c);
Json to_json(const MBoundReport& r);
Json to_json(const ThetaResult& r);
Json to_json(const GridParams& g);
/// Runtime goes into a separate "timing" object so payloads can be compared
/// across thread counts.
Json to_json(const BlockBoundReport& r);
BlockBoundReport block_report_from_json(const Json& j);
Json to_json(const Table1Row& r);
Json to_json(const DiscrepancyReport& r);
Json to_json(const VonMangoldtSum& r);

/// Canonical text form: two-space indented JSON.
std::string dump(const Json& j);

/// Flat "key,value" CSV for the scalar members of an object.
std::string to_key_value_csv(const Json& j);

/// Plain key=value configuration text. Blank lines and lines starting with
/// '#' are ignored; whitespace around keys and values is trimmed.
std::map<std::string, std::string> parse_config(const std::string& text);
std::map<std::string, std::string> read_config_file(const std::string& path);

/// "1,2,3" -> {1, 2, 3}.
std::vector<std::uint64_t> parse_u64_list(const std::string& text);

}  // namespace recnum
