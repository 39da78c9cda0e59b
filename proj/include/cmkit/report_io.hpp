#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cmkit/cm_verifier.hpp"
#include "cmkit/config.hpp"
#include "cmkit/decomposition.hpp"
#include "cmkit/errors.hpp"
#include "cmkit/inequalities.hpp"
#include "cmkit/majorization.hpp"
#include "cmkit/theta0.hpp"

namespace cmkit {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// Numbers. JSON has no infinities, so +-inf and nan travel as strings.

inline json number_to_json(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

inline double number_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw precondition_error("expected a number, got " + j.dump());
}

inline json numbers_to_json(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(number_to_json(x));
  return a;
}

inline std::vector<double> numbers_from_json(const json& j) {
  std::vector<double> v;
  for (const auto& e : j) v.push_back(number_from_json(e));
  return v;
}

// ---------------------------------------------------------------------------
// Majorization

inline json pair_to_json(const MajorizationPair& pr) {
  json j;
  j["p"] = numbers_to_json(pr.p().entries());
  j["q"] = numbers_to_json(pr.q().entries());
  if (pr.trivial()) j["trivial_equal"] = true;
  return j;
}

inline json node_to_json(const DecompositionNode& n) {
  json j;
  j["kind"] = kind_name(n.kind);
  j["pair"] = pair_to_json(n.pair);
  if (n.kind == DecompositionNode::Kind::reduction) {
    j["k_index"] = n.k_index;
    j["star_pair"] = pair_to_json(n.star_pair());
    j["prime_pair"] = pair_to_json(n.prime_pair());
    j["multiplier_left"] = n.multiplier_left;
    j["multiplier_right"] = numbers_to_json(n.multiplier_right);
    j["star"] = node_to_json(*n.star);
    j["prime"] = node_to_json(*n.prime);
  }
  return j;
}

inline json decomposition_document(const DecompositionNode& root) {
  const auto s = summarize(root);
  json j;
  j["schema_version"] = kSchemaVersion;
  j["tree"] = node_to_json(root);
  j["summary"] = {{"reductions", s.reductions},
                  {"leaves", s.leaves},
                  {"trivial_leaves", s.trivial_leaves},
                  {"spine_length", s.spine_length},
                  {"all_valid", s.all_valid}};
  return j;
}

// ---------------------------------------------------------------------------
// CM reports

inline json cm_report_to_json(const CMReport& r) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["family"] = r.family;
  j["p"] = numbers_to_json(r.p);
  j["q"] = numbers_to_json(r.q);
  j["lambda"] = number_to_json(r.lambda);
  j["sign"] = r.sign;
  j["orders_requested"] = r.orders_requested;
  j["orders_checked"] = r.orders_checked;
  if (!r.clip_note.empty()) j["clip_note"] = r.clip_note;
  j["cm_tol"] = number_to_json(r.cm_tol);
  j["grid"] = numbers_to_json(r.grid);
  json orders = json::array();
  for (const auto& o : r.orders)
    orders.push_back({{"order", o.order},
                      {"worst_margin", number_to_json(o.worst_margin)},
                      {"worst_x", number_to_json(o.worst_x)},
                      {"pass", o.pass}});
  j["orders"] = orders;
  j["verdict"] = r.pass() ? "pass" : "fail";
  if (!r.pass()) {
    const auto& o = r.orders[r.first_failing_order()];
    j["culprit"] = {{"order", o.order}, {"x", number_to_json(o.worst_x)}, {"margin", number_to_json(o.worst_margin)}};
  }
  return j;
}

inline CMReport cm_report_from_json(const json& j) {
  CMReport r;
  r.family = j.at("family").get<std::string>();
  r.p = numbers_from_json(j.at("p"));
  r.q = numbers_from_json(j.at("q"));
  r.lambda = number_from_json(j.at("lambda"));
  r.sign = j.at("sign").get<int>();
  r.orders_requested = j.at("orders_requested").get<int>();
  r.orders_checked = j.at("orders_checked").get<int>();
  r.clip_note = j.value("clip_note", std::string());
  r.cm_tol = number_from_json(j.at("cm_tol"));
  r.grid = numbers_from_json(j.at("grid"));
  for (const auto& o : j.at("orders"))
    r.orders.push_back({o.at("order").get<int>(), number_from_json(o.at("worst_margin")),
                        number_from_json(o.at("worst_x")), o.at("pass").get<bool>()});
  return r;
}

// ---------------------------------------------------------------------------
// Inequality reports

/// Parameter names are unique within a report; the JSON form is an object.
inline json params_to_json(const std::vector<std::pair<std::string, std::vector<double>>>& params) {
  json j = json::object();
  for (const auto& [k, v] : params) {
    if (j.contains(k)) throw precondition_error("report params: duplicate name '" + k + "'");
    j[k] = numbers_to_json(v);
  }
  return j;
}

inline json ineq_report_to_json(const IneqReport& r) {
  json j;
  j["id"] = r.id;
  j["params"] = params_to_json(r.params);
  j["samples"] = r.samples;
  j["min_slack_lower"] = number_to_json(r.min_slack_lower);
  j["min_slack_upper"] = number_to_json(r.min_slack_upper);
  j["worst_lower_at"] = numbers_to_json(r.worst_lower_at);
  j["worst_upper_at"] = numbers_to_json(r.worst_upper_at);
  j["floor"] = number_to_json(r.floor);
  j["verdict"] = r.verdict;
  j["gating"] = r.gating;
  j["flags"] = r.flags;
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"value", number_to_json(c.value)},
                      {"target", number_to_json(c.target)},
                      {"pass", c.pass},
                      {"gating", c.gating}});
  j["checks"] = checks;
  return j;
}

inline IneqReport ineq_report_from_json(const json& j) {
  IneqReport r;
  r.id = j.at("id").get<std::string>();
  for (const auto& [k, v] : j.at("params").items()) r.params.push_back({k, numbers_from_json(v)});
  r.samples = j.at("samples").get<std::size_t>();
  r.min_slack_lower = number_from_json(j.at("min_slack_lower"));
  r.min_slack_upper = number_from_json(j.at("min_slack_upper"));
  r.worst_lower_at = numbers_from_json(j.at("worst_lower_at"));
  r.worst_upper_at = numbers_from_json(j.at("worst_upper_at"));
  r.floor = number_from_json(j.at("floor"));
  r.verdict = j.at("verdict").get<std::string>();
  r.gating = j.at("gating").get<bool>();
  r.flags = j.at("flags").get<std::vector<std::string>>();
  for (const auto& c : j.at("checks"))
    r.checks.push_back({c.at("name").get<std::string>(), number_from_json(c.at("value")),
                        number_from_json(c.at("target")), c.at("pass").get<bool>(),
                        c.at("gating").get<bool>()});
  return r;
}

inline json catalog_document(const std::vector<IneqReport>& reports) {
  json j;
  j["schema_version"] = kSchemaVersion;
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(ineq_report_to_json(r));
  j["reports"] = arr;
  j["verdict"] = catalog_passed(reports) ? "pass" : "fail";
  return j;
}

// ---------------------------------------------------------------------------
// Configuration

inline json eval_config_to_json(const EvalConfig& c) {
  return {{"rel_tol", c.rel_tol},
          {"abs_tol", c.abs_tol},
          {"em_shift_N", c.em_shift_N},
          {"em_terms", c.em_terms},
          {"quad_nodes", c.quad_nodes},
          {"series_switch_x", c.series_switch_x},
          {"asym_switch_x", c.asym_switch_x}};
}

/// Overlays the keys present in j onto cfg. Unknown keys are rejected.
inline void apply_eval_config_json(EvalConfig& cfg, const json& j) {
  if (!j.is_object()) throw precondition_error("eval config must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (k == "rel_tol") cfg.rel_tol = v.get<double>();
    else if (k == "abs_tol") cfg.abs_tol = v.get<double>();
    else if (k == "em_shift_N") cfg.em_shift_N = v.get<int>();
    else if (k == "em_terms") cfg.em_terms = v.get<int>();
    else if (k == "quad_nodes") cfg.quad_nodes = v.get<int>();
    else if (k == "series_switch_x") cfg.series_switch_x = v.get<double>();
    else if (k == "asym_switch_x") cfg.asym_switch_x = v.get<double>();
    else throw precondition_error("unknown eval config key '" + k + "'");
  }
}

// ---------------------------------------------------------------------------
// CSV: ',' delimiter, '.' decimal, LF line endings, RFC 4180 quoting.
// Doubles are written with 17 significant digits so they read back exactly.

namespace csv {

inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double parse_double(const std::string& s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size())
    throw precondition_error("csv: not a number: '" + s + "'");
  return v;
}

inline std::string escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline void write_row(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << escape(cells[i]);
  os << '\n';
}

/// Reads one record; quoted cells may span lines. Returns false at EOF.
inline bool read_row(std::istream& is, std::vector<std::string>& cells) {
  cells.clear();
  std::string cell;
  bool quoted = false, any = false;
  for (int ch; (ch = is.get()) != EOF;) {
    any = true;
    const char c = static_cast<char>(ch);
    if (quoted) {
      if (c == '"') {
        if (is.peek() == '"') {
          is.get();
          cell += '"';
        } else {
          quoted = false;
        }
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else if (c == '\n') {
      cells.push_back(std::move(cell));
      return true;
    } else if (c != '\r') {
      cell += c;
    }
  }
  if (quoted) throw precondition_error("csv: unterminated quoted cell");
  if (!any) return false;
  cells.push_back(std::move(cell));
  return true;
}

inline std::string join_numbers(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + format_double(v[i]);
  return s;
}

inline std::vector<double> split_numbers(const std::string& s) {
  std::vector<double> v;
  std::istringstream is(s);
  for (std::string tok; is >> tok;) v.push_back(parse_double(tok));
  return v;
}

}  // namespace csv

inline const std::vector<std::string>& ineq_csv_header() {
  static const std::vector<std::string> h = {
      "id",    "samples", "min_slack_lower", "min_slack_upper", "worst_lower_at", "worst_upper_at",
      "floor", "gating",  "verdict",         "params",          "flags",          "checks"};
  return h;
}

/// One row per report. Structured cells (params, flags, checks) hold compact JSON.
inline void write_ineq_csv(std::ostream& os, const std::vector<IneqReport>& reports) {
  csv::write_row(os, ineq_csv_header());
  for (const auto& r : reports) {
    const json full = ineq_report_to_json(r);
    csv::write_row(os, {r.id, std::to_string(r.samples), csv::format_double(r.min_slack_lower),
                        csv::format_double(r.min_slack_upper), csv::join_numbers(r.worst_lower_at),
                        csv::join_numbers(r.worst_upper_at), csv::format_double(r.floor),
                        r.gating ? "true" : "false", r.verdict, full["params"].dump(),
                        full["flags"].dump(), full["checks"].dump()});
  }
}

inline std::vector<IneqReport> read_ineq_csv(std::istream& is) {
  std::vector<std::string> cells;
  if (!csv::read_row(is, cells) || cells != ineq_csv_header())
    throw precondition_error("csv: missing or unexpected inequality header");
  std::vector<IneqReport> out;
  while (csv::read_row(is, cells)) {
    if (cells.size() == 1 && cells[0].empty()) continue;
    if (cells.size() != ineq_csv_header().size()) throw precondition_error("csv: wrong column count");
    json j;
    j["id"] = cells[0];
    j["samples"] = std::stoull(cells[1]);
    j["min_slack_lower"] = number_to_json(csv::parse_double(cells[2]));
    j["min_slack_upper"] = number_to_json(csv::parse_double(cells[3]));
    j["worst_lower_at"] = numbers_to_json(csv::split_numbers(cells[4]));
    j["worst_upper_at"] = numbers_to_json(csv::split_numbers(cells[5]));
    j["floor"] = csv::parse_double(cells[6]);
    j["gating"] = cells[7] == "true";
    j["verdict"] = cells[8];
    j["params"] = json::parse(cells[9]);
    j["flags"] = json::parse(cells[10]);
    j["checks"] = json::parse(cells[11]);
    out.push_back(ineq_report_from_json(j));
  }
  return out;
}

inline const std::vector<std::string>& cm_csv_header() {
  static const std::vector<std::string> h = {
      "family", "p",     "q",            "lambda",  "sign",    "orders_requested", "orders_checked",
      "cm_tol", "order", "worst_margin", "worst_x", "pass",    "clip_note",        "grid"};
  return h;
}

/// One row per checked order; report-level fields repeat on every row.
inline void write_cm_csv(std::ostream& os, const CMReport& r) {
  csv::write_row(os, cm_csv_header());
  for (const auto& o : r.orders)
    csv::write_row(os, {r.family, csv::join_numbers(r.p), csv::join_numbers(r.q),
                        csv::format_double(r.lambda), std::to_string(r.sign),
                        std::to_string(r.orders_requested), std::to_string(r.orders_checked),
                        csv::format_double(r.cm_tol), std::to_string(o.order),
                        csv::format_double(o.worst_margin), csv::format_double(o.worst_x),
                        o.pass ? "true" : "false", r.clip_note, csv::join_numbers(r.grid)});
}

inline CMReport read_cm_csv(std::istream& is) {
  std::vector<std::string> cells;
  if (!csv::read_row(is, cells) || cells != cm_csv_header())
    throw precondition_error("csv: missing or unexpected cm-check header");
  CMReport r;
  bool first = true;
  while (csv::read_row(is, cells)) {
    if (cells.size() == 1 && cells[0].empty()) continue;
    if (cells.size() != cm_csv_header().size()) throw precondition_error("csv: wrong column count");
    if (first) {
      r.family = cells[0];
      r.p = csv::split_numbers(cells[1]);
      r.q = csv::split_numbers(cells[2]);
      r.lambda = csv::parse_double(cells[3]);
      r.sign = std::stoi(cells[4]);
      r.orders_requested = std::stoi(cells[5]);
      r.orders_checked = std::stoi(cells[6]);
      r.cm_tol = csv::parse_double(cells[7]);
      r.clip_note = cells[12];
      r.grid = csv::split_numbers(cells[13]);
      first = false;
    }
    r.orders.push_back({std::stoi(cells[8]), csv::parse_double(cells[9]),
                        csv::parse_double(cells[10]), cells[11] == "true"});
  }
  return r;
}

/// Two-column numeric table with a header, e.g. x,value.
inline void write_table_csv(std::ostream& os, const std::vector<std::string>& header,
                            const std::vector<std::vector<double>>& rows) {
  csv::write_row(os, header);
  for (const auto& row : rows) {
    std::vector<std::string> cells;
    for (double v : row) cells.push_back(csv::format_double(v));
    csv::write_row(os, cells);
  }
}

inline std::vector<std::vector<double>> read_table_csv(std::istream& is,
                                                       std::vector<std::string>& header) {
  std::vector<std::string> cells;
  if (!csv::read_row(is, header)) throw precondition_error("csv: missing header");
  std::vector<std::vector<double>> rows;
  while (csv::read_row(is, cells)) {
    if (cells.size() == 1 && cells[0].empty()) continue;
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(csv::parse_double(c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace cmkit
