#pragma once

// Command-line front end. run_cli() is the whole program; tools/cmkit.cpp only
// forwards argv and the environment to it, which lets tests drive it in-process.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cmkit/cm_verifier.hpp"
#include "cmkit/config.hpp"
#include "cmkit/decomposition.hpp"
#include "cmkit/errors.hpp"
#include "cmkit/family.hpp"
#include "cmkit/inequalities.hpp"
#include "cmkit/majorization.hpp"
#include "cmkit/report_io.hpp"
#include "cmkit/specials.hpp"

namespace cmkit::cli {

enum ExitCode : int { kPass = 0, kVerificationFailure = 1, kUsageError = 2 };

/// A usage problem detected after parsing (conflicting flags, bad values).
class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Grid selection: either an explicit list or a log-spaced range.
struct GridSpec {
  std::optional<double> x_min, x_max;
  std::optional<int> points;
  std::vector<double> x_list;
};

/// Everything that shapes evaluation and output, after merging defaults,
/// CMKIT_PROFILE, the config file, and flags (in that order of precedence).
struct CliConfig {
  EvalConfig eval;
  std::string format;  // json | csv | text; empty means the command default
  std::uint64_t seed = 1;
  GridSpec grid;
};

namespace detail {

inline std::string fmt(double v) { return csv::format_double(v); }

/// Parses "a,b,c" into a nonincreasing tuple; warns on stderr when the input
/// was not already sorted.
inline std::vector<double> parse_tuple(const std::string& text, const char* flag, std::ostream& err) {
  std::vector<double> v;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    if (tok.empty()) throw usage_error(std::string(flag) + ": empty entry in '" + text + "'");
    try {
      v.push_back(csv::parse_double(tok));
    } catch (const std::exception&) {
      throw usage_error(std::string(flag) + ": not a number: '" + tok + "'");
    }
    if (!std::isfinite(v.back())) throw usage_error(std::string(flag) + ": entries must be finite");
  }
  if (v.empty()) throw usage_error(std::string(flag) + ": empty tuple");
  if (!std::is_sorted(v.begin(), v.end(), std::greater<>())) {
    err << "warning: " << flag << " was not in nonincreasing order; sorted to ";
    std::sort(v.begin(), v.end(), std::greater<>());
    for (std::size_t i = 0; i < v.size(); ++i) err << (i ? "," : "") << fmt(v[i]);
    err << '\n';
  }
  return v;
}

inline std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> v;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    if (tok.empty()) continue;
    try {
      v.push_back(csv::parse_double(tok));
    } catch (const std::exception&) {
      throw usage_error(std::string(flag) + ": not a number: '" + tok + "'");
    }
  }
  return v;
}

inline int parse_sign(const std::string& s) {
  if (s == "+" || s == "+1" || s == "1" || s == "plus") return +1;
  if (s == "-" || s == "-1" || s == "minus") return -1;
  throw usage_error("--sign must be + or - (got '" + s + "')");
}

/// Resolves the grid: an explicit list conflicts with range flags; otherwise
/// the range defaults fill any missing pieces. points = 0 is an empty grid.
inline std::vector<double> resolve_grid(const GridSpec& g, double lo, double hi, int n) {
  const bool range = g.x_min || g.x_max || g.points;
  if (!g.x_list.empty() && range)
    throw usage_error("--x-list conflicts with --x-min/--x-max/--points");
  if (!g.x_list.empty()) return g.x_list;
  const double a = g.x_min.value_or(lo), b = g.x_max.value_or(hi);
  const int m = g.points.value_or(n);
  if (m < 0) throw usage_error("--points must be >= 0");
  if (m == 0) return {};
  if (!(a > 0.0) || !(b >= a)) throw usage_error("grid range needs 0 < x-min <= x-max");
  return log_grid(a, b, std::size_t(m));
}

/// Function ids accepted by eval and sweep. xfun: takes (p, x); otherwise p only.
struct FunctionEntry {
  bool takes_x;
  std::function<double(double p, double x, double a, double b, const EvalConfig&)> f;
};

inline const std::map<std::string, FunctionEntry>& function_table() {
  static const std::map<std::string, FunctionEntry> t = {
      {"hurwitz-zeta", {true, [](double p, double x, double, double, const EvalConfig& c) { return hurwitz_zeta(p, x, c); }}},
      {"alt-hurwitz-zeta", {true, [](double p, double x, double, double, const EvalConfig& c) { return alt_hurwitz_zeta(p, x, c); }}},
      {"psi-p", {true, [](double p, double x, double, double, const EvalConfig& c) { return ext_polygamma(p, x, c); }}},
      {"beta-p", {true, [](double p, double x, double, double, const EvalConfig& c) { return nielsen_beta_p(p, x, c); }}},
      {"tricomi-u", {true, [](double p, double x, double a, double b, const EvalConfig& c) { return tricomi_u_p(p, a, b, x, c); }}},
      {"mills-r", {true, [](double p, double x, double, double, const EvalConfig& c) { return mills_ratio_p(p, x, c); }}},
      {"zeta", {false, [](double p, double, double, double, const EvalConfig& c) { return riemann_zeta(p, c); }}},
      {"eta", {false, [](double p, double, double, double, const EvalConfig& c) { return dirichlet_eta(p, c); }}},
      {"dirichlet-beta", {false, [](double p, double, double, double, const EvalConfig& c) { return dirichlet_beta_fn(p, c); }}},
      {"dirichlet-lambda", {false, [](double p, double, double, double, const EvalConfig& c) { return dirichlet_lambda(p, c); }}},
  };
  return t;
}

inline std::string known_functions() {
  std::string s;
  for (const auto& [k, _] : function_table()) s += (s.empty() ? "" : ", ") + k;
  return s;
}

/// Ratio sweeps: x -> (ratio, lower, upper) for one double inequality.
struct RatioSweep {
  std::function<double(double)> ratio;
  double lower, upper;
};

inline RatioSweep make_ratio_sweep(const std::string& id, const std::vector<double>& p,
                                   const std::vector<double>& q, double a, double b,
                                   const EvalConfig& cfg) {
  const MajorizationPair pair{RTuple(p), RTuple(q)};
  auto prod = [p, q](std::function<double(double, double)> F) {
    return [p, q, F](double x) {
      return cmkit::detail::product_ratio([&](double s) { return F(s, x); }, p, q);
    };
  };
  const double th0 = solve_theta0().theta0;
  if (id == "hurwitz-ratio") {
    double lo = 1.0;
    for (std::size_t j = 0; j < p.size(); ++j) lo *= (q[j] - 1.0) / (p[j] - 1.0);
    return {prod([cfg](double s, double x) { return hurwitz_zeta(s, x, cfg); }), lo, 1.0};
  }
  if (id == "psi-ratio")
    return {prod([cfg](double s, double x) { return ext_polygamma(s, x, cfg); }),
            lambda_constant(p, q, 1.0), lambda_constant(p, q, 0.0)};
  if (id == "beta-ratio")
    return {prod([cfg](double s, double x) { return nielsen_beta_p(s, x, cfg); }),
            lambda_constant(p, q, 0.0), lambda_constant(p, q, th0)};
  if (id == "mills-ratio")
    return {prod([cfg](double s, double x) { return mills_ratio_p(s, x, cfg); }),
            lambda_constant(p, q, 0.0), 1.0};
  if (id == "tricomi-ratio") {
    const double ls = tricomi_lambda_star(a, b, p, q);
    const bool up = a - b + 1.0 > 0.0;
    return {prod([cfg, a, b](double s, double x) { return tricomi_u(a + s, b + s, x, cfg); }),
            up ? ls : 1.0, up ? 1.0 : ls};
  }
  throw usage_error("unknown sweep id '" + id +
                    "' (expected a function id or one of hurwitz-ratio, psi-ratio, beta-ratio, "
                    "mills-ratio, tricomi-ratio)");
}

inline void print_text_table(std::ostream& out, const std::vector<std::string>& header,
                             const std::vector<std::vector<double>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "\t" : "") << header[i];
  out << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "\t" : "") << fmt(r[i]);
    out << '\n';
  }
}

inline void emit_table(std::ostream& out, const std::string& format,
                       const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows) {
  if (format == "csv") {
    write_table_csv(out, header, rows);
  } else if (format == "json") {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["columns"] = header;
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(numbers_to_json(r));
    j["rows"] = arr;
    out << j.dump(2) << '\n';
  } else {
    print_text_table(out, header, rows);
  }
}

inline void check_format(const std::string& f) {
  if (f != "json" && f != "csv" && f != "text")
    throw usage_error("--format must be json, csv or text (got '" + f + "')");
}

}  // namespace detail

/// Runs the command line in args (args[0] is the program name). env_profile
/// is the value of CMKIT_PROFILE, or nullptr when unset.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                   const char* env_profile = nullptr) {
  CLI::App app{"cmkit: special functions, majorization reduction, CM verification and the "
               "inequality catalog"};
  app.name("cmkit");
  app.require_subcommand(1);
  app.fallthrough();  // shared options may follow the subcommand
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  // Shared options.
  std::string config_path, format_flag, profile_flag;
  std::optional<double> rel_tol, abs_tol, series_switch, asym_switch;
  std::optional<int> em_shift, em_terms, quad_nodes;
  std::optional<std::uint64_t> seed_flag;
  GridSpec grid_flags;
  std::string x_list_text;

  app.add_option("--config", config_path, "JSON config file (profile, eval, format, seed, grid)");
  app.add_option("--format", format_flag, "Output format: json, csv or text");
  app.add_option("--profile", profile_flag, "Tolerance profile: default, fast or strict");
  app.add_option("--rel-tol", rel_tol, "Relative tolerance");
  app.add_option("--abs-tol", abs_tol, "Absolute tolerance floor");
  app.add_option("--em-shift", em_shift, "Euler-Maclaurin shift count N");
  app.add_option("--em-terms", em_terms, "Euler-Maclaurin correction terms");
  app.add_option("--quad-nodes", quad_nodes, "Quadrature subinterval budget");
  app.add_option("--series-switch", series_switch, "Mills ratio: power series up to this x");
  app.add_option("--asym-switch", asym_switch, "Mills ratio: asymptotic series from this x");
  app.add_option("--seed", seed_flag, "Seed for randomized inputs");

  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--x-min", grid_flags.x_min, "Smallest grid point");
    sub->add_option("--x-max", grid_flags.x_max, "Largest grid point");
    sub->add_option("--points", grid_flags.points, "Number of log-spaced grid points");
    sub->add_option("--x-list", x_list_text, "Explicit comma-separated grid");
  };

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a special function");
  std::string eval_fn, p_text, x_text;
  double a_val = 2.0, b_val = 2.0;
  eval_cmd->add_option("function", eval_fn, "Function id")->required();
  eval_cmd->add_option("--p", p_text, "Order p (comma-separated list allowed)")->required();
  eval_cmd->add_option("--x", x_text, "Argument x (comma-separated list allowed)");
  eval_cmd->add_option("--a", a_val, "Tricomi parameter a");
  eval_cmd->add_option("--b", b_val, "Tricomi parameter b");

  // constants
  auto* const_cmd = app.add_subcommand("constants", "Sharp constants and theta0");
  std::string const_name, cq_text, cp_text;
  std::optional<double> theta_val;
  const_cmd->add_option("name", const_name, "theta0, lambda or lambda-star")->required();
  const_cmd->add_option("--p", cp_text, "Tuple p");
  const_cmd->add_option("--q", cq_text, "Tuple q");
  const_cmd->add_option("--theta", theta_val, "theta for lambda");
  const_cmd->add_option("--a", a_val, "Tricomi parameter a");
  const_cmd->add_option("--b", b_val, "Tricomi parameter b");

  // decompose
  auto* dec_cmd = app.add_subcommand("decompose", "Reduce a majorized pair into 2-tuple pairs");
  std::string dp_text, dq_text;
  std::optional<int> random_n;
  dec_cmd->add_option("--p", dp_text, "Tuple p (majorized by q)");
  dec_cmd->add_option("--q", dq_text, "Tuple q");
  dec_cmd->add_option("--random-n", random_n, "Decompose a random pair of this length (uses --seed)");

  // cm-check
  auto* cm_cmd = app.add_subcommand("cm-check", "Numerically verify complete monotonicity");
  std::string family_name = "hurwitz", mp_text, mq_text, lambda_text = "auto", sign_text = "+";
  int K = 6;
  cm_cmd->add_option("--family", family_name, "hurwitz, alternating, tricomi or gaussian");
  cm_cmd->add_option("--p", mp_text, "Tuple p")->required();
  cm_cmd->add_option("--q", mq_text, "Tuple q")->required();
  cm_cmd->add_option("--lambda", lambda_text, "Constant, or 'auto' (from --theta or the family)");
  cm_cmd->add_option("--theta", theta_val, "theta for --lambda auto");
  cm_cmd->add_option("--sign", sign_text, "+ or -");
  cm_cmd->add_option("--K", K, "Highest derivative order");
  cm_cmd->add_option("--a", a_val, "Tricomi parameter a");
  cm_cmd->add_option("--b", b_val, "Tricomi parameter b");
  add_grid(cm_cmd);

  // ineq
  auto* ineq_cmd = app.add_subcommand("ineq", "Run inequality catalog cases");
  std::vector<std::string> ineq_ids;
  std::optional<int> n_max;
  bool list_ids = false;
  ineq_cmd->add_option("ids", ineq_ids, "Case ids, or 'all'");
  ineq_cmd->add_option("--n-max", n_max, "Upper index for bernoulli, euler and yang-tian cases");
  ineq_cmd->add_flag("--list", list_ids, "List case ids and exit");
  add_grid(ineq_cmd);

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Emit x-sweeps for plotting");
  std::string sweep_id, sp_text, sq_text;
  sweep_cmd->add_option("id", sweep_id, "Function id or ratio id")->required();
  sweep_cmd->add_option("--p", sp_text, "Order p (function) or tuple p (ratio)");
  sweep_cmd->add_option("--q", sq_text, "Tuple q (ratio)");
  sweep_cmd->add_option("--a", a_val, "Tricomi parameter a");
  sweep_cmd->add_option("--b", b_val, "Tricomi parameter b");
  add_grid(sweep_cmd);

  auto* show_cmd = app.add_subcommand("show-config", "Print the effective configuration after merging");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();  // program name
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    // Precedence: defaults < CMKIT_PROFILE < config file < flags.
    CliConfig cc;
    if (env_profile && *env_profile) cc.eval = EvalConfig::profile(env_profile);
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw usage_error("cannot read config file '" + config_path + "'");
      json j;
      try {
        j = json::parse(in);
      } catch (const std::exception& e) {
        throw usage_error("config file '" + config_path + "' is not valid JSON: " + e.what());
      }
      if (!j.is_object()) throw usage_error("config file must hold a JSON object");
      for (const auto& [k, v] : j.items()) {
        if (k == "profile") cc.eval = EvalConfig::profile(v.get<std::string>());
        else if (k != "eval" && k != "format" && k != "seed" && k != "grid")
          throw usage_error("unknown config key '" + k + "'");
      }
      if (j.contains("eval")) apply_eval_config_json(cc.eval, j["eval"]);
      if (j.contains("format")) cc.format = j["format"].get<std::string>();
      if (j.contains("seed")) cc.seed = j["seed"].get<std::uint64_t>();
      if (j.contains("grid")) {
        const auto& g = j["grid"];
        if (g.contains("x_min")) cc.grid.x_min = g["x_min"].get<double>();
        if (g.contains("x_max")) cc.grid.x_max = g["x_max"].get<double>();
        if (g.contains("points")) cc.grid.points = g["points"].get<int>();
        if (g.contains("x_list")) cc.grid.x_list = g["x_list"].get<std::vector<double>>();
      }
    }
    if (!profile_flag.empty()) cc.eval = EvalConfig::profile(profile_flag);
    if (rel_tol) cc.eval.rel_tol = *rel_tol;
    if (abs_tol) cc.eval.abs_tol = *abs_tol;
    if (em_shift) cc.eval.em_shift_N = *em_shift;
    if (em_terms) cc.eval.em_terms = *em_terms;
    if (quad_nodes) cc.eval.quad_nodes = *quad_nodes;
    if (series_switch) cc.eval.series_switch_x = *series_switch;
    if (asym_switch) cc.eval.asym_switch_x = *asym_switch;
    if (seed_flag) cc.seed = *seed_flag;
    if (!format_flag.empty()) cc.format = format_flag;
    if (!cc.format.empty()) detail::check_format(cc.format);
    cc.eval.validate();
    // Grid flags given on the command line replace the file's grid wholesale.
    const bool grid_on_cli = grid_flags.x_min || grid_flags.x_max || grid_flags.points ||
                             !x_list_text.empty();
    if (grid_on_cli) {
      cc.grid = grid_flags;
      cc.grid.x_list = detail::parse_list(x_list_text, "--x-list");
      if (!x_list_text.empty() && cc.grid.x_list.empty())
        throw usage_error("--x-list: no values");
    }
    const EvalConfig& cfg = cc.eval;
    auto format_or = [&](const char* d) { return cc.format.empty() ? std::string(d) : cc.format; };

    // --------------------------------------------------------- show-config
    if (*show_cmd) {
      json j;
      j["schema_version"] = kSchemaVersion;
      j["eval"] = eval_config_to_json(cfg);
      j["format"] = cc.format.empty() ? json(nullptr) : json(cc.format);
      j["seed"] = cc.seed;
      json g;
      if (cc.grid.x_min) g["x_min"] = *cc.grid.x_min;
      if (cc.grid.x_max) g["x_max"] = *cc.grid.x_max;
      if (cc.grid.points) g["points"] = *cc.grid.points;
      if (!cc.grid.x_list.empty()) g["x_list"] = numbers_to_json(cc.grid.x_list);
      j["grid"] = g.is_null() ? json::object() : g;
      out << j.dump(2) << '\n';
      return kPass;
    }

    // ---------------------------------------------------------------- eval
    if (*eval_cmd) {
      const auto& table = detail::function_table();
      auto it = table.find(eval_fn);
      if (it == table.end())
        throw usage_error("unknown function id '" + eval_fn + "' (expected one of " +
                          detail::known_functions() + ")");
      const auto ps = detail::parse_list(p_text, "--p");
      if (ps.empty()) throw usage_error("--p: no values");
      std::vector<std::vector<double>> rows;
      std::vector<std::string> header;
      if (it->second.takes_x) {
        if (x_text.empty()) throw usage_error(eval_fn + " requires --x");
        const auto xs = detail::parse_list(x_text, "--x");
        if (ps.size() != 1) throw usage_error(eval_fn + " takes a single --p");
        header = {"x", "value"};
        for (double x : xs) rows.push_back({x, it->second.f(ps[0], x, a_val, b_val, cfg)});
      } else {
        if (!x_text.empty()) throw usage_error(eval_fn + " does not take --x");
        header = {"p", "value"};
        for (double p : ps) rows.push_back({p, it->second.f(p, 0.0, a_val, b_val, cfg)});
      }
      const auto f = format_or("text");
      if (f == "text" && rows.size() == 1)
        out << detail::fmt(rows[0][1]) << '\n';
      else
        detail::emit_table(out, f, header, rows);
      return kPass;
    }

    // ----------------------------------------------------------- constants
    if (*const_cmd) {
      const auto f = format_or("text");
      std::vector<std::pair<std::string, double>> vals;
      if (const_name == "theta0") {
        const auto t = solve_theta0();
        vals = {{"t0", t.t0}, {"theta0", t.theta0}};
      } else if (const_name == "lambda" || const_name == "lambda-star") {
        if (cp_text.empty() || cq_text.empty()) throw usage_error(const_name + " requires --p and --q");
        const auto p = detail::parse_tuple(cp_text, "--p", err);
        const auto q = detail::parse_tuple(cq_text, "--q", err);
        if (p.size() != q.size()) throw usage_error("--p and --q must have equal length");
        if (const_name == "lambda") {
          if (!theta_val) throw usage_error("lambda requires --theta");
          vals = {{"lambda", lambda_constant(p, q, *theta_val)}};
        } else {
          vals = {{"lambda_star", tricomi_lambda_star(a_val, b_val, p, q)}};
        }
      } else {
        throw usage_error("unknown constant '" + const_name + "' (expected theta0, lambda, lambda-star)");
      }
      if (f == "json") {
        json j;
        j["schema_version"] = kSchemaVersion;
        for (const auto& [k, v] : vals) j[k] = number_to_json(v);
        out << j.dump(2) << '\n';
      } else if (f == "csv") {
        csv::write_row(out, {"name", "value"});
        for (const auto& [k, v] : vals) csv::write_row(out, {k, detail::fmt(v)});
      } else {
        for (std::size_t i = 0; i < vals.size(); ++i)
          out << (i ? " " : "") << vals[i].first << '=' << detail::fmt(vals[i].second);
        out << '\n';
      }
      return kPass;
    }

    // ----------------------------------------------------------- decompose
    if (*dec_cmd) {
      std::optional<MajorizationPair> pair;
      if (random_n) {
        if (!dp_text.empty() || !dq_text.empty())
          throw usage_error("--random-n conflicts with --p/--q");
        if (*random_n < 2) throw usage_error("--random-n must be >= 2");
        pair = random_majorized_pair(std::size_t(*random_n), cc.seed);
      } else {
        if (dp_text.empty() || dq_text.empty()) throw usage_error("decompose requires --p and --q");
        RTuple p(detail::parse_tuple(dp_text, "--p", err));
        RTuple q(detail::parse_tuple(dq_text, "--q", err));
        if (p.size() != q.size()) throw usage_error("--p and --q must have equal length");
        if (auto why = majorization_violation(p, q))
          throw usage_error("p is not strictly majorized by q: " + *why);
        pair.emplace(std::move(p), std::move(q));
      }
      const auto root = decompose(*pair);
      const auto doc = decomposition_document(*root);
      const auto f = format_or("json");
      if (f == "json") {
        out << doc.dump(2) << '\n';
      } else {
        // Flattened node list; path is the branch sequence from the root.
        std::vector<std::vector<std::string>> rows;
        std::function<void(const DecompositionNode&, const std::string&)> walk =
            [&](const DecompositionNode& n, const std::string& path) {
              rows.push_back({path, kind_name(n.kind), csv::join_numbers(n.pair.p().entries()),
                              csv::join_numbers(n.pair.q().entries()),
                              n.kind == DecompositionNode::Kind::reduction ? std::to_string(n.k_index) : ""});
              if (n.kind == DecompositionNode::Kind::reduction) {
                walk(*n.star, path + "/star");
                walk(*n.prime, path + "/prime");
              }
            };
        walk(*root, "root");
        if (f == "csv") {
          csv::write_row(out, {"path", "kind", "p", "q", "k_index"});
          for (const auto& r : rows) csv::write_row(out, r);
        } else {
          for (const auto& r : rows)
            out << r[0] << "  " << r[1] << "  p=(" << r[2] << ")  q=(" << r[3] << ")"
                << (r[4].empty() ? "" : "  k=" + r[4]) << '\n';
          out << "valid: " << (doc["summary"]["all_valid"].get<bool>() ? "yes" : "no") << '\n';
        }
      }
      return doc["summary"]["all_valid"].get<bool>() ? kPass : kVerificationFailure;
    }

    // ------------------------------------------------------------ cm-check
    if (*cm_cmd) {
      const auto spec = FamilySpec::from_name(family_name, a_val, b_val);
      RTuple p(detail::parse_tuple(mp_text, "--p", err));
      RTuple q(detail::parse_tuple(mq_text, "--q", err));
      if (p.size() != q.size()) throw usage_error("--p and --q must have equal length");
      if (auto why = majorization_violation(p, q))
        throw usage_error("p is not strictly majorized by q: " + *why);
      const MajorizationPair pair(std::move(p), std::move(q));
      const int sign = detail::parse_sign(sign_text);
      double lambda;
      if (lambda_text == "auto") {
        lambda = theta_val ? lambda_constant(pair.p().entries(), pair.q().entries(), *theta_val)
                           : sanctioned_lambda(spec, pair, sign);
      } else {
        if (theta_val) throw usage_error("--theta is only meaningful with --lambda auto");
        try {
          lambda = csv::parse_double(lambda_text);
        } catch (const std::exception&) {
          throw usage_error("--lambda must be a number or 'auto' (got '" + lambda_text + "')");
        }
      }
      if (K < 0) throw usage_error("--K must be >= 0");
      const auto grid = detail::resolve_grid(cc.grid, 0.125, 64.0, 25);
      if (grid.empty()) throw usage_error("cm-check needs a nonempty grid");
      const auto rep = cm_check(spec, pair, lambda, sign, grid, K, cfg);
      const auto f = format_or("json");
      if (f == "json") {
        out << cm_report_to_json(rep).dump(2) << '\n';
      } else if (f == "csv") {
        write_cm_csv(out, rep);
      } else {
        out << "family " << rep.family << "  lambda " << detail::fmt(rep.lambda) << "  sign "
            << (rep.sign > 0 ? "+" : "-") << '\n';
        for (const auto& o : rep.orders)
          out << "order " << o.order << "  worst margin " << detail::fmt(o.worst_margin) << " at x="
              << detail::fmt(o.worst_x) << "  " << (o.pass ? "pass" : "FAIL") << '\n';
        if (!rep.clip_note.empty()) out << "note: " << rep.clip_note << '\n';
        out << "verdict: " << (rep.pass() ? "pass" : "fail") << '\n';
      }
      return rep.pass() ? kPass : kVerificationFailure;
    }

    // ---------------------------------------------------------------- ineq
    if (*ineq_cmd) {
      if (list_ids) {
        for (const auto& id : catalog_ids()) out << id << '\n';
        return kPass;
      }
      if (ineq_ids.empty()) throw usage_error("ineq requires case ids or 'all'");
      CatalogOptions opt;
      opt.eval = cfg;
      opt.n_max = n_max;
      const bool custom_grid = cc.grid.x_min || cc.grid.x_max || cc.grid.points || !cc.grid.x_list.empty();
      if (custom_grid) {
        opt.grid = detail::resolve_grid(cc.grid, 1e-2, 1e2, 25);
        if (opt.grid->empty()) throw usage_error("ineq needs a nonempty grid");
      }
      const auto reports = run_catalog(ineq_ids, opt);
      const auto f = format_or("text");
      if (f == "json") {
        out << catalog_document(reports).dump(2) << '\n';
      } else if (f == "csv") {
        write_ineq_csv(out, reports);
      } else {
        for (const auto& r : reports) {
          out << std::left << std::setw(28) << r.id << ' ' << std::setw(21) << r.verdict
              << " samples=" << r.samples << "  min_slack_lower=" << detail::fmt(r.min_slack_lower)
              << "  min_slack_upper=" << detail::fmt(r.min_slack_upper) << '\n';
          for (const auto& c : r.checks)
            if (!c.pass) out << "    failed check: " << c.name << '\n';
          for (const auto& fl : r.flags) out << "    flag: " << fl << '\n';
        }
        out << "overall: " << (catalog_passed(reports) ? "pass" : "fail") << '\n';
      }
      return catalog_passed(reports) ? kPass : kVerificationFailure;
    }

    // --------------------------------------------------------------- sweep
    if (*sweep_cmd) {
      const auto grid = detail::resolve_grid(cc.grid, 1e-2, 1e2, 25);
      const auto f = format_or("csv");
      const auto& table = detail::function_table();
      if (auto it = table.find(sweep_id); it != table.end()) {
        if (!it->second.takes_x) throw usage_error(sweep_id + " has no x argument to sweep");
        const auto ps = detail::parse_list(sp_text, "--p");
        if (ps.size() != 1) throw usage_error("sweep " + sweep_id + " requires a single --p");
        std::vector<std::vector<double>> rows;
        for (double x : grid) rows.push_back({x, it->second.f(ps[0], x, a_val, b_val, cfg)});
        detail::emit_table(out, f, {"x", "value"}, rows);
        return kPass;
      }
      const std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> defaults = {
          {"hurwitz-ratio", {{2.5, 2.5}, {3, 2}}}, {"psi-ratio", {{2, 2}, {3, 1}}},
          {"beta-ratio", {{1, 1}, {2, 0}}},        {"mills-ratio", {{1, 1}, {2, 0}}},
          {"tricomi-ratio", {{1, 1}, {2, 0}}}};
      auto d = defaults.find(sweep_id);
      if (d == defaults.end()) detail::make_ratio_sweep(sweep_id, {}, {}, 0, 0, cfg);  // throws
      const auto p = sp_text.empty() ? d->second.first : detail::parse_tuple(sp_text, "--p", err);
      const auto q = sq_text.empty() ? d->second.second : detail::parse_tuple(sq_text, "--q", err);
      if (p.size() != q.size()) throw usage_error("--p and --q must have equal length");
      if (auto why = majorization_violation(RTuple(p), RTuple(q)))
        throw usage_error("p is not strictly majorized by q: " + *why);
      const auto sw = detail::make_ratio_sweep(sweep_id, p, q, a_val, b_val, cfg);
      std::vector<std::vector<double>> rows;
      for (double x : grid) rows.push_back({x, sw.ratio(x), sw.lower, sw.upper});
      detail::emit_table(out, f, {"x", "ratio", "lower", "upper"}, rows);
      return kPass;
    }
  } catch (const usage_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const precondition_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const domain_error& e) {
    err << "domain error: " << e.what() << '\n';
    return kUsageError;
  } catch (const convergence_error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kUsageError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed configuration value: " << e.what() << '\n';
    return kUsageError;
  }
  err << "error: no command given\n";
  return kUsageError;
}

}  // namespace cmkit::cli
