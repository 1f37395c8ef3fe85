#pragma once

// Command-line front end. Arguments are first turned into a RunConfig (a
// JSON object), and only the RunConfig is executed, so `--replay` of an
// embedded config takes exactly the same path as the original run.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scottish_lab/core.hpp"
#include "scottish_lab/dyadic.hpp"
#include "scottish_lab/extremal.hpp"
#include "scottish_lab/io.hpp"
#include "scottish_lab/mazur.hpp"
#include "scottish_lab/tensornorm.hpp"
#include "scottish_lab/verify.hpp"

namespace scottish_lab::cli {

using nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitVerifyFailed = 2;
inline constexpr int kExitUsage = 64;

inline constexpr const char* kRunConfigTag = "# run_config: ";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Kind { Int, Real, Exponent, Text, Path, Flag, Multi };

struct OptionSpec {
  const char* flag;
  const char* key;
  Kind kind;
  const char* help;
  bool required = false;
  json fallback = nullptr;
};

struct CommandSpec {
  const char* name;
  const char* help;
  std::vector<OptionSpec> options;
  std::uint64_t default_budget = 1024;
};

namespace detail {

inline std::vector<OptionSpec> matrix_inputs(std::vector<OptionSpec> extra) {
  std::vector<OptionSpec> v{
      {"--input", "input", Kind::Path, "matrix CSV (row-major, no header)"},
      {"--hankel", "hankel", Kind::Path, "symbol CSV; the matrix is hankel(symbol, --size)"},
      {"--size", "size", Kind::Int, "Hankel matrix size N"},
  };
  v.insert(v.end(), extra.begin(), extra.end());
  return v;
}

}  // namespace detail

inline const std::vector<CommandSpec>& commands() {
  static const std::vector<CommandSpec> table{
      {"wn", "coefficients of the dyadic kernel W_n", {{"--n", "n", Kind::Int, "level n", true}}},
      {"besov",
       "Besov norm ||f||_{B^s_{p,q}}",
       {{"--input", "input", Kind::Path, "CoeffSeq CSV", true},
        {"--s", "s", Kind::Real, "smoothness s", false, 0.0},
        {"--p", "p", Kind::Exponent, "integrability p (number or inf)", false, 1.0},
        {"--q", "q", Kind::Exponent, "summability q (number or inf)", false, 1.0},
        {"--nmax", "nmax", Kind::Int, "last dyadic level (default: covers the degree)"}}},
      {"profile",
       "dyadic profile 2^{ns} ||f * W_n||_p",
       {{"--input", "input", Kind::Path, "CoeffSeq CSV", true},
        {"--s", "s", Kind::Real, "smoothness s", false, 0.0},
        {"--p", "p", Kind::Exponent, "integrability p (number or inf)", false, 1.0},
        {"--nmax", "nmax", Kind::Int, "last dyadic level (default: covers the degree)"},
        {"--paley", "paley", Kind::Flag, "also emit the lacunary-sum diagnostic"}}},
      {"inj-norm", "injective norm ||Q||_{l1 (x)v l1}",
       detail::matrix_inputs({{"--method", "method", Kind::Text, "auto, exact or search", false, "auto"}})},
      {"proj-norm", "certified bracket for the projective norm", detail::matrix_inputs({})},
      {"v2", "brackets of the leading corners P_n Q P_n",
       detail::matrix_inputs({{"--nmax", "nmax", Kind::Int, "last corner (default min(J,K)-1)"}})},
      {"mazur-a", "antidiagonal average A(Q)",
       detail::matrix_inputs({{"--range-nmax", "range_nmax", Kind::Int, "run the range diagnostic to this level"}})},
      {"mazur-b",
       "Cesaro-normalized Cauchy product B(x, y)",
       {{"--x", "x", Kind::Path, "CoeffSeq CSV", true},
        {"--y", "y", Kind::Path, "CoeffSeq CSV", true},
        {"--truncate", "truncate", Kind::Int, "keep the first N entries of B(x, y)"},
        {"--range-nmax", "range_nmax", Kind::Int, "run the range diagnostic to this level"}}},
      {"witness8",
       "c_0 sequence with growing dyadic L^1 profile",
       {{"--nmax", "nmax", Kind::Int, "last block", false, 16},
        {"--sign-mode", "sign_mode", Kind::Text, "random or rudin_shapiro", false, "random"},
        {"--fit-from", "fit_from", Kind::Int, "first level of the exponent fit", false, 8},
        {"--export", "export", Kind::Text, "write the sequence as CoeffSeq CSV"}}},
      {"witness88",
       "sequence with convergent M(alpha) and divergent weighted moment",
       {{"--t", "t", Kind::Real, "exponent t in (0, 1)", false, 0.5},
        {"--nmax", "nmax", Kind::Int, "last block", false, 14},
        {"--export", "export", Kind::Text, "write alpha as CoeffSeq CSV"}}},
      {"flatpoly",
       "flat polynomial with prescribed coefficient moduli",
       {{"--input", "input", Kind::Path, "target moduli (CoeffSeq CSV)", true},
        {"--method", "method", Kind::Text, "auto, rudin_shapiro, random_signs or random_plus_descent", false,
         "auto"}},
       4096},
      {"lkk",
       "assemble phi with |phi^(k)| = alpha_k and bounded Besov norm",
       {{"--input", "input", Kind::Path, "alpha (CoeffSeq CSV)", true},
        {"--tolerance", "tolerance", Kind::Real, "slack for the chain bound", false, 1e-6},
        {"--export", "export", Kind::Text, "write phi as CoeffSeq CSV"}},
       4096},
      {"moment",
       "weighted moment sum |gamma_k|^t (1+k)^beta",
       {{"--input", "input", Kind::Path, "gamma (CoeffSeq CSV)", true},
        {"--t", "t", Kind::Real, "exponent t > 0", true},
        {"--beta", "beta", Kind::Real, "weight exponent (default 3t/2 - 1)"},
        {"--kmax", "kmax", Kind::Int, "last index (default: degree)"},
        {"--window-from", "window_from", Kind::Int, "fit window start m (K = 2^m)"},
        {"--window-to", "window_to", Kind::Int, "fit window end m"}}},
      {"psi", "Psi(t)", {{"--t", "t", Kind::Real, "t > 0", true}}},
      {"verify",
       "run verification suites",
       {{"--suite", "suite", Kind::Text, "suite name or all", false, "all"},
        {"--threshold", "thresholds", Kind::Multi, "override a threshold, key=value"}}},
  };
  return table;
}

inline const CommandSpec& command(const std::string& name) {
  for (const auto& c : commands())
    if (name == c.name) return c;
  throw UsageError("unknown subcommand '" + name + "'");
}

// ---------------------------------------------------------------------------
// Value conversion

inline double parse_exponent(const std::string& s) {
  if (s == "inf" || s == "Inf" || s == "infinity") return kInf;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (...) {
    throw UsageError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw UsageError("not a number: '" + s + "'");
  return v;
}

inline json exponent_json(double v) { return io::exponent_json(v); }

inline double exponent_from(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInf;
    throw Error(ErrorKind::InvalidExponent, "exponent must be a number or \"inf\"");
  }
  return j.get<double>();
}

inline json convert(const OptionSpec& o, const std::string& raw) {
  switch (o.kind) {
    case Kind::Int: {
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(raw, &used);
      } catch (...) {
        used = 0;
      }
      if (used != raw.size() || raw.empty() || v < 0)
        throw UsageError(std::string(o.flag) + " expects a nonnegative integer, got '" + raw + "'");
      return static_cast<std::uint64_t>(v);
    }
    case Kind::Real: {
      const double v = parse_exponent(raw);
      if (!std::isfinite(v)) throw UsageError(std::string(o.flag) + " expects a finite number");
      return v;
    }
    case Kind::Exponent: return exponent_json(parse_exponent(raw));
    default: return raw;
  }
}

// ---------------------------------------------------------------------------
// Argument parsing

struct Parsed {
  std::optional<json> config;
  std::string replay;
  std::string out;
  bool out_given = false;
  bool help = false;
  std::string help_text;
};

inline std::string format_from(const std::string& format, const std::string& out) {
  if (!format.empty()) return format;
  return out.size() >= 4 && out.compare(out.size() - 4, 4, ".csv") == 0 ? "csv" : "json";
}

inline Parsed parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Numerical laboratory for dyadic Besov norms, tensor norms and Mazur's averaging operators",
               "scottish-lab"};
  app.fallthrough();
  app.require_subcommand(0, 1);

  std::string out, format, replay;
  std::uint64_t seed = 0;
  unsigned oversample = kDefaultOversample;
  std::optional<std::uint64_t> budget;
  app.add_option("--out", out, "output file (default stdout)");
  app.add_option("--format", format, "json or csv (default: from --out extension)")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", seed, "root seed");
  app.add_option("--oversample", oversample, "quadrature oversampling factor");
  app.add_option("--budget", budget, "search / descent evaluation budget");
  app.add_option("--replay", replay, "rerun the RunConfig embedded in an output file");

  struct Bound {
    const CommandSpec* spec;
    CLI::App* app;
    std::map<std::string, std::string> raw;
    std::map<std::string, bool> flags;
    std::map<std::string, std::vector<std::string>> multi;
  };
  std::vector<std::unique_ptr<Bound>> subs;
  for (const auto& c : commands()) {
    auto b = std::make_unique<Bound>();
    b->spec = &c;
    b->app = app.add_subcommand(c.name, c.help);
    for (const auto& o : c.options) {
      std::string help = o.help;
      if (!o.fallback.is_null()) help += " [" + (o.fallback.is_string() ? o.fallback.get<std::string>() : o.fallback.dump()) + "]";
      if (o.kind == Kind::Flag) {
        b->app->add_flag(o.flag, b->flags[o.key], help);
      } else if (o.kind == Kind::Multi) {
        b->app->add_option(o.flag, b->multi[o.key], help);
      } else {
        auto* opt = b->app->add_option(o.flag, b->raw[o.key], help);
        if (o.required) opt->required();
      }
    }
    subs.push_back(std::move(b));
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  Parsed parsed;
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    parsed.help = true;
    parsed.help_text = app.help();
    return parsed;
  } catch (const CLI::CallForAllHelp&) {
    parsed.help = true;
    parsed.help_text = app.help("", CLI::AppFormatMode::All);
    return parsed;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  for (const auto& b : subs)
    if (b->app->get_help_ptr() && b->app->get_help_ptr()->count() > 0) {
      parsed.help = true;
      parsed.help_text = b->app->help();
      return parsed;
    }

  parsed.out = out;
  parsed.out_given = app.count("--out") > 0;
  const auto chosen = app.get_subcommands();
  if (!replay.empty()) {
    if (!chosen.empty()) throw UsageError("--replay cannot be combined with a subcommand");
    parsed.replay = replay;
    return parsed;
  }
  if (chosen.empty()) throw UsageError("a subcommand is required\n" + app.help());

  const Bound* b = nullptr;
  for (const auto& s : subs)
    if (s->app == chosen.front()) b = s.get();

  json cfg;
  cfg["subcommand"] = b->spec->name;
  cfg["inputs"] = json::object();
  cfg["output"] = out;
  cfg["format"] = format_from(format, out);
  cfg["seed"] = seed;
  cfg["oversample"] = oversample;
  cfg["budget"] = budget.value_or(b->spec->default_budget);
  cfg["nmax"] = nullptr;
  cfg["thresholds"] = json::object();
  json params = json::object();
  for (const auto& o : b->spec->options) {
    const bool given = b->app->count(o.flag) > 0;
    if (o.kind == Kind::Flag) {
      params[o.key] = b->flags.at(o.key);
      continue;
    }
    if (o.kind == Kind::Multi) {
      for (const auto& kv : b->multi.at(o.key)) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("--threshold expects key=value, got '" + kv + "'");
        const double v = parse_exponent(kv.substr(eq + 1));
        cfg["thresholds"][kv.substr(0, eq)] = v;
      }
      continue;
    }
    json value = given ? convert(o, b->raw.at(o.key)) : o.fallback;
    if (o.kind == Kind::Path) {
      if (given) cfg["inputs"][o.key] = value;
    } else if (std::string(o.key) == "nmax") {
      cfg["nmax"] = value;
    } else {
      params[o.key] = value;
    }
  }
  cfg["params"] = params;
  parsed.config = cfg;
  return parsed;
}

// ---------------------------------------------------------------------------
// Execution

struct Result {
  json result;
  /// CSV body (tables, or a CoeffSeq file).
  std::string csv;
  int exit_code = kExitOk;
};

namespace detail {

inline std::string table_csv(const std::vector<std::string>& header, const std::vector<std::vector<json>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += ",";
      if (r[i].is_number_float())
        out += io::format_number(r[i].get<double>());
      else if (r[i].is_string())
        out += r[i].get<std::string>();
      else
        out += r[i].dump();
    }
    out += "\n";
  }
  return out;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Parse, "cannot write '" + path + "'");
  f << content;
  if (!f) throw Error(ErrorKind::Parse, "write failed for '" + path + "'");
}

class Context {
 public:
  explicit Context(const json& cfg) : cfg_(cfg), params_(cfg.at("params")) {}

  const json& params() const { return params_; }
  Seed seed() const { return Seed{cfg_.at("seed").get<std::uint64_t>()}; }
  unsigned oversample() const { return cfg_.at("oversample").get<unsigned>(); }
  std::uint64_t budget() const { return cfg_.at("budget").get<std::uint64_t>(); }
  std::optional<unsigned> nmax() const {
    const json& n = cfg_.at("nmax");
    return n.is_null() ? std::nullopt : std::optional<unsigned>(n.get<unsigned>());
  }
  bool has(const char* key) const { return params_.contains(key) && !params_.at(key).is_null(); }
  double real(const char* key) const { return params_.at(key).get<double>(); }
  std::uint64_t integer(const char* key) const { return params_.at(key).get<std::uint64_t>(); }
  std::string text(const char* key) const { return params_.at(key).get<std::string>(); }

  std::optional<std::string> input(const char* key) const {
    const json& in = cfg_.at("inputs");
    return in.contains(key) ? std::optional<std::string>(in.at(key).get<std::string>()) : std::nullopt;
  }
  std::string required_input(const char* key) const {
    auto p = input(key);
    if (!p) throw Error(ErrorKind::Parse, std::string("missing input --") + key);
    return *p;
  }
  CoeffSeq coeffs(const char* key) const { return io::read_coeffs_csv(required_input(key)); }

  DenseMatrix matrix() const {
    if (auto path = input("input")) return io::read_matrix_csv(*path);
    if (auto path = input("hankel")) {
      const CoeffSeq symbol = io::read_coeffs_csv(*path);
      const std::size_t n = has("size") ? integer("size") : (symbol.size() + 2) / 2;
      return hankel_matrix(symbol, n);
    }
    throw Error(ErrorKind::Parse, "a matrix needs --input or --hankel");
  }

 private:
  const json& cfg_;
  const json& params_;
};

inline std::vector<std::vector<json>> profile_rows(const DyadicProfile& p) {
  std::vector<std::vector<json>> rows;
  for (std::size_t n = 0; n < p.values.size(); ++n) rows.push_back({n, p.values[n]});
  return rows;
}

inline Result cmd_wn(const Context& c) {
  const auto n = static_cast<unsigned>(c.integer("n"));
  const CoeffSeq w = wn_coeffs(n);
  return {{{"n", n}, {"coeffs", io::to_json(w)}, {"l1_norm", io::to_json(lp_norm_circle(w, 1.0, c.oversample()))}},
          io::format_coeffs_csv(w)};
}

inline Result cmd_besov(const Context& c) {
  const CoeffSeq f = c.coeffs("input");
  const unsigned nmax = c.nmax().value_or(covering_level(f) + 1);
  const BesovNorm b = besov_norm(f, c.real("s"), exponent_from(c.params().at("p")),
                                 exponent_from(c.params().at("q")), nmax, c.oversample());
  return {io::to_json(b), table_csv({"n", "value"}, profile_rows(b.profile))};
}

inline Result cmd_profile(const Context& c) {
  const CoeffSeq f = c.coeffs("input");
  const unsigned nmax = c.nmax().value_or(covering_level(f) + 1);
  const DyadicProfile p = dyadic_profile(f, c.real("s"), exponent_from(c.params().at("p")), nmax, c.oversample());
  json j = io::to_json(p);
  auto rows = profile_rows(p);
  std::vector<std::string> header{"n", "value"};
  if (c.params().at("paley").get<bool>()) {
    const auto d = paley_diagnostic(f, nmax);
    j["paley"] = d;
    header.push_back("paley");
    for (std::size_t n = 0; n < rows.size(); ++n) rows[n].push_back(d[n]);
  }
  return {j, table_csv(header, rows)};
}

inline Result cmd_inj_norm(const Context& c) {
  const DenseMatrix q = c.matrix();
  const std::string method = c.text("method");
  InjectiveResult r;
  if (method == "auto")
    r = injective_norm(q, c.budget(), c.seed());
  else if (method == "exact")
    r = injective_norm_exact(q);
  else if (method == "search")
    r = injective_norm_search(q, c.budget(), c.seed());
  else
    throw Error(ErrorKind::InvalidRegime, "method must be auto, exact or search");
  json j = io::to_json(r);
  j["rows"] = q.rows();
  j["cols"] = q.cols();
  j["upper_bound"] = injective_upper_bound(q);
  return {j, table_csv({"quantity", "value"}, {{"value", r.value}, {"exact", r.exact ? 1 : 0}})};
}

inline BracketOptions bracket_options(const Context& c) {
  BracketOptions o;
  o.budget = c.budget();
  o.seed = c.seed();
  return o;
}

inline Result cmd_proj_norm(const Context& c) {
  const NormBracket b = projective_bracket(c.matrix(), bracket_options(c));
  std::vector<std::vector<json>> rows;
  for (const auto& s : b.strategies) rows.push_back({s.name, s.side, s.value});
  return {io::to_json(b), table_csv({"strategy", "side", "value"}, rows)};
}

inline Result cmd_v2(const Context& c) {
  const DenseMatrix q = c.matrix();
  const std::size_t nmax = c.nmax().value_or(static_cast<unsigned>(std::min(q.rows(), q.cols()) - 1));
  const auto brackets = v2_profile(q, nmax, bracket_options(c));
  json arr = json::array();
  std::vector<std::vector<json>> rows;
  for (std::size_t n = 0; n < brackets.size(); ++n) {
    json b = io::to_json(brackets[n]);
    b["n"] = n;
    arr.push_back(b);
    rows.push_back({n, brackets[n].lower, brackets[n].upper});
  }
  return {{{"nmax", nmax}, {"profile", arr}}, table_csv({"n", "lower", "upper"}, rows)};
}

inline void attach_range(const Context& c, const CoeffSeq& z, json& j) {
  if (!c.has("range_nmax")) return;
  j["range"] = io::to_json(range_diagnostic(z, static_cast<unsigned>(c.integer("range_nmax")), {}, c.oversample()));
}

inline Result cmd_mazur_a(const Context& c) {
  const DenseMatrix q = c.matrix();
  const CoeffSeq z = average_A(q);
  json j{{"rows", q.rows()}, {"cols", q.cols()}, {"z", io::to_json(z)}};
  attach_range(c, z, j);
  return {j, io::format_coeffs_csv(z)};
}

inline Result cmd_mazur_b(const Context& c) {
  CoeffSeq z = bilinear_B(c.coeffs("x"), c.coeffs("y"));
  if (c.has("truncate")) z = z.truncated(c.integer("truncate"));
  json j{{"z", io::to_json(z)}};
  attach_range(c, z, j);
  return {j, io::format_coeffs_csv(z)};
}

inline Result cmd_witness8(const Context& c) {
  const unsigned nmax = c.nmax().value_or(16);
  const auto [seq, rep] = problem8_witness(nmax, c.seed(), parse_sign_mode(c.text("sign_mode")),
                                           static_cast<unsigned>(c.integer("fit_from")), c.oversample());
  json j = io::to_json(rep);
  j["range"] = io::to_json(range_diagnostic(seq, nmax, {}, c.oversample()));
  if (c.has("export")) write_file(c.text("export"), io::format_coeffs_csv(seq));
  std::vector<std::vector<json>> rows;
  for (const auto& b : rep.blocks) rows.push_back({b.n, b.l1, b.linf, b.l2, b.profile_l1});
  return {j, table_csv({"n", "l1", "linf", "l2", "profile_l1"}, rows)};
}

inline Result cmd_witness88(const Context& c) {
  const double t = c.real("t");
  const unsigned nmax = c.nmax().value_or(14);
  const Problem88Params p = problem88_params(t, nmax);
  const auto terms = hard_block_terms(p.block_energies());
  std::vector<double> partial;
  double running = 0.0;
  for (double x : terms) partial.push_back(running += x);
  json j{{"params", io::to_json(p)}, {"psi", psi(t)}, {"beta", 1.5 * t - 1.0},
         {"hard_block_bound", running}, {"hard_block_partial_sums", partial}};
  if (nmax <= kWitness88MaxMaterialized) {
    const CoeffSeq alpha = problem88_witness(t, nmax).first;
    j["moment"] = io::to_json(weighted_moment(alpha, t, 1.5 * t - 1.0, alpha.degree()));
    if (c.has("export")) write_file(c.text("export"), io::format_coeffs_csv(alpha));
  } else if (c.has("export")) {
    throw Error(ErrorKind::InvalidRegime, "export needs nmax <= 24");
  }
  std::vector<std::vector<json>> rows;
  for (unsigned n = 0; n <= nmax; ++n) rows.push_back({n, p.deltas[n], partial[n]});
  return {j, table_csv({"n", "delta", "hard_block_partial_sum"}, rows)};
}

inline Result cmd_flatpoly(const Context& c) {
  const auto [f, rep] = flat_polynomial(c.coeffs("input"), c.seed(), c.budget(),
                                        parse_flat_method(c.text("method")), c.oversample());
  return {io::to_json(rep), io::format_coeffs_csv(f)};
}

inline Result cmd_lkk(const Context& c) {
  const auto [phi, rep] = lkk_assemble(c.coeffs("input"), c.seed(), c.budget(), c.oversample(), c.real("tolerance"));
  if (c.has("export")) write_file(c.text("export"), io::format_coeffs_csv(phi));
  std::vector<std::vector<json>> rows;
  for (const auto& b : rep.blocks) rows.push_back({b.n, b.ratio});
  return {io::to_json(rep), table_csv({"n", "ratio"}, rows)};
}

inline Result cmd_moment(const Context& c) {
  const CoeffSeq g = c.coeffs("input");
  const double t = c.real("t");
  const double beta = c.has("beta") ? c.real("beta") : 1.5 * t - 1.0;
  const std::uint64_t kmax = c.has("kmax") ? c.integer("kmax") : g.degree();
  std::optional<std::pair<unsigned, unsigned>> window;
  if (c.has("window_from") || c.has("window_to")) {
    if (!c.has("window_from") || !c.has("window_to"))
      throw Error(ErrorKind::InvalidRegime, "--window-from and --window-to go together");
    window = {static_cast<unsigned>(c.integer("window_from")), static_cast<unsigned>(c.integer("window_to"))};
  }
  const WeightedMoment wm = weighted_moment(g, t, beta, kmax, window);
  json j = io::to_json(wm);
  j["hard_block_bound"] = hard_block_bound(g, hard_block_cover(g));
  std::vector<std::vector<json>> rows;
  for (std::size_t i = 0; i < wm.checkpoints.size(); ++i) rows.push_back({wm.checkpoints[i], wm.partial_sums[i]});
  return {j, table_csv({"k", "partial_sum"}, rows)};
}

inline Result cmd_psi(const Context& c) {
  const double t = c.real("t");
  const double v = psi(t);
  return {{{"t", t}, {"psi", v}}, table_csv({"t", "psi"}, {{t, v}})};
}

inline Result cmd_verify(const Context& c, const json& cfg) {
  verify::Thresholds overrides;
  for (const auto& [k, v] : cfg.at("thresholds").items()) overrides[k] = v.get<double>();
  verify::merge_thresholds(overrides);
  const std::string which = c.text("suite");
  std::vector<std::string> names;
  if (which == "all")
    names = verify::suite_names();
  else
    names = {which};

  json suites = json::array();
  std::vector<std::vector<json>> rows;
  bool pass = true;
  for (const auto& name : names) {
    const verify::SuiteResult r = verify::run_suite(name, c.seed(), overrides);
    json checks = json::array();
    for (const auto& ch : r.checks) {
      const char* rel = ch.relation == verify::Relation::AtMost ? "<=" : ">=";
      checks.push_back({{"name", ch.name},
                        {"measured", ch.measured},
                        {"relation", rel},
                        {"threshold", ch.threshold},
                        {"pass", ch.pass},
                        {"detail", ch.detail}});
      rows.push_back({r.suite, ch.name, ch.measured, rel, ch.threshold, ch.pass ? "pass" : "fail"});
    }
    suites.push_back({{"suite", r.suite}, {"pass", r.pass}, {"seconds", r.seconds}, {"checks", checks}});
    pass = pass && r.pass;
  }
  return {{{"pass", pass}, {"suites", suites}},
          table_csv({"suite", "check", "measured", "relation", "threshold", "status"}, rows),
          pass ? kExitOk : kExitVerifyFailed};
}

}  // namespace detail

inline Result execute(const json& cfg) {
  const detail::Context c(cfg);
  const std::string name = cfg.at("subcommand").get<std::string>();
  if (name == "wn") return detail::cmd_wn(c);
  if (name == "besov") return detail::cmd_besov(c);
  if (name == "profile") return detail::cmd_profile(c);
  if (name == "inj-norm") return detail::cmd_inj_norm(c);
  if (name == "proj-norm") return detail::cmd_proj_norm(c);
  if (name == "v2") return detail::cmd_v2(c);
  if (name == "mazur-a") return detail::cmd_mazur_a(c);
  if (name == "mazur-b") return detail::cmd_mazur_b(c);
  if (name == "witness8") return detail::cmd_witness8(c);
  if (name == "witness88") return detail::cmd_witness88(c);
  if (name == "flatpoly") return detail::cmd_flatpoly(c);
  if (name == "lkk") return detail::cmd_lkk(c);
  if (name == "moment") return detail::cmd_moment(c);
  if (name == "psi") return detail::cmd_psi(c);
  if (name == "verify") return detail::cmd_verify(c, cfg);
  throw UsageError("unknown subcommand '" + name + "'");
}

/// Output bytes: JSON {"config", "result"}, or CSV led by a run_config line.
inline std::string render(const json& cfg, const Result& r) {
  if (cfg.at("format").get<std::string>() == "csv") return kRunConfigTag + cfg.dump() + "\n" + r.csv;
  return json{{"config", cfg}, {"result", r.result}}.dump(2) + "\n";
}

/// RunConfig embedded in an output file of either format.
inline json load_run_config(const std::string& path) {
  const std::string text = io::detail::slurp(path);
  const std::string tag = kRunConfigTag;
  if (text.compare(0, tag.size(), tag) == 0) {
    const auto end = text.find('\n');
    try {
      return json::parse(text.substr(tag.size(), end - tag.size()));
    } catch (const json::exception& e) {
      throw Error(ErrorKind::Parse, std::string("bad run_config line: ") + e.what());
    }
  }
  try {
    const json doc = json::parse(text);
    if (!doc.contains("config")) throw Error(ErrorKind::Parse, "no embedded config in '" + path + "'");
    return doc.at("config");
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, "'" + path + "' is neither a JSON report nor a CSV with a run_config line");
  }
}

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  try {
    Parsed p = parse_args(args);
    if (p.help) {
      out << p.help_text;
      return kExitOk;
    }
    json cfg = p.config ? *p.config : load_run_config(p.replay);
    // A replay keeps the embedded config verbatim so the bytes match; --out
    // only redirects where they go.
    const std::string target = p.out_given ? p.out : cfg.value("output", std::string{});
    const Result r = execute(cfg);
    const std::string bytes = render(cfg, r);
    if (target.empty())
      out << bytes;
    else
      detail::write_file(target, bytes);
    return r.exit_code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return kExitError;
  } catch (const json::exception& e) {
    err << "error (config): " << e.what() << "\n";
    return kExitError;
  }
}

inline int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args);
}

}  // namespace scottish_lab::cli
