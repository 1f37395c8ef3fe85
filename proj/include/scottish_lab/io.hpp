#pragma once

// File formats. CoeffSeq: CSV with header `k,re` or `k,re,im`, strictly
// increasing indices, missing indices read as 0. DenseMatrix: row-major CSV
// without header. Lines starting with '#' are comments (used to embed the run
// configuration). NaN and Inf are rejected everywhere.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "scottish_lab/core.hpp"
#include "scottish_lab/dyadic.hpp"
#include "scottish_lab/extremal.hpp"
#include "scottish_lab/mazur.hpp"
#include "scottish_lab/tensornorm.hpp"

namespace scottish_lab::io {

using nlohmann::json;

inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline double parse_double(std::string_view s, std::size_t line_no) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": bad number '" + std::string(s) + "'");
  if (!std::isfinite(v))
    throw Error(ErrorKind::NonFinite, "line " + std::to_string(line_no) + ": NaN/Inf not allowed");
  return v;
}

inline std::uint64_t parse_index(std::string_view s, std::size_t line_no) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": bad index '" + std::string(s) + "'");
  return v;
}

inline bool is_comment_or_blank(std::string_view line) {
  line = trim(line);
  return line.empty() || line.front() == '#';
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// CoeffSeq CSV

inline CoeffSeq parse_coeffs_csv(const std::string& text) {
  const auto lines = detail::lines_of(text);
  std::size_t i = 0;
  while (i < lines.size() && detail::is_comment_or_blank(lines[i])) ++i;
  if (i == lines.size()) throw Error(ErrorKind::Parse, "CoeffSeq CSV: missing header");
  const std::string_view header = detail::trim(lines[i]);
  bool complex = false;
  if (header == "k,re,im")
    complex = true;
  else if (header != "k,re")
    throw Error(ErrorKind::Parse, "CoeffSeq CSV: header must be 'k,re' or 'k,re,im'");

  std::vector<std::pair<std::uint64_t, Complex>> rows;
  for (++i; i < lines.size(); ++i) {
    if (detail::is_comment_or_blank(lines[i])) continue;
    const auto cells = detail::split(lines[i]);
    if (cells.size() != (complex ? 3u : 2u))
      throw Error(ErrorKind::Parse, "line " + std::to_string(i + 1) + ": wrong number of columns");
    const std::uint64_t k = detail::parse_index(cells[0], i + 1);
    if (!rows.empty() && k <= rows.back().first)
      throw Error(ErrorKind::Parse, "line " + std::to_string(i + 1) + ": indices must be strictly increasing");
    const double re = detail::parse_double(cells[1], i + 1);
    const double im = complex ? detail::parse_double(cells[2], i + 1) : 0.0;
    rows.emplace_back(k, Complex(re, im));
  }
  if (rows.empty()) throw Error(ErrorKind::EmptyDimension, "CoeffSeq CSV: no rows");
  std::vector<Complex> c(rows.back().first + 1);
  for (const auto& [k, v] : rows) c[k] = v;
  return CoeffSeq(std::move(c));
}

inline CoeffSeq read_coeffs_csv(const std::string& path) { return parse_coeffs_csv(detail::slurp(path)); }

/// Writes the nonzero entries (by bit pattern, so -0.0 survives) plus the last
/// index, which carries the length.
inline std::string format_coeffs_csv(const CoeffSeq& s, const std::string& comment = {}) {
  std::string out;
  if (!comment.empty()) out += "# " + comment + "\n";
  const bool complex = !s.is_real();
  out += complex ? "k,re,im\n" : "k,re\n";
  for (std::size_t k = 0; k < s.size(); ++k) {
    const Complex v = s[k];
    const bool nonzero = v.real() != 0.0 || v.imag() != 0.0 || std::signbit(v.real()) || std::signbit(v.imag());
    if (!nonzero && k + 1 != s.size()) continue;
    out += std::to_string(k) + "," + format_number(v.real());
    if (complex) out += "," + format_number(v.imag());
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// DenseMatrix CSV

inline DenseMatrix parse_matrix_csv(const std::string& text) {
  std::vector<double> data;
  std::size_t rows = 0, cols = 0;
  const auto lines = detail::lines_of(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (detail::is_comment_or_blank(lines[i])) continue;
    const auto cells = detail::split(lines[i]);
    if (rows == 0) cols = cells.size();
    if (cells.size() != cols)
      throw Error(ErrorKind::Parse, "line " + std::to_string(i + 1) + ": ragged matrix row");
    for (const auto& c : cells) data.push_back(detail::parse_double(c, i + 1));
    ++rows;
  }
  if (rows == 0) throw Error(ErrorKind::EmptyDimension, "matrix CSV: no rows");
  return DenseMatrix(rows, cols, std::move(data));
}

inline DenseMatrix read_matrix_csv(const std::string& path) { return parse_matrix_csv(detail::slurp(path)); }

inline std::string format_matrix_csv(const DenseMatrix& q, const std::string& comment = {}) {
  std::string out;
  if (!comment.empty()) out += "# " + comment + "\n";
  for (std::size_t j = 0; j < q.rows(); ++j) {
    for (std::size_t k = 0; k < q.cols(); ++k) {
      if (k) out += ",";
      out += format_number(q(j, k));
    }
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON

/// p, q exponents: `inf` is spelled as the string "inf".
inline json exponent_json(double v) { return std::isinf(v) ? json("inf") : json(v); }

inline json to_json(const CoeffSeq& s) {
  json k = json::array(), re = json::array(), im = json::array();
  const bool complex = !s.is_real();
  for (std::size_t i = 0; i < s.size(); ++i) {
    k.push_back(i);
    re.push_back(s[i].real());
    if (complex) im.push_back(s[i].imag());
  }
  json j{{"k", k}, {"re", re}};
  if (complex) j["im"] = im;
  return j;
}

inline json to_json(const LpNorm& n) {
  return {{"value", n.value}, {"grid", n.grid}, {"error_bound", n.error_bound}};
}

inline json to_json(const DyadicProfile& p) {
  return {{"s", p.s},           {"p", exponent_json(p.p)},
          {"nmax", p.nmax},     {"grid", p.grid},
          {"oversample", p.oversample},
          {"values", p.values}, {"error_bounds", p.error_bounds},
          {"degree", p.degree}, {"truncated", p.truncated}};
}

inline json to_json(const BesovNorm& b) {
  return {{"s", b.profile.s},
          {"p", exponent_json(b.profile.p)},
          {"q", exponent_json(b.q)},
          {"nmax", b.profile.nmax},
          {"grid", b.profile.grid},
          {"values", b.profile.values},
          {"norm", b.norm},
          {"error_bound", b.error_bound},
          {"truncated", b.truncated}};
}

inline json to_json(const SignVector& s) { return s.entries; }

inline json to_json(const InjectiveResult& r) {
  return {{"value", r.value}, {"x", to_json(r.x)}, {"y", to_json(r.y)}, {"exact", r.exact},
          {"evaluations", r.evaluations}};
}

inline json to_json(const NormBracket& b) {
  json upper = json::array();
  for (const auto& t : b.upper_cert) upper.push_back({{"a", t.a}, {"b", t.b}});
  json strategies = json::array();
  for (const auto& s : b.strategies) strategies.push_back({{"name", s.name}, {"side", s.side}, {"value", s.value}});
  json lower{{"T_ref", b.lower_cert.test_ref},
             {"pairing", b.lower_cert.pairing},
             {"test_norm", b.lower_cert.test_norm},
             {"test_norm_exact", b.lower_cert.test_norm_exact}};
  if (!b.lower_cert.x.entries.empty()) {
    lower["x"] = to_json(b.lower_cert.x);
    lower["y"] = to_json(b.lower_cert.y);
  }
  return {{"lower", b.lower},
          {"upper", b.upper},
          {"exact", b.exact},
          {"lower_strategy", b.lower_strategy},
          {"upper_strategy", b.upper_strategy},
          {"lower_cert", lower},
          {"upper_cert", upper},
          {"strategies", strategies}};
}

inline json to_json(const LineFit& f) {
  return {{"slope", f.slope}, {"intercept", f.intercept}, {"residual", f.residual}};
}

inline json to_json(const WitnessReport& r) {
  json blocks = json::array();
  for (const auto& b : r.blocks)
    blocks.push_back({{"n", b.n},
                      {"l1", b.l1},
                      {"linf", b.linf},
                      {"l2", b.l2},
                      {"max_coeff", b.max_coeff},
                      {"profile_l1", b.profile_l1}});
  return {{"params",
           {{"nmax", r.nmax},
            {"seed", r.seed.value},
            {"sign_mode", to_string(r.sign_mode)},
            {"decay_law", r.decay_law},
            {"fit_from", r.fit_from}}},
          {"blocks", blocks},
          {"fit", to_json(r.fit)},
          {"flags",
           {{"bounded_by_one", r.bounded_by_one},
            {"block_max_decreasing", r.block_max_decreasing},
            {"rs_lower_bound", r.rs_lower_bound}}}};
}

inline json to_json(const RangeReport& r) {
  return {{"limit", {{"re", r.limit.real()}, {"im", r.limit.imag()}}},
          {"profile", to_json(r.profile)},
          {"sup", r.sup},
          {"trend", to_json(r.trend)},
          {"classification", to_string(r.classification)},
          {"thresholds",
           {{"growing_slope", r.thresholds.growing_slope},
            {"growing_residual", r.thresholds.growing_residual},
            {"decaying_slope", r.thresholds.decaying_slope},
            {"trailing", r.thresholds.trailing}}}};
}

inline json to_json(const FlatPolyReport& r) {
  return {{"beta", r.beta},
          {"coeffs", to_json(r.f)},
          {"ratio", r.ratio},
          {"sup_norm", r.sup_norm},
          {"l2_target", r.l2_target},
          {"method", to_string(r.method)},
          {"seed", r.seed.value},
          {"descent_iterations", r.descent_iterations},
          {"descent_evaluations", r.descent_evaluations},
          {"grid", r.grid}};
}

inline json to_json(const LkkReport& r) {
  json blocks = json::array();
  for (const auto& b : r.blocks)
    blocks.push_back({{"n", b.n},
                      {"lo", b.lo},
                      {"hi", b.hi},
                      {"method", to_string(b.method)},
                      {"ratio", b.ratio},
                      {"sup_norm", b.sup_norm},
                      {"l2_target", b.l2_target}});
  return {{"blocks", blocks},
          {"k_achieved", r.k_achieved},
          {"hard_block_bound", r.hard_block_bound},
          {"besov", to_json(r.besov)},
          {"chain_bound", r.chain_bound},
          {"tolerance", r.tolerance},
          {"flags", {{"coefficient_fidelity", r.coefficient_fidelity}, {"chain_holds", r.chain_holds}}}};
}

inline json to_json(const Problem88Params& p) {
  return {{"t", p.t}, {"g", p.g}, {"nmax", p.nmax}, {"delta_law", "2^{-3n/2} (n+1)^{-g}"}, {"deltas", p.deltas}};
}

inline json to_json(const WeightedMoment& w) {
  json j{{"t", w.t},
         {"beta", w.beta},
         {"checkpoints", w.checkpoints},
         {"partial_sums", w.partial_sums},
         {"total", w.total},
         {"window", {w.window_from, w.window_to}},
         {"loglog_slope", w.loglog_slope},
         {"growth_residual", w.growth_residual},
         {"diagnosis", to_string(w.diagnosis)}};
  j["growth_exponent"] = w.growth_exponent ? json(*w.growth_exponent) : json(nullptr);
  return j;
}

}  // namespace scottish_lab::io
