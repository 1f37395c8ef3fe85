#pragma once

// Golden cases shared by the CLI tests and the acceptance runner. Argument
// strings starting with "@/" resolve against the golden directory.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "scottish_lab/cli.hpp"

namespace cli_cases {

using nlohmann::json;

struct Case {
  std::string name;
  std::vector<std::string> args;
};

inline void PrintTo(const Case& c, std::ostream* os) { *os << c.name; }

inline std::string golden_dir() { return SCOTTISH_LAB_GOLDEN_DIR; }

inline std::vector<std::string> resolve(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (const auto& a : args) out.push_back(a.rfind("@/", 0) == 0 ? golden_dir() + "/" + a.substr(2) : a);
  return out;
}

/// One case per subcommand.
inline const std::vector<Case>& cases() {
  static const std::vector<Case> c = {
      {"wn", {"wn", "--n", "2"}},
      {"besov", {"besov", "--input", "@/inputs/f.csv", "--s", "1", "--p", "inf", "--q", "1", "--nmax", "12"}},
      {"profile", {"profile", "--input", "@/inputs/f.csv", "--s", "1", "--p", "inf", "--nmax", "2", "--paley"}},
      {"inj-norm", {"inj-norm", "--input", "@/inputs/m.csv"}},
      {"proj-norm", {"proj-norm", "--input", "@/inputs/m.csv"}},
      {"v2", {"v2", "--hankel", "@/inputs/f.csv", "--size", "6"}},
      {"mazur-a", {"mazur-a", "--input", "@/inputs/m.csv"}},
      {"mazur-b", {"mazur-b", "--x", "@/inputs/x.csv", "--y", "@/inputs/y.csv", "--truncate", "256", "--range-nmax", "6"}},
      {"witness8", {"witness8", "--nmax", "8", "--seed", "3"}},
      {"witness88", {"witness88", "--nmax", "6"}},
      {"flatpoly", {"flatpoly", "--input", "@/inputs/beta.csv", "--seed", "2"}},
      {"lkk", {"lkk", "--input", "@/inputs/beta.csv"}},
      {"moment", {"moment", "--input", "@/inputs/beta.csv", "--t", "1", "--beta", "0.5"}},
      {"psi", {"psi", "--t", "1"}},
      {"verify", {"verify", "--suite", "besov", "--seed", "7"}},
  };
  return c;
}

/// Type skeleton: object keys, value kinds, and the set of element skeletons
/// of each array. Numbers of any representation count as one kind.
inline json schema(const json& j) {
  if (j.is_object()) {
    json out = json::object();
    for (const auto& [k, v] : j.items()) out[k] = schema(v);
    return out;
  }
  if (j.is_array()) {
    std::set<std::string> seen;
    json elems = json::array();
    for (const auto& e : j) {
      json s = schema(e);
      if (seen.insert(s.dump()).second) elems.push_back(std::move(s));
    }
    std::sort(elems.begin(), elems.end(), [](const json& a, const json& b) { return a.dump() < b.dump(); });
    return json{{"array", elems}};
  }
  if (j.is_number()) return "number";
  if (j.is_boolean()) return "boolean";
  if (j.is_string()) return "string";
  return "null";
}

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

inline Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = scottish_lab::cli::run(resolve(args), out, err);
  return {code, out.str(), err.str()};
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::filesystem::path golden_path(const Case& c) { return std::filesystem::path(golden_dir()) / (c.name + ".json"); }

/// Empty when the case output matches the stored golden skeleton.
inline std::string schema_mismatch(const Case& c) {
  const Outcome o = run(c.args);
  if (o.code != 0) return "exit " + std::to_string(o.code) + ": " + o.err;
  const json got = json::parse(o.out);
  if (std::getenv("SCOTTISH_LAB_UPDATE_GOLDEN")) {
    std::string text = got.dump(2);
    const std::string prefix = golden_dir() + "/";
    for (auto at = text.find(prefix); at != std::string::npos; at = text.find(prefix, at)) text.erase(at, prefix.size());
    std::ofstream(golden_path(c)) << text << "\n";
  }
  if (!std::filesystem::exists(golden_path(c))) return "missing golden " + golden_path(c).string();
  const json want = json::parse(slurp(golden_path(c)));
  if (schema(got) != schema(want)) return "schema differs from " + golden_path(c).string();
  if (got.at("config").at("subcommand") != c.args.front()) return "wrong subcommand in config";
  return {};
}

/// Drops the wall-clock fields of verify reports.
inline json without_timing(json doc) {
  if (!doc.contains("result") || !doc["result"].contains("suites")) return doc;
  for (auto& s : doc["result"]["suites"]) {
    s.erase("seconds");
    for (auto& ch : s["checks"])
      if (ch["name"] == "runtime seconds") ch.erase("measured");
  }
  return doc;
}

inline std::string without_timing_rows(const std::string& csv) {
  std::istringstream in(csv);
  std::string out;
  for (std::string line; std::getline(in, line);)
    if (line.find(",runtime seconds,") == std::string::npos) out += line + "\n";
  return out;
}

/// Runs the case to a file, replays the embedded config to a second file,
/// and compares bytes. Empty on success.
inline std::string replay_mismatch(const Case& c, const std::string& format, const std::filesystem::path& dir) {
  const auto first = dir / (c.name + "-first." + format);
  const auto second = dir / (c.name + "-second." + format);
  std::vector<std::string> args = c.args;
  args.insert(args.end(), {"--format", format, "--out", first.string()});
  const Outcome a = run(args);
  if (a.code != 0) return "first run exit " + std::to_string(a.code) + ": " + a.err;
  const Outcome b = run({"--replay", first.string(), "--out", second.string()});
  if (b.code != 0) return "replay exit " + std::to_string(b.code) + ": " + b.err;
  const std::string x = slurp(first), y = slurp(second);
  if (x == y) return {};
  if (c.name == "verify" && format == "json" && without_timing(json::parse(x)) == without_timing(json::parse(y))) return {};
  if (c.name == "verify" && format == "csv" && without_timing_rows(x) == without_timing_rows(y)) return {};
  return "replay bytes differ for " + c.name + " (" + format + ")";
}

}  // namespace cli_cases
