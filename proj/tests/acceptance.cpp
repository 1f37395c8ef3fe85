// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Criteria 1-9 are the verify suites at their default
// thresholds; criterion 10 exercises the CLI end to end.

#include <unistd.h>

#include <cstdio>
#include <iostream>

#include "cli_cases.hpp"
#include "scottish_lab/verify.hpp"

using namespace scottish_lab;

namespace {

constexpr std::uint64_t kSeed = 7;

bool report(int id, const std::string& label, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << " (" << label << "): " << detail << std::endl;
  return pass;
}

std::string summarize(const verify::SuiteResult& r) {
  std::string out;
  for (const auto& c : r.checks) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s%s = %.6g %s %.6g%s", out.empty() ? "" : "; ", c.name.c_str(), c.measured,
                  c.relation == verify::Relation::AtMost ? "<=" : ">=", c.threshold, c.pass ? "" : " [violated]");
    out += buf;
  }
  return out;
}

bool cli_criterion(std::string& detail) {
  const auto dir = std::filesystem::temp_directory_path() / ("scottish-lab-accept-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  std::vector<std::string> problems;
  std::size_t checked = 0;
  for (const auto& c : cli_cases::cases()) {
    if (auto m = cli_cases::schema_mismatch(c); !m.empty()) problems.push_back(c.name + " schema: " + m);
    for (const char* format : {"json", "csv"})
      if (auto m = cli_cases::replay_mismatch(c, format, dir); !m.empty()) problems.push_back(m);
    ++checked;
  }
  const int violated = cli_cases::run({"verify", "--suite", "kernel", "--threshold", "kernel.l1_max=1.0"}).code;
  const int satisfied = cli_cases::run({"verify", "--suite", "kernel"}).code;
  if (violated != cli::kExitVerifyFailed) problems.push_back("violated threshold exit " + std::to_string(violated));
  if (satisfied != cli::kExitOk) problems.push_back("default threshold exit " + std::to_string(satisfied));
  std::filesystem::remove_all(dir);

  detail = std::to_string(checked) + " subcommands schema-checked and replayed (json, csv); verify exit " +
           std::to_string(satisfied) + " at defaults, " + std::to_string(violated) + " with kernel.l1_max=1.0";
  for (const auto& p : problems) detail += "; " + p;
  return problems.empty();
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  bool all = true;
  int id = 0;
  for (const auto& name : verify::suite_names()) {
    ++id;
    try {
      const verify::SuiteResult r = verify::run_suite(name, Seed{kSeed});
      all = report(id, name, r.pass, summarize(r)) && all;
    } catch (const std::exception& e) {
      all = report(id, name, false, std::string("threw: ") + e.what()) && all;
    }
  }
  std::string detail;
  bool cli_ok = false;
  try {
    cli_ok = cli_criterion(detail);
  } catch (const std::exception& e) {
    detail = std::string("threw: ") + e.what();
  }
  all = report(++id, "cli", cli_ok, detail) && all;
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (all ? "ALL PASS" : "SOME FAILED") << " in " << secs << " s" << std::endl;
  return all ? 0 : 1;
}
