#pragma once

// Command line front end: subcommand dispatch, structured reports and the
// verification checklist.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace spinnet::cli {

using Json = nlohmann::ordered_json;

enum class Format { json, csv, text };

struct RunConfig {
  std::uint64_t seed = 0;
  std::map<std::string, double> tolerances;  // overrides of the defaults
  Format format = Format::json;
  std::filesystem::path corpus_dir;
  unsigned workers = 1;
  std::uint64_t samples = 100000;  // Monte Carlo sample count for verify-all

  // Override if present, otherwise the default for `name`.
  double tolerance(const std::string& name) const;
};

// Known tolerance names with their defaults.
const std::map<std::string, double>& default_tolerances();

struct Report {
  Json command;              // argv echo
  std::string inputs_digest;  // FNV-1a 64 of arguments and input file bytes
  std::string status;        // "ok", "failed" or "error"
  Json result;
  Json error;                // null unless status == "error"
  double duration_seconds = 0;

  Json to_json() const;
};

std::string render(const Report& report, Format format);

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ull;
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t hash = kFnvOffset);

struct CheckResult {
  int number;
  std::string name;
  bool passed;
  Json measured;
  double seconds;
};

// Runs the ten acceptance checks over the graphs in config.corpus_dir.
// Throws ParseError / DomainError when the corpus cannot be loaded.
std::vector<CheckResult> verify_all(const RunConfig& config);

// Entry point shared by the executable and the tests. `args` excludes the
// program name. Returns the process exit code: 0 success, 1 domain error or
// failed check, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spinnet::cli
