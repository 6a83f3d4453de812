#include <sstream>

#include "spinnet/cli.hpp"

namespace spinnet::cli {

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> defaults{
      {"verlinde", 1e-6},        // distance of the Verlinde sum from an integer
      {"gauge", 1e-9},           // |f(t) - f(g.t)|
      {"orthogonality", 5.0},    // bound on distinct inner products, in units of 1/sqrt(N)
      {"stability", 3.0},        // seed-to-seed drift of self products, in error bars
      {"polytope", 1e-12},       // slack in the facet inequalities
      {"schottky", 1e-9},        // |f(s) - f(h s h^-1)|
      {"representation", 1e-9},  // multiplicativity and unitarity residuals
      {"intertwiner", 1e-9},     // invariance residual
  };
  return defaults;
}

double RunConfig::tolerance(const std::string& name) const {
  if (auto it = tolerances.find(name); it != tolerances.end()) return it->second;
  return default_tolerances().at(name);
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t hash) {
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

Json Report::to_json() const {
  Json j;
  j["command"] = command;
  j["inputs_digest"] = inputs_digest;
  j["status"] = status;
  j["result"] = result;
  if (!error.is_null()) j["error"] = error;
  j["duration_seconds"] = duration_seconds;
  return j;
}

namespace {

std::string scalar(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void flatten(const Json& v, const std::string& path, std::vector<std::pair<std::string, std::string>>& rows) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), rows);
    }
  } else if (v.is_array()) {
    if (v.empty()) rows.emplace_back(path, "[]");
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], path + "[" + std::to_string(i) + "]", rows);
  } else {
    rows.emplace_back(path, scalar(v));
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string render(const Report& report, Format format) {
  const Json j = report.to_json();
  if (format == Format::json) return j.dump(2) + "\n";
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(j, "", rows);
  std::ostringstream out;
  if (format == Format::csv) {
    out << "key,value\n";
    for (const auto& [k, v] : rows) out << csv_field(k) << ',' << csv_field(v) << '\n';
  } else {
    for (const auto& [k, v] : rows) out << k << ": " << v << '\n';
  }
  return out.str();
}

}  // namespace spinnet::cli
