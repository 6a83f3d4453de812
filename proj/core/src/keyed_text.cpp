#include "spinnet/keyed_text.hpp"

#include <charconv>
#include <set>

#include "spinnet/error.hpp"

namespace spinnet {

namespace {

bool blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

}  // namespace

std::vector<KeyedLine> parse_keyed_lines(std::string_view text) {
  std::vector<KeyedLine> out;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::size_t i = 0;
    while (i < line.size() && blank(line[i])) ++i;
    if (i == line.size()) continue;
    const std::size_t key_start = i;
    while (i < line.size() && !blank(line[i]) && line[i] != '=') ++i;
    KeyedLine kl{std::string(line.substr(key_start, i - key_start)), {}, line_no, 0};
    while (i < line.size() && blank(line[i])) ++i;
    if (i == line.size() || line[i] != '=') {
      throw ParseError(line_no, i + 1, "expected '=' after '" + kl.key + "'");
    }
    if (kl.key.empty()) throw ParseError(line_no, key_start + 1, "missing id before '='");
    ++i;
    while (i < line.size() && blank(line[i])) ++i;
    kl.value_column = i + 1;
    while (i < line.size()) {
      const std::size_t start = i;
      while (i < line.size() && !blank(line[i])) ++i;
      kl.values.emplace_back(line.substr(start, i - start));
      while (i < line.size() && blank(line[i])) ++i;
    }
    if (kl.values.empty()) throw ParseError(line_no, i + 1, "missing value for '" + kl.key + "'");
    if (!seen.insert(kl.key).second) {
      throw ParseError(line_no, key_start + 1, "duplicate entry '" + kl.key + "'");
    }
    out.push_back(std::move(kl));
  }
  return out;
}

std::vector<KeyedLine> keyed_by_edge(std::vector<KeyedLine> lines, const topology::Graph& g,
                                     std::size_t arity) {
  std::vector<std::optional<KeyedLine>> slots(g.edge_count());
  for (auto& kl : lines) {
    auto e = g.find_edge(kl.key);
    if (!e) throw ParseError(kl.line, 1, "unknown edge '" + kl.key + "'");
    if (kl.values.size() != arity) {
      throw ParseError(kl.line, kl.value_column,
                       "expected " + std::to_string(arity) + " value(s) for '" + kl.key + "'");
    }
    slots[*e] = std::move(kl);
  }
  std::vector<KeyedLine> out;
  out.reserve(slots.size());
  for (topology::EdgeIndex e = 0; e < slots.size(); ++e) {
    if (!slots[e]) throw DomainError("no value given for edge '" + g.edge_id(e) + "'");
    out.push_back(std::move(*slots[e]));
  }
  return out;
}

long long parse_integer(const KeyedLine& line, std::size_t i) {
  const std::string& s = line.values.at(i);
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(line.line, line.value_column, "'" + s + "' is not an integer");
  }
  return v;
}

double parse_real(const KeyedLine& line, std::size_t i) {
  const std::string& s = line.values.at(i);
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(line.line, line.value_column, "'" + s + "' is not a number");
  }
  return v;
}

}  // namespace spinnet
