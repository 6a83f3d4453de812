#pragma once

// "<id> = <value> [<value> ...]" line files shared by colorings, group
// element assignments, phase points and moment points.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "spinnet/graph.hpp"

namespace spinnet {

struct KeyedLine {
  std::string key;
  std::vector<std::string> values;
  std::size_t line;
  std::size_t value_column;
};

// Throws ParseError on a line without '=' or without a value, and on a
// repeated key.
std::vector<KeyedLine> parse_keyed_lines(std::string_view text);

// Orders the lines by edge index; throws ParseError for unknown edges and
// DomainError for missing ones. Each line must carry `arity` values.
std::vector<KeyedLine> keyed_by_edge(std::vector<KeyedLine> lines,
                                     const topology::Graph& g, std::size_t arity);

long long parse_integer(const KeyedLine& line, std::size_t i);
double parse_real(const KeyedLine& line, std::size_t i);

}  // namespace spinnet
