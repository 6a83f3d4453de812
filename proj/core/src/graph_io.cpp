#include <map>
#include <sstream>

#include "spinnet/error.hpp"
#include "spinnet/graph.hpp"

namespace spinnet::topology {

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size() || line[i] == '#') break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r' && line[i] != '#') {
      ++i;
    }
    out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

std::string rest_of_line(std::string_view line, std::size_t column) {
  std::string_view rest = line.substr(column - 1);
  if (auto hash = rest.find('#'); hash != std::string_view::npos) {
    rest = rest.substr(0, hash);
  }
  while (!rest.empty() && (rest.back() == ' ' || rest.back() == '\t' || rest.back() == '\r')) {
    rest.remove_suffix(1);
  }
  return std::string(rest);
}

struct PendingEdge {
  EdgeSpec spec;
  std::size_t line;
  std::array<std::size_t, 2> columns;
};

}  // namespace

Graph parse_graph(std::string_view text, Validation mode) {
  std::string name;
  bool have_name = false;
  std::vector<std::string> vertices;
  std::map<std::string, std::size_t> vertex_line;
  std::map<std::string, std::size_t> edge_line;
  std::vector<PendingEdge> edges;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    const auto& kw = tokens[0];
    if (kw.text == "name") {
      if (have_name) throw ParseError(line_no, kw.column, "duplicate name line");
      if (tokens.size() < 2) throw ParseError(line_no, kw.column, "name needs a value");
      name = rest_of_line(line, tokens[1].column);
      have_name = true;
    } else if (kw.text == "vertex") {
      if (tokens.size() != 2) {
        throw ParseError(line_no, kw.column, "expected 'vertex <id>'");
      }
      const auto& id = tokens[1];
      if (id.text == "OPEN") {
        throw ParseError(line_no, id.column, "OPEN is reserved");
      }
      if (vertex_line.contains(id.text)) {
        throw ParseError(line_no, id.column, "duplicate vertex '" + id.text + "'");
      }
      vertex_line[id.text] = line_no;
      vertices.push_back(id.text);
    } else if (kw.text == "edge") {
      if (tokens.size() != 4) {
        throw ParseError(line_no, kw.column, "expected 'edge <id> <end> <end>'");
      }
      const auto& id = tokens[1];
      if (id.text == "OPEN") throw ParseError(line_no, id.column, "OPEN is reserved");
      if (edge_line.contains(id.text)) {
        throw ParseError(line_no, id.column, "duplicate edge '" + id.text + "'");
      }
      edge_line[id.text] = line_no;
      PendingEdge pending{{id.text, std::nullopt, std::nullopt},
                          line_no,
                          {tokens[2].column, tokens[3].column}};
      if (tokens[2].text != "OPEN") pending.spec.first = tokens[2].text;
      if (tokens[3].text != "OPEN") pending.spec.second = tokens[3].text;
      edges.push_back(std::move(pending));
    } else {
      throw ParseError(line_no, kw.column, "unknown keyword '" + kw.text + "'");
    }
  }

  const bool explicit_vertices = !vertices.empty();
  for (const auto& e : edges) {
    const std::array<const std::optional<std::string>*, 2> ends{&e.spec.first,
                                                                &e.spec.second};
    for (int s = 0; s < 2; ++s) {
      if (!ends[s]->has_value()) continue;
      const std::string& v = **ends[s];
      if (vertex_line.contains(v)) continue;
      if (explicit_vertices) {
        throw ParseError(e.line, e.columns[s], "dangling vertex reference '" + v + "'");
      }
      vertex_line[v] = e.line;
    }
  }
  if (!explicit_vertices) {
    for (const auto& [v, line] : vertex_line) vertices.push_back(v);
  }

  std::vector<EdgeSpec> specs;
  specs.reserve(edges.size());
  for (auto& e : edges) specs.push_back(std::move(e.spec));
  Graph g;
  try {
    g = Graph(std::move(vertices), std::move(specs), std::move(name));
  } catch (const DomainError& err) {
    throw ParseError(line_no, 1, err.what());
  }
  validate(g, mode);
  return g;
}

std::string serialize_graph(const Graph& g) {
  std::ostringstream out;
  if (!g.name().empty()) out << "name " << g.name() << '\n';
  for (const auto& v : g.vertex_ids()) out << "vertex " << v << '\n';
  for (const auto& spec : g.edge_specs()) {
    out << "edge " << spec.id << ' ' << spec.first.value_or("OPEN") << ' '
        << spec.second.value_or("OPEN") << '\n';
  }
  return out.str();
}

}  // namespace spinnet::topology
