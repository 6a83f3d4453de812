#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "spinnet/graph.hpp"

namespace spinnet::testing {

inline std::string read_corpus_file(const std::string& file) {
  std::ifstream in(std::string(SPINNET_CORPUS_DIR) + "/" + file);
  if (!in) throw std::runtime_error("cannot open corpus file " + file);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline topology::Graph corpus_graph(const std::string& name) {
  return topology::parse_graph(read_corpus_file(name + ".g"));
}

inline const char* const kCorpus[] = {"theta", "dumbbell", "tetrahedron", "twoloop3"};

inline topology::Graph theta() { return corpus_graph("theta"); }
inline topology::Graph dumbbell() { return corpus_graph("dumbbell"); }

}  // namespace spinnet::testing
