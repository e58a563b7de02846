#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "raagsep/errors.hpp"

namespace raagsep {

// Defining graph of a right-angled Artin group: one generator per vertex,
// one commutation relation per edge. Vertices are referred to by index;
// names are kept only for parsing and formatting.
class DefiningGraph {
 public:
  DefiningGraph() = default;

  static DefiningGraph from_indices(std::vector<std::string> names,
                                    const std::vector<std::pair<int, int>>& edges) {
    DefiningGraph g;
    g.init(std::move(names), edges);
    return g;
  }

  DefiningGraph(std::vector<std::string> names,
                const std::vector<std::pair<std::string, std::string>>& edges) {
    auto idx = resolve(names, edges);
    init(std::move(names), idx);
  }

  int size() const { return static_cast<int>(names_.size()); }

  const std::string& name(int i) const { return names_.at(i); }

  // -1 when the name is unknown.
  int index(std::string_view name) const {
    for (int i = 0; i < size(); ++i)
      if (names_[i] == name) return i;
    return -1;
  }

  bool adjacent(int u, int v) const { return u != v && adj_.at(u).at(v); }

  // Commutation predicate used by geodesic rewriting: a generator commutes
  // with itself and with its graph neighbors.
  bool commutes(int u, int v) const { return u == v || adj_.at(u).at(v); }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < size(); ++i)
      for (int j = i + 1; j < size(); ++j)
        if (adj_[i][j]) out.emplace_back(i, j);
    return out;
  }

  bool operator==(const DefiningGraph& o) const {
    return names_ == o.names_ && adj_ == o.adj_;
  }

 private:
  void init(std::vector<std::string> names, const std::vector<std::pair<int, int>>& edges) {
    names_ = std::move(names);
    const int n = static_cast<int>(names_.size());
    for (int i = 0; i < n; ++i) {
      if (names_[i].empty()) throw ParseError("empty generator name");
      for (int j = i + 1; j < n; ++j)
        if (names_[i] == names_[j])
          throw ParseError("duplicate generator name: " + names_[i]);
    }
    adj_.assign(n, std::vector<char>(n, 0));
    for (auto [u, v] : edges) {
      if (u < 0 || u >= n || v < 0 || v >= n)
        throw ParseError("edge endpoint out of range");
      if (u == v) throw ParseError("self-loop edge on generator " + names_[u]);
      adj_[u][v] = adj_[v][u] = 1;
    }
  }

  static std::vector<std::pair<int, int>> resolve(
      const std::vector<std::string>& names,
      const std::vector<std::pair<std::string, std::string>>& edges) {
    auto find = [&](const std::string& s) {
      for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == s) return static_cast<int>(i);
      throw ParseError("unknown generator in edge: " + s);
    };
    std::vector<std::pair<int, int>> out;
    out.reserve(edges.size());
    for (const auto& [u, v] : edges) out.emplace_back(find(u), find(v));
    return out;
  }

  std::vector<std::string> names_;
  std::vector<std::vector<char>> adj_;
};

// Text format, one directive per line:
//   generators: a b c
//   edge: a b
// '#' starts a comment; blank lines are ignored. Exactly one generators line,
// which must precede every edge line.
inline DefiningGraph parse_graph(std::string_view text) {
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> edges;
  bool have_gens = false;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw ParseError("graph line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "generators:") {
      if (have_gens) fail("duplicate generators line");
      have_gens = true;
      std::string tok;
      while (ls >> tok) names.push_back(tok);
      if (names.empty()) fail("generators line lists no generators");
    } else if (head == "edge:") {
      if (!have_gens) fail("edge line before generators line");
      std::string a, b, extra;
      if (!(ls >> a >> b)) fail("edge line needs two generator names");
      if (ls >> extra) fail("edge line has trailing tokens");
      int ia = -1, ib = -1;
      for (int i = 0; i < static_cast<int>(names.size()); ++i) {
        if (names[i] == a) ia = i;
        if (names[i] == b) ib = i;
      }
      if (ia < 0) fail("unknown generator: " + a);
      if (ib < 0) fail("unknown generator: " + b);
      if (ia == ib) fail("self-loop edge on generator " + a);
      edges.emplace_back(ia, ib);
    } else {
      fail("unknown directive: " + head);
    }
  }
  if (!have_gens) throw ParseError("graph text has no generators line");
  return DefiningGraph::from_indices(std::move(names), edges);
}

}  // namespace raagsep
