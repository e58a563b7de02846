#pragma once

#include <string>

#include "raagsep/cube_complex.hpp"
#include "raagsep/errors.hpp"
#include "raagsep/graph.hpp"

namespace raagsep {

// Graphviz rendering of the 1-skeleton: one color per generator, basepoint
// doubled, squares listed as comments since dot has no 2-cells.
inline std::string export_dot(const DefiningGraph& g, const CubeComplex2& c,
                              const std::string& name = "complex") {
  if (c.num_vertices() == 0) throw StructuralError("refusing to export an empty complex");
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
  constexpr int npal = 8;
  std::string out = "digraph " + name + " {\n";
  out += "  rankdir=LR;\n  node [shape=circle];\n";
  out += "  v" + std::to_string(c.basepoint()) + " [shape=doublecircle];\n";
  for (int v = 0; v < c.num_vertices(); ++v)
    out += "  v" + std::to_string(v) + ";\n";
  for (const Edge& e : c.edges()) {
    out += "  v" + std::to_string(e.src) + " -> v" + std::to_string(e.dst) +
           " [label=\"" + g.name(e.label) + "\", color=\"" +
           palette[e.label % npal] + "\"];\n";
  }
  for (const Square& s : c.squares()) {
    out += "  // square " + g.name(s.lx) + "," + g.name(s.ly) + " corners";
    for (int v : s.corners) out += " v" + std::to_string(v);
    out += " edges";
    for (int e : s.edges) out += " e" + std::to_string(e);
    out += "\n";
  }
  out += "}\n";
  return out;
}

}  // namespace raagsep
