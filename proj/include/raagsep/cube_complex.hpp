#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "raagsep/errors.hpp"
#include "raagsep/graph.hpp"
#include "raagsep/words.hpp"

namespace raagsep {

struct Edge {
  int src = 0;
  int dst = 0;
  int label = 0;
  int id = 0;
  bool operator==(const Edge&) const = default;
};

enum class Dir { Out, In };

// A germ is a directed edge end at a vertex. For a loop both germs exist.
struct EdgeGerm {
  int vertex = 0;
  int label = 0;
  Dir dir = Dir::Out;
  int edge = 0;
  bool operator==(const EdgeGerm&) const = default;
};

// Square with commuting labels {x, y}, x < y, presented from the corner A at
// which both the x-edge and the y-edge point outward:
//
//      A --x--> B          corners = {A, B, C, D}
//      |        |          edges   = {AB(x), BC(y), DC(x), AD(y)}
//      y        y          boundary from A reads  x y x^-1 y^-1
//      v        v
//      D --x--> C
struct Square {
  int lx = 0;
  int ly = 0;
  std::array<int, 4> corners{};  // A, B, C, D
  std::array<int, 4> edges{};    // AB, BC, DC, AD
  bool operator==(const Square&) const = default;

  std::array<int, 6> key() const {
    return {lx, ly, edges[0], edges[1], edges[2], edges[3]};
  }
};

struct TraceResult {
  bool ok = false;
  int vertex = -1;
  std::size_t fail_pos = 0;  // index of the letter that had no edge
};

// Based, directed, generator-labeled square complex. Vertices are dense
// integers; edge ids equal their index and are never reused. Mutation only
// adds cells; merging lives in the fold builder.
class CubeComplex2 {
 public:
  CubeComplex2() = default;
  explicit CubeComplex2(int nvertices, int basepoint = 0)
      : nv_(nvertices), base_(basepoint), out_(nvertices), in_(nvertices) {}

  int num_vertices() const { return nv_; }
  int basepoint() const { return base_; }
  void set_basepoint(int b) { base_ = b; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Square>& squares() const { return squares_; }
  const Edge& edge(int id) const { return edges_.at(static_cast<std::size_t>(id)); }

  int add_vertex() {
    out_.emplace_back();
    in_.emplace_back();
    return nv_++;
  }

  int add_edge(int src, int dst, int label) {
    const int id = static_cast<int>(edges_.size());
    edges_.push_back({src, dst, label, id});
    out_.at(src).push_back(id);
    in_.at(dst).push_back(id);
    return id;
  }

  // Returns false when a square with the same canonical key is present.
  bool add_square(const Square& s) {
    if (!square_keys_.insert(s.key()).second) return false;
    squares_.push_back(s);
    return true;
  }

  bool has_square_key(const std::array<int, 6>& k) const {
    return square_keys_.count(k) > 0;
  }

  const std::vector<int>& out_edges(int v) const { return out_.at(v); }
  const std::vector<int>& in_edges(int v) const { return in_.at(v); }

  // Unique directed edge with the given label at v; -1 when absent. Throws
  // when the vertex carries two such germs (the complex is not folded there).
  int out_edge(int v, int label) const { return unique_edge(out_.at(v), label, v); }
  int in_edge(int v, int label) const { return unique_edge(in_.at(v), label, v); }

  std::vector<EdgeGerm> germs(int v) const {
    std::vector<EdgeGerm> gs;
    for (int id : out_.at(v)) gs.push_back({v, edges_[id].label, Dir::Out, id});
    for (int id : in_.at(v)) gs.push_back({v, edges_[id].label, Dir::In, id});
    return gs;
  }

  bool folded() const {
    for (int v = 0; v < nv_; ++v) {
      std::map<int, int> nout, nin;
      for (int id : out_[v]) ++nout[edges_[id].label];
      for (int id : in_[v]) ++nin[edges_[id].label];
      for (auto [l, c] : nout)
        if (c > 1) return false;
      for (auto [l, c] : nin)
        if (c > 1) return false;
    }
    return true;
  }

  // Structural invariants: ids in range, square boundaries consistent with
  // the declared corners and labels, square labels adjacent in the graph.
  void validate(const DefiningGraph& g) const {
    for (const Edge& e : edges_) {
      if (e.src < 0 || e.src >= nv_ || e.dst < 0 || e.dst >= nv_)
        throw StructuralError("edge " + std::to_string(e.id) + " endpoint out of range");
      if (e.label < 0 || e.label >= g.size())
        throw StructuralError("edge " + std::to_string(e.id) + " label out of range");
    }
    if (nv_ > 0 && (base_ < 0 || base_ >= nv_))
      throw StructuralError("basepoint out of range");
    for (const Square& s : squares_) {
      if (s.lx >= s.ly) throw StructuralError("square labels not ordered");
      if (!g.adjacent(s.lx, s.ly))
        throw StructuralError("square labels are not a commuting pair");
      auto at = [&](int i) -> const Edge& {
        int id = s.edges[i];
        if (id < 0 || id >= static_cast<int>(edges_.size()))
          throw StructuralError("square edge id out of range");
        return edges_[id];
      };
      const Edge &ab = at(0), &bc = at(1), &dc = at(2), &ad = at(3);
      auto [A, B, C, D] = s.corners;
      if (ab.label != s.lx || dc.label != s.lx || bc.label != s.ly || ad.label != s.ly)
        throw StructuralError("square boundary labels inconsistent");
      if (ab.src != A || ab.dst != B || bc.src != B || bc.dst != C ||
          dc.src != D || dc.dst != C || ad.src != A || ad.dst != D)
        throw StructuralError("square boundary endpoints inconsistent");
    }
  }

 private:
  int unique_edge(const std::vector<int>& ids, int label, int v) const {
    int found = -1;
    for (int id : ids) {
      if (edges_[id].label != label) continue;
      if (found >= 0)
        throw NotFoldedError("vertex " + std::to_string(v) +
                             " has two germs with label " + std::to_string(label));
      found = id;
    }
    return found;
  }

  int nv_ = 0;
  std::vector<Edge> edges_;
  std::vector<Square> squares_;
  int base_ = 0;
  std::vector<std::vector<int>> out_, in_;
  std::set<std::array<int, 6>> square_keys_;
};

// Salvetti complex: one vertex, a loop per generator, a square per edge.
inline CubeComplex2 salvetti(const DefiningGraph& g) {
  CubeComplex2 c(1, 0);
  std::vector<int> loop(g.size());
  for (int x = 0; x < g.size(); ++x) loop[x] = c.add_edge(0, 0, x);
  for (auto [x, y] : g.edges())
    c.add_square({x, y, {0, 0, 0, 0}, {loop[x], loop[y], loop[x], loop[y]}});
  return c;
}

// Walks the word from `start`, consuming letters left to right. A positive
// letter follows the outgoing edge with its label, a negative letter walks an
// incoming edge backwards. Requires a folded complex at the visited germs.
inline TraceResult trace(const CubeComplex2& c, int start, const Word& w) {
  int v = start;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const int id = w[i].sign > 0 ? c.out_edge(v, w[i].gen) : c.in_edge(v, w[i].gen);
    if (id < 0) return {false, v, i};
    v = w[i].sign > 0 ? c.edge(id).dst : c.edge(id).src;
  }
  return {true, v, w.size()};
}

// Vertices reachable from v along edges whose label commutes with x and
// differs from x. Sorted. The start vertex is always included.
inline std::vector<int> commuting_component(const CubeComplex2& c,
                                            const DefiningGraph& g, int v, int x) {
  std::vector<char> seen(c.num_vertices(), 0);
  std::vector<int> queue{v};
  seen[v] = 1;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const int u = queue[qi];
    auto step = [&](int id, int to) {
      const Edge& e = c.edge(id);
      if (e.label == x || !g.commutes(e.label, x)) return;
      if (!seen[to]) {
        seen[to] = 1;
        queue.push_back(to);
      }
    };
    for (int id : c.out_edges(u)) step(id, c.edge(id).dst);
    for (int id : c.in_edges(u)) step(id, c.edge(id).src);
  }
  std::vector<int> out;
  for (int u = 0; u < c.num_vertices(); ++u)
    if (seen[u]) out.push_back(u);
  return out;
}

struct MissingSquareCorner {
  int vertex = 0;
  EdgeGerm g1, g2;
};

struct LocalIsometryReport {
  bool folded = false;
  std::vector<MissingSquareCorner> missing;
  bool verdict = false;
};

namespace detail {
// Germ pairs realized by square corners, keyed by (edge id, direction) pairs.
// Corner roles: A sees (AB out, AD out); B sees (AB in, BC out);
// C sees (BC in, DC in); D sees (DC out, AD in).
inline std::vector<std::set<std::pair<std::pair<int, int>, std::pair<int, int>>>>
realized_corner_pairs(const CubeComplex2& c) {
  auto norm = [](std::pair<int, int> a, std::pair<int, int> b) {
    return a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
  };
  std::vector<std::set<std::pair<std::pair<int, int>, std::pair<int, int>>>> at(
      c.num_vertices());
  constexpr int kOut = 0, kIn = 1;
  for (const Square& s : c.squares()) {
    auto [A, B, C, D] = s.corners;
    auto [ab, bc, dc, ad] = s.edges;
    at[A].insert(norm({ab, kOut}, {ad, kOut}));
    at[B].insert(norm({ab, kIn}, {bc, kOut}));
    at[C].insert(norm({bc, kIn}, {dc, kIn}));
    at[D].insert(norm({dc, kOut}, {ad, kIn}));
  }
  return at;
}
}  // namespace detail

// Folded + every pair of germs with distinct commuting labels spans a square
// corner. This is the local condition for the labeling map to the Salvetti
// complex to be a local isometry.
inline LocalIsometryReport check_local_isometry(const CubeComplex2& c,
                                                const DefiningGraph& g) {
  c.validate(g);
  LocalIsometryReport rep;
  rep.folded = c.folded();
  if (!rep.folded) {
    rep.verdict = false;
    return rep;
  }
  auto realized = detail::realized_corner_pairs(c);
  for (int v = 0; v < c.num_vertices(); ++v) {
    auto gs = c.germs(v);
    for (std::size_t i = 0; i < gs.size(); ++i) {
      for (std::size_t j = i + 1; j < gs.size(); ++j) {
        if (gs[i].label == gs[j].label) continue;
        if (!g.adjacent(gs[i].label, gs[j].label)) continue;
        auto k1 = std::make_pair(gs[i].edge, gs[i].dir == Dir::Out ? 0 : 1);
        auto k2 = std::make_pair(gs[j].edge, gs[j].dir == Dir::Out ? 0 : 1);
        auto key = k1 <= k2 ? std::make_pair(k1, k2) : std::make_pair(k2, k1);
        if (!realized[v].count(key)) rep.missing.push_back({v, gs[i], gs[j]});
      }
    }
  }
  rep.verdict = rep.missing.empty();
  return rep;
}

// Covering test: full generator valency everywhere and every lift of a
// Salvetti square boundary x y x^-1 y^-1 closes up and bounds a square.
inline bool is_cover(const CubeComplex2& c, const DefiningGraph& g) {
  c.validate(g);
  if (!c.folded()) return false;
  for (int v = 0; v < c.num_vertices(); ++v)
    for (int x = 0; x < g.size(); ++x)
      if (c.out_edge(v, x) < 0 || c.in_edge(v, x) < 0) return false;
  for (int v = 0; v < c.num_vertices(); ++v) {
    for (auto [x, y] : g.edges()) {
      const int e1 = c.out_edge(v, x);
      const int B = c.edge(e1).dst;
      const int e2 = c.out_edge(B, y);
      const int C = c.edge(e2).dst;
      const int e3 = c.in_edge(C, x);
      const int D = c.edge(e3).src;
      const int e4 = c.in_edge(D, y);
      if (c.edge(e4).src != v) return false;
      if (!c.has_square_key({x, y, e1, e2, e3, e4})) return false;
    }
  }
  return true;
}

// Adds a square over every closed x y x^-1 y^-1 boundary that lacks one.
// Squares create no new boundaries, so one sweep reaches the fixpoint.
inline int fill_all_square_boundaries(CubeComplex2& c, const DefiningGraph& g) {
  int added = 0;
  for (int A = 0; A < c.num_vertices(); ++A) {
    for (auto [x, y] : g.edges()) {
      const int e1 = c.out_edge(A, x);
      if (e1 < 0) continue;
      const int e4 = c.out_edge(A, y);
      if (e4 < 0) continue;
      const int B = c.edge(e1).dst;
      const int D = c.edge(e4).dst;
      const int e2 = c.out_edge(B, y);
      const int e3 = c.out_edge(D, x);
      if (e2 < 0 || e3 < 0) continue;
      if (c.edge(e2).dst != c.edge(e3).dst) continue;
      const int C = c.edge(e2).dst;
      if (c.add_square({x, y, {A, B, C, D}, {e1, e2, e3, e4}})) ++added;
    }
  }
  return added;
}

// Deterministic BFS over the 1-skeleton from the basepoint; neighbors are
// explored by (label, out-before-in). Returns discovery order, the tree edge
// into each vertex (-1 at the root) and the tree path words from the base.
struct BfsTree {
  std::vector<int> order;
  std::vector<int> parent_edge;   // edge id, -1 at root / unreached
  std::vector<int> parent_sign;   // +1 = walked forward, -1 = backward
  std::vector<Word> rep;          // tree path word from basepoint
};

inline BfsTree bfs_tree(const CubeComplex2& c) {
  BfsTree t;
  const int n = c.num_vertices();
  t.parent_edge.assign(n, -1);
  t.parent_sign.assign(n, 0);
  t.rep.assign(n, {});
  if (n == 0) return t;
  std::vector<char> seen(n, 0);
  std::queue<int> q;
  q.push(c.basepoint());
  seen[c.basepoint()] = 1;
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    t.order.push_back(v);
    struct Step {
      int label;
      int dir;  // 0 out, 1 in
      int edge;
      int to;
    };
    std::vector<Step> steps;
    for (int id : c.out_edges(v)) steps.push_back({c.edge(id).label, 0, id, c.edge(id).dst});
    for (int id : c.in_edges(v)) steps.push_back({c.edge(id).label, 1, id, c.edge(id).src});
    std::sort(steps.begin(), steps.end(), [](const Step& a, const Step& b) {
      return std::tie(a.label, a.dir, a.edge) < std::tie(b.label, b.dir, b.edge);
    });
    for (const Step& s : steps) {
      if (seen[s.to]) continue;
      seen[s.to] = 1;
      t.parent_edge[s.to] = s.edge;
      t.parent_sign[s.to] = s.dir == 0 ? +1 : -1;
      t.rep[s.to] = t.rep[v];
      t.rep[s.to].push_back({c.edge(s.edge).label, s.dir == 0 ? +1 : -1});
      q.push(s.to);
    }
  }
  return t;
}

}  // namespace raagsep
