#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "raagsep/cube_complex.hpp"
#include "raagsep/errors.hpp"
#include "raagsep/graph.hpp"
#include "raagsep/words.hpp"

namespace raagsep {

struct FoldingConfig {
  int max_cells = 10000;
  // "fold-fill-spread" (default): exhaust folds, sweep square fills, then one
  // spread move. "fold-spread-fill": probe the spread move before the sweep.
  std::string schedule = "fold-fill-spread";
};

// Wedge of subdivided loops at a common basepoint, one loop per generator
// word. Words that reduce to the identity are dropped.
inline CubeComplex2 wedge_from_generators(const DefiningGraph& g,
                                          const std::vector<Word>& gens) {
  CubeComplex2 c(1, 0);
  for (const Word& w : gens) {
    if (geodesic_reduce(g, w).empty()) continue;
    int cur = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const int next = (i + 1 == w.size()) ? 0 : c.add_vertex();
      if (w[i].sign > 0)
        c.add_edge(cur, next, w[i].gen);
      else
        c.add_edge(next, cur, w[i].gen);
      cur = next;
    }
  }
  return c;
}

namespace detail {

// Mutable arena for folding. Cells carry alive flags; ids are stable until
// freeze() renumbers everything canonically.
class FoldBuilder {
 public:
  FoldBuilder(const DefiningGraph& g, const CubeComplex2& start, FoldingConfig cfg)
      : g_(g), cfg_(std::move(cfg)), base_(start.basepoint()) {
    if (cfg_.schedule != "fold-fill-spread" && cfg_.schedule != "fold-spread-fill")
      throw ParseError("unknown folding schedule: " + cfg_.schedule);
    valive_.assign(start.num_vertices(), 1);
    nv_alive_ = start.num_vertices();
    for (const Edge& e : start.edges()) edges_.push_back({e.src, e.dst, e.label, true});
    ne_alive_ = static_cast<int>(edges_.size());
    for (const Square& s : start.squares())
      squares_.push_back({s.lx, s.ly, s.corners, s.edges, true});
    ns_alive_ = static_cast<int>(squares_.size());
    check_cap();
  }

  void run() {
    const bool fill_first = cfg_.schedule == "fold-fill-spread";
    for (;;) {
      fold_to_fixpoint();
      if (fill_first) {
        sweep_fills();
        if (!spread_once()) break;
      } else {
        if (spread_once()) continue;
        sweep_fills();
        if (!spread_once()) break;
      }
    }
  }

  CubeComplex2 freeze() const {
    // Canonical renumbering: vertices by BFS from the basepoint (label, then
    // direction, then id), edges by (src, label, dst), squares by key.
    std::vector<int> vmap(valive_.size(), -1);
    std::vector<int> order;
    std::queue<int> q;
    q.push(base_);
    vmap[base_] = 0;
    order.push_back(base_);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      struct Step {
        int label, dir, id, to;
      };
      std::vector<Step> steps;
      for (int id = 0; id < static_cast<int>(edges_.size()); ++id) {
        const BEdge& e = edges_[id];
        if (!e.alive) continue;
        if (e.src == v) steps.push_back({e.label, 0, id, e.dst});
        if (e.dst == v) steps.push_back({e.label, 1, id, e.src});
      }
      std::sort(steps.begin(), steps.end(), [](const Step& a, const Step& b) {
        return std::tie(a.label, a.dir, a.id) < std::tie(b.label, b.dir, b.id);
      });
      for (const Step& s : steps) {
        if (vmap[s.to] >= 0) continue;
        vmap[s.to] = static_cast<int>(order.size());
        order.push_back(s.to);
        q.push(s.to);
      }
    }
    if (static_cast<int>(order.size()) != nv_alive_)
      throw StructuralError("folded complex is not connected");

    struct NewEdge {
      int src, dst, label, old_id;
    };
    std::vector<NewEdge> nedges;
    std::vector<int> emap(edges_.size(), -1);
    for (int id = 0; id < static_cast<int>(edges_.size()); ++id)
      if (edges_[id].alive)
        nedges.push_back({vmap[edges_[id].src], vmap[edges_[id].dst], edges_[id].label, id});
    std::sort(nedges.begin(), nedges.end(), [](const NewEdge& a, const NewEdge& b) {
      return std::tie(a.src, a.label, a.dst, a.old_id) <
             std::tie(b.src, b.label, b.dst, b.old_id);
    });
    CubeComplex2 out(nv_alive_, 0);
    for (std::size_t i = 0; i < nedges.size(); ++i) {
      emap[nedges[i].old_id] =
          out.add_edge(nedges[i].src, nedges[i].dst, nedges[i].label);
    }
    std::vector<Square> nsquares;
    for (const BSquare& s : squares_) {
      if (!s.alive) continue;
      Square ns{s.lx, s.ly, {}, {}};
      for (int i = 0; i < 4; ++i) ns.corners[i] = vmap[s.corners[i]];
      for (int i = 0; i < 4; ++i) ns.edges[i] = emap[s.edges[i]];
      nsquares.push_back(ns);
    }
    std::sort(nsquares.begin(), nsquares.end(),
              [](const Square& a, const Square& b) { return a.key() < b.key(); });
    for (const Square& s : nsquares) out.add_square(s);
    return out;
  }

 private:
  struct BEdge {
    int src, dst, label;
    bool alive;
  };
  struct BSquare {
    int lx, ly;
    std::array<int, 4> corners;
    std::array<int, 4> edges;
    bool alive;
  };

  void check_cap() const {
    if (nv_alive_ + ne_alive_ + ns_alive_ > cfg_.max_cells)
      throw CapExceeded(nv_alive_, ne_alive_, ns_alive_, cfg_.max_cells);
  }

  int add_vertex() {
    valive_.push_back(1);
    ++nv_alive_;
    check_cap();
    return static_cast<int>(valive_.size()) - 1;
  }

  int add_edge(int src, int dst, int label) {
    edges_.push_back({src, dst, label, true});
    ++ne_alive_;
    check_cap();
    return static_cast<int>(edges_.size()) - 1;
  }

  bool add_square(int lx, int ly, std::array<int, 4> corners, std::array<int, 4> eids) {
    const std::array<int, 6> key{lx, ly, eids[0], eids[1], eids[2], eids[3]};
    for (const BSquare& s : squares_)
      if (s.alive && std::array<int, 6>{s.lx, s.ly, s.edges[0], s.edges[1], s.edges[2],
                                        s.edges[3]} == key)
        return false;
    squares_.push_back({lx, ly, corners, eids, true});
    ++ns_alive_;
    check_cap();
    return true;
  }

  // Identify two vertices. The basepoint always survives; otherwise the
  // smaller id does.
  void merge_vertices(int a, int b) {
    if (a == b) return;
    int keep = std::min(a, b), drop = std::max(a, b);
    if (drop == base_) std::swap(keep, drop);
    valive_[drop] = 0;
    --nv_alive_;
    for (BEdge& e : edges_) {
      if (!e.alive) continue;
      if (e.src == drop) e.src = keep;
      if (e.dst == drop) e.dst = keep;
    }
    for (BSquare& s : squares_) {
      if (!s.alive) continue;
      for (int& c : s.corners)
        if (c == drop) c = keep;
    }
  }

  // Replace square references to a dropped edge, then remove exact duplicate
  // squares (same canonical key).
  void remap_edge_and_dedupe(int keep, int drop) {
    for (BSquare& s : squares_) {
      if (!s.alive) continue;
      for (int& e : s.edges)
        if (e == drop) e = keep;
    }
    std::set<std::array<int, 6>> seen;
    for (BSquare& s : squares_) {
      if (!s.alive) continue;
      if (!seen.insert({s.lx, s.ly, s.edges[0], s.edges[1], s.edges[2], s.edges[3]})
               .second) {
        s.alive = false;
        --ns_alive_;
      }
    }
  }

  // One fold: two same-label same-direction edges at a vertex become one,
  // identifying their far endpoints. Returns false at the fixpoint.
  bool fold_once() {
    for (int side = 0; side < 2; ++side) {
      std::map<std::pair<int, int>, int> first;
      for (int id = 0; id < static_cast<int>(edges_.size()); ++id) {
        const BEdge& e = edges_[id];
        if (!e.alive) continue;
        const std::pair<int, int> key{side == 0 ? e.src : e.dst, e.label};
        auto [it, fresh] = first.emplace(key, id);
        if (fresh) continue;
        const int keep = it->second, drop = id;
        merge_vertices(side == 0 ? edges_[keep].dst : edges_[keep].src,
                       side == 0 ? edges_[drop].dst : edges_[drop].src);
        edges_[drop].alive = false;
        --ne_alive_;
        remap_edge_and_dedupe(keep, drop);
        return true;
      }
    }
    return false;
  }

  void fold_to_fixpoint() {
    while (fold_once()) {
    }
  }

  // Unique out-edge table; valid only while folded.
  std::map<std::pair<int, int>, int> out_table() const {
    std::map<std::pair<int, int>, int> t;
    for (int id = 0; id < static_cast<int>(edges_.size()); ++id)
      if (edges_[id].alive) t.emplace(std::pair{edges_[id].src, edges_[id].label}, id);
    return t;
  }
  std::map<std::pair<int, int>, int> in_table() const {
    std::map<std::pair<int, int>, int> t;
    for (int id = 0; id < static_cast<int>(edges_.size()); ++id)
      if (edges_[id].alive) t.emplace(std::pair{edges_[id].dst, edges_[id].label}, id);
    return t;
  }

  // Add a square over every closed x y x^-1 y^-1 boundary lacking one.
  void sweep_fills() {
    const auto out = out_table();
    auto find = [&](const std::map<std::pair<int, int>, int>& t, int v, int l) {
      auto it = t.find({v, l});
      return it == t.end() ? -1 : it->second;
    };
    for (int A = 0; A < static_cast<int>(valive_.size()); ++A) {
      if (!valive_[A]) continue;
      for (auto [x, y] : g_.edges()) {
        const int e1 = find(out, A, x);
        const int e4 = find(out, A, y);
        if (e1 < 0 || e4 < 0) continue;
        const int B = edges_[e1].dst, D = edges_[e4].dst;
        const int e2 = find(out, B, y);
        const int e3 = find(out, D, x);
        if (e2 < 0 || e3 < 0) continue;
        if (edges_[e2].dst != edges_[e3].dst) continue;
        add_square(x, y, {A, B, edges_[e2].dst, D}, {e1, e2, e3, e4});
      }
    }
  }

  // Germ pairs with distinct commuting labels realized by square corners.
  std::set<std::tuple<int, int, int, int, int>> realized_pairs() const {
    std::set<std::tuple<int, int, int, int, int>> at;  // (vertex, e1, d1, e2, d2)
    auto ins = [&](int v, std::pair<int, int> a, std::pair<int, int> b) {
      if (b < a) std::swap(a, b);
      at.insert({v, a.first, a.second, b.first, b.second});
    };
    for (const BSquare& s : squares_) {
      if (!s.alive) continue;
      auto [A, B, C, D] = s.corners;
      auto [ab, bc, dc, ad] = s.edges;
      ins(A, {ab, 0}, {ad, 0});
      ins(B, {ab, 1}, {bc, 0});
      ins(C, {bc, 1}, {dc, 1});
      ins(D, {dc, 0}, {ad, 1});
    }
    return at;
  }

  // One spread move: take the first germ pair with adjacent distinct labels
  // not yet spanned by a square and complete its square, creating the
  // opposite corner or its missing sides, or identifying the two existing
  // closure heads when they disagree (the square boundary forces it).
  bool spread_once() {
    const auto realized = realized_pairs();
    const auto out = out_table();
    const auto in = in_table();
    auto findo = [&](int v, int l) {
      auto it = out.find({v, l});
      return it == out.end() ? -1 : it->second;
    };
    auto findi = [&](int v, int l) {
      auto it = in.find({v, l});
      return it == in.end() ? -1 : it->second;
    };
    for (int v = 0; v < static_cast<int>(valive_.size()); ++v) {
      if (!valive_[v]) continue;
      struct Germ {
        int label, dir, edge;
      };
      std::vector<Germ> gs;
      for (int id = 0; id < static_cast<int>(edges_.size()); ++id) {
        if (!edges_[id].alive) continue;
        if (edges_[id].src == v) gs.push_back({edges_[id].label, 0, id});
        if (edges_[id].dst == v) gs.push_back({edges_[id].label, 1, id});
      }
      std::sort(gs.begin(), gs.end(), [](const Germ& a, const Germ& b) {
        return std::tie(a.label, a.dir, a.edge) < std::tie(b.label, b.dir, b.edge);
      });
      for (std::size_t i = 0; i < gs.size(); ++i) {
        for (std::size_t j = i + 1; j < gs.size(); ++j) {
          if (gs[i].label == gs[j].label) continue;
          if (!g_.adjacent(gs[i].label, gs[j].label)) continue;
          auto a = std::pair{gs[i].edge, gs[i].dir};
          auto b = std::pair{gs[j].edge, gs[j].dir};
          if (b < a) std::swap(a, b);
          if (realized.count({v, a.first, a.second, b.first, b.second})) continue;
          // gs[i] has the smaller label: call it x, the other y.
          const Germ gx = gs[i], gy = gs[j];
          const int x = gx.label, y = gy.label;
          if (gx.dir == 0 && gy.dir == 0) {
            // v = A. Probe B = head(ex) for the y-side, D = head(ey) for x.
            const int B = edges_[gx.edge].dst, D = edges_[gy.edge].dst;
            int e2 = findo(B, y), e3 = findo(D, x);
            if (e2 >= 0 && e3 >= 0) {
              merge_vertices(edges_[e2].dst, edges_[e3].dst);
            } else if (e2 >= 0) {
              e3 = add_edge(D, edges_[e2].dst, x);
            } else if (e3 >= 0) {
              e2 = add_edge(B, edges_[e3].dst, y);
            } else {
              const int C = add_vertex();
              e2 = add_edge(B, C, y);
              e3 = add_edge(D, C, x);
            }
            add_square(x, y, {v, edges_[gx.edge].dst, edges_[e2].dst, edges_[gy.edge].dst},
                       {gx.edge, e2, e3, gy.edge});
          } else if (gx.dir == 0 && gy.dir == 1) {
            // v = D: ex is DC, ey is AD. Missing corner B.
            const int A = edges_[gy.edge].src, C = edges_[gx.edge].dst;
            int e1 = findo(A, x), e2 = findi(C, y);
            if (e1 >= 0 && e2 >= 0) {
              merge_vertices(edges_[e1].dst, edges_[e2].src);
            } else if (e1 >= 0) {
              e2 = add_edge(edges_[e1].dst, C, y);
            } else if (e2 >= 0) {
              e1 = add_edge(A, edges_[e2].src, x);
            } else {
              const int B = add_vertex();
              e1 = add_edge(A, B, x);
              e2 = add_edge(B, C, y);
            }
            add_square(x, y, {A, edges_[e1].dst, edges_[gx.edge].dst, v},
                       {e1, e2, gx.edge, gy.edge});
          } else if (gx.dir == 1 && gy.dir == 0) {
            // v = B: ex is AB, ey is BC. Missing corner D.
            const int A = edges_[gx.edge].src, C = edges_[gy.edge].dst;
            int e4 = findo(A, y), e3 = findi(C, x);
            if (e4 >= 0 && e3 >= 0) {
              merge_vertices(edges_[e4].dst, edges_[e3].src);
            } else if (e4 >= 0) {
              e3 = add_edge(edges_[e4].dst, C, x);
            } else if (e3 >= 0) {
              e4 = add_edge(A, edges_[e3].src, y);
            } else {
              const int D = add_vertex();
              e4 = add_edge(A, D, y);
              e3 = add_edge(D, C, x);
            }
            add_square(x, y, {A, v, edges_[gy.edge].dst, edges_[e4].dst},
                       {gx.edge, gy.edge, e3, e4});
          } else {
            // v = C: ex is DC, ey is BC. Missing corner A.
            const int B = edges_[gy.edge].src, D = edges_[gx.edge].src;
            int e1 = findi(B, x), e4 = findi(D, y);
            if (e1 >= 0 && e4 >= 0) {
              merge_vertices(edges_[e1].src, edges_[e4].src);
            } else if (e1 >= 0) {
              e4 = add_edge(edges_[e1].src, D, y);
            } else if (e4 >= 0) {
              e1 = add_edge(edges_[e4].src, B, x);
            } else {
              const int A = add_vertex();
              e1 = add_edge(A, B, x);
              e4 = add_edge(A, D, y);
            }
            add_square(x, y, {edges_[e1].src, edges_[gy.edge].src, v, edges_[gx.edge].src},
                       {e1, gy.edge, gx.edge, e4});
          }
          return true;
        }
      }
    }
    return false;
  }

  const DefiningGraph& g_;
  FoldingConfig cfg_;
  int base_;
  std::vector<char> valive_;
  std::vector<BEdge> edges_;
  std::vector<BSquare> squares_;
  int nv_alive_ = 0, ne_alive_ = 0, ns_alive_ = 0;
};

}  // namespace detail

// Folds the wedge of the generator words into the compact core: a folded,
// locally isometric complex whose based loop words are exactly the words
// spelling elements of H. Throws CapExceeded when the hull does not close
// within the cell budget.
inline CubeComplex2 build_subgroup_complex(const DefiningGraph& g,
                                           const std::vector<Word>& gens,
                                           const FoldingConfig& cfg = {}) {
  detail::FoldBuilder b(g, wedge_from_generators(g, gens), cfg);
  b.run();
  CubeComplex2 out = b.freeze();
  if (!check_local_isometry(out, g).verdict)
    throw StructuralError("folding fixpoint is not locally isometric");
  return out;
}

}  // namespace raagsep
