#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "raagsep/cube_complex.hpp"
#include "raagsep/errors.hpp"
#include "raagsep/graph.hpp"
#include "raagsep/words.hpp"

namespace raagsep {

// One closure step of the canonical completion. The step scanned vertex v
// (reached by the tree word h), took the component W of v under edges whose
// labels commute with `label`, and closed every maximal `label`-path meeting
// W into a cycle of length k. case_tag records v's own valency in that
// label: 1 = isolated, 2 = path endpoint, 3 = interior.
struct LedgerStep {
  int case_tag = 0;
  int label = -1;
  int k = 0;
  Word h;
  std::vector<int> vertices;
  std::vector<int> created_edges;

  bool operator==(const LedgerStep& o) const {
    return case_tag == o.case_tag && label == o.label && k == o.k && h == o.h &&
           vertices == o.vertices && created_edges == o.created_edges;
  }
};

struct CompletionLedger {
  std::vector<LedgerStep> steps;
  int square_fills = 0;

  bool operator==(const CompletionLedger& o) const {
    return steps == o.steps && square_fills == o.square_fills;
  }
};

struct CompletionOptions {
  // Also traverse `label`-edges when computing the component of a step.
  // Exists only to test that the wider component gives the same cover.
  bool include_axis_edges = false;
};

struct CompletionResult {
  CubeComplex2 complex;
  CompletionLedger ledger;
};

namespace detail {

// Vertices reachable from v along edges whose label commutes with x
// (excluding x itself unless include_axis asks for it). Sorted.
inline std::vector<int> completion_component(const CubeComplex2& c,
                                             const DefiningGraph& g, int v, int x,
                                             bool include_axis) {
  std::vector<char> seen(c.num_vertices(), 0);
  std::queue<int> q;
  seen[v] = 1;
  q.push(v);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (const Edge& e : c.edges()) {
      const bool usable = (e.label != x && g.adjacent(e.label, x)) ||
                          (include_axis && e.label == x);
      if (!usable) continue;
      int to = -1;
      if (e.src == u) to = e.dst;
      else if (e.dst == u) to = e.src;
      if (to >= 0 && !seen[to]) {
        seen[to] = 1;
        q.push(to);
      }
    }
  }
  std::vector<int> out;
  for (int u = 0; u < c.num_vertices(); ++u)
    if (seen[u]) out.push_back(u);
  return out;
}

inline bool on_axis_cycle(const CubeComplex2& c, int v, int x) {
  int cur = v;
  for (int steps = 0; steps <= c.num_vertices(); ++steps) {
    const int e = c.out_edge(cur, x);
    if (e < 0) return false;
    cur = c.edges()[e].dst;
    if (cur == v) return true;
  }
  throw StructuralError("axis walk exceeded vertex count in a folded complex");
}

}  // namespace detail

// Canonical completion of a folded, locally isometric complex Y over the
// Salvetti complex: scan labels in graph order and vertices in the fixed
// breadth-first order of Y, closing maximal label-paths into cycles and
// sweeping in squares after every step, until every vertex has full valency
// and the result is a cover. The ledger records each closure; replayed in
// order, the steps rebuild the cover and name the stable letters
// t_i = h x^k h^-1 of the chain decomposition.
inline CompletionResult canonical_complete(const DefiningGraph& g,
                                           const CubeComplex2& Y,
                                           const CompletionOptions& opts = {}) {
  if (!check_local_isometry(Y, g).verdict)
    throw StructuralError("completion requires a locally isometric complex");
  CubeComplex2 c = Y;
  CompletionLedger ledger;
  const BfsTree tree = bfs_tree(Y);

  for (int x = 0; x < g.size(); ++x) {
    for (const int v : tree.order) {
      if (detail::on_axis_cycle(c, v, x)) continue;
      const std::vector<int> w =
          detail::completion_component(c, g, v, x, opts.include_axis_edges);

      // Maximal x-paths meeting W, one per path start, scanned in id order.
      std::set<int> starts;
      for (const int u : w) {
        int cur = u;
        for (int guard = 0; guard <= c.num_vertices(); ++guard) {
          const int e = c.in_edge(cur, x);
          if (e < 0) break;
          cur = c.edges()[e].src;
          if (guard == c.num_vertices())
            throw StructuralError("path walk found a cycle meeting a non-cycle component");
        }
        starts.insert(cur);
      }

      const int vout = c.out_edge(v, x) >= 0 ? 1 : 0;
      const int vin = c.in_edge(v, x) >= 0 ? 1 : 0;
      LedgerStep step;
      step.case_tag = 1 + vout + vin;
      step.label = x;
      step.h = tree.rep[v];
      step.vertices = w;

      int k = -1;
      for (const int s : starts) {
        std::vector<int> path{s};
        int cur = s;
        for (;;) {
          const int e = c.out_edge(cur, x);
          if (e < 0) break;
          cur = c.edges()[e].dst;
          path.push_back(cur);
        }
        if (k < 0) k = static_cast<int>(path.size());
        else if (k != static_cast<int>(path.size()))
          throw StructuralError("parallel paths of unequal length in one closure step");
        step.created_edges.push_back(c.add_edge(path.back(), path.front(), x));
      }
      step.k = k;
      ledger.steps.push_back(std::move(step));
      ledger.square_fills += fill_all_square_boundaries(c, g);
      if (!check_local_isometry(c, g).verdict)
        throw StructuralError("closure step broke local isometry");
    }
  }

  if (!is_cover(c, g)) throw StructuralError("completion did not produce a cover");
  return {std::move(c), std::move(ledger)};
}

// Stable letter of a recorded step, as a word: h x^k h^-1.
inline Word stable_letter(const DefiningGraph& g, const LedgerStep& s) {
  Word w = s.h;
  for (int i = 0; i < s.k; ++i) w.push_back({s.label, +1});
  const Word hi = inverse(s.h);
  w.insert(w.end(), hi.begin(), hi.end());
  return geodesic_reduce(g, w);
}

// Re-derives the completion of Y and checks it reproduces the claimed
// ledger. Returns the rebuilt cover.
inline CompletionResult replay_completion(const DefiningGraph& g, const CubeComplex2& Y,
                                          const CompletionLedger& claimed) {
  CompletionResult r = canonical_complete(g, Y);
  if (!(r.ledger == claimed))
    throw CertificateError("completion ledger does not match a fresh derivation");
  return r;
}

// Right action of generators on the vertices of a cover: one permutation per
// generator, acting on cosets of the cover's fundamental group.
struct Monodromy {
  std::vector<std::vector<int>> act;   // act[gen][v]
  std::vector<std::vector<int>> inv;   // inverse permutations

  int degree() const { return act.empty() ? 0 : static_cast<int>(act[0].size()); }

  int apply(int v, const Letter& l) const {
    return l.sign > 0 ? act[l.gen][v] : inv[l.gen][v];
  }
  int apply_word(int v, const Word& w) const {
    for (const Letter& l : w) v = apply(v, l);
    return v;
  }
};

inline Monodromy monodromy(const DefiningGraph& g, const CubeComplex2& cover) {
  if (!is_cover(cover, g)) throw StructuralError("monodromy requires a cover");
  Monodromy m;
  m.act.assign(g.size(), std::vector<int>(cover.num_vertices()));
  m.inv.assign(g.size(), std::vector<int>(cover.num_vertices()));
  for (int s = 0; s < g.size(); ++s)
    for (int v = 0; v < cover.num_vertices(); ++v) {
      const int e = cover.out_edge(v, s);
      m.act[s][v] = cover.edges()[e].dst;
      m.inv[s][cover.edges()[e].dst] = v;
    }
  return m;
}

// Commutation relators must act trivially for the permutations to define an
// action of the whole group.
inline bool monodromy_respects_relations(const DefiningGraph& g, const Monodromy& m) {
  for (auto [s, t] : g.edges())
    for (int v = 0; v < m.degree(); ++v)
      if (m.act[s][m.act[t][v]] != m.act[t][m.act[s][v]]) return false;
  return true;
}

// Coset structure of the cover: reps[v] is the breadth-first tree word from
// the basepoint to vertex v, so tracing reps[v] from the base lands on v.
struct CosetTable {
  std::vector<Word> reps;
  Monodromy mon;

  int index() const { return static_cast<int>(reps.size()); }
  int act(int v, const Word& w) const { return mon.apply_word(v, w); }
};

inline CosetTable coset_table(const DefiningGraph& g, const CubeComplex2& cover) {
  CosetTable t;
  t.reps = bfs_tree(cover).rep;
  t.mon = monodromy(g, cover);
  return t;
}

// Index of the completed cover's subgroup: the number of sheets.
inline int index_of_completion(const CubeComplex2& cover) { return cover.num_vertices(); }

// Chain shape of the completion: each step extends the previous group either
// as a free product with Z (no prior commuting edge lives inside the step's
// component) or as an HNN extension over the subgroup those edges carry.
enum class ChainKind { FreeProduct, Hnn };

inline std::vector<ChainKind> hnn_chain(const CompletionLedger& ledger,
                                        const DefiningGraph& g,
                                        const CubeComplex2& completed) {
  std::vector<ChainKind> kinds;
  for (const LedgerStep& s : ledger.steps) {
    if (s.created_edges.empty())
      throw StructuralError("ledger step with no created edges");
    const int first_created = *std::min_element(s.created_edges.begin(),
                                                s.created_edges.end());
    const std::set<int> w(s.vertices.begin(), s.vertices.end());
    bool hnn = false;
    for (const Edge& e : completed.edges()) {
      if (e.id >= first_created) continue;
      if (e.label == s.label || !g.adjacent(e.label, s.label)) continue;
      if (w.count(e.src) && w.count(e.dst)) {
        hnn = true;
        break;
      }
    }
    kinds.push_back(hnn ? ChainKind::Hnn : ChainKind::FreeProduct);
  }
  return kinds;
}

}  // namespace raagsep
