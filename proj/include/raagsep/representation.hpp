#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "raagsep/completion.hpp"
#include "raagsep/cube_complex.hpp"
#include "raagsep/errors.hpp"
#include "raagsep/folding.hpp"
#include "raagsep/graph.hpp"
#include "raagsep/matrix.hpp"
#include "raagsep/membership.hpp"
#include "raagsep/words.hpp"

namespace raagsep {

// Doubled graph: two copies of each vertex, all four cross edges between
// copies of adjacent generators, and no edge between the two copies of the
// same generator. The point: reflections of adjacent doubles commute, while
// the two reflections above one generator generate an infinite dihedral
// piece, so each generator maps to an infinite-order element.
inline DefiningGraph double_graph(const DefiningGraph& g) {
  std::vector<std::string> names;
  for (int i = 0; i < g.size(); ++i) {
    names.push_back(g.name(i) + "_1");
    names.push_back(g.name(i) + "_2");
  }
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : g.edges())
    for (int du = 0; du < 2; ++du)
      for (int dv = 0; dv < 2; ++dv) edges.emplace_back(2 * u + du, 2 * v + dv);
  return DefiningGraph::from_indices(std::move(names), edges);
}

// Reflection of the Tits form for vertex s of the doubled graph:
// sigma_s(e_t) = e_t - 2 B(s,t) e_s with B(s,s) = 1, B = 0 across an edge
// and B = -1 across a non-edge.
inline IntMatrix tits_reflection(const DefiningGraph& doubled, int s) {
  const int n = doubled.size();
  IntMatrix m = IntMatrix::identity(n);
  for (int t = 0; t < n; ++t) {
    if (t == s) m(s, s) = -1;
    else if (!doubled.adjacent(s, t)) m(s, t) = 2;
    else m(s, t) = 0;
  }
  return m;
}

// One syllable of a rewritten word: either an element of H given by an
// explicit word, or a power of the i-th stable letter.
struct HnnItem {
  bool is_t = false;
  Word syl;       // used when !is_t
  int step = -1;  // used when is_t
  int sign = 0;   // +1 or -1 when is_t
};
using HnnWord = std::vector<HnnItem>;

inline HnnWord inverse(const HnnWord& w) {
  HnnWord out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    HnnItem i = *it;
    if (i.is_t) i.sign = -i.sign;
    else i.syl = inverse(i.syl);
    out.push_back(std::move(i));
  }
  return out;
}

// The pair (rho0(w), rho'(w)); the two agree exactly on H.
struct TitsPair {
  IntMatrix plain, twisted;
  bool operator==(const TitsPair& o) const {
    return plain == o.plain && twisted == o.twisted;
  }
};

// Induced pair over the cosets of K: a permutation of rows plus one 2n x 2n
// pair per row. Row i carries Phi(r_i w r_{pi(i)}^-1) in column pi(i).
struct InducedPair {
  std::vector<int> col_of_row;
  std::vector<TitsPair> blocks;

  int degree() const { return static_cast<int>(col_of_row.size()); }

  bool operator==(const InducedPair& o) const {
    return col_of_row == o.col_of_row && blocks == o.blocks;
  }

  friend InducedPair operator*(const InducedPair& a, const InducedPair& b) {
    InducedPair r;
    r.col_of_row.resize(a.degree());
    r.blocks.reserve(a.degree());
    for (int i = 0; i < a.degree(); ++i) {
      const int mid = a.col_of_row[i];
      r.col_of_row[i] = b.col_of_row[mid];
      r.blocks.push_back({a.blocks[i].plain * b.blocks[mid].plain,
                          a.blocks[i].twisted * b.blocks[mid].twisted});
    }
    return r;
  }
};

struct ZariskiVerdict {
  bool in_k = false;
  bool pair_equal = false;
  bool member() const { return in_k && pair_equal; }
};

// Everything derived from one subgroup: the folded core, the completed
// cover, the chain ledger, the twisted double-reflection pair, and the
// induced pair over the cover's sheets.
class RepresentationBundle {
 public:
  RepresentationBundle(DefiningGraph g, std::vector<Word> gens,
                       const FoldingConfig& fold_cfg = {}, int twist = 2)
      : g_(std::move(g)),
        gens_(std::move(gens)),
        twist_(twist),
        core_(build_subgroup_complex(g_, gens_, fold_cfg)),
        doubled_(double_graph(g_)) {
    if (twist_ < 2) throw ParseError("twist exponent must be at least 2");
    auto res = canonical_complete(g_, core_);
    cover_ = std::move(res.complex);
    ledger_ = std::move(res.ledger);
    tree_ = bfs_tree(core_);
    cosets_ = coset_table(g_, cover_);

    gen_m_.reserve(g_.size());
    gen_minv_.reserve(g_.size());
    for (int v = 0; v < g_.size(); ++v) {
      const IntMatrix s1 = tits_reflection(doubled_, 2 * v);
      const IntMatrix s2 = tits_reflection(doubled_, 2 * v + 1);
      gen_m_.push_back(s1 * s2);
      gen_minv_.push_back(s2 * s1);
    }
    for (const LedgerStep& s : ledger_.steps) {
      const IntMatrix m = rho0(stable_letter(g_, s)).pow(static_cast<unsigned>(twist_));
      const IntMatrix mi =
          rho0(inverse(stable_letter(g_, s))).pow(static_cast<unsigned>(twist_));
      t_m_.push_back(m);
      t_minv_.push_back(mi);
    }
    index_created_edges();
  }

  const DefiningGraph& graph() const { return g_; }
  const DefiningGraph& doubled_graph() const { return doubled_; }
  const CubeComplex2& core() const { return core_; }
  const CubeComplex2& cover() const { return cover_; }
  const CompletionLedger& ledger() const { return ledger_; }
  const CosetTable& cosets() const { return cosets_; }
  const std::vector<Word>& generators() const { return gens_; }
  int twist() const { return twist_; }
  int dim() const { return doubled_.size(); }
  int index() const { return cover_.num_vertices(); }

  std::vector<Word> stable_letters() const {
    std::vector<Word> out;
    for (const LedgerStep& s : ledger_.steps) out.push_back(stable_letter(g_, s));
    return out;
  }

  bool in_h(const Word& w) const { return complex_accepts(g_, core_, w); }
  bool in_k(const Word& w) const { return complex_accepts(g_, cover_, w); }

  IntMatrix rho0(const Word& w) const {
    IntMatrix m = IntMatrix::identity(dim());
    for (const Letter& l : w) m = m * (l.sign > 0 ? gen_m_[l.gen] : gen_minv_[l.gen]);
    return m;
  }

  // Rewrites an element of K as H-syllables and stable-letter powers by
  // tracing its geodesic through the cover and expanding each edge.
  HnnWord rewrite(const Word& w) const {
    const Word r = geodesic_reduce(g_, w);
    if (!in_k(r)) throw NotInK("word is not in the finite-index overgroup");
    HnnWord out;
    int v = cover_.basepoint();
    for (const Letter& l : r) {
      const int e = l.sign > 0 ? cover_.out_edge(v, l.gen) : cover_.in_edge(v, l.gen);
      const HnnWord& ex = expr(e);
      if (l.sign > 0) {
        out.insert(out.end(), ex.begin(), ex.end());
        v = cover_.edges()[e].dst;
      } else {
        const HnnWord exi = inverse(ex);
        out.insert(out.end(), exi.begin(), exi.end());
        v = cover_.edges()[e].src;
      }
    }
    return out;
  }

  // Image of a rewritten word with each stable letter sent to its twisted
  // power; restricted to H this is rho0 again.
  IntMatrix rho_twisted(const Word& w) const {
    IntMatrix m = IntMatrix::identity(dim());
    for (const HnnItem& i : rewrite(w)) {
      if (i.is_t) m = m * (i.sign > 0 ? t_m_[i.step] : t_minv_[i.step]);
      else m = m * rho0(i.syl);
    }
    return m;
  }

  TitsPair phi(const Word& w) const { return {rho0(w), rho_twisted(w)}; }

  // Substitutes stable letters back; the result equals the input in the
  // ambient group, which is the correctness check for rewrite().
  Word substituted(const HnnWord& hw) const {
    Word out;
    for (const HnnItem& i : hw) {
      Word piece = i.is_t ? stable_letter(g_, ledger_.steps[i.step]) : i.syl;
      if (i.is_t && i.sign < 0) piece = inverse(piece);
      out = concat(out, piece);
    }
    return out;
  }

  ZariskiVerdict zariski_membership_test(const Word& w) const {
    ZariskiVerdict v;
    v.in_k = in_k(w);
    if (!v.in_k) return v;
    v.pair_equal = rho0(w) == rho_twisted(w);
    return v;
  }

  // Induced pair over the sheets of the cover, with the breadth-first tree
  // words of the cover as coset representatives.
  InducedPair induce(const Word& w) const {
    InducedPair p;
    const int d = cosets_.index();
    p.col_of_row.resize(d);
    p.blocks.reserve(d);
    for (int i = 0; i < d; ++i) {
      const int j = cosets_.act(i, w);
      p.col_of_row[i] = j;
      const Word conj =
          concat(concat(cosets_.reps[i], w), inverse(cosets_.reps[j]));
      p.blocks.push_back(phi(conj));
    }
    return p;
  }

 private:
  struct CreatedEdge {
    int step = -1;
    std::vector<int> cycle_verts;  // w_0 .. w_{k-1}; the edge closes back to w_0
    std::vector<int> cycle_edges;  // the k-1 prior edges along the cycle
    int touch = -1;                // index j of the first cycle vertex in W
    std::vector<std::pair<int, int>> q;  // (edge, sign) path: anchor -> w_j
  };

  void index_created_edges() {
    for (int si = 0; si < static_cast<int>(ledger_.steps.size()); ++si) {
      const LedgerStep& s = ledger_.steps[si];
      const int first_created =
          *std::min_element(s.created_edges.begin(), s.created_edges.end());
      const std::set<int> w(s.vertices.begin(), s.vertices.end());
      const int anchor = trace(core_, core_.basepoint(), s.h).vertex;
      for (const int eid : s.created_edges) {
        CreatedEdge info;
        info.step = si;
        const Edge& e = cover_.edges()[eid];
        int cur = e.dst;
        info.cycle_verts.push_back(cur);
        while (cur != e.src) {
          const int nxt = cover_.out_edge(cur, s.label);
          if (nxt < 0 || nxt >= first_created)
            throw StructuralError("closure cycle is not made of prior edges");
          info.cycle_edges.push_back(nxt);
          cur = cover_.edges()[nxt].dst;
          info.cycle_verts.push_back(cur);
        }
        if (static_cast<int>(info.cycle_verts.size()) != s.k)
          throw StructuralError("closure cycle length disagrees with ledger");
        for (int m = 0; m < s.k; ++m)
          if (w.count(info.cycle_verts[m])) {
            info.touch = m;
            break;
          }
        if (info.touch < 0) throw StructuralError("closure cycle misses its component");
        info.q = commuting_path(anchor, info.cycle_verts[info.touch], s.label,
                                first_created);
        created_.emplace(eid, std::move(info));
      }
    }
  }

  // Shortest-edge-id path between component vertices along prior edges whose
  // labels commute with x. Deterministic: breadth-first, edges in id order.
  std::vector<std::pair<int, int>> commuting_path(int from, int to, int x,
                                                  int id_bound) const {
    std::vector<int> prev_edge(cover_.num_vertices(), -1);
    std::vector<int> prev_sign(cover_.num_vertices(), 0);
    std::vector<char> seen(cover_.num_vertices(), 0);
    std::queue<int> bfs;
    seen[from] = 1;
    bfs.push(from);
    while (!bfs.empty() && !seen[to]) {
      const int u = bfs.front();
      bfs.pop();
      for (const Edge& e : cover_.edges()) {
        if (e.id >= id_bound || e.label == x || !g_.adjacent(e.label, x)) continue;
        int v = -1, sign = 0;
        if (e.src == u) v = e.dst, sign = +1;
        else if (e.dst == u) v = e.src, sign = -1;
        if (v < 0 || seen[v]) continue;
        seen[v] = 1;
        prev_edge[v] = e.id;
        prev_sign[v] = sign;
        bfs.push(v);
      }
    }
    if (!seen[to])
      throw StructuralError("anchor and touch vertex are not joined by prior edges");
    std::vector<std::pair<int, int>> path;
    for (int v = to; v != from;) {
      path.emplace_back(prev_edge[v], prev_sign[v]);
      const Edge& e = cover_.edges()[prev_edge[v]];
      v = prev_sign[v] > 0 ? e.src : e.dst;
    }
    std::reverse(path.begin(), path.end());
    return path;
  }

  static void append(HnnWord& out, const HnnWord& piece) {
    out.insert(out.end(), piece.begin(), piece.end());
  }
  static void append_inv(HnnWord& out, const HnnWord& piece) {
    const HnnWord inv = inverse(piece);
    out.insert(out.end(), inv.begin(), inv.end());
  }

  // gamma_e = rep(src) label rep(dst)^-1 expressed in H-syllables and stable
  // letters. Tree edges vanish; core edges are single H-syllables; created
  // edges unwind through their closure step. Terminates because a created
  // edge only references strictly smaller edge ids.
  const HnnWord& expr(int eid) const {
    auto memo = expr_memo_.find(eid);
    if (memo != expr_memo_.end()) return memo->second;
    HnnWord out;
    const Edge& e = cover_.edges()[eid];
    if (eid < static_cast<int>(core_.edges().size())) {
      const bool is_tree = tree_.parent_edge[e.src] == eid || tree_.parent_edge[e.dst] == eid;
      if (!is_tree) {
        Word syl = concat(concat(tree_.rep[e.src], Word{{e.label, +1}}),
                          inverse(tree_.rep[e.dst]));
        out.push_back({false, geodesic_reduce(g_, syl), -1, 0});
      }
    } else {
      const CreatedEdge& info = created_.at(eid);
      HnnWord path_all, path_touch, conn;
      for (const int ce : info.cycle_edges) append(path_all, expr(ce));
      for (int m = 0; m < info.touch; ++m) append(path_touch, expr(info.cycle_edges[m]));
      for (auto [qe, sign] : info.q) {
        if (sign > 0) append(conn, expr(qe));
        else append_inv(conn, expr(qe));
      }
      append_inv(out, path_all);
      append(out, path_touch);
      append_inv(out, conn);
      out.push_back({true, {}, info.step, +1});
      append(out, conn);
      append_inv(out, path_touch);
    }
    return expr_memo_.emplace(eid, std::move(out)).first->second;
  }

  DefiningGraph g_;
  std::vector<Word> gens_;
  int twist_;
  CubeComplex2 core_;
  DefiningGraph doubled_;
  CubeComplex2 cover_;
  CompletionLedger ledger_;
  BfsTree tree_;
  CosetTable cosets_;
  std::vector<IntMatrix> gen_m_, gen_minv_;
  std::vector<IntMatrix> t_m_, t_minv_;
  std::map<int, CreatedEdge> created_;
  mutable std::map<int, HnnWord> expr_memo_;
};

}  // namespace raagsep
