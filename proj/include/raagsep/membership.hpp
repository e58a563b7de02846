#pragma once

#include "raagsep/cube_complex.hpp"
#include "raagsep/graph.hpp"
#include "raagsep/words.hpp"

namespace raagsep {

// Membership in the subgroup carried by a folded locally isometric complex:
// the geodesic representative lifts to a closed based path exactly when the
// element lies in the subgroup.
inline bool complex_accepts(const DefiningGraph& g, const CubeComplex2& c, const Word& w) {
  const Word r = geodesic_reduce(g, w);
  const TraceResult t = trace(c, c.basepoint(), r);
  return t.ok && t.vertex == c.basepoint();
}

struct MembershipVerdict {
  bool in_h = false;  // the input subgroup H
  bool in_k = false;  // the completed finite-index overgroup K
};

inline MembershipVerdict classify_membership(const DefiningGraph& g,
                                             const CubeComplex2& core,
                                             const CubeComplex2& cover, const Word& w) {
  MembershipVerdict v;
  v.in_h = complex_accepts(g, core, w);
  v.in_k = complex_accepts(g, cover, w);
  return v;
}

}  // namespace raagsep
