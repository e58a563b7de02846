#pragma once

#include <optional>
#include <queue>
#include <set>
#include <utility>
#include <vector>

#include "raagsep/errors.hpp"
#include "raagsep/matrix.hpp"
#include "raagsep/representation.hpp"

namespace raagsep {

// First coordinate (row-major) where the plain and twisted images disagree,
// together with the disagreement integer.
struct WitnessInteger {
  BigInt z;
  int row = -1;
  int col = -1;
};

inline WitnessInteger witness(const TitsPair& pair) {
  const int n = pair.plain.dim();
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      BigInt d = pair.plain(r, c) - pair.twisted(r, c);
      if (d != 0) return {std::move(d), r, c};
    }
  throw NotSeparableInKButEqual(
      "plain and twisted images agree although the word is outside H");
}

inline long long least_prime_not_dividing(const BigInt& z) {
  if (z == 0) throw StructuralError("no prime avoids zero");
  const BigInt a = abs(z);
  for (long long p = 2;; ++p) {
    bool prime = true;
    for (long long q = 2; q * q <= p; ++q)
      if (p % q == 0) {
        prime = false;
        break;
      }
    if (!prime) continue;
    if (a % p != 0) return p;
  }
}

// Order of the permutation group generated by the monodromy images, or
// nothing when it exceeds the cap.
inline std::optional<long long> perm_group_order(
    const std::vector<std::vector<int>>& gens, long long cap) {
  std::set<std::vector<int>> seen;
  std::queue<std::vector<int>> work;
  std::vector<int> id(gens.empty() ? 0 : gens[0].size());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
  seen.insert(id);
  work.push(id);
  while (!work.empty()) {
    const std::vector<int> g = std::move(work.front());
    work.pop();
    for (const auto& s : gens) {
      std::vector<int> h(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) h[i] = s[g[i]];
      if (seen.insert(h).second) {
        if (static_cast<long long>(seen.size()) > cap) return std::nullopt;
        work.push(std::move(h));
      }
    }
  }
  return static_cast<long long>(seen.size());
}

enum class CertKind { Permutation, ModP };

// Quantified separation certificate: a finite quotient in which the image of
// the word avoids the image of H, plus the order bound for that quotient.
//
// Permutation kind: the quotient is the monodromy image in Sym(sheets); the
// word's permutation moves the basepoint while H stabilizes it.
//
// Mod-p kind: the quotient is the image of the induced plain/twisted pair
// with entries reduced mod p; H lands in the subgroup whose permutation
// fixes the base sheet and whose base block has equal halves, while the
// word's base block differs at the witness coordinate, with p chosen not to
// divide the witness integer.
struct SeparationCertificate {
  CertKind kind = CertKind::Permutation;
  int degree = 0;  // sheets of the cover
  long long p = 0;
  WitnessInteger wit;
  BigInt size_bound;
};

// Upper bound for the index of a normal subgroup avoiding w modulo H: the
// kernel of the certifying quotient map works, so the quotient order itself
// is the bound.
inline const BigInt& normal_core_bound(const SeparationCertificate& c) {
  return c.size_bound;
}

namespace detail {

constexpr long long kPermEnumerationCap = 1000000;

inline BigInt perm_size_bound(const RepresentationBundle& rb) {
  const auto ord = perm_group_order(rb.cosets().mon.act, kPermEnumerationCap);
  if (ord) return BigInt(*ord);
  return factorial_big(rb.index());
}

inline BigInt modp_size_bound(const RepresentationBundle& rb, long long p) {
  const long long m = static_cast<long long>(rb.dim()) * rb.index();
  const unsigned exponent = static_cast<unsigned>(2 * m * m);
  return pow(BigInt(p), exponent);
}

}  // namespace detail

inline SeparationCertificate separate(const RepresentationBundle& rb, const Word& w) {
  if (rb.in_h(w)) throw InH("cannot separate an element of H from H");
  SeparationCertificate cert;
  cert.degree = rb.index();
  if (!rb.in_k(w)) {
    cert.kind = CertKind::Permutation;
    cert.size_bound = detail::perm_size_bound(rb);
    return cert;
  }
  cert.kind = CertKind::ModP;
  cert.wit = witness(rb.phi(w));
  cert.p = least_prime_not_dividing(cert.wit.z);
  cert.size_bound = detail::modp_size_bound(rb, cert.p);
  return cert;
}

// Full re-derivation of a claimed certificate. Checks the word really avoids
// H, the claimed quotient really separates, and every quoted number matches
// a fresh computation. Throws CertificateError with the first discrepancy.
inline void verify_certificate(const RepresentationBundle& rb, const Word& w,
                               const SeparationCertificate& cert) {
  if (rb.in_h(w)) throw CertificateError("word lies in H");
  if (cert.degree != rb.index())
    throw CertificateError("certificate degree differs from the cover's sheet count");

  if (cert.kind == CertKind::Permutation) {
    if (rb.in_k(w))
      throw CertificateError("permutation certificate for a word inside K");
    if (rb.cosets().act(rb.cover().basepoint(), geodesic_reduce(rb.graph(), w)) ==
        rb.cover().basepoint())
      throw CertificateError("word fixes the base sheet, permutation does not separate");
    for (const Word& h : rb.generators())
      if (rb.cosets().act(rb.cover().basepoint(), h) != rb.cover().basepoint())
        throw CertificateError("a subgroup generator moves the base sheet");
    if (cert.size_bound != detail::perm_size_bound(rb))
      throw CertificateError("permutation size bound does not recompute");
    return;
  }

  if (!rb.in_k(w)) throw CertificateError("mod-p certificate for a word outside K");
  const TitsPair pair = rb.phi(w);
  const int n = pair.plain.dim();
  if (cert.wit.row < 0 || cert.wit.row >= n || cert.wit.col < 0 || cert.wit.col >= n)
    throw CertificateError("witness coordinate out of range");
  const WitnessInteger fresh = witness(pair);
  if (fresh.row != cert.wit.row || fresh.col != cert.wit.col || fresh.z != cert.wit.z)
    throw CertificateError("witness entry does not recompute");
  if (cert.p < 2 || cert.p != least_prime_not_dividing(cert.wit.z))
    throw CertificateError("p is not the least prime avoiding the witness");
  if (cert.size_bound != detail::modp_size_bound(rb, cert.p))
    throw CertificateError("mod-p size bound does not recompute");

  const BigInt p(cert.p);
  // The word's induced pair must disagree at the witness inside the base
  // block even after reduction mod p.
  const InducedPair iw = rb.induce(geodesic_reduce(rb.graph(), w));
  const int base = rb.cover().basepoint();
  if (iw.col_of_row[base] != base)
    throw CertificateError("word does not fix the base sheet");
  const IntMatrix dp = iw.blocks[base].plain.mod(p);
  const IntMatrix dt = iw.blocks[base].twisted.mod(p);
  if (dp(cert.wit.row, cert.wit.col) == dt(cert.wit.row, cert.wit.col))
    throw CertificateError("witness vanishes mod p in the induced pair");
  // H must land in the separating subgroup: base sheet fixed, base block
  // halves equal mod p. Checking generators suffices, the condition is a
  // subgroup condition.
  for (const Word& h : rb.generators()) {
    const InducedPair ih = rb.induce(h);
    if (ih.col_of_row[base] != base)
      throw CertificateError("subgroup generator moves the base sheet");
    if (!(ih.blocks[base].plain.mod(p) == ih.blocks[base].twisted.mod(p)))
      throw CertificateError("subgroup generator escapes the separating subgroup mod p");
  }
}

}  // namespace raagsep
