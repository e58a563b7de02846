#pragma once

#include <stdexcept>
#include <string>

namespace raagsep {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  using Error::Error;
};

// A structural invariant of a complex is broken (bad ids, inconsistent square
// boundary, label out of range). Distinct from a negative query verdict.
struct StructuralError : Error {
  using Error::Error;
};

struct NotFoldedError : Error {
  using Error::Error;
};

// Folding hit the cell cap. Carries the counts at the moment of the throw.
// Hitting the cap is the expected signal for a subgroup whose convex hull
// does not close up at this budget (possibly not word-quasiconvex).
struct CapExceeded : Error {
  int vertices = 0;
  int edges = 0;
  int squares = 0;
  int cap = 0;
  CapExceeded(int v, int e, int s, int c)
      : Error("cell cap exceeded: " + std::to_string(v) + " vertices + " +
              std::to_string(e) + " edges + " + std::to_string(s) +
              " squares > cap " + std::to_string(c) +
              " (subgroup possibly not word-quasiconvex for this graph)"),
        vertices(v), edges(e), squares(s), cap(c) {}
};

struct InputNotLocallyIsometric : Error {
  using Error::Error;
};

struct NotACover : Error {
  using Error::Error;
};

// A claimed certificate or ledger fails re-verification.
struct CertificateError : Error {
  using Error::Error;
};

// Asked to rewrite/evaluate a word outside K = pi_1 of the completion.
struct NotInK : Error {
  using Error::Error;
};

// Asked for a separation certificate for an element of H.
struct InH : Error {
  using Error::Error;
};

// An element of K \ H with equal matrix pair. Never expected; surfaced loudly.
struct NotSeparableInKButEqual : Error {
  using Error::Error;
};

struct DegenerateFit : Error {
  using Error::Error;
};

struct FamilyValidationError : Error {
  using Error::Error;
};

}  // namespace raagsep
