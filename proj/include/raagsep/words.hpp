#pragma once

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "raagsep/errors.hpp"
#include "raagsep/graph.hpp"

namespace raagsep {

struct Letter {
  int gen = 0;
  int sign = +1;  // +1 or -1
  Letter inv() const { return {gen, -sign}; }
  bool operator==(const Letter&) const = default;
};

using Word = std::vector<Letter>;

// Letter order used by normal forms: by generator index, positive before
// negative within a generator.
inline bool letter_less(const Letter& a, const Letter& b) {
  if (a.gen != b.gen) return a.gen < b.gen;
  return a.sign > b.sign;
}

inline Word inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inv());
  return out;
}

inline Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline Word word_pow(const Word& w, int m) {
  if (m < 0) return word_pow(inverse(w), -m);
  Word out;
  out.reserve(w.size() * static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

// Word literal: space-separated tokens, "a" or "a^-1".
inline Word parse_word(const DefiningGraph& g, std::string_view text) {
  Word out;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    int sign = +1;
    std::string name = tok;
    if (auto caret = tok.find('^'); caret != std::string::npos) {
      name = tok.substr(0, caret);
      std::string expo = tok.substr(caret + 1);
      if (expo != "-1")
        throw ParseError("word token '" + tok + "': only ^-1 is supported");
      sign = -1;
    }
    int gen = g.index(name);
    if (gen < 0) throw ParseError("word token '" + tok + "': unknown generator");
    out.push_back({gen, sign});
  }
  return out;
}

inline std::string format_word(const DefiningGraph& g, const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += g.name(w[i].gen);
    if (w[i].sign < 0) out += "^-1";
  }
  return out;
}

// One deletion pass: find the leftmost i (then smallest j > i) such that
// w[i] and w[j] are mutually inverse letters and every letter strictly
// between commutes with that generator. Returns true if a pair was deleted.
inline bool delete_one_pair(const DefiningGraph& g, Word& w) {
  const int n = static_cast<int>(w.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (w[j].gen == w[i].gen) {
        if (w[j].sign == -w[i].sign) {
          w.erase(w.begin() + j);
          w.erase(w.begin() + i);
          return true;
        }
        // Same generator, same sign: still commutes; keep scanning.
      }
      if (!g.commutes(w[j].gen, w[i].gen)) break;
    }
  }
  return false;
}

// Deletes shuffle-cancellable inverse pairs to a fixpoint. The fixpoint is a
// geodesic spelling of the same element; its length is the word length.
inline Word geodesic_reduce(const DefiningGraph& g, Word w) {
  while (delete_one_pair(g, w)) {
  }
  return w;
}

inline std::size_t word_length(const DefiningGraph& g, const Word& w) {
  return geodesic_reduce(g, w).size();
}

// Canonical spelling: the lexicographically least geodesic under letter_less,
// built left-greedily. A letter may be emitted first iff it commutes with
// every letter before it.
inline Word normal_form(const DefiningGraph& g, const Word& w) {
  Word rem = geodesic_reduce(g, w);
  Word out;
  out.reserve(rem.size());
  while (!rem.empty()) {
    int best = -1;
    for (int pos = 0; pos < static_cast<int>(rem.size()); ++pos) {
      bool movable = true;
      for (int k = 0; k < pos; ++k) {
        if (!g.commutes(rem[k].gen, rem[pos].gen)) {
          movable = false;
          break;
        }
      }
      if (movable && (best < 0 || letter_less(rem[pos], rem[best]))) best = pos;
    }
    out.push_back(rem[best]);
    rem.erase(rem.begin() + best);
  }
  return out;
}

inline bool same_element(const DefiningGraph& g, const Word& a, const Word& b) {
  return normal_form(g, a) == normal_form(g, b);
}

}  // namespace raagsep
