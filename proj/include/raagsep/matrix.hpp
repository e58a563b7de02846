#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "raagsep/errors.hpp"

namespace raagsep {

using BigInt = boost::multiprecision::cpp_int;

// Dense square matrix over arbitrary-precision integers. All arithmetic is
// exact; equality is entrywise. Row-major storage.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * dim) {}

  static IntMatrix identity(int dim) {
    IntMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1;
    return m;
  }

  int dim() const { return dim_; }

  BigInt& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * dim_ + c]; }
  const BigInt& operator()(int r, int c) const {
    return a_[static_cast<std::size_t>(r) * dim_ + c];
  }

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    const int d = x.dim_;
    if (d != y.dim_) throw Error("matrix dimension mismatch");
    IntMatrix out(d);
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k) {
        const BigInt& xik = x(i, k);
        if (xik == 0) continue;
        for (int j = 0; j < d; ++j) out(i, j) += xik * y(k, j);
      }
    return out;
  }

  friend IntMatrix operator-(const IntMatrix& x, const IntMatrix& y) {
    const int d = x.dim_;
    if (d != y.dim_) throw Error("matrix dimension mismatch");
    IntMatrix out(d);
    for (std::size_t i = 0; i < x.a_.size(); ++i) out.a_[i] = x.a_[i] - y.a_[i];
    return out;
  }

  bool operator==(const IntMatrix& o) const { return dim_ == o.dim_ && a_ == o.a_; }

  bool is_identity() const {
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
  }

  bool is_zero() const {
    for (const auto& v : a_)
      if (v != 0) return false;
    return true;
  }

  IntMatrix pow(unsigned e) const {
    IntMatrix result = identity(dim_);
    IntMatrix base = *this;
    while (e) {
      if (e & 1u) result = result * base;
      base = base * base;
      e >>= 1u;
    }
    return result;
  }

  BigInt trace() const {
    BigInt t = 0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  // Canonical residues in [0, p).
  IntMatrix mod(const BigInt& p) const {
    IntMatrix out(dim_);
    for (std::size_t i = 0; i < a_.size(); ++i) {
      BigInt r = a_[i] % p;
      if (r < 0) r += p;
      out.a_[i] = r;
    }
    return out;
  }

 private:
  int dim_ = 0;
  std::vector<BigInt> a_;
};

// Natural log of a positive big integer, without materializing a double
// overflow: top bits give the mantissa, the rest contributes bit_length*ln2.
inline double log_bigint(const BigInt& z) {
  if (z <= 0) throw Error("log_bigint needs a positive integer");
  const auto bits = boost::multiprecision::msb(z) + 1;
  if (bits <= 52) return std::log(z.convert_to<double>());
  const unsigned shift = static_cast<unsigned>(bits - 52);
  BigInt top = z >> shift;
  return std::log(top.convert_to<double>()) + shift * std::log(2.0);
}

inline BigInt factorial_big(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace raagsep
