#ifndef SDG_LINALG_HPP
#define SDG_LINALG_HPP

#include <vector>

#include "sdg/weil.hpp"

namespace sdg {

// Dense rational matrix, used for linear maps (derivatives, A1/B1 blocks).
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(unsigned rows, unsigned cols)
      : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols, Rational(0)) {}
  static RatMatrix identity(unsigned n) {
    RatMatrix m(n, n);
    for (unsigned i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  unsigned rows() const { return rows_; }
  unsigned cols() const { return cols_; }
  Rational& at(unsigned r, unsigned c) { return a_.at(std::size_t(r) * cols_ + c); }
  const Rational& at(unsigned r, unsigned c) const {
    return a_.at(std::size_t(r) * cols_ + c);
  }

  bool operator==(const RatMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool is_zero() const {
    for (const auto& x : a_)
      if (x != 0) return false;
    return true;
  }
  bool is_identity() const {
    if (rows_ != cols_) return false;
    return *this == identity(rows_);
  }

  Vec apply(const Vec& v) const {
    Vec out(v.signature(), rows_);
    for (unsigned r = 0; r < rows_; ++r) {
      WeilElement acc = WeilElement::zero(v.signature());
      for (unsigned c = 0; c < cols_; ++c) acc = acc + v[c] * at(r, c);
      out[r] = acc;
    }
    return out;
  }

  // Exact inverse by Gauss-Jordan elimination; throws on singular input.
  RatMatrix inverse() const {
    if (rows_ != cols_) throw error("inverse of non-square matrix");
    RatMatrix a = *this, inv = identity(rows_);
    for (unsigned col = 0; col < cols_; ++col) {
      unsigned piv = col;
      while (piv < rows_ && a.at(piv, col) == 0) ++piv;
      if (piv == rows_) throw error("matrix is singular over the rationals");
      for (unsigned c = 0; c < cols_; ++c) {
        std::swap(a.at(piv, c), a.at(col, c));
        std::swap(inv.at(piv, c), inv.at(col, c));
      }
      Rational p = a.at(col, col);
      for (unsigned c = 0; c < cols_; ++c) {
        a.at(col, c) /= p;
        inv.at(col, c) /= p;
      }
      for (unsigned r = 0; r < rows_; ++r) {
        if (r == col || a.at(r, col) == 0) continue;
        Rational f = a.at(r, col);
        for (unsigned c = 0; c < cols_; ++c) {
          a.at(r, c) -= f * a.at(col, c);
          inv.at(r, c) -= f * inv.at(col, c);
        }
      }
    }
    return inv;
  }

 private:
  unsigned rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

// Bilinear map V x V -> W as a w x n x n coefficient tensor. Instantiated
// with Rational coefficients (connection symbols at rational points, D2
// group laws) and with WeilElement coefficients (symbols evaluated at
// infinitesimally displaced base points).
template <class T>
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(unsigned w, unsigned n)
      : w_(w), n_(n), a_(std::size_t(w) * n * n, T{}) {}

  unsigned out_dim() const { return w_; }
  unsigned in_dim() const { return n_; }
  T& at(unsigned i, unsigned j, unsigned k) {
    return a_.at((std::size_t(i) * n_ + j) * n_ + k);
  }
  const T& at(unsigned i, unsigned j, unsigned k) const {
    return a_.at((std::size_t(i) * n_ + j) * n_ + k);
  }

  bool operator==(const Tensor3& o) const {
    return w_ == o.w_ && n_ == o.n_ && a_ == o.a_;
  }

  Tensor3 transposed() const {  // swap the two vector slots
    Tensor3 t(w_, n_);
    for (unsigned i = 0; i < w_; ++i)
      for (unsigned j = 0; j < n_; ++j)
        for (unsigned k = 0; k < n_; ++k) t.at(i, j, k) = at(i, k, j);
    return t;
  }

  bool is_symmetric() const { return *this == transposed(); }
  bool is_zero() const {
    for (const auto& x : a_)
      if (!entry_is_zero(x)) return false;
    return true;
  }

  Vec apply(const Vec& u, const Vec& v) const {
    Vec out(common_signature(u, v), w_);
    for (unsigned i = 0; i < w_; ++i) {
      WeilElement acc = WeilElement::zero(out.signature());
      for (unsigned j = 0; j < n_; ++j)
        for (unsigned k = 0; k < n_; ++k) {
          if (entry_is_zero(at(i, j, k))) continue;
          acc = acc + scale(u[j] * v[k], at(i, j, k));
        }
      out[i] = acc;
    }
    return out;
  }

 private:
  static bool entry_is_zero(const Rational& x) { return x == 0; }
  static bool entry_is_zero(const WeilElement& x) { return x.is_zero(); }
  static WeilElement scale(const WeilElement& x, const Rational& c) {
    return x * c;
  }
  static WeilElement scale(const WeilElement& x, const WeilElement& c) {
    return x * c;
  }
  static SigPtr common_signature(const Vec& u, const Vec& v) {
    if (u.signature() != v.signature())
      throw error("tensor application across signatures");
    return u.signature();
  }

  unsigned w_ = 0, n_ = 0;
  std::vector<T> a_;
};

using RatTensor3 = Tensor3<Rational>;
using WeilTensor3 = Tensor3<WeilElement>;

inline RatTensor3 symmetrized(const RatTensor3& t) {
  RatTensor3 s(t.out_dim(), t.in_dim());
  for (unsigned i = 0; i < t.out_dim(); ++i)
    for (unsigned j = 0; j < t.in_dim(); ++j)
      for (unsigned k = 0; k < t.in_dim(); ++k)
        s.at(i, j, k) = (t.at(i, j, k) + t.at(i, k, j)) / 2;
  return s;
}

inline WeilTensor3 symmetrized(const WeilTensor3& t) {
  WeilTensor3 s(t.out_dim(), t.in_dim());
  for (unsigned i = 0; i < t.out_dim(); ++i)
    for (unsigned j = 0; j < t.in_dim(); ++j)
      for (unsigned k = 0; k < t.in_dim(); ++k)
        s.at(i, j, k) = (t.at(i, j, k) + t.at(i, k, j)) * rat(1, 2);
  return s;
}

template <class T>
Tensor3<T> antisymmetric_part_times_two(const Tensor3<T>& t) {
  Tensor3<T> s(t.out_dim(), t.in_dim());
  for (unsigned i = 0; i < t.out_dim(); ++i)
    for (unsigned j = 0; j < t.in_dim(); ++j)
      for (unsigned k = 0; k < t.in_dim(); ++k)
        s.at(i, j, k) = t.at(i, j, k) - t.at(i, k, j);
  return s;
}

}  // namespace sdg

#endif
