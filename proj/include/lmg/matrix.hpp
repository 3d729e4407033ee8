#pragma once

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "lmg/numeric.hpp"

namespace lmg {

// Dense matrix over an exact scalar (Int or Rat). Row-major storage.
template <typename T>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Mat from_rows(std::initializer_list<std::initializer_list<T>> rows) {
    Mat m(rows.size(), rows.size() ? rows.begin()->size() : 0);
    std::size_t i = 0;
    for (const auto& r : rows) {
      if (r.size() != m.cols_) throw error("ragged matrix literal");
      std::size_t j = 0;
      for (const auto& x : r) m(i, j++) = x;
      ++i;
    }
    return m;
  }

  static Mat from_rows(const std::vector<std::vector<T>>& rows,
                       std::size_t cols) {
    Mat m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw error("ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  friend bool operator==(const Mat& x, const Mat& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }
  friend bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Mat operator*(const Mat& x, const Mat& y) {
    if (x.cols_ != y.rows_) throw error("matrix product shape mismatch");
    Mat p(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const T& xik = x(i, k);
        if (xik == 0) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) p(i, j) += xik * y(k, j);
      }
    return p;
  }

  friend Mat operator+(const Mat& x, const Mat& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
      throw error("matrix sum shape mismatch");
    Mat s = x;
    for (std::size_t i = 0; i < s.a_.size(); ++i) s.a_[i] += y.a_[i];
    return s;
  }

  friend Mat operator-(const Mat& x, const Mat& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
      throw error("matrix difference shape mismatch");
    Mat d = x;
    for (std::size_t i = 0; i < d.a_.size(); ++i) d.a_[i] -= y.a_[i];
    return d;
  }

  friend Mat operator*(const T& c, const Mat& m) {
    Mat s = m;
    for (auto& x : s.a_) x *= c;
    return s;
  }

  // Matrix times column vector.
  std::vector<T> apply(const std::vector<T>& v) const {
    if (v.size() != cols_) throw error("matrix-vector shape mismatch");
    std::vector<T> w(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) w[i] += (*this)(i, j) * v[j];
    return w;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<T> a_;
};

using IMat = Mat<Int>;
using QMat = Mat<Rat>;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

inline QMat to_rational(const IMat& m) {
  QMat q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = Rat(m(i, j));
  return q;
}

inline bool is_integral(const QMat& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!is_integer(m(i, j))) return false;
  return true;
}

inline IMat to_integer(const QMat& m) {
  IMat z(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!is_integer(m(i, j))) throw error("matrix has non-integer entries");
      z(i, j) = m(i, j).get_num();
    }
  return z;
}

inline RatVec to_rational(const IntVec& v) {
  RatVec q(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) q[i] = Rat(v[i]);
  return q;
}

inline bool is_integral(const RatVec& v) {
  for (const auto& x : v)
    if (!is_integer(x)) return false;
  return true;
}

inline IntVec to_integer(const RatVec& v) {
  IntVec z(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!is_integer(v[i])) throw error("vector has non-integer entries");
    z[i] = v[i].get_num();
  }
  return z;
}

inline IntVec add(const IntVec& a, const IntVec& b) {
  IntVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

inline IntVec sub(const IntVec& a, const IntVec& b) {
  IntVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

inline IntVec neg(const IntVec& a) {
  IntVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
  return c;
}

inline bool is_zero(const IntVec& a) {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

// lcm of the denominators; 1 for an empty or integral input.
inline Int common_denominator(const RatVec& v) {
  Int d = 1;
  for (const auto& x : v) d = lcm(d, x.get_den());
  return d;
}

inline Int common_denominator(const QMat& m) {
  Int d = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d = lcm(d, m(i, j).get_den());
  return d;
}

// Bareiss fraction-free elimination; exact, no rational intermediates.
inline Int det(const IMat& m) {
  if (!m.square()) throw error("determinant of non-square matrix");
  std::size_t n = m.rows();
  if (n == 0) return 1;
  IMat a = m;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = divexact(a(i, j) * a(k, k) - a(i, k) * a(k, j), prev);
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

inline Rat det(const QMat& m) {
  if (!m.square()) throw error("determinant of non-square matrix");
  Int d = common_denominator(m);
  IMat z(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rat s = Rat(d) * m(i, j);
      z(i, j) = s.get_num();
    }
  Int dn = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) dn *= d;
  return make_rat(det(z), dn);
}

inline QMat inverse(const QMat& m) {
  if (!m.square()) throw error("inverse of non-square matrix");
  std::size_t n = m.rows();
  QMat a = m, inv = QMat::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) throw error("matrix is singular");
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(k, j), a(p, j));
        std::swap(inv(k, j), inv(p, j));
      }
    Rat piv = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      Rat f = a(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

inline QMat pow(const QMat& m, long e) {
  if (!m.square()) throw error("power of non-square matrix");
  QMat base = e < 0 ? inverse(m) : m;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1
                          : static_cast<unsigned long>(e);
  QMat acc = QMat::identity(m.rows());
  while (k) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

}  // namespace lmg
