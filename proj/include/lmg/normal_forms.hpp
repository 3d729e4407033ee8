#pragma once

#include <cstddef>
#include <vector>

#include "lmg/matrix.hpp"
#include "lmg/numeric.hpp"

namespace lmg {

// Row-style Hermite normal form: h = u * m with u unimodular, h in row
// echelon form, pivots positive, entries above a pivot reduced into
// [0, pivot). Zero rows sink to the bottom. h is the canonical
// representative of the row span of m over Z.
struct HnfResult {
  IMat h;
  IMat u;
};

inline HnfResult hnf(const IMat& m) {
  std::size_t rows = m.rows(), cols = m.cols();
  IMat h = m, u = IMat::identity(rows);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && h(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(h(r, j), h(p, j));
    if (p != r)
      for (std::size_t j = 0; j < rows; ++j) std::swap(u(r, j), u(p, j));
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (h(i, c) == 0) continue;
      Int s, t;
      Int g = gcdext(h(r, c), h(i, c), s, t);
      Int ar = divexact(h(r, c), g), ai = divexact(h(i, c), g);
      // [[s, t], [-ai, ar]] has determinant 1; apply to rows r, i.
      for (std::size_t j = 0; j < cols; ++j) {
        Int hr = h(r, j), hi = h(i, j);
        h(r, j) = s * hr + t * hi;
        h(i, j) = ar * hi - ai * hr;
      }
      for (std::size_t j = 0; j < rows; ++j) {
        Int ur = u(r, j), ui = u(i, j);
        u(r, j) = s * ur + t * ui;
        u(i, j) = ar * ui - ai * ur;
      }
    }
    if (h(r, c) < 0) {
      for (std::size_t j = 0; j < cols; ++j) h(r, j) = -h(r, j);
      for (std::size_t j = 0; j < rows; ++j) u(r, j) = -u(r, j);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Int q = fdiv(h(i, c), h(r, c));
      if (q == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) h(i, j) -= q * h(r, j);
      for (std::size_t j = 0; j < rows; ++j) u(i, j) -= q * u(r, j);
    }
    ++r;
  }
  return {h, u};
}

inline std::size_t rank_of_hnf(const IMat& h) {
  std::size_t r = 0;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    bool nonzero = false;
    for (std::size_t j = 0; j < h.cols(); ++j)
      if (h(i, j) != 0) {
        nonzero = true;
        break;
      }
    if (nonzero) ++r;
  }
  return r;
}

// Smith normal form: s = u * m * v with u, v unimodular, s diagonal with
// nonnegative entries d1 | d2 | ... (zeros last).
struct SnfResult {
  IMat s;
  IMat u;
  IMat v;
};

inline SnfResult snf(const IMat& m) {
  std::size_t rows = m.rows(), cols = m.cols();
  IMat s = m, u = IMat::identity(rows), v = IMat::identity(cols);
  std::size_t k = rows < cols ? rows : cols;

  auto row_gcd_op = [&](std::size_t t, std::size_t i) {
    // Zero s(i,t) against the pivot row t. When the pivot divides the entry
    // a plain elimination leaves the pivot row untouched; otherwise a
    // unimodular 2x2 block strictly shrinks the pivot to the gcd.
    Int a = s(t, t), b = s(i, t);
    if (a != 0 && divides(a, b)) {
      Int q = divexact(b, a);
      for (std::size_t j = 0; j < cols; ++j) s(i, j) -= q * s(t, j);
      for (std::size_t j = 0; j < rows; ++j) u(i, j) -= q * u(t, j);
      return;
    }
    Int x, y;
    Int g = gcdext(a, b, x, y);
    Int at = divexact(a, g), ai = divexact(b, g);
    for (std::size_t j = 0; j < cols; ++j) {
      Int st = s(t, j), si = s(i, j);
      s(t, j) = x * st + y * si;
      s(i, j) = at * si - ai * st;
    }
    for (std::size_t j = 0; j < rows; ++j) {
      Int ut = u(t, j), ui = u(i, j);
      u(t, j) = x * ut + y * ui;
      u(i, j) = at * ui - ai * ut;
    }
  };
  auto col_gcd_op = [&](std::size_t t, std::size_t j) {
    Int a = s(t, t), b = s(t, j);
    if (a != 0 && divides(a, b)) {
      Int q = divexact(b, a);
      for (std::size_t i = 0; i < rows; ++i) s(i, j) -= q * s(i, t);
      for (std::size_t i = 0; i < cols; ++i) v(i, j) -= q * v(i, t);
      return;
    }
    Int x, y;
    Int g = gcdext(a, b, x, y);
    Int at = divexact(a, g), aj = divexact(b, g);
    for (std::size_t i = 0; i < rows; ++i) {
      Int st = s(i, t), sj = s(i, j);
      s(i, t) = x * st + y * sj;
      s(i, j) = at * sj - aj * st;
    }
    for (std::size_t i = 0; i < cols; ++i) {
      Int vt = v(i, t), vj = v(i, j);
      v(i, t) = x * vt + y * vj;
      v(i, j) = at * vj - aj * vt;
    }
  };

  for (std::size_t t = 0; t < k; ++t) {
    // Find a nonzero pivot in the trailing block.
    std::size_t pi = t, pj = t;
    bool found = false;
    for (std::size_t i = t; i < rows && !found; ++i)
      for (std::size_t j = t; j < cols && !found; ++j)
        if (s(i, j) != 0) {
          pi = i;
          pj = j;
          found = true;
        }
    if (!found) break;
    if (pi != t)
      for (std::size_t j = 0; j < cols; ++j) std::swap(s(t, j), s(pi, j));
    if (pi != t)
      for (std::size_t j = 0; j < rows; ++j) std::swap(u(t, j), u(pi, j));
    if (pj != t)
      for (std::size_t i = 0; i < rows; ++i) std::swap(s(i, t), s(i, pj));
    if (pj != t)
      for (std::size_t i = 0; i < cols; ++i) std::swap(v(i, t), v(i, pj));

    for (;;) {
      for (std::size_t i = t + 1; i < rows; ++i)
        if (s(i, t) != 0) row_gcd_op(t, i);
      bool col_dirty = false;
      for (std::size_t j = t + 1; j < cols; ++j)
        if (s(t, j) != 0) {
          col_gcd_op(t, j);
          col_dirty = true;
        }
      if (!col_dirty) {
        bool row_dirty = false;
        for (std::size_t i = t + 1; i < rows; ++i)
          if (s(i, t) != 0) row_dirty = true;
        if (!row_dirty) break;
      }
    }
    if (s(t, t) < 0) {
      for (std::size_t j = 0; j < cols; ++j) s(t, j) = -s(t, j);
      for (std::size_t j = 0; j < rows; ++j) u(t, j) = -u(t, j);
    }
  }

  // Enforce the divisibility chain d1 | d2 | ...
  for (bool dirty = true; dirty;) {
    dirty = false;
    for (std::size_t t = 0; t + 1 < k; ++t) {
      if (s(t + 1, t + 1) == 0 || divides(s(t, t), s(t + 1, t + 1))) continue;
      // Fold column t+1 into column t, then re-clear the 2x2 corner.
      for (std::size_t i = 0; i < rows; ++i) s(i, t) += s(i, t + 1);
      for (std::size_t i = 0; i < cols; ++i) v(i, t) += v(i, t + 1);
      row_gcd_op(t, t + 1);
      col_gcd_op(t, t + 1);
      for (;;) {
        bool more = false;
        if (s(t + 1, t) != 0) {
          row_gcd_op(t, t + 1);
          more = true;
        }
        if (s(t, t + 1) != 0) {
          col_gcd_op(t, t + 1);
          more = true;
        }
        if (!more) break;
      }
      if (s(t, t) < 0) {
        for (std::size_t j = 0; j < cols; ++j) s(t, j) = -s(t, j);
        for (std::size_t j = 0; j < rows; ++j) u(t, j) = -u(t, j);
      }
      if (s(t + 1, t + 1) < 0) {
        for (std::size_t j = 0; j < cols; ++j) s(t + 1, j) = -s(t + 1, j);
        for (std::size_t j = 0; j < rows; ++j) u(t + 1, j) = -u(t + 1, j);
      }
      dirty = true;
    }
  }
  return {s, u, v};
}

// Z-basis of the saturated right kernel {x in Z^cols : m x = 0}.
// Computed from the transform rows of hnf(m^T) that map to zero rows;
// since the transform is unimodular, the basis is saturated (every
// integer kernel vector is an integer combination of it).
inline std::vector<IntVec> kernel_basis(const IMat& m) {
  HnfResult r = hnf(m.transpose());
  std::vector<IntVec> basis;
  for (std::size_t i = 0; i < r.h.rows(); ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < r.h.cols(); ++j)
      if (r.h(i, j) != 0) {
        zero = false;
        break;
      }
    if (zero) basis.push_back(r.u.row(i));
  }
  return basis;
}

}  // namespace lmg
