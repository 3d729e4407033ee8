#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "lmg/matrix.hpp"
#include "lmg/normal_forms.hpp"
#include "lmg/numeric.hpp"
#include "lmg/polynomial.hpp"

namespace lmg {

namespace detail {

// Minimal rational-coefficient polynomial arithmetic for characteristic
// matrix minors; coefficients low to high, trailing zeros trimmed.
using QPoly = std::vector<Rat>;

inline void qp_trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline QPoly qp_sub(const QPoly& a, const QPoly& b) {
  QPoly c(a.size() > b.size() ? a.size() : b.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < a.size()) c[i] += a[i];
    if (i < b.size()) c[i] -= b[i];
  }
  qp_trim(c);
  return c;
}

inline QPoly qp_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  qp_trim(c);
  return c;
}

inline IntPoly primitive_from(const QPoly& p) {
  Int d = 1;
  for (const auto& x : p) d = lcm(d, x.get_den());
  std::vector<Int> c(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    Rat s = Rat(d) * p[i];
    c[i] = s.get_num();
  }
  return primitive_part(IntPoly(std::move(c)));
}

// Determinant of the submatrix of the characteristic matrix xI - a given by
// row/column index subsets, by cofactor expansion along the first row.
inline QPoly charmat_minor(const QMat& a, const std::vector<std::size_t>& ri,
                           const std::vector<std::size_t>& ci) {
  std::size_t k = ri.size();
  if (k == 0) return {Rat(1)};
  auto entry = [&](std::size_t i, std::size_t j) -> QPoly {
    QPoly e;
    Rat c0 = -a(ri[i], ci[j]);
    if (ri[i] == ci[j]) {
      e = {c0, Rat(1)};
    } else if (c0 != 0) {
      e = {c0};
    }
    return e;
  };
  if (k == 1) return entry(0, 0);
  QPoly acc;
  std::vector<std::size_t> sub_ri(ri.begin() + 1, ri.end());
  for (std::size_t j = 0; j < k; ++j) {
    QPoly e = entry(0, j);
    if (e.empty()) continue;
    std::vector<std::size_t> sub_ci;
    sub_ci.reserve(k - 1);
    for (std::size_t t = 0; t < k; ++t)
      if (t != j) sub_ci.push_back(ci[t]);
    QPoly term = qp_mul(e, charmat_minor(a, sub_ri, sub_ci));
    if (j % 2) {
      for (auto& x : term) x = -x;
    }
    QPoly sum(acc.size() > term.size() ? acc.size() : term.size());
    for (std::size_t t = 0; t < sum.size(); ++t) {
      if (t < acc.size()) sum[t] += acc[t];
      if (t < term.size()) sum[t] += term[t];
    }
    qp_trim(sum);
    acc = std::move(sum);
  }
  return acc;
}

inline void for_each_subset(std::size_t n, std::size_t k,
                            const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

// Invariant factors of xI - a over Q[x], each cleared to a primitive
// integer polynomial with positive leading coefficient, listed in
// divisibility order with constant factors dropped. Two square rational
// matrices are conjugate over the rationals exactly when their chains agree,
// so this doubles as the GL_n(Q)-conjugacy test (Frobenius form).
inline std::vector<IntPoly> invariant_factors(const QMat& a) {
  if (!a.square()) throw error("invariant factors of non-square matrix");
  std::size_t n = a.rows();
  std::vector<IntPoly> dets(n + 1);  // determinantal divisors, dets[0] = 1
  dets[0] = IntPoly::one();
  for (std::size_t k = 1; k <= n; ++k) {
    IntPoly g;
    detail::for_each_subset(n, k, [&](const std::vector<std::size_t>& rows) {
      if (g.degree() == 0 && !g.is_zero()) return;  // gcd already constant
      detail::for_each_subset(n, k, [&](const std::vector<std::size_t>& cols) {
        if (g.degree() == 0 && !g.is_zero()) return;
        IntPoly m = detail::primitive_from(detail::charmat_minor(a, rows, cols));
        if (m.is_zero()) return;
        g = g.is_zero() ? m : poly_gcd(g, m);
      });
    });
    dets[k] = g.is_zero() ? IntPoly::one() : g;
  }
  std::vector<IntPoly> chain;
  for (std::size_t k = 1; k <= n; ++k) {
    IntPoly f;
    if (!divide_exact(dets[k], dets[k - 1], f))
      throw error("determinantal divisor chain is not divisible");
    if (f.degree() >= 1) chain.push_back(f);
  }
  return chain;
}

// Largest invariant factor = minimal polynomial (primitive integer form).
inline IntPoly minimal_polynomial(const QMat& a) {
  std::vector<IntPoly> chain = invariant_factors(a);
  if (chain.empty()) return IntPoly::one();  // only for 0x0 input
  return chain.back();
}

struct OrderResult {
  bool finite = false;
  Int order = 0;  // meaningful when finite
  friend bool operator==(const OrderResult&, const OrderResult&) = default;
};

// Multiplicative order of an invertible rational matrix: finite exactly when
// the minimal polynomial is squarefree, monic over Z, and a product of
// distinct cyclotomics phi_d with phi(d) <= n; the order is the lcm of the d.
inline OrderResult matrix_order(const QMat& a) {
  if (!a.square()) throw error("order of non-square matrix");
  std::size_t n = a.rows();
  if (det(a) == 0) throw error("order of singular matrix");
  if (n == 0) return {true, 1};
  IntPoly mu = minimal_polynomial(a);
  if (mu.leading() != 1) return {false, 0};
  if (poly_gcd(mu, derivative(mu)).degree() > 0) return {false, 0};
  Int m = 1;
  unsigned long bound = 2 * static_cast<unsigned long>(n) *
                            static_cast<unsigned long>(n) + 2;
  for (unsigned long d = 1; d <= bound && mu.degree() > 0; ++d) {
    if (euler_phi(d) > n) continue;
    IntPoly q;
    if (divide_exact(mu, cyclotomic(d), q)) {
      mu = q;
      m = lcm(m, Int(d));
    }
  }
  if (mu != IntPoly::one()) return {false, 0};
  return {true, m};
}

// Z-basis (saturated) of the rational solution space {X : X A^eps = Abar X}.
// The returned matrices are integral and span the space over Q; every
// integral solution is an integer combination of them.
inline std::vector<IMat> conjugator_space(const QMat& a, const QMat& abar,
                                          int eps) {
  if (!a.square() || !abar.square() || a.rows() != abar.rows())
    throw error("conjugator space needs square matrices of equal size");
  if (eps != 1 && eps != -1) throw error("eps must be +1 or -1");
  std::size_t n = a.rows();
  QMat m = eps == 1 ? a : inverse(a);
  QMat sys(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t row = i * n + j;
      for (std::size_t b = 0; b < n; ++b) sys(row, i * n + b) += m(b, j);
      for (std::size_t ax = 0; ax < n; ++ax)
        sys(row, ax * n + j) -= abar(i, ax);
    }
  Int d = common_denominator(sys);
  IMat isys(n * n, n * n);
  for (std::size_t i = 0; i < n * n; ++i)
    for (std::size_t j = 0; j < n * n; ++j) {
      Rat s = Rat(d) * sys(i, j);
      isys(i, j) = s.get_num();
    }
  std::vector<IntVec> kernel = kernel_basis(isys);
  std::vector<IMat> basis;
  basis.reserve(kernel.size());
  for (const auto& v : kernel) {
    IMat x(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) x(i, j) = v[i * n + j];
    basis.push_back(x);
  }
  return basis;
}

}  // namespace lmg
