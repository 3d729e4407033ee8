#pragma once

#include <cstddef>
#include <set>
#include <vector>

#include "lmg/matrix.hpp"
#include "lmg/normal_forms.hpp"
#include "lmg/numeric.hpp"

namespace lmg {

// Full-rank subgroup of Q^n, stored as (1/den) * rowspan_Z(basis) with
// basis an n x n integral row Hermite form (upper triangular, positive
// diagonal, above-diagonal entries reduced mod the pivot) and den minimal.
// The representation is unique per subgroup, so operator== is exact equality.
class Lattice {
 public:
  static Lattice standard(std::size_t n) {
    Lattice l;
    l.n_ = n;
    l.den_ = 1;
    l.basis_ = IMat::identity(n);
    return l;
  }

  // Canonical lattice spanned by the given rational row vectors; the rows
  // must span Q^n (full rank), any row count is accepted.
  static Lattice from_generators(const std::vector<RatVec>& rows,
                                 std::size_t n) {
    Int d = 1;
    for (const auto& r : rows) {
      if (r.size() != n) throw error("lattice generator arity mismatch");
      d = lcm(d, common_denominator(r));
    }
    IMat m(rows.size(), n);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Rat s = Rat(d) * rows[i][j];
        m(i, j) = s.get_num();
      }
    IMat h = hnf(m).h;
    if (rank_of_hnf(h) != n) throw error("lattice generators are not full rank");
    IMat top(n, n);
    Int g = d;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        top(i, j) = h(i, j);
        g = gcd(g, top(i, j));
      }
    Lattice l;
    l.n_ = n;
    l.den_ = divexact(d, g);
    l.basis_ = IMat(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) l.basis_(i, j) = divexact(top(i, j), g);
    return l;
  }

  std::size_t n() const { return n_; }
  const Int& den() const { return den_; }
  const IMat& basis() const { return basis_; }
  bool is_integral() const { return den_ == 1; }

  // Rational basis rows (basis / den).
  std::vector<RatVec> generator_rows() const {
    std::vector<RatVec> rows(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      rows[i].resize(n_);
      for (std::size_t j = 0; j < n_; ++j)
        rows[i][j] = make_rat(basis_(i, j), den_);
    }
    return rows;
  }

  bool contains(const RatVec& v) const {
    if (v.size() != n_) throw error("lattice membership arity mismatch");
    RatVec w(n_);
    for (std::size_t i = 0; i < n_; ++i) w[i] = Rat(den_) * v[i];
    if (!is_integral(w)) return false;
    IntVec z = to_integer(w);
    // basis_ is upper triangular with positive diagonal.
    for (std::size_t i = 0; i < n_; ++i) {
      if (!divides(basis_(i, i), z[i])) return false;
      Int q = divexact(z[i], basis_(i, i));
      for (std::size_t j = i; j < n_; ++j) z[j] -= q * basis_(i, j);
    }
    return true;
  }

  bool contains(const IntVec& v) const { return contains(to_rational(v)); }

  // |det| of the rational basis, as a positive rational: the covolume.
  Rat covolume() const {
    Int d = 1;
    for (std::size_t i = 0; i < n_; ++i) d *= basis_(i, i);
    Int dn = 1;
    for (std::size_t i = 0; i < n_; ++i) dn *= den_;
    return make_rat(d, dn);
  }

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.n_ == b.n_ && a.den_ == b.den_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Lattice& a, const Lattice& b) {
    return !(a == b);
  }

 private:
  std::size_t n_ = 0;
  Int den_ = 1;
  IMat basis_;

  static bool is_integral(const RatVec& v) { return lmg::is_integral(v); }
};

enum class LatticeOrder { Equal, ProperSub, ProperSup, Incomparable };

struct LatticeCompare {
  LatticeOrder order;
  Int index;  // index of the smaller in the larger; 1 for Equal, 0 otherwise
};

inline bool lattice_subset(const Lattice& a, const Lattice& b) {
  for (const auto& row : a.generator_rows())
    if (!b.contains(row)) return false;
  return true;
}

inline LatticeCompare lattice_compare(const Lattice& a, const Lattice& b) {
  if (a.n() != b.n()) throw error("lattice comparison arity mismatch");
  if (a == b) return {LatticeOrder::Equal, 1};
  bool ab = lattice_subset(a, b), ba = lattice_subset(b, a);
  if (ab) {
    Rat idx = a.covolume() / b.covolume();
    return {LatticeOrder::ProperSub, idx.get_num()};
  }
  if (ba) {
    Rat idx = b.covolume() / a.covolume();
    return {LatticeOrder::ProperSup, idx.get_num()};
  }
  return {LatticeOrder::Incomparable, 0};
}

// Image lattice {m v : v in l}; m must be invertible.
inline Lattice apply_matrix(const QMat& m, const Lattice& l) {
  if (!m.square() || m.rows() != l.n())
    throw error("lattice image shape mismatch");
  if (det(m) == 0) throw error("lattice image under singular matrix");
  std::vector<RatVec> rows;
  rows.reserve(l.n());
  for (const auto& r : l.generator_rows()) rows.push_back(m.apply(r));
  return Lattice::from_generators(rows, l.n());
}

// Intersection, computed from the kernel of the stacked dual system:
// x = a^T M1 = b^T M2 over Z exactly when [M1^T | -M2^T](a;b) = 0, and the
// saturated kernel basis yields a generating set of the intersection.
inline Lattice intersect(const Lattice& a, const Lattice& b) {
  if (a.n() != b.n()) throw error("lattice intersection arity mismatch");
  std::size_t n = a.n();
  Int d = lcm(a.den(), b.den());
  Int ka = divexact(d, a.den()), kb = divexact(d, b.den());
  // Stack [M1^T | -M2^T] where M1 = ka * basis(a), M2 = kb * basis(b).
  IMat sys(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      sys(i, j) = ka * a.basis()(j, i);
      sys(i, n + j) = -kb * b.basis()(j, i);
    }
  std::vector<IntVec> ker = kernel_basis(sys);
  std::vector<RatVec> rows;
  rows.reserve(ker.size());
  for (const auto& v : ker) {
    // The first n coordinates of the kernel vector express the common row
    // as an integer combination of M1's rows.
    RatVec x(n, Rat(0));
    for (std::size_t j = 0; j < n; ++j) {
      Int acc = 0;
      for (std::size_t i = 0; i < n; ++i) acc += v[i] * ka * a.basis()(i, j);
      x[j] = make_rat(acc, d);
    }
    rows.push_back(x);
  }
  return Lattice::from_generators(rows, n);
}

// Membership in the ascending union U_j a^{-j}(Z^n), j >= 0, for an integral
// invertible matrix a: equivalently some a^j v is integral. Decided by
// iterating c <- a c over (Z/d)^n with d the denominator of v; the orbit is
// finite, so either 0 is reached or a state repeats and the answer is no.
// Fast filter: a prime dividing d but not det(a) rules membership out.
inline bool union_member(const IMat& a, const RatVec& v) {
  if (!a.square() || a.rows() != v.size())
    throw error("union membership shape mismatch");
  Int da = det(a);
  if (da == 0) throw error("union membership for singular matrix");
  Int d = common_denominator(v);
  if (d == 1) return true;
  // Every prime of d must divide det(a).
  Int e = d;
  for (;;) {
    Int g = gcd(e, da);
    if (g == 1) break;
    e = divexact(e, g);
    while (divides(g, e)) e = divexact(e, g);
  }
  if (e != 1) return false;
  std::size_t n = a.rows();
  IntVec c(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rat s = Rat(d) * v[i];
    c[i] = fmod(s.get_num(), d);
  }
  std::set<IntVec> seen;
  for (;;) {
    if (is_zero(c)) return true;
    if (!seen.insert(c).second) return false;
    IntVec next(n);
    for (std::size_t i = 0; i < n; ++i) {
      Int acc = 0;
      for (std::size_t j = 0; j < n; ++j) acc += a(i, j) * c[j];
      next[i] = fmod(acc, d);
    }
    c = std::move(next);
  }
}

// Union-module transport test for integral a, abar with abar b = b a:
// U_j a^j(Z^n) = U_j a^j b^{-1}(Z^n) holds exactly when every column of b
// lies in the union module of abar and every column of b^{-1} lies in the
// union module of a.
inline bool union_condition(const IMat& a, const IMat& abar, const QMat& b) {
  std::size_t n = a.rows();
  if (!a.square() || !abar.square() || abar.rows() != n || !b.square() ||
      b.rows() != n)
    throw error("union condition shape mismatch");
  if (det(b) == 0) throw error("union condition: b is singular");
  if (to_rational(abar) * b != b * to_rational(a))
    throw error("not a conjugator");
  QMat binv = inverse(b);
  for (std::size_t j = 0; j < n; ++j) {
    if (!union_member(abar, b.col(j))) return false;
    if (!union_member(a, binv.col(j))) return false;
  }
  return true;
}

// Canonical residue of an integral vector modulo an integral lattice:
// the unique representative with coordinates in [0, pivot) against the
// upper-triangular Hermite basis.
inline IntVec canonical_residue(const Lattice& l, const IntVec& v) {
  if (!l.is_integral()) throw error("residue requires an integral lattice");
  if (v.size() != l.n()) throw error("residue arity mismatch");
  IntVec w = v;
  for (std::size_t i = 0; i < l.n(); ++i) {
    Int q = fdiv(w[i], l.basis()(i, i));
    if (q == 0) continue;
    for (std::size_t j = i; j < l.n(); ++j) w[j] -= q * l.basis()(i, j);
  }
  return w;
}

// [Z^n : l] for an integral full-rank lattice.
inline Int index_in_standard(const Lattice& l) {
  if (!l.is_integral()) throw error("index requires an integral lattice");
  Int d = 1;
  for (std::size_t i = 0; i < l.n(); ++i) d *= l.basis()(i, i);
  return d;
}

// All canonical residues of Z^n mod l, in lexicographic coordinate order.
inline std::vector<IntVec> residue_transversal(const Lattice& l) {
  if (!l.is_integral()) throw error("transversal requires an integral lattice");
  std::size_t n = l.n();
  std::vector<IntVec> out;
  IntVec w(n, Int(0));
  for (;;) {
    out.push_back(w);  // box coordinates are already canonical residues
    std::size_t i = n;
    while (i > 0) {
      --i;
      w[i] += 1;
      if (w[i] < l.basis()(i, i)) break;
      w[i] = 0;
      if (i == 0) return out;
    }
    if (n == 0) return out;
  }
}

}  // namespace lmg
