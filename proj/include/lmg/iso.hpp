#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lmg/conjugacy.hpp"
#include "lmg/group.hpp"
#include "lmg/lattice.hpp"
#include "lmg/matrix.hpp"
#include "lmg/normal_forms.hpp"
#include "lmg/numeric.hpp"
#include "lmg/polynomial.hpp"

namespace lmg {

// Baumslag-Solitar isomorphism: BS(p,q) = BS(p',q') exactly when
// {p',q'} = {p,q} or {p',q'} = {-p,-q} as unordered pairs.
inline bool bs_classify(long p, long q, long pbar, long qbar) {
  if (p == 0 || q == 0 || pbar == 0 || qbar == 0)
    throw error("BS parameters must be nonzero");
  auto pair_eq = [](long a, long b, long c, long d) {
    return (a == c && b == d) || (a == d && b == c);
  };
  return pair_eq(pbar, qbar, p, q) || pair_eq(pbar, qbar, -p, -q);
}

// --- witnesses and certificates ----------------------------------------------

// Unimodular change of basis: Abar = B A^eps B^{-1} with Lbar = B L
// (eps = +1) or Lbar = B(AL) (eps = -1).
struct CondI {
  IMat b;
  int eps;
};

// Rational conjugator for the L = Z^n (ascending) case, after normalizing
// each side by (A, L) -> (A^{-1}, AL) when AL = Z^n instead: Abar = B A B^{-1}
// and the union modules of A and of A against B^{-1} coincide.
struct CondII {
  QMat b;
  bool flipped_left = false;
  bool flipped_right = false;
};

// Finite-order block twist: P A P^{-1} = [[1,0],[u,C]] and
// Pbar Abar Pbar^{-1} = [[1,0],[u,C^q]] with C of finite order m, gcd(q,m)=1,
// all lattices standard, P and Pbar unimodular.
struct CondIII {
  IMat p;
  IMat pbar;
  IMat c;
  IntVec u;
  Int q;
  Int m;
};

using Witness = std::variant<CondI, CondII, CondIII>;

enum class CertificateKind {
  Rank,
  CoarseClass,
  Abelianization,
  QConjugacy,
  IndexProfile
};

inline const char* certificate_kind_name(CertificateKind k) {
  switch (k) {
    case CertificateKind::Rank: return "rank";
    case CertificateKind::CoarseClass: return "coarse_class";
    case CertificateKind::Abelianization: return "abelianization";
    case CertificateKind::QConjugacy: return "q_conjugacy";
    case CertificateKind::IndexProfile: return "index_profile";
  }
  return "?";
}

// A non-isomorphism certificate: the failing invariant and its two values.
struct Certificate {
  CertificateKind kind;
  std::string left;
  std::string right;
};

struct IsoBudget {
  int height = 5;                       // coefficient/entry height bound
  long long max_candidates = 1000000;   // per condition
  int cond3_height = 3;                 // entry bound for block-form searches
  std::size_t cond3_max_n = 3;
};

struct BudgetReport {
  int height = 0;
  long long max_candidates = 0;
  long long cand_i = 0;
  long long cand_ii = 0;
  long long cand_iii = 0;
  std::vector<std::string> exhausted;  // searched conditions with no witness
};

enum class Verdict { Iso, NotIso, Unknown };

struct IsoVerdict {
  Verdict verdict;
  std::optional<Witness> witness;
  std::optional<Certificate> certificate;
  BudgetReport budget;
};

// --- invariant rendering -----------------------------------------------------

inline std::string describe(const Classification& c) {
  switch (c.cls) {
    case CoarseClass::Polycyclic:
      return "polycyclic(hirsch=" + std::to_string(c.hirsch) + ")";
    case CoarseClass::MetabelianNotPolycyclic:
      return "metabelian_not_polycyclic";
    case CoarseClass::NonMetabelian:
      return "non_metabelian";
  }
  return "?";
}

inline std::string describe(const AbelianInvariants& ab) {
  std::string s = "free_rank=" + std::to_string(ab.free_rank) + " torsion=[";
  for (std::size_t i = 0; i < ab.torsion.size(); ++i) {
    if (i) s += ",";
    s += ab.torsion[i].get_str();
  }
  return s + "]";
}

inline std::string describe(const std::vector<IntPoly>& chain) {
  std::string s = "[";
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (i) s += ", ";
    s += poly_to_string(chain[i]);
  }
  return s + "]";
}

// --- witness verification ----------------------------------------------------

namespace detail {

inline bool unimodular(const IMat& m) {
  if (!m.square()) return false;
  Int d = det(m);
  return d == 1 || d == -1;
}

// Normalized ascending form of a metabelian-or-polycyclic datum:
// (A, L) itself when L = Z^n, else (A^{-1}, AL). Returns the integral
// matrix of the normalized side; flipped reports which branch was taken.
struct AscendingForm {
  IMat a;
  bool flipped;
};

inline std::optional<AscendingForm> ascending_form(const GroupDatum& g) {
  Lattice std_lat = Lattice::standard(g.n());
  if (g.l() == std_lat) return AscendingForm{to_integer(g.a()), false};
  if (g.al() == std_lat) return AscendingForm{to_integer(g.a_inv()), true};
  return std::nullopt;
}

inline IMat block_matrix(const IntVec& u, const IMat& c) {
  std::size_t n = c.rows() + 1;
  IMat m(n, n);
  m(0, 0) = 1;
  for (std::size_t i = 1; i < n; ++i) {
    m(i, 0) = u[i - 1];
    for (std::size_t j = 1; j < n; ++j) m(i, j) = c(i - 1, j - 1);
  }
  return m;
}

// Splits m as [[1,0...],[u,C]]; nullopt when the first row is not (1,0,..,0).
inline std::optional<std::pair<IntVec, IMat>> split_block(const IMat& m) {
  std::size_t n = m.rows();
  if (n == 0 || m(0, 0) != 1) return std::nullopt;
  for (std::size_t j = 1; j < n; ++j)
    if (m(0, j) != 0) return std::nullopt;
  IntVec u(n - 1);
  IMat c(n - 1, n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    u[i - 1] = m(i, 0);
    for (std::size_t j = 1; j < n; ++j) c(i - 1, j - 1) = m(i, j);
  }
  return std::make_pair(std::move(u), std::move(c));
}

inline IMat int_pow(const IMat& m, const Int& e) {
  // e >= 0; m unimodular in all call sites so intermediate growth is tame.
  IMat acc = IMat::identity(m.rows());
  IMat base = m;
  Int k = e;
  while (k > 0) {
    if (fmod(k, 2) == 1) acc = acc * base;
    base = base * base;
    k = fdiv(k, 2);
  }
  return acc;
}

}  // namespace detail

inline bool verify_witness(const GroupDatum& g1, const GroupDatum& g2,
                           const Witness& w) {
  std::size_t n = g1.n();
  if (g2.n() != n) return false;
  if (const auto* c1 = std::get_if<CondI>(&w)) {
    if (c1->eps != 1 && c1->eps != -1) return false;
    if (c1->b.rows() != n || !detail::unimodular(c1->b)) return false;
    QMat b = to_rational(c1->b);
    QMat binv = inverse(b);
    const QMat& core = c1->eps == 1 ? g1.a() : g1.a_inv();
    if (b * core * binv != g2.a()) return false;
    const Lattice& src = c1->eps == 1 ? g1.l() : g1.al();
    return apply_matrix(b, src) == g2.l();
  }
  if (const auto* c2 = std::get_if<CondII>(&w)) {
    auto s1 = detail::ascending_form(g1);
    auto s2 = detail::ascending_form(g2);
    if (!s1 || !s2) return false;  // some side has neither L nor AL standard
    if (s1->flipped != c2->flipped_left || s2->flipped != c2->flipped_right)
      return false;
    if (c2->b.rows() != n || !c2->b.square()) return false;
    if (det(c2->b) == 0) return false;
    QMat a1 = to_rational(s1->a), a2 = to_rational(s2->a);
    if (a2 * c2->b != c2->b * a1) return false;
    return union_condition(s1->a, s2->a, c2->b);
  }
  const auto& c3 = std::get<CondIII>(w);
  Lattice std_lat = Lattice::standard(n);
  if (g1.l() != std_lat || g1.al() != std_lat || g2.l() != std_lat ||
      g2.al() != std_lat)
    return false;
  if (n == 0 || c3.c.rows() + 1 != n) return false;
  if (c3.p.rows() != n || c3.pbar.rows() != n) return false;
  if (!detail::unimodular(c3.p) || !detail::unimodular(c3.pbar)) return false;
  OrderResult ord = matrix_order(to_rational(c3.c));
  if (!ord.finite || ord.order != c3.m) return false;
  if (c3.q < 1 || gcd(c3.q, c3.m) != 1) return false;
  QMat p = to_rational(c3.p), pbar = to_rational(c3.pbar);
  IMat lhs = to_integer(p * g1.a() * inverse(p));
  if (lhs != detail::block_matrix(c3.u, c3.c)) return false;
  IMat cq = detail::int_pow(c3.c, fmod(c3.q, c3.m));
  IMat rhs = to_integer(pbar * g2.a() * inverse(pbar));
  return rhs == detail::block_matrix(c3.u, cq);
}

// --- budgeted searches -------------------------------------------------------

namespace detail {

// Coefficient values enumerated in shells of increasing height, each shell in
// a fixed deterministic order. Heights are nondecreasing in the list.
struct ValueList {
  std::vector<Rat> values;
  std::vector<int> heights;
};

inline ValueList integer_values(int hmax) {
  ValueList v;
  v.values.push_back(Rat(0));
  v.heights.push_back(0);
  for (int s = 1; s <= hmax; ++s) {
    v.values.push_back(Rat(s));
    v.heights.push_back(s);
    v.values.push_back(Rat(-s));
    v.heights.push_back(s);
  }
  return v;
}

// Rationals p/q with max(|p|, q) <= hmax, gcd(p,q) = 1, ordered by height.
inline ValueList rational_values(int hmax) {
  ValueList v;
  v.values.push_back(Rat(0));
  v.heights.push_back(0);
  for (int s = 1; s <= hmax; ++s) {
    for (int q = 1; q <= s; ++q) {
      if (gcd(Int(s), Int(q)) != 1) continue;
      v.values.push_back(make_rat(s, q));
      v.heights.push_back(s);
      v.values.push_back(make_rat(-s, q));
      v.heights.push_back(s);
    }
    for (int p = 1; p < s; ++p) {
      if (gcd(Int(p), Int(s)) != 1) continue;
      v.values.push_back(make_rat(p, s));
      v.heights.push_back(s);
      v.values.push_back(make_rat(-p, s));
      v.heights.push_back(s);
    }
  }
  return v;
}

enum class SearchOutcome { Hit, Exhausted, Capped };

// Enumerates k-tuples of value indices in shell order (max height 0, 1, ...),
// within a shell in odometer order with the last position fastest. Tuples
// whose max height is below the current shell are skipped (already visited).
// fn returns true on a hit. counter counts emitted tuples, capped at cap.
template <typename F>
SearchOutcome enumerate_tuples(const ValueList& vals, std::size_t k,
                               long long cap, long long& counter, F&& fn) {
  std::vector<std::size_t> shell_size;  // number of values with height <= s
  {
    std::size_t i = 0;
    int max_h = vals.heights.empty() ? 0 : vals.heights.back();
    for (int s = 0; s <= max_h; ++s) {
      while (i < vals.heights.size() && vals.heights[i] <= s) ++i;
      shell_size.push_back(i);
    }
  }
  for (std::size_t s = 0; s < shell_size.size(); ++s) {
    std::size_t limit = shell_size[s];
    std::size_t inner = s == 0 ? 0 : shell_size[s - 1];
    if (limit == 0) continue;
    std::vector<std::size_t> idx(k, 0);
    for (;;) {
      bool on_shell = s == 0;
      for (std::size_t t = 0; t < k && !on_shell; ++t)
        if (idx[t] >= inner) on_shell = true;
      if (k == 0) on_shell = s == 0;
      if (on_shell) {
        if (counter >= cap) return SearchOutcome::Capped;
        ++counter;
        if (fn(idx)) return SearchOutcome::Hit;
      }
      // Odometer step.
      std::size_t t = k;
      while (t > 0) {
        --t;
        if (++idx[t] < limit) break;
        idx[t] = 0;
        if (t == 0) {
          t = k + 1;  // full wrap: shell done
          break;
        }
      }
      if (k == 0 || t == k + 1) break;
    }
  }
  return SearchOutcome::Exhausted;
}

inline QMat combine(const std::vector<IMat>& basis, const ValueList& vals,
                    const std::vector<std::size_t>& idx, std::size_t n) {
  QMat b(n, n);
  for (std::size_t t = 0; t < basis.size(); ++t) {
    const Rat& c = vals.values[idx[t]];
    if (c == 0) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) b(i, j) += c * Rat(basis[t](i, j));
  }
  return b;
}

inline std::string mat_key(const IMat& m) {
  std::string s;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      s += m(i, j).get_str();
      s += ',';
    }
  return s;
}

}  // namespace detail

// Searches for a unimodular integral conjugator realizing CondI, over integer
// combinations of the saturated solution basis of X A^eps = Abar X, eps = +1
// first. Returns the first verified witness in enumeration order.
inline std::optional<CondI> search_cond_i(const GroupDatum& g1,
                                          const GroupDatum& g2,
                                          const IsoBudget& budget,
                                          long long& counter) {
  std::size_t n = g1.n();
  detail::ValueList vals = detail::integer_values(budget.height);
  std::optional<CondI> found;
  for (int eps : {1, -1}) {
    std::vector<IMat> basis = conjugator_space(g1.a(), g2.a(), eps);
    if (basis.empty() && n > 0) continue;
    const Lattice& src = eps == 1 ? g1.l() : g1.al();
    detail::enumerate_tuples(
        vals, basis.size(), budget.max_candidates, counter,
        [&](const std::vector<std::size_t>& idx) {
          QMat bq = detail::combine(basis, vals, idx, n);
          Rat d = det(bq);
          if (d != 1 && d != -1) return false;
          IMat b = to_integer(bq);
          if (apply_matrix(bq, src) != g2.l()) return false;
          CondI w{b, eps};
          if (!verify_witness(g1, g2, Witness(w))) return false;
          found = std::move(w);
          return true;
        });
    if (found) return found;
  }
  return std::nullopt;
}

// Searches for a rational conjugator realizing CondII on the normalized
// (ascending) forms, over rational combinations of the solution basis of
// X A = Abar X with bounded numerator/denominator height.
inline std::optional<CondII> search_cond_ii(const GroupDatum& g1,
                                            const GroupDatum& g2,
                                            const IsoBudget& budget,
                                            long long& counter) {
  auto s1 = detail::ascending_form(g1);
  auto s2 = detail::ascending_form(g2);
  if (!s1 || !s2) return std::nullopt;
  std::size_t n = g1.n();
  std::vector<IMat> basis =
      conjugator_space(to_rational(s1->a), to_rational(s2->a), 1);
  if (basis.empty() && n > 0) return std::nullopt;
  detail::ValueList vals = detail::rational_values(budget.height);
  std::optional<CondII> found;
  detail::enumerate_tuples(
      vals, basis.size(), budget.max_candidates, counter,
      [&](const std::vector<std::size_t>& idx) {
        QMat b = detail::combine(basis, vals, idx, n);
        if (det(b) == 0) return false;
        if (!union_condition(s1->a, s2->a, b)) return false;
        CondII w{b, s1->flipped, s2->flipped};
        if (!verify_witness(g1, g2, Witness(w))) return false;
        found = std::move(w);
        return true;
      });
  return found;
}

// Searches for a CondIII pair: unimodular P, Pbar of bounded entry height
// with P A P^{-1} = [[1,0],[u,C]], Pbar Abar Pbar^{-1} = [[1,0],[u,C^q]],
// C of finite order m, gcd(q, m) = 1. Both enumerations share the budget.
inline std::optional<CondIII> search_cond_iii(const GroupDatum& g1,
                                              const GroupDatum& g2,
                                              const IsoBudget& budget,
                                              long long& counter) {
  std::size_t n = g1.n();
  if (n < 2 || n > budget.cond3_max_n) return std::nullopt;
  int h = budget.height < budget.cond3_height ? budget.height
                                              : budget.cond3_height;
  detail::ValueList vals = detail::integer_values(h);
  std::size_t k = n * n;

  auto matrix_of = [&](const std::vector<std::size_t>& idx) {
    IMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        m(i, j) = vals.values[idx[i * n + j]].get_num();
    return m;
  };

  // Pass 1: all block forms of Abar reachable by bounded unimodular Pbar.
  // Each pass gets half the budget so a large first pass cannot starve the
  // second.
  long long half = budget.max_candidates / 2;
  long long used1 = 0, used2 = 0;
  std::map<std::string, std::pair<IMat, std::pair<IntVec, IMat>>> bar_blocks;
  detail::enumerate_tuples(
      vals, k, half, used1,
      [&](const std::vector<std::size_t>& idx) {
        IMat pbar = matrix_of(idx);
        if (!detail::unimodular(pbar)) return false;
        QMat pq = to_rational(pbar);
        IMat m = to_integer(pq * g2.a() * inverse(pq));
        auto blk = detail::split_block(m);
        if (!blk) return false;
        std::string key = detail::mat_key(m);
        if (!bar_blocks.count(key)) bar_blocks.emplace(key, std::make_pair(pbar, *blk));
        return false;  // collect everything within budget
      });
  if (bar_blocks.empty()) {
    counter += used1;
    return std::nullopt;
  }

  // Pass 2: block forms of A; for each, try the coprime powers of C.
  std::optional<CondIII> found;
  detail::enumerate_tuples(
      vals, k, budget.max_candidates - half, used2,
      [&](const std::vector<std::size_t>& idx) {
        IMat p = matrix_of(idx);
        if (!detail::unimodular(p)) return false;
        QMat pq = to_rational(p);
        IMat m = to_integer(pq * g1.a() * inverse(pq));
        auto blk = detail::split_block(m);
        if (!blk) return false;
        const IntVec& u = blk->first;
        const IMat& c = blk->second;
        OrderResult ord = matrix_order(to_rational(c));
        if (!ord.finite) return false;
        for (Int q = 1; q < ord.order; ++q) {
          if (gcd(q, ord.order) != 1) continue;
          IMat cq = detail::int_pow(c, q);
          IMat target = detail::block_matrix(u, cq);
          auto it = bar_blocks.find(detail::mat_key(target));
          if (it == bar_blocks.end()) continue;
          CondIII w{p, it->second.first, c, u, q, ord.order};
          if (!verify_witness(g1, g2, Witness(w))) continue;
          found = std::move(w);
          return true;
        }
        return false;
      });
  counter += used1 + used2;
  return found;
}

// --- the decision pipeline ---------------------------------------------------

inline IsoVerdict decide_iso(const GroupDatum& g1, const GroupDatum& g2,
                             const IsoBudget& budget = IsoBudget{}) {
  BudgetReport report;
  report.height = budget.height;
  report.max_candidates = budget.max_candidates;

  auto not_iso = [&](CertificateKind kind, std::string left,
                     std::string right) {
    return IsoVerdict{Verdict::NotIso, std::nullopt,
                      Certificate{kind, std::move(left), std::move(right)},
                      report};
  };
  auto iso = [&](Witness w) {
    return IsoVerdict{Verdict::Iso, std::move(w), std::nullopt, report};
  };

  if (g1.n() != g2.n())
    return not_iso(CertificateKind::Rank, std::to_string(g1.n()),
                   std::to_string(g2.n()));

  Classification c1 = coarse_class(g1), c2 = coarse_class(g2);
  if (!(c1 == c2))
    return not_iso(CertificateKind::CoarseClass, describe(c1), describe(c2));

  AbelianInvariants ab1 = abelianization(g1), ab2 = abelianization(g2);
  if (!(ab1 == ab2))
    return not_iso(CertificateKind::Abelianization, describe(ab1),
                   describe(ab2));

  std::vector<IntPoly> ff_a = invariant_factors(g1.a());
  std::vector<IntPoly> ff_ainv = invariant_factors(g1.a_inv());
  std::vector<IntPoly> ff_bar = invariant_factors(g2.a());
  if (ff_bar != ff_a && ff_bar != ff_ainv)
    return not_iso(CertificateKind::QConjugacy,
                   describe(ff_a) + " | " + describe(ff_ainv),
                   describe(ff_bar));

  switch (c1.cls) {
    case CoarseClass::NonMetabelian: {
      Int i1 = index_in_standard(g1.l()), i2 = index_in_standard(g1.al());
      Int j1 = index_in_standard(g2.l()), j2 = index_in_standard(g2.al());
      if (!((j1 == i1 && j2 == i2) || (j1 == i2 && j2 == i1)))
        return not_iso(CertificateKind::IndexProfile,
                       "(" + i1.get_str() + "," + i2.get_str() + ")",
                       "(" + j1.get_str() + "," + j2.get_str() + ")");
      if (auto w = search_cond_i(g1, g2, budget, report.cand_i))
        return iso(Witness(*w));
      report.exhausted.push_back("cond_i");
      break;
    }
    case CoarseClass::MetabelianNotPolycyclic: {
      if (auto w = search_cond_ii(g1, g2, budget, report.cand_ii))
        return iso(Witness(*w));
      report.exhausted.push_back("cond_ii");
      break;
    }
    case CoarseClass::Polycyclic: {
      if (auto w = search_cond_i(g1, g2, budget, report.cand_i))
        return iso(Witness(*w));
      report.exhausted.push_back("cond_i");
      if (auto w = search_cond_iii(g1, g2, budget, report.cand_iii))
        return iso(Witness(*w));
      report.exhausted.push_back("cond_iii");
      break;
    }
  }
  return IsoVerdict{Verdict::Unknown, std::nullopt, std::nullopt, report};
}

// --- explicit isomorphisms from CondI witnesses ------------------------------

// Builds the CondIII instance pair: A = [[1,0],[u,C]], Abar = [[1,0],[u,C^q]]
// over the standard lattice; C must have finite order m with gcd(q, m) = 1.
inline std::pair<GroupDatum, GroupDatum> construct_pair_iii(const IMat& c,
                                                            const IntVec& u,
                                                            const Int& q) {
  if (!c.square()) throw error("block must be square");
  if (u.size() != c.rows()) throw error("block and vector sizes differ");
  OrderResult ord = matrix_order(to_rational(c));
  if (!ord.finite) throw error("block matrix must have finite order");
  if (q < 1 || gcd(q, ord.order) != 1)
    throw error("power must be positive and coprime to the order");
  std::size_t n = c.rows() + 1;
  IMat a = detail::block_matrix(u, c);
  IMat abar = detail::block_matrix(u, detail::int_pow(c, q));
  Lattice std_lat = Lattice::standard(n);
  return {GroupDatum(n, to_rational(a), std_lat),
          GroupDatum(n, to_rational(abar), std_lat)};
}

// Generator images of the isomorphism determined by a CondI witness:
// x_i -> x^{B e_i}, t -> t^eps.
struct GeneratorMap {
  std::vector<Word> x_images;
  Word t_image;
};

inline GeneratorMap build_generator_map(const GroupDatum& g1,
                                        const GroupDatum& g2,
                                        const CondI& w) {
  if (!verify_witness(g1, g2, Witness(w)))
    throw error("witness fails verification");
  GeneratorMap map;
  for (std::size_t i = 0; i < g1.n(); ++i)
    map.x_images.push_back(Word::gen(w.b.col(i)));
  map.t_image = Word::stable(w.eps);
  return map;
}

namespace detail {

inline Word map_gen_power(const GeneratorMap& map, const IntVec& v) {
  Word out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (!v[i].fits_slong_p()) throw error("generator exponent too large");
    long k = v[i].get_si();
    const Word& img = map.x_images[i];
    Word piece = k > 0 ? img : img.inverse();
    for (long c = 0; c < (k > 0 ? k : -k); ++c) out.append(piece);
  }
  return out;
}

}  // namespace detail

// Checks that the generator images define a homomorphism: commuting images
// for the abelian part and the conjugation relation on a basis of L.
inline bool verify_homomorphism(const GroupDatum& g1, const GroupDatum& g2,
                                const GeneratorMap& map) {
  if (map.x_images.size() != g1.n()) throw error("wrong number of images");
  for (std::size_t i = 0; i < g1.n(); ++i)
    for (std::size_t j = i + 1; j < g1.n(); ++j) {
      Word comm = map.x_images[i] * map.x_images[j] *
                  map.x_images[i].inverse() * map.x_images[j].inverse();
      if (!is_identity(g2, comm)) return false;
    }
  std::vector<RatVec> basis_rows = g1.l().generator_rows();
  for (const auto& row : basis_rows) {
    IntVec l = to_integer(row);
    IntVec al = to_integer(g1.a().apply(row));
    Word rel = map.t_image * detail::map_gen_power(map, l) *
               map.t_image.inverse() *
               detail::map_gen_power(map, al).inverse();
    if (!is_identity(g2, rel)) return false;
  }
  return true;
}

}  // namespace lmg
