#pragma once

#include <cstddef>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lmg/lattice.hpp"
#include "lmg/matrix.hpp"
#include "lmg/normal_forms.hpp"
#include "lmg/numeric.hpp"

namespace lmg {

// HNN datum over Z^n: the stable letter conjugates the sublattice L by the
// rational matrix A. Validity: A invertible, L and A(L) integral sublattices
// of full rank. Group elements are words in x^v (v in Z^n) and t^{+-1},
// subject to [x_i, x_j] = 1 and t x^v t^{-1} = x^{Av} for v in L.
class GroupDatum {
 public:
  GroupDatum(std::size_t n, QMat a, Lattice l)
      : n_(n), a_(std::move(a)), l_(std::move(l)) {
    if (!a_.square() || a_.rows() != n_)
      throw validation_error("matrix size differs from rank");
    if (l_.n() != n_) throw validation_error("lattice rank differs from rank");
    if (det(a_) == 0) throw validation_error("matrix is singular");
    if (!l_.is_integral())
      throw validation_error("lattice is not contained in Z^n");
    al_ = lmg::apply_matrix(a_, l_);
    if (!al_.is_integral())
      throw validation_error("image lattice is not contained in Z^n");
    a_inv_ = inverse(a_);
  }

  std::size_t n() const { return n_; }
  const QMat& a() const { return a_; }
  const QMat& a_inv() const { return a_inv_; }
  const Lattice& l() const { return l_; }
  const Lattice& al() const { return al_; }

 private:
  std::size_t n_;
  QMat a_, a_inv_;
  Lattice l_, al_;
};

// Baumslag-Solitar datum BS(p,q) as a rank-1 group: A = (q/p), L = pZ.
inline GroupDatum bs_group(long p, long q) {
  if (p == 0 || q == 0) throw validation_error("BS parameters must be nonzero");
  QMat a(1, 1);
  a(0, 0) = make_rat(q, p);
  return GroupDatum(1, a, Lattice::from_generators({{Rat(p)}}, 1));
}

struct GenLetter {
  IntVec v;
  friend bool operator==(const GenLetter&, const GenLetter&) = default;
};
struct StableLetter {
  int e;  // +1 or -1
  friend bool operator==(const StableLetter&, const StableLetter&) = default;
};
using Letter = std::variant<GenLetter, StableLetter>;

// Word in the generators: a sequence of letters with adjacent generator
// letters merged and zero generator letters dropped.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) {
    for (auto& l : letters) append(std::move(l));
  }

  static Word gen(IntVec v) {
    Word w;
    w.append(GenLetter{std::move(v)});
    return w;
  }
  static Word stable(int e) {
    Word w;
    w.append(StableLetter{e});
    return w;
  }

  void append(Letter l) {
    if (auto* g = std::get_if<GenLetter>(&l)) {
      if (is_zero(g->v)) return;
      if (!letters_.empty()) {
        if (auto* last = std::get_if<GenLetter>(&letters_.back())) {
          last->v = add(last->v, g->v);
          if (is_zero(last->v)) letters_.pop_back();
          return;
        }
      }
    } else {
      int e = std::get<StableLetter>(l).e;
      if (e != 1 && e != -1) throw error("stable letter exponent must be +-1");
    }
    letters_.push_back(std::move(l));
  }

  void append(const Word& w) {
    for (const auto& l : w.letters_) append(l);
  }

  Word inverse() const {
    Word w;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
      if (const auto* g = std::get_if<GenLetter>(&*it))
        w.append(GenLetter{neg(g->v)});
      else
        w.append(StableLetter{-std::get<StableLetter>(*it).e});
    }
    return w;
  }

  friend Word operator*(const Word& a, const Word& b) {
    Word w = a;
    w.append(b);
    return w;
  }

  bool empty() const { return letters_.empty(); }
  std::size_t size() const { return letters_.size(); }
  const std::vector<Letter>& letters() const { return letters_; }

  friend bool operator==(const Word& a, const Word& b) {
    return a.letters_ == b.letters_;
  }
  friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }

 private:
  std::vector<Letter> letters_;
};

// Net stable-letter exponent; defined on arbitrary (unreduced) words and
// invariant under the defining relations.
inline long long psi(const Word& w) {
  long long s = 0;
  for (const auto& l : w.letters())
    if (const auto* st = std::get_if<StableLetter>(&l)) s += st->e;
  return s;
}

// --- word grammar -----------------------------------------------------------
//
// Whitespace-separated tokens:
//   t          stable letter
//   t^k        k-th power of the stable letter (k any integer)
//   x[a,b,...] generator x_1^a x_2^b ...; arity must equal n
//   x[...]^k   k-th power of a generator letter
// The empty string is the identity.

namespace detail {

inline long long parse_int(std::string_view s, std::size_t pos_base,
                           std::size_t& i) {
  std::size_t start = i;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  std::size_t digits = i;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
  if (i == digits)
    throw parse_error("expected an integer", pos_base + start);
  errno = 0;
  long long value = std::strtoll(std::string(s.substr(start, i - start)).c_str(),
                                 nullptr, 10);
  if (errno != 0)
    throw parse_error("integer out of range", pos_base + start);
  return value;
}

}  // namespace detail

inline Word parse_word(std::string_view text, std::size_t n) {
  Word w;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' ||
        text[i] == '\r') {
      ++i;
      continue;
    }
    std::size_t tok = i;
    if (text[i] == 't') {
      ++i;
      long long k = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        k = detail::parse_int(text, 0, i);
      }
      int step = k >= 0 ? 1 : -1;
      for (long long c = 0; c != k; c += step) w.append(StableLetter{step});
    } else if (text[i] == 'x') {
      ++i;
      if (i >= text.size() || text[i] != '[')
        throw parse_error("expected '[' after 'x'", tok);
      ++i;
      IntVec v;
      if (i < text.size() && text[i] == ']') {
        ++i;
      } else {
        for (;;) {
          v.push_back(Int(static_cast<long>(detail::parse_int(text, 0, i))));
          if (i < text.size() && text[i] == ',') {
            ++i;
            continue;
          }
          if (i < text.size() && text[i] == ']') {
            ++i;
            break;
          }
          throw parse_error("expected ',' or ']' in generator vector", i);
        }
      }
      if (v.size() != n)
        throw parse_error("generator vector arity differs from rank", tok);
      if (i < text.size() && text[i] == '^') {
        ++i;
        long long k = detail::parse_int(text, 0, i);
        for (auto& c : v) c *= Int(static_cast<long>(k));
      }
      w.append(GenLetter{std::move(v)});
    } else {
      throw parse_error("unexpected character", i);
    }
    if (i < text.size() && text[i] != ' ' && text[i] != '\t' &&
        text[i] != '\n' && text[i] != '\r')
      throw parse_error("tokens must be whitespace-separated", i);
  }
  return w;
}

inline std::string word_to_string(const Word& w) {
  std::string out;
  const auto& ls = w.letters();
  for (std::size_t i = 0; i < ls.size();) {
    if (!out.empty()) out += ' ';
    if (const auto* g = std::get_if<GenLetter>(&ls[i])) {
      out += "x[";
      for (std::size_t j = 0; j < g->v.size(); ++j) {
        if (j) out += ',';
        out += g->v[j].get_str();
      }
      out += ']';
      ++i;
    } else {
      int e = std::get<StableLetter>(ls[i]).e;
      std::size_t j = i;
      while (j < ls.size() && std::holds_alternative<StableLetter>(ls[j]) &&
             std::get<StableLetter>(ls[j]).e == e)
        ++j;
      long long run = static_cast<long long>(j - i);
      long long k = e * run;
      out += k == 1 ? "t" : "t^" + std::to_string(k);
      i = j;
    }
  }
  return out;
}

// --- Britton reduction -------------------------------------------------------

namespace detail {

inline IntVec transport(const GroupDatum& g, int e, const IntVec& v) {
  // e = +1: v in L, returns Av; e = -1: v in AL, returns A^{-1}v.
  const QMat& m = e == 1 ? g.a() : g.a_inv();
  return to_integer(m.apply(to_rational(v)));
}

}  // namespace detail

// Repeatedly removes pinches t x^v t^{-1} (v in L) and t^{-1} x^v t
// (v in AL), leftmost-innermost first. The result has no such subword, and
// a word represents the identity exactly when its reduction is empty.
inline Word britton_reduce(const GroupDatum& g, const Word& w) {
  std::vector<Letter> ls(w.letters().begin(), w.letters().end());
  std::size_t i = 0;
  while (i < ls.size()) {
    const auto* st = std::get_if<StableLetter>(&ls[i]);
    if (!st) {
      ++i;
      continue;
    }
    int e = st->e;
    std::size_t mid = i + 1;
    const GenLetter* gen = nullptr;
    if (mid < ls.size()) gen = std::get_if<GenLetter>(&ls[mid]);
    std::size_t close = gen ? mid + 1 : mid;
    if (close >= ls.size()) {
      ++i;
      continue;
    }
    const auto* st2 = std::get_if<StableLetter>(&ls[close]);
    if (!st2 || st2->e != -e) {
      ++i;
      continue;
    }
    IntVec v = gen ? gen->v : IntVec(g.n(), Int(0));
    const Lattice& gate = e == 1 ? g.l() : g.al();
    if (!gate.contains(v)) {
      ++i;
      continue;
    }
    IntVec image = detail::transport(g, e, v);
    // Splice [i, close] out, replacing it with the transported generator,
    // then re-merge around the splice point.
    Word merged;
    for (std::size_t j = 0; j < i; ++j) merged.append(ls[j]);
    merged.append(GenLetter{std::move(image)});
    for (std::size_t j = close + 1; j < ls.size(); ++j) merged.append(ls[j]);
    ls.assign(merged.letters().begin(), merged.letters().end());
    i = i >= 3 ? i - 3 : 0;
  }
  Word out;
  for (auto& l : ls) out.append(std::move(l));
  return out;
}

inline bool is_identity(const GroupDatum& g, const Word& w) {
  return britton_reduce(g, w).empty();
}

inline bool element_equal(const GroupDatum& g, const Word& a, const Word& b) {
  return is_identity(g, a * b.inverse());
}

// --- cyclic reduction and translation length --------------------------------

struct CyclicReduction {
  Word core;        // cyclically reduced
  Word conjugator;  // input = conjugator * core * conjugator^{-1}
  std::size_t tau;  // stable letters in core = translation length
};

namespace detail {

inline std::size_t stable_count(const Word& w) {
  std::size_t c = 0;
  for (const auto& l : w.letters())
    if (std::holds_alternative<StableLetter>(l)) ++c;
  return c;
}

}  // namespace detail

inline CyclicReduction cyclic_reduce(const GroupDatum& g, const Word& w) {
  Word r = britton_reduce(g, w);
  Word conj;
  for (;;) {
    if (detail::stable_count(r) == 0) break;  // single generator letter or empty
    // Rotate a leading generator letter to the back (conjugation by its
    // inverse); the word still starts reduced and now begins with a stable.
    if (const auto* g0 = std::get_if<GenLetter>(&r.letters().front())) {
      IntVec v = g0->v;
      Word rot;
      for (std::size_t j = 1; j < r.size(); ++j) rot.append(r.letters()[j]);
      rot.append(GenLetter{v});
      conj.append(GenLetter{std::move(v)});
      r = std::move(rot);
      continue;
    }
    int e = std::get<StableLetter>(r.letters().front()).e;
    // Wrap pinch: the cyclic word ends with t^f x^u and starts with t^e,
    // e = -f; removable when u lies in the gate lattice of f.
    std::size_t last = r.size() - 1;
    IntVec u(g.n(), Int(0));
    std::size_t fpos = last;
    if (const auto* gl = std::get_if<GenLetter>(&r.letters()[last])) {
      if (last == 0) break;
      u = gl->v;
      fpos = last - 1;
    }
    const auto* fst = std::get_if<StableLetter>(&r.letters()[fpos]);
    if (!fst || fst->e != -e) break;
    int f = fst->e;
    const Lattice& gate = f == 1 ? g.l() : g.al();
    if (!gate.contains(u)) break;
    IntVec image = detail::transport(g, f, u);
    Word next;
    for (std::size_t j = 1; j < fpos; ++j) next.append(r.letters()[j]);
    next.append(GenLetter{std::move(image)});
    conj.append(StableLetter{e});
    r = britton_reduce(g, next);
  }
  return {r, britton_reduce(g, conj), detail::stable_count(r)};
}

// --- semi-reduced decomposition and the centralizer formula -----------------

struct SemiReducedFactor {
  long long level;  // t-level alpha
  IntVec v;         // factor t^alpha x^v t^{-alpha}
};

// Writes a zero-psi word as a product of conjugated generator letters
// prod_i t^{a_i} x^{v_i} t^{-a_i}, read off the Britton reduction at its
// running t-levels; the associated word of the factor list is reduced.
inline std::vector<SemiReducedFactor> semi_reduced_decomposition(
    const GroupDatum& g, const Word& w) {
  if (psi(w) != 0)
    throw error("semi-reduced decomposition requires zero stable exponent");
  Word r = britton_reduce(g, w);
  std::vector<SemiReducedFactor> out;
  long long level = 0;
  for (const auto& l : r.letters()) {
    if (const auto* st = std::get_if<StableLetter>(&l))
      level += st->e;
    else
      out.push_back({level, std::get<GenLetter>(l).v});
  }
  return out;
}

// Centralizer criterion: a zero-psi element commutes with x^v exactly when
// v lies in the intersection of A^j L over j in (gamma_- , gamma_+], where
// gamma_-/gamma_+ are the min/max of 0 and the levels of its semi-reduced
// decomposition. An empty range means all of Z^n.
inline bool commutes_formula(const GroupDatum& g, const Word& w,
                             const IntVec& v) {
  if (v.size() != g.n()) throw error("vector arity differs from rank");
  auto factors = semi_reduced_decomposition(g, w);
  long long lo = 0, hi = 0;
  for (const auto& f : factors) {
    if (f.level < lo) lo = f.level;
    if (f.level > hi) hi = f.level;
  }
  if (lo == 0 && hi == 0) return true;
  std::optional<Lattice> meet;
  for (long long j = lo + 1; j <= hi; ++j) {
    Lattice lj = apply_matrix(pow(g.a(), static_cast<long>(j)), g.l());
    meet = meet ? intersect(*meet, lj) : lj;
  }
  return meet->contains(v);
}

// Membership in the vertex-stabilizer image H_1 = {x^v : v in L or v in AL}.
inline bool h1_member(const GroupDatum& g, const IntVec& v) {
  if (v.size() != g.n()) throw error("vector arity differs from rank");
  return g.l().contains(v) || g.al().contains(v);
}

// Evaluation of the canonical embedding of K = ker(psi) into Q^n when
// L = Z^n (ascending case): t^j x^v t^{-j} maps to A^j v, extended
// multiplicatively; zero exactly on the identity.
inline RatVec k_embed(const GroupDatum& g, const Word& w) {
  if (g.l() != Lattice::standard(g.n()))
    throw error("embedding requires L = Z^n");
  if (psi(w) != 0) throw error("embedding requires zero stable exponent");
  RatVec acc(g.n(), Rat(0));
  long long level = 0;
  for (const auto& l : w.letters()) {
    if (const auto* st = std::get_if<StableLetter>(&l)) {
      level += st->e;
    } else {
      RatVec img =
          pow(g.a(), static_cast<long>(level)).apply(to_rational(std::get<GenLetter>(l).v));
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += img[i];
    }
  }
  return acc;
}

// --- classification ----------------------------------------------------------

enum class CoarseClass { Polycyclic, MetabelianNotPolycyclic, NonMetabelian };

struct Classification {
  CoarseClass cls;
  std::size_t hirsch;  // meaningful for Polycyclic: n + 1
  friend bool operator==(const Classification&, const Classification&) = default;
};

// Polycyclic iff L = AL = Z^n (Hirsch length n+1); metabelian iff L = Z^n
// or AL = Z^n; non-metabelian otherwise.
inline Classification coarse_class(const GroupDatum& g) {
  Lattice std_lat = Lattice::standard(g.n());
  bool l_full = g.l() == std_lat;
  bool al_full = g.al() == std_lat;
  if (l_full && al_full) return {CoarseClass::Polycyclic, g.n() + 1};
  if (l_full || al_full) return {CoarseClass::MetabelianNotPolycyclic, 0};
  return {CoarseClass::NonMetabelian, 0};
}

struct AbelianInvariants {
  std::size_t free_rank = 0;
  std::vector<Int> torsion;  // divisibility chain, entries > 1
  friend bool operator==(const AbelianInvariants&,
                         const AbelianInvariants&) = default;
};

// G^ab = Z (from t) + Z^n / (A - I)L, read off the Smith form of a
// generating matrix of (A - I)L.
inline AbelianInvariants abelianization(const GroupDatum& g) {
  std::size_t n = g.n();
  QMat am = g.a() - QMat::identity(n);
  std::vector<RatVec> basis_rows = g.l().generator_rows();
  IMat rows(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    RatVec img = am.apply(basis_rows[i]);
    IntVec z = to_integer(img);  // (A - I)L is integral: AL, L are
    for (std::size_t j = 0; j < n; ++j) rows(i, j) = z[j];
  }
  IMat s = snf(rows).s;
  AbelianInvariants ab;
  ab.free_rank = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (s(i, i) == 0)
      ++ab.free_rank;
    else if (s(i, i) > 1)
      ab.torsion.push_back(s(i, i));
  }
  return ab;
}

}  // namespace lmg
