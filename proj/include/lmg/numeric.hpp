#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace lmg {

using Int = mpz_class;
using Rat = mpq_class;

// Library-level failure: bad input data, violated preconditions.
struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Textual input that does not match the expected grammar; position is a
// 0-based character offset into the offending string.
struct parse_error : error {
  parse_error(const std::string& what, std::size_t position)
      : error(what), position(position) {}
  std::size_t position;
};

// Structurally well-formed data that fails a semantic requirement
// (e.g. a group datum whose lattice is not integral).
struct validation_error : error {
  using error::error;
};

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// g = gcd(a,b) together with s,t such that s*a + t*b = g.
inline Int gcdext(const Int& a, const Int& b, Int& s, Int& t) {
  Int g;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return g;
}

// Floor division (rounds toward -infinity); b > 0 in all call sites.
inline Int fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Euclidean remainder in [0, |b|).
inline Int fmod(const Int& a, const Int& b) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline bool divides(const Int& d, const Int& a) {
  if (d == 0) return a == 0;
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

// Exact quotient; caller guarantees divisibility.
inline Int divexact(const Int& a, const Int& d) {
  Int q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
  return q;
}

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw error("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline std::string rat_to_string(const Rat& q) {
  if (is_integer(q)) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Accepts "p", "-p", "p/q" with optional sign on the numerator.
inline Rat rat_from_string(std::string_view s) {
  auto fail = [&] { throw error("malformed rational '" + std::string(s) + "'"); };
  if (s.empty()) fail();
  std::size_t slash = s.find('/');
  try {
    if (slash == std::string_view::npos) return Rat(Int(std::string(s)));
    std::string num(s.substr(0, slash)), den(s.substr(slash + 1));
    if (num.empty() || den.empty()) fail();
    return make_rat(Int(num), Int(den));
  } catch (const std::invalid_argument&) {
    fail();
  }
  return Rat();  // unreachable
}

}  // namespace lmg
