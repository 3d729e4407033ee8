#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lmg/numeric.hpp"

namespace lmg {

// Integer-coefficient polynomial, coefficients low to high, canonical
// (no trailing zero coefficients; the zero polynomial has no coefficients).
struct IntPoly {
  std::vector<Int> c;

  IntPoly() = default;
  explicit IntPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) { trim(); }

  static IntPoly constant(const Int& k) {
    IntPoly p;
    if (k != 0) p.c = {k};
    return p;
  }
  static IntPoly one() { return constant(1); }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }

  bool is_zero() const { return c.empty(); }
  // Degree of the zero polynomial is -1 by convention.
  long degree() const { return static_cast<long>(c.size()) - 1; }
  Int leading() const { return c.empty() ? Int(0) : c.back(); }
  const Int& coeff(std::size_t i) const {
    static const Int zero = 0;
    return i < c.size() ? c[i] : zero;
  }

  friend bool operator==(const IntPoly& a, const IntPoly& b) {
    return a.c == b.c;
  }
  friend bool operator!=(const IntPoly& a, const IntPoly& b) {
    return !(a == b);
  }
};

inline IntPoly add(const IntPoly& a, const IntPoly& b) {
  std::vector<Int> c(a.c.size() > b.c.size() ? a.c.size() : b.c.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
  return IntPoly(std::move(c));
}

inline IntPoly sub(const IntPoly& a, const IntPoly& b) {
  std::vector<Int> c(a.c.size() > b.c.size() ? a.c.size() : b.c.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
  return IntPoly(std::move(c));
}

inline IntPoly mul(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return IntPoly();
  std::vector<Int> c(a.c.size() + b.c.size() - 1);
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
  return IntPoly(std::move(c));
}

inline IntPoly scale(const Int& k, const IntPoly& a) {
  std::vector<Int> c(a.c);
  for (auto& x : c) x *= k;
  return IntPoly(std::move(c));
}

inline IntPoly derivative(const IntPoly& a) {
  if (a.c.size() <= 1) return IntPoly();
  std::vector<Int> c(a.c.size() - 1);
  for (std::size_t i = 1; i < a.c.size(); ++i) c[i - 1] = Int(i) * a.c[i];
  return IntPoly(std::move(c));
}

inline Int content(const IntPoly& a) {
  Int g = 0;
  for (const auto& x : a.c) g = gcd(g, x);
  return g;
}

// Content 1, positive leading coefficient; zero maps to zero.
inline IntPoly primitive_part(const IntPoly& a) {
  if (a.is_zero()) return a;
  Int g = content(a);
  if (a.leading() < 0) g = -g;
  std::vector<Int> c(a.c);
  for (auto& x : c) x = divexact(x, g);
  return IntPoly(std::move(c));
}

// Pseudo-remainder of a by b (b nonzero): lc(b)^(deg a - deg b + 1) * a mod b.
inline IntPoly pseudo_rem(const IntPoly& a, const IntPoly& b) {
  IntPoly r = a;
  long db = b.degree();
  Int lb = b.leading();
  while (!r.is_zero() && r.degree() >= db) {
    long shift = r.degree() - db;
    Int lr = r.leading();
    std::vector<Int> c(r.c.size());
    for (std::size_t i = 0; i < r.c.size(); ++i) c[i] = lb * r.c[i];
    for (long i = 0; i <= db; ++i)
      c[static_cast<std::size_t>(i + shift)] -= lr * b.c[static_cast<std::size_t>(i)];
    r = IntPoly(std::move(c));
  }
  return r;
}

// Primitive gcd (primitive pseudo-remainder sequence), positive leading
// coefficient; gcd with zero is the primitive part of the other argument.
inline IntPoly poly_gcd(IntPoly a, IntPoly b) {
  a = primitive_part(a);
  b = primitive_part(b);
  while (!b.is_zero()) {
    IntPoly r = primitive_part(pseudo_rem(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Exact division over Q restricted to an integer quotient: returns true and
// sets q when a = q * b with q integral; used for cyclotomic trial division
// and determinantal-divisor quotients (Gauss: primitive / primitive stays
// primitive, so the integral restriction loses nothing there).
inline bool divide_exact(const IntPoly& a, const IntPoly& b, IntPoly& q) {
  if (b.is_zero()) throw error("polynomial division by zero");
  std::vector<Rat> r(a.c.size());
  for (std::size_t i = 0; i < a.c.size(); ++i) r[i] = Rat(a.c[i]);
  long db = b.degree();
  Rat lb = Rat(b.leading());
  long dr = a.degree();
  std::vector<Rat> qr(dr >= db ? static_cast<std::size_t>(dr - db + 1) : 0);
  while (dr >= db) {
    Rat f = r[static_cast<std::size_t>(dr)] / lb;
    qr[static_cast<std::size_t>(dr - db)] = f;
    for (long i = 0; i <= db; ++i)
      r[static_cast<std::size_t>(dr - db + i)] -= f * Rat(b.c[static_cast<std::size_t>(i)]);
    while (dr >= 0 && r[static_cast<std::size_t>(dr)] == 0) --dr;
  }
  if (dr >= 0) return false;  // nonzero remainder
  std::vector<Int> qc(qr.size());
  for (std::size_t i = 0; i < qr.size(); ++i) {
    if (!is_integer(qr[i])) return false;
    qc[i] = qr[i].get_num();
  }
  q = IntPoly(std::move(qc));
  return true;
}

inline unsigned long euler_phi(unsigned long d) {
  unsigned long result = d;
  for (unsigned long p = 2; p * p <= d; ++p) {
    if (d % p) continue;
    while (d % p == 0) d /= p;
    result -= result / p;
  }
  if (d > 1) result -= result / d;
  return result;
}

// d-th cyclotomic polynomial via (x^d - 1) / prod of proper divisors.
inline IntPoly cyclotomic(unsigned long d) {
  if (d == 0) throw error("cyclotomic index must be positive");
  std::vector<Int> xn(d + 1);
  xn[0] = -1;
  xn[d] = 1;
  IntPoly num(std::move(xn));
  for (unsigned long e = 1; e < d; ++e) {
    if (d % e) continue;
    IntPoly q;
    if (!divide_exact(num, cyclotomic(e), q))
      throw error("cyclotomic division failed");
    num = q;
  }
  return num;
}

inline std::string poly_to_string(const IntPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (long i = p.degree(); i >= 0; --i) {
    const Int& a = p.coeff(static_cast<std::size_t>(i));
    if (a == 0) continue;
    Int mag = a < 0 ? Int(-a) : a;
    if (out.empty()) {
      if (a < 0) out += "-";
    } else {
      out += a < 0 ? "-" : "+";
    }
    bool need_coeff = (mag != 1) || i == 0;
    if (need_coeff) out += mag.get_str();
    if (i > 0) {
      if (need_coeff) out += "*";
      out += "x";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

}  // namespace lmg
