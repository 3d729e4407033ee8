#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lmg/group.hpp"
#include "lmg/iso.hpp"
#include "lmg/lattice.hpp"
#include "lmg/matrix.hpp"
#include "lmg/numeric.hpp"
#include "lmg/tree.hpp"

namespace lmg {

// Insertion-ordered so emitted documents are byte-stable.
using json = nlohmann::ordered_json;

// --- scalars ------------------------------------------------------------------

// Integers that fit in 64 bits are emitted as JSON numbers, everything else
// (big integers, proper fractions) as "p/q" strings.
inline json rat_to_json(const Rat& r) {
  if (is_integer(r) && r.get_num().fits_slong_p())
    return json(static_cast<long long>(r.get_num().get_si()));
  return json(rat_to_string(r));
}

inline json int_to_json(const Int& z) {
  if (z.fits_slong_p()) return json(static_cast<long long>(z.get_si()));
  return json(z.get_str());
}

inline Rat rat_from_json(const json& j) {
  if (j.is_number_integer())
    return Rat(Int(static_cast<long>(j.get<long long>())));
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  throw validation_error("expected an integer or a rational string");
}

inline Int int_from_json(const json& j) {
  Rat r = rat_from_json(j);
  if (!is_integer(r)) throw validation_error("expected an integer");
  return r.get_num();
}

// --- matrices and vectors ------------------------------------------------------

inline json mat_to_json(const QMat& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rat_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json mat_to_json(const IMat& m) { return mat_to_json(to_rational(m)); }

inline json vec_to_json(const IntVec& v) {
  json a = json::array();
  for (const Int& z : v) a.push_back(int_to_json(z));
  return a;
}

inline QMat mat_from_json(const json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows)
    throw validation_error("expected a matrix with " + std::to_string(rows) +
                           " rows");
  QMat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = j[i];
    if (!row.is_array() || row.size() != cols)
      throw validation_error("expected matrix rows of length " +
                             std::to_string(cols));
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = rat_from_json(row[k]);
  }
  return m;
}

// --- group data -----------------------------------------------------------------

// {"n": 1, "A": [["3/2"]], "L": [[2]]}
inline GroupDatum datum_from_json(const json& j) {
  if (!j.is_object()) throw validation_error("datum must be an object");
  if (!j.contains("n") || !j["n"].is_number_unsigned())
    throw validation_error("datum needs a nonnegative integer field \"n\"");
  std::size_t n = j["n"].get<std::size_t>();
  if (!j.contains("A")) throw validation_error("datum needs a matrix field \"A\"");
  QMat a = mat_from_json(j["A"], n, n);
  if (!j.contains("L") || !j["L"].is_array())
    throw validation_error("datum needs a generator list field \"L\"");
  std::vector<RatVec> gens;
  for (const json& row : j["L"]) {
    if (!row.is_array() || row.size() != n)
      throw validation_error("lattice generators must have length n");
    RatVec g(n);
    for (std::size_t k = 0; k < n; ++k) g[k] = rat_from_json(row[k]);
    gens.push_back(std::move(g));
  }
  return GroupDatum(n, std::move(a), Lattice::from_generators(gens, n));
}

inline json datum_to_json(const GroupDatum& g) {
  json j;
  j["n"] = g.n();
  j["A"] = mat_to_json(g.a());
  json rows = json::array();
  for (const RatVec& r : g.l().generator_rows()) {
    json row = json::array();
    for (const Rat& x : r) row.push_back(rat_to_json(x));
    rows.push_back(std::move(row));
  }
  j["L"] = rows;
  return j;
}

// --- verdicts --------------------------------------------------------------------

inline json witness_to_json(const Witness& w) {
  json j;
  if (const auto* c1 = std::get_if<CondI>(&w)) {
    j["kind"] = "cond_i";
    j["B"] = mat_to_json(c1->b);
    j["eps"] = c1->eps;
  } else if (const auto* c2 = std::get_if<CondII>(&w)) {
    j["kind"] = "cond_ii";
    j["B"] = mat_to_json(c2->b);
    j["flipped_left"] = c2->flipped_left;
    j["flipped_right"] = c2->flipped_right;
  } else {
    const auto& c3 = std::get<CondIII>(w);
    j["kind"] = "cond_iii";
    j["P"] = mat_to_json(c3.p);
    j["Pbar"] = mat_to_json(c3.pbar);
    j["C"] = mat_to_json(c3.c);
    j["u"] = vec_to_json(c3.u);
    j["q"] = int_to_json(c3.q);
    j["m"] = int_to_json(c3.m);
  }
  return j;
}

inline json verdict_to_json(const IsoVerdict& v) {
  json j;
  switch (v.verdict) {
    case Verdict::Iso: j["verdict"] = "iso"; break;
    case Verdict::NotIso: j["verdict"] = "not_iso"; break;
    case Verdict::Unknown: j["verdict"] = "unknown"; break;
  }
  j["witness"] = v.witness ? witness_to_json(*v.witness) : json(nullptr);
  if (v.certificate) {
    json c;
    c["kind"] = certificate_kind_name(v.certificate->kind);
    c["left"] = v.certificate->left;
    c["right"] = v.certificate->right;
    j["certificate"] = c;
  } else {
    j["certificate"] = nullptr;
  }
  json b;
  b["height"] = v.budget.height;
  b["max_candidates"] = v.budget.max_candidates;
  b["cand_i"] = v.budget.cand_i;
  b["cand_ii"] = v.budget.cand_ii;
  b["cand_iii"] = v.budget.cand_iii;
  b["exhausted"] = v.budget.exhausted;
  j["budget"] = b;
  return j;
}

// --- tree balls --------------------------------------------------------------------

inline json ball_to_json(const BallGraph& b) {
  json j;
  j["center"] = b.center.key;
  j["radius"] = b.radius;
  json verts = json::array();
  for (const VertexName& v : b.vertices) verts.push_back(v.key);
  j["vertices"] = verts;
  json edges = json::array();
  for (const auto& e : b.edges)
    edges.push_back(json::array({e.first, e.second}));
  j["edges"] = edges;
  return j;
}

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

inline std::string ball_to_dot(const BallGraph& b) {
  std::string out = "graph ball {\n";
  for (std::size_t i = 0; i < b.vertices.size(); ++i)
    out += "  v" + std::to_string(i) + " [label=\"" +
           dot_escape(b.vertices[i].key) + "\"];\n";
  for (const auto& e : b.edges)
    out += "  v" + std::to_string(e.first) + " -- v" +
           std::to_string(e.second) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace lmg
