#pragma once

#include <cstddef>
#include <cstdlib>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lmg/group.hpp"
#include "lmg/lattice.hpp"
#include "lmg/matrix.hpp"
#include "lmg/numeric.hpp"

namespace lmg {

// Canonical name of a coset gH of the vertex group H = <x_1..x_n> on the
// Bass-Serre tree. The word is the unique transversal form: generator runs
// reduced to canonical residues (mod AL before t, mod L before t^{-1}),
// trailing generator run absorbed into H. Equal cosets get equal names.
struct VertexName {
  Word word;
  std::string key;

  friend bool operator==(const VertexName& a, const VertexName& b) {
    return a.key == b.key;
  }
  friend bool operator!=(const VertexName& a, const VertexName& b) {
    return !(a == b);
  }
  friend bool operator<(const VertexName& a, const VertexName& b) {
    return a.key < b.key;
  }
};

inline VertexName vertex_canonical(const GroupDatum& g, const Word& w) {
  Word r = britton_reduce(g, w);
  Word folded;
  IntVec carry(g.n(), Int(0));
  IntVec run(g.n(), Int(0));
  auto flush_before = [&](int e) {
    IntVec v = add(run, carry);
    const Lattice& gate = e == 1 ? g.al() : g.l();
    IntVec res = canonical_residue(gate, v);
    IntVec pushed = sub(v, res);  // in gate
    carry = e == 1 ? to_integer(g.a_inv().apply(to_rational(pushed)))
                   : to_integer(g.a().apply(to_rational(pushed)));
    if (!is_zero(res)) folded.append(GenLetter{std::move(res)});
    folded.append(StableLetter{e});
    run = IntVec(g.n(), Int(0));
  };
  for (const auto& l : r.letters()) {
    if (const auto* gl = std::get_if<GenLetter>(&l))
      run = add(run, gl->v);
    else
      flush_before(std::get<StableLetter>(l).e);
  }
  // The trailing generator run (plus carry) lies in H and is absorbed.
  return {folded, word_to_string(folded)};
}

inline VertexName base_vertex(const GroupDatum& g) {
  return vertex_canonical(g, Word());
}

// Left action: g . (wH) = (g w)H.
inline VertexName act_vertex(const GroupDatum& g, const Word& elem,
                             const VertexName& v) {
  return vertex_canonical(g, elem * v.word);
}

// Neighbors of wH in deterministic order: first the t^{-1}-side block
// w x^a t^{-1} H over the transversal of Z^n/L, then the t-side block
// w x^b t H over the transversal of Z^n/AL, each in lexicographic
// transversal order. Degree is [Z^n : L] + [Z^n : AL].
inline std::vector<VertexName> neighbors(const GroupDatum& g,
                                         const VertexName& v) {
  std::vector<VertexName> out;
  for (const auto& a : residue_transversal(g.l())) {
    Word w = v.word;
    w.append(GenLetter{a});
    w.append(StableLetter{-1});
    out.push_back(vertex_canonical(g, w));
  }
  for (const auto& b : residue_transversal(g.al())) {
    Word w = v.word;
    w.append(GenLetter{b});
    w.append(StableLetter{1});
    out.push_back(vertex_canonical(g, w));
  }
  return out;
}

// Tree distance between two vertices: the stable-letter count of the
// canonical name of the connecting element.
inline std::size_t distance(const GroupDatum& g, const VertexName& a,
                            const VertexName& b) {
  VertexName joined = vertex_canonical(g, a.word.inverse() * b.word);
  return detail::stable_count(joined.word);
}

struct BallGraph {
  VertexName center;
  std::size_t radius = 0;
  std::vector<VertexName> vertices;                  // BFS discovery order
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // index pairs
};

inline std::size_t default_ball_cap() {
  if (const char* env = std::getenv("LMG_MAX_BALL")) {
    char* end = nullptr;
    unsigned long long cap = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && cap > 0) return static_cast<std::size_t>(cap);
  }
  return 100000;
}

// Ball of the given radius around a vertex, by breadth-first search.
// In a tree the induced subgraph is the BFS tree, so |V| = |E| + 1.
inline BallGraph ball(const GroupDatum& g, const VertexName& center,
                      std::size_t radius, std::size_t cap = default_ball_cap()) {
  BallGraph out;
  out.center = center;
  out.radius = radius;
  std::map<std::string, std::size_t> index;
  out.vertices.push_back(center);
  index[center.key] = 0;
  std::size_t frontier_begin = 0;
  for (std::size_t depth = 0; depth < radius; ++depth) {
    std::size_t frontier_end = out.vertices.size();
    for (std::size_t vi = frontier_begin; vi < frontier_end; ++vi) {
      for (const auto& nb : neighbors(g, out.vertices[vi])) {
        auto it = index.find(nb.key);
        if (it != index.end()) continue;  // tree: only the BFS parent recurs
        if (out.vertices.size() >= cap)
          throw error("ball exceeds the configured vertex cap");
        index[nb.key] = out.vertices.size();
        out.edges.emplace_back(vi, out.vertices.size());
        out.vertices.push_back(nb);
      }
    }
    frontier_begin = frontier_end;
  }
  return out;
}

}  // namespace lmg
