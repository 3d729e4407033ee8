// Command line interface for Leary-Minasyan group computations.
//
// Subcommands read group data as JSON files of the form
//   {"n": 1, "A": [["3/2"]], "L": [[2]]}
// and print JSON to stdout. Errors are printed as JSON objects on stderr.
// Exit codes: 0 success, 1 usage or input syntax, 2 invalid group data,
// 3 isomorphism search budget exhausted (verdict still printed).

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lmg/group.hpp"
#include "lmg/iso.hpp"
#include "lmg/json_io.hpp"
#include "lmg/tree.hpp"

namespace {

using lmg::json;

lmg::GroupDatum load_datum(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw lmg::parse_error("cannot open file: " + path, 0);
  json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw lmg::parse_error(std::string("invalid JSON in ") + path + ": " +
                               e.what(),
                           0);
  }
  return lmg::datum_from_json(j);
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Leary-Minasyan group calculator"};
  app.require_subcommand(1);
  int exit_code = 0;

  std::string path1, path2, word_text;
  std::size_t radius = 1;
  bool dot = false;
  int height = lmg::IsoBudget{}.height;
  long long max_candidates = lmg::IsoBudget{}.max_candidates;
  long bs_p = 0, bs_q = 0, bs_pbar = 0, bs_qbar = 0;

  auto* classify =
      app.add_subcommand("classify", "Coarse classification of G(A,L)");
  classify->add_option("datum", path1, "group datum JSON file")->required();
  classify->callback([&] {
    lmg::GroupDatum g = load_datum(path1);
    lmg::Classification c = lmg::coarse_class(g);
    json j;
    switch (c.cls) {
      case lmg::CoarseClass::Polycyclic: j["class"] = "polycyclic"; break;
      case lmg::CoarseClass::MetabelianNotPolycyclic:
        j["class"] = "metabelian_not_polycyclic";
        break;
      case lmg::CoarseClass::NonMetabelian:
        j["class"] = "non_metabelian";
        break;
    }
    j["hirsch"] = c.cls == lmg::CoarseClass::Polycyclic ? json(c.hirsch)
                                                        : json(nullptr);
    emit(j);
  });

  auto* abel = app.add_subcommand("abel", "Abelianization invariants");
  abel->add_option("datum", path1, "group datum JSON file")->required();
  abel->callback([&] {
    lmg::AbelianInvariants ab = lmg::abelianization(load_datum(path1));
    json j;
    j["free_rank"] = ab.free_rank;
    json tor = json::array();
    for (const lmg::Int& t : ab.torsion) tor.push_back(lmg::int_to_json(t));
    j["torsion"] = tor;
    emit(j);
  });

  auto* wp = app.add_subcommand("wp", "Word problem: is the word trivial?");
  wp->add_option("datum", path1, "group datum JSON file")->required();
  wp->add_option("word", word_text, "word, e.g. \"t x[2] t^-1 x[-3]\"")
      ->required();
  wp->callback([&] {
    lmg::GroupDatum g = load_datum(path1);
    lmg::Word w = lmg::parse_word(word_text, g.n());
    json j;
    j["identity"] = lmg::is_identity(g, w);
    emit(j);
  });

  auto* reduce = app.add_subcommand("reduce", "Britton-reduce a word");
  reduce->add_option("datum", path1, "group datum JSON file")->required();
  reduce->add_option("word", word_text, "word to reduce")->required();
  reduce->callback([&] {
    lmg::GroupDatum g = load_datum(path1);
    lmg::Word w = lmg::britton_reduce(g, lmg::parse_word(word_text, g.n()));
    json j;
    j["reduced"] = lmg::word_to_string(w);
    j["identity"] = w.letters().empty();
    emit(j);
  });

  auto* tlen = app.add_subcommand(
      "tlen", "Translation length on the Bass-Serre tree");
  tlen->add_option("datum", path1, "group datum JSON file")->required();
  tlen->add_option("word", word_text, "word to measure")->required();
  tlen->callback([&] {
    lmg::GroupDatum g = load_datum(path1);
    lmg::CyclicReduction cr =
        lmg::cyclic_reduce(g, lmg::parse_word(word_text, g.n()));
    json j;
    j["tau"] = cr.tau;
    j["core"] = lmg::word_to_string(cr.core);
    j["conjugator"] = lmg::word_to_string(cr.conjugator);
    emit(j);
  });

  auto* ball = app.add_subcommand(
      "ball", "Ball around the base vertex of the Bass-Serre tree");
  ball->add_option("datum", path1, "group datum JSON file")->required();
  ball->add_option("--radius", radius, "ball radius")->required();
  ball->add_flag("--dot", dot, "emit Graphviz DOT instead of JSON");
  ball->callback([&] {
    lmg::GroupDatum g = load_datum(path1);
    lmg::BallGraph b = lmg::ball(g, lmg::base_vertex(g), radius);
    if (dot)
      std::cout << lmg::ball_to_dot(b);
    else
      emit(lmg::ball_to_json(b));
  });

  auto* iso = app.add_subcommand(
      "iso", "Decide whether two groups are isomorphic");
  iso->add_option("left", path1, "first group datum JSON file")->required();
  iso->add_option("right", path2, "second group datum JSON file")->required();
  iso->add_option("--height", height, "search height bound");
  iso->add_option("--max-candidates", max_candidates,
                  "candidate cap per condition");
  iso->callback([&] {
    lmg::GroupDatum g1 = load_datum(path1);
    lmg::GroupDatum g2 = load_datum(path2);
    lmg::IsoBudget budget;
    budget.height = height;
    budget.max_candidates = max_candidates;
    lmg::IsoVerdict v = lmg::decide_iso(g1, g2, budget);
    emit(lmg::verdict_to_json(v));
    if (v.verdict == lmg::Verdict::Unknown) exit_code = 3;
  });

  auto* bs = app.add_subcommand(
      "bs", "Baumslag-Solitar isomorphism BS(p,q) vs BS(p',q')");
  bs->add_option("p", bs_p, "first parameter")->required();
  bs->add_option("q", bs_q, "second parameter")->required();
  bs->add_option("pbar", bs_pbar, "first parameter of the second group")
      ->required();
  bs->add_option("qbar", bs_qbar, "second parameter of the second group")
      ->required();
  bs->callback([&] {
    json j;
    j["iso"] = lmg::bs_classify(bs_p, bs_q, bs_pbar, bs_qbar);
    emit(j);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const lmg::parse_error& e) {
    json err;
    err["error"] = e.what();
    err["position"] = e.position;
    std::cerr << err.dump() << "\n";
    return 1;
  } catch (const lmg::validation_error& e) {
    json err;
    err["error"] = e.what();
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const lmg::error& e) {
    json err;
    err["error"] = e.what();
    std::cerr << err.dump() << "\n";
    return 2;
  }
  return exit_code;
}
