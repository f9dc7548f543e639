#include "doctest.h"
#include "elcomm/error.hpp"
#include "elcomm/theorem.hpp"

#include <functional>

using namespace elcomm;

namespace {

void require_sound(const Theorem1Report& r) {
  CAPTURE(r.summary());
  REQUIRE(r.ok());
  for (const auto& s : r.steps)
    for (const auto& i : s.instances) {
      // each certificate must stand on its own once written out
      auto back = parse_certificate(serialize(i.certificate));
      auto res = check(back);
      CAPTURE(i.name);
      CAPTURE(res.message);
      CHECK(res.ok);
    }
}

// All bracketings of the given leaves.
std::vector<BracketTree> bracketings(const std::string& tags) {
  if (tags.size() == 1) return {BracketTree::leaf(tags[0])};
  std::vector<BracketTree> out;
  for (std::size_t cut = 1; cut < tags.size(); ++cut)
    for (const auto& l : bracketings(tags.substr(0, cut)))
      for (const auto& r : bracketings(tags.substr(cut))) out.push_back(BracketTree::node(l, r));
  return out;
}

bool needs_quadruple(const BracketTree& t) {
  if (t.is_leaf()) return false;
  if (!t.left().is_leaf() && !t.right().is_leaf()) return true;
  return needs_quadruple(t.left()) || needs_quadruple(t.right());
}

}  // namespace

TEST_CASE("reduction over the standard trees at n = 4") {
  for (const char* t : {"[[A,B],C]", "[A,[B,C]]", "[[A,B],[C,D]]", "[[[A,B],C],D]", "[[[A,B],C],[D,E]]"}) {
    CAPTURE(t);
    require_sound(theorem1_reduce(parse_bracket_tree(t), 4));
  }
}

TEST_CASE("step structure follows the cut points") {
  auto r = theorem1_reduce(parse_bracket_tree("[[[A,B],C],[D,E]]"), 4);
  REQUIRE(r.steps.size() == 2);
  CHECK(r.steps[0].construction == "quadruple");
  CHECK(r.steps[0].target == "[E(4,(AoB)oC),E(4,DoE)]");
  CHECK(r.steps[0].instances.size() == 12);
  CHECK(r.steps[1].subtree == "[[A,B],C]");
  CHECK(r.steps[1].construction == "triple");
  CHECK(r.steps[1].target == "[E(4,AoB),E(4,C)]");

  auto mirrored = theorem1_reduce(parse_bracket_tree("[A,[B,C]]"), 3);
  REQUIRE(mirrored.steps.size() == 1);
  CHECK(mirrored.steps[0].construction == "triple-mirrored");
  CHECK(mirrored.steps[0].target == "[E(3,A),E(3,BoC)]");

  CHECK(theorem1_reduce(parse_bracket_tree("[A,B]"), 3).steps.empty());
}

TEST_CASE("trees without a quadruple step also reduce at n = 3") {
  int reduced = 0;
  for (const char* leaves : {"ABC", "ABCD"})
    for (const auto& t : bracketings(leaves)) {
      CAPTURE(t.to_string());
      if (needs_quadruple(t)) {
        CHECK_THROWS_AS(theorem1_reduce(t, 3), NotSupported);
        continue;
      }
      require_sound(theorem1_reduce(t, 3));
      ++reduced;
    }
  CHECK(reduced == 6);
}

TEST_CASE("caps and parallel runs") {
  CHECK_THROWS_AS(theorem1_reduce(parse_bracket_tree("[[[A,B],[C,D]],[[F,G],H]]"), 4), CapExceeded);
  Theorem1Options tight;
  tight.conjugator_cap = 2;
  CHECK_THROWS_AS(theorem1_reduce(parse_bracket_tree("[[A,B],C]"), 3, tight), CapExceeded);

  Theorem1Options parallel;
  parallel.jobs = 4;
  auto tree = parse_bracket_tree("[[A,B],[C,D]]");
  CHECK(theorem1_reduce(tree, 4, parallel).summary() == theorem1_reduce(tree, 4).summary());
}
