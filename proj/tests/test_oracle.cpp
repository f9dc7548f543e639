#include "doctest.h"
#include "elcomm/certify.hpp"
#include "elcomm/error.hpp"
#include "elcomm/oracle.hpp"

#include <array>

using namespace elcomm;

namespace {

// Every n x n matrix over Z/m, entries in row-major counting order.
template <class Visit>
void all_matrices(int n, int m, Visit visit) {
  std::vector<int> e(static_cast<std::size_t>(n) * n, 0);
  for (;;) {
    visit(e);
    std::size_t k = 0;
    while (k < e.size() && ++e[k] == m) e[k++] = 0;
    if (k == e.size()) return;
  }
}

int det_mod(const std::vector<int>& e, int n, int m) {
  long d = n == 2 ? long{e[0]} * e[3] - long{e[1]} * e[2]
                  : long{e[0]} * (e[4] * e[8] - e[5] * e[7]) - long{e[1]} * (e[3] * e[8] - e[5] * e[6]) +
                        long{e[2]} * (e[3] * e[7] - e[4] * e[6]);
  return static_cast<int>(((d % m) + m) % m);
}

SquareMatrix to_matrix(const RingPtr& r, int n, const std::vector<int>& e) {
  auto out = SquareMatrix::zero(r, n);
  for (int k = 0; k < n * n; ++k) out.at(k / n, k % n) = Polynomial::constant(r, e[k]);
  return out;
}

struct Z4 {
  RingPtr spec = parse_ring("Z/4");
  FiniteRing ring{spec};
  IdealDescriptor two = IdealDescriptor::divisor(2);
};

}  // namespace

TEST_CASE("closures of small elementary groups") {
  auto z2 = FiniteRing(parse_ring("Z/2"));
  CHECK(closure(z2, 2, {word_generator(GroupWord(), z2, 2)}).size() == 1);

  auto sl2 = closure(z2, 2, elementary_generators(z2, 2, IdealDescriptor::whole()));
  int det_one = 0;
  all_matrices(2, 2, [&](const std::vector<int>& e) {
    if (det_mod(e, 2, 2) != 1) return;
    ++det_one;
    CHECK(sl2.contains(to_matrix(z2.spec(), 2, e)));
  });
  CHECK(det_one == 6);
  CHECK(sl2.size() == 6);
}

TEST_CASE("elementary subgroups over Z/4") {
  Z4 z;
  // E(3, Z/4) is SL(3, Z/4); the relative group is the kernel of reduction mod 2
  int sl3 = 0, kernel = 0, level_two = 0;
  all_matrices(3, 4, [&](const std::vector<int>& e) {
    if (det_mod(e, 3, 4) != 1) return;
    ++sl3;
    bool congruent = true;
    for (int k = 0; k < 9; ++k) congruent = congruent && (e[k] - (k % 4 == 0 ? 1 : 0)) % 2 == 0;
    if (!congruent) return;
    ++kernel;
    // E(3, 2Z/4) is the abelian group of e + 2X with X zero on the diagonal mod 2
    if (e[0] % 4 == 1 && e[4] % 4 == 1 && e[8] % 4 == 1) ++level_two;
  });

  auto full = closure(z.ring, 3, elementary_generators(z.ring, 3, IdealDescriptor::whole()));
  CHECK(full.size() == static_cast<std::size_t>(sl3));
  CHECK(full.size() == 43008);

  auto relative = closure(z.ring, 3, relative_generators(z.ring, 3, z.two));
  CHECK(relative.size() == static_cast<std::size_t>(kernel));
  CHECK(relative.size() == 256);

  auto level = closure(z.ring, 3, elementary_generators(z.ring, 3, z.two));
  CHECK(level.size() == static_cast<std::size_t>(level_two));
  CHECK(level.size() == 64);

  CHECK_THROWS_AS(closure(z.ring, 3, elementary_generators(z.ring, 3, IdealDescriptor::whole()), 1000),
                  CapExceeded);
}

TEST_CASE("closure invariants") {
  Z4 z;
  auto relative = closure(z.ring, 3, relative_generators(z.ring, 3, z.two));
  auto elements = relative.elements();

  std::vector<OracleGenerator> again;
  for (const auto& g : elements) again.push_back(OracleGenerator{g, std::nullopt});
  CHECK(closure(z.ring, 3, again).size() == relative.size());

  auto e = SquareMatrix::identity(z.spec, 3);
  CHECK(relative.contains(e));
  for (const auto& g : elements) {
    bool found = false;
    for (const auto& x : elements)
      if ((g * x).is_identity()) {
        found = true;
        CHECK(relative.contains(x));
        break;
      }
    CHECK(found);
  }
}

TEST_CASE("membership queries") {
  Z4 z;
  auto two = Polynomial::constant(z.spec, 2);
  auto y = GroupWord::y(1, 2, two, two);
  auto gy = word_generator(y, z.ring, 3);
  auto h = closure(z.ring, 3, {gy});
  CHECK(h.contains(gy.matrix));
  auto trivial = closure(z.ring, 3, {});
  CHECK(trivial.size() == 1);
  CHECK(trivial.contains(gy.matrix) == gy.matrix.is_identity());
  CHECK(trivial.contains(SquareMatrix::identity(z.spec, 3)));
}

TEST_CASE("mixed commutator of level-two subgroups is central") {
  Z4 z;
  auto ea = closure(z.ring, 3, elementary_generators(z.ring, 3, z.two));
  auto mixed = closure(z.ring, 3, mixed_commutator_generators(ea, ea));
  // A o B = 4Z/4 = 0 here
  CHECK(mixed.size() == 1);
  auto ambient = elementary_generators(z.ring, 3, IdealDescriptor::whole());
  auto trivial = closure(z.ring, 3, {});
  CHECK(centrality_check(mixed, ambient, trivial).ok);

  // E(3, 2Z/4) is abelian but not central
  auto level = centrality_check(ea, ambient, trivial);
  CHECK_FALSE(level.ok);
  CHECK(centrality_check(closure(z.ring, 3, ambient), ambient, trivial).ok == false);
  auto noncentral = centrality_check(closure(z.ring, 3, ambient), ambient, trivial);
  CHECK(noncentral.witness.find("[h,g]") != std::string::npos);
}

TEST_CASE("finite rings and their ideals") {
  auto t = FiniteRing(parse_ring("trunc(F2; a:A, b:B; 2)"));
  CHECK(t.dimension() == 7);
  CHECK(t.element_count() == 128);
  auto A = IdealDescriptor::expr(IdealExpr::atom('A'));
  CHECK(ideal_elements(t, A).size() == 16);
  std::mt19937_64 rng(3);
  for (int k = 0; k < 50; ++k) CHECK(in_ideal(t, random_element(t, A, rng), A));
  auto x = parse_polynomial(t.spec(), "1+a*b");
  CHECK(t.decode(t.encode(x)) == x);

  auto z6 = FiniteRing(parse_ring("Z/6"));
  CHECK(ideal_elements(z6, IdealDescriptor::divisor(2)).size() == 3);
  CHECK(in_ideal(z6, Polynomial::constant(z6.spec(), 4), IdealDescriptor::divisor(2)));
  CHECK_FALSE(in_ideal(z6, Polynomial::constant(z6.spec(), 3), IdealDescriptor::divisor(2)));
  CHECK_THROWS_AS(FiniteRing(parse_ring("free(Z; a:A)")), UnsupportedBackend);
}

TEST_CASE("built-in identities hold on random instances") {
  auto z8 = FiniteRing(parse_ring("Z/8"));
  TagIdeals ideals{{'A', IdealDescriptor::divisor(2)}};
  for (const auto& name : shadow_identity_names()) {
    CAPTURE(name);
    std::size_t trials = name == "steinberg" ? 50 : 1000;
    auto r = numeric_shadow(name, trials, z8, ideals, 11);
    CAPTURE(r.failure);
    CHECK(r.ok);
    CHECK(r.trials == trials);
  }
  auto t = FiniteRing(parse_ring("trunc(F3; x:A, y:B, z:C; 4)"));
  for (const auto& name : {"y-explicit", "y-inverse", "table-t-y", "table-y-t"}) {
    auto r = numeric_shadow(name, 30, t, {}, 5);
    CAPTURE(r.failure);
    CHECK(r.ok);
  }
  CHECK(numeric_shadow("y-explicit", 0, z8, ideals, 1).ok);
  CHECK_THROWS_AS(numeric_shadow("no-such-identity", 1, z8, ideals, 1), ParseError);
}

TEST_CASE("certificates shadowed into Z/6 and Z/8") {
  auto ring = parse_ring("free(Z; a:A, b:B, c:C)");
  auto p = [&](const char* s) { return parse_polynomial(ring, s); };
  ElementaryCommutator y{1, 2, p("a"), p("b"), IdealExpr::atom('A'), IdealExpr::atom('B')};
  auto cert = certify_triple(y, 1, 3, p("c"), IdealExpr::atom('C'), 3);
  REQUIRE(check(cert).ok);
  auto z6 = FiniteRing(parse_ring("Z/6"));
  auto z8 = FiniteRing(parse_ring("Z/8"));
  TagIdeals i6{{'A', IdealDescriptor::divisor(2)}, {'B', IdealDescriptor::divisor(3)}};
  TagIdeals i8{{'A', IdealDescriptor::divisor(2)}, {'B', IdealDescriptor::divisor(4)}};
  CHECK(shadow_certificate(cert, z6, i6, 100, 1).ok);
  CHECK(shadow_certificate(cert, z8, i8, 100, 1).ok);
  CHECK(shadow_certificate(cert, z8, i8, 0, 1).trials == 0);

  auto bad = cert;
  bad.lhs = GroupWord::commutator(y.word(), GroupWord::t(1, 3, p("2*c")));
  CHECK_FALSE(shadow_certificate(bad, z8, {}, 100, 1).ok);

  // the matrix identity still holds, but D maps to the zero ideal
  auto wrong_claim = cert;
  std::get<ConjTransvection>(wrong_claim.atoms[0]).claim = IdealExpr::atom('D');
  TagIdeals strict{{'D', IdealDescriptor::divisor(8)}};
  CHECK_FALSE(shadow_certificate(wrong_claim, z8, strict, 100, 1).ok);
}

TEST_CASE("comaximal ideals in Z/6") {
  auto pair = bezout_pair(6, 2, 3);
  REQUIRE(pair);
  CHECK((pair->first + pair->second) % 6 == 1);
  CHECK(pair->first % 2 == 0);
  CHECK(pair->second % 3 == 0);
  CHECK_FALSE(bezout_pair(4, 2, 2));

  auto z6 = parse_ring("Z/6");
  auto y = GroupWord::y(1, 2, Polynomial::constant(z6, 2), Polynomial::constant(z6, 3));
  CHECK(eval(y, z6, 2).is_identity());
  CHECK(eval(y, z6, 3).is_identity());

  auto ring = parse_ring("free(Z; a:A, b:B, p:A, q:B)");
  auto P = [&](const char* s) { return parse_polynomial(ring, s); };
  ElementaryCommutator ya{1, 2, P("a"), P("b"), IdealExpr::atom('A'), IdealExpr::atom('B')};
  auto cert = certify_comaximal(ya, P("p"), P("q"), 3);
  REQUIRE(check(cert).ok);
  auto f6 = FiniteRing(z6);
  Assignment fixed{{"a", Polynomial::constant(z6, 2)},
                   {"b", Polynomial::constant(z6, 3)},
                   {"p", Polynomial::constant(z6, static_cast<long>(pair->first))},
                   {"q", Polynomial::constant(z6, static_cast<long>(pair->second))}};
  auto r = shadow_certificate(cert, f6, {{'A', IdealDescriptor::divisor(2)}, {'B', IdealDescriptor::divisor(3)}}, 1,
                              0, fixed);
  CHECK(r.ok);
  // the substituted left side is y_12(2, 3) itself
  CHECK(substitute(cert.lhs, fixed, z6) == GroupWord::y(1, 2, Polynomial::constant(z6, 2), Polynomial::constant(z6, 3)));
}
