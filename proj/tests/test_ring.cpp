#include "doctest.h"
#include "elcomm/error.hpp"
#include "elcomm/ring.hpp"
#include "support.hpp"

#include <map>
#include <random>
#include <string>

using namespace elcomm;

namespace {

RingPtr free_ab() { return parse_ring("free(Z; a:A, b:B, c:R)"); }

Polynomial P(const RingPtr& r, const char* text) { return parse_polynomial(r, text); }

// Schoolbook product over string words; shares no code with Polynomial.
using WordPoly = std::map<std::string, long long>;
WordPoly word_mul(const WordPoly& p, const WordPoly& q) {
  WordPoly out;
  for (auto& [u, x] : p)
    for (auto& [v, y] : q) out[u + v] += x * y;
  std::erase_if(out, [](auto& kv) { return kv.second == 0; });
  return out;
}

}  // namespace

TEST_CASE("ring spec grammar round-trips") {
  for (const char* text : {"free(Z; a:A, b:B, c:R)", "trunc(F2; x:A, y:B; 3)", "Z/6", "poly(Z; x)",
                           "poly(Q; x, y)"}) {
    auto r = parse_ring(text);
    CHECK(r->to_string() == text);
    CHECK(*parse_ring(r->to_string()) == *r);
  }
  CHECK_THROWS_AS(parse_ring("trunc(F4; x; 2)"), ParseError);
  CHECK_THROWS_AS(parse_ring("free(Z; a:A, a:B)"), ParseError);
  CHECK_THROWS_AS(parse_ring("Z/1"), ParseError);
  CHECK_THROWS_AS(parse_ring("poly(Z; x:A)"), ParseError);
}

TEST_CASE("poly_add examples") {
  auto r = free_ab();
  CHECK((P(r, "ab") + P(r, "-1*a*b")).is_zero());
  CHECK(P(r, "1 + a b") + P(r, "a b") == P(r, "1 + 2 a b"));
  auto z6 = parse_ring("Z/6");
  CHECK(P(z6, "4") + P(z6, "3") == P(z6, "1"));
  CHECK_THROWS_AS(P(r, "a") + P(z6, "1"), RingMismatch);
}

TEST_CASE("poly_mul examples") {
  auto r = free_ab();
  auto ab = P(r, "a") * P(r, "b");
  auto ba = P(r, "b") * P(r, "a");
  CHECK(ab == P(r, "a*b"));
  CHECK(ab != ba);
  CHECK(P(r, "1 + a b") * P(r, "1 - a b") == P(r, "1 - a b a b"));

  // independent schoolbook check of the same product
  WordPoly lhs{{"", 1}, {"ab", 1}}, rhs{{"", 1}, {"ab", -1}};
  auto expected = word_mul(lhs, rhs);
  CHECK(expected == WordPoly{{"", 1}, {"abab", -1}});

  auto tr = parse_ring("trunc(F2; x:A, y:B; 3)");
  CHECK((P(tr, "x y") * P(tr, "x y")).is_zero());
  CHECK(P(tr, "x y") * P(tr, "x") == P(tr, "x y x"));
  CHECK(P(tr, "3 x") == P(tr, "x"));
}

TEST_CASE("evaluate_hom examples") {
  auto r = free_ab();
  auto z6 = parse_ring("Z/6");
  Assignment to_z6{{"a", P(z6, "2")}, {"b", P(z6, "3")}, {"c", P(z6, "0")}};
  CHECK(evaluate_hom(P(r, "1 + a b + a b a b"), to_z6, z6) == P(z6, "1"));

  auto zx = parse_ring("poly(Z; x)");
  Assignment to_x{{"a", P(zx, "x")}};
  CHECK(evaluate_hom(P(r, "a"), to_x, zx) == P(zx, "x"));
  CHECK_THROWS_AS(evaluate_hom(P(r, "a b"), to_x, zx), UnassignedLetter);

  auto uv = parse_ring("poly(Z; u, v)");
  Assignment comm{{"a", P(uv, "u")}, {"b", P(uv, "v")}};
  CHECK(evaluate_hom(P(r, "a b - b a"), comm, uv).is_zero());
}

TEST_CASE("polynomial text round-trips and letter splitting") {
  auto r = free_ab();
  auto p = P(r, "1 + a b + a b a b - 3 c a");
  CHECK(P(r, p.to_string().c_str()) == p);
  CHECK(P(r, "abab") == P(r, "a*b*a*b"));
  CHECK(P(r, "(1 - a)(1 + a)") == P(r, "1 - a a"));
  CHECK(P(r, "a^3") == P(r, "a a a"));
  CHECK_THROWS_AS(P(r, "a + q"), ParseError);
  CHECK_THROWS_AS(P(r, "1/2"), ParseError);

  auto q = parse_ring("poly(Q; x, y)");
  auto half = P(q, "1/2 x + 1/3");
  CHECK(P(q, half.to_string().c_str()) == half);
  CHECK(half * P(q, "6") == P(q, "3 x + 2"));
  CHECK(P(q, "y x") == P(q, "x y"));
}

TEST_CASE("ring axioms hold for random triples on every backend") {
  std::mt19937_64 rng(20261015);
  for (const char* spec : {"free(Z; a:A, b:B, c:R)", "trunc(F3; x:A, y:B; 3)", "Z/12", "poly(Z; x, y)",
                           "poly(Q; x, y)"}) {
    CAPTURE(spec);
    auto ring = parse_ring(spec);
    auto gen = [&] {
      auto p = testing::random_poly(ring, rng, 3, 2, 4);
      if (ring->is_rational() && rng() % 2) p = p * Polynomial::fraction(ring, 1, 1 + rng() % 5);
      return p;
    };
    const auto zero = Polynomial(ring);
    const auto one = Polynomial::constant(ring, 1);
    int failures = 0;
    for (int trial = 0; trial < 10000; ++trial) {
      auto p = gen(), q = gen(), r = gen();
      bool ok = (p + q) + r == p + (q + r) && (p * q) * r == p * (q * r) &&
                p * (q + r) == p * q + p * r && (p + q) * r == p * r + q * r && p + zero == p &&
                one * p == p && p * one == p && (p - p).is_zero() && p + q == q + p;
      failures += ok ? 0 : 1;
    }
    CHECK(failures == 0);
  }
}

TEST_CASE("evaluate_hom is a ring homomorphism") {
  std::mt19937_64 rng(7);
  auto src = free_ab();
  for (const char* spec : {"Z/6", "Z/8", "trunc(F2; x:A, y:B; 4)", "poly(Z; x, y)", "poly(Q; x, y)",
                           "free(Z; u:A, v:B)"}) {
    CAPTURE(spec);
    auto target = parse_ring(spec);
    int failures = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      Assignment img;
      for (auto& l : src->letters()) img.emplace(l.name, testing::random_poly(target, rng, 2, 1, 3));
      auto p = testing::random_poly(src, rng, 3, 3, 3);
      auto q = testing::random_poly(src, rng, 3, 3, 3);
      bool ok = evaluate_hom(p + q, img, target) == evaluate_hom(p, img, target) + evaluate_hom(q, img, target) &&
                evaluate_hom(p * q, img, target) == evaluate_hom(p, img, target) * evaluate_hom(q, img, target);
      failures += ok ? 0 : 1;
    }
    CHECK(failures == 0);
  }
}

TEST_CASE("free-algebra equality is canonical") {
  auto r = free_ab();
  // same element built along different routes
  auto p1 = (P(r, "a") + P(r, "b")) * (P(r, "a") - P(r, "b"));
  auto p2 = P(r, "a a - a b + b a - b b");
  CHECK(p1 == p2);
  CHECK(p1.to_string() == p2.to_string());
  std::vector<std::string> monos;
  for (auto& t : p1.terms()) monos.push_back(Polynomial::monomial(r, t.monomial).to_string());
  CHECK(monos == std::vector<std::string>{"a*a", "a*b", "b*a", "b*b"});
}
