#include "edr/rings.hpp"

#include <doctest.h>

#include <random>

using namespace edr;

namespace {

Element el(const RingHandle& R, const char* text) { return R->parse(text); }

}  // namespace

TEST_CASE("residue multiplication wraps to zero") {
  auto R = make_ring("Zn:12");
  CHECK(arith(*R, ArithOp::mul, el(R, "4"), el(R, "9")) == R->zero());
}

TEST_CASE("integer additive inverse") {
  auto Z = make_ring("Z");
  CHECK(arith(*Z, ArithOp::add, el(Z, "5"), el(Z, "-5")) == Z->zero());
}

TEST_CASE("dual integer product drops x squared") {
  auto D = make_ring("dualint");
  Element p = arith(*D, ArithOp::mul, el(D, "3+1/2 x"), el(D, "4-1/2 x"));
  // (3 + x/2)(4 - x/2) = 12 + (-3/2 + 2) x
  CHECK(p.as<DualValue>().a == 12);
  CHECK(p.as<DualValue>().b == Rational(1, 2));
}

TEST_CASE("mixing elements of different rings throws") {
  auto A = make_ring("Zn:12");
  auto B = make_ring("Zn:12");
  CHECK_THROWS_AS(arith(*A, ArithOp::add, el(A, "1"), el(B, "1")), MixedRings);
}

TEST_CASE("unit detection per kind") {
  auto R = make_ring("Zn:12");
  auto w = is_unit(*R, el(R, "5"));
  REQUIRE(w);
  CHECK(w->inverse == el(R, "5"));
  auto Z = make_ring("Z");
  CHECK_FALSE(is_unit(*Z, Z->from_int(2)));

  auto L = make_ring("zloc:{3,5}");
  auto inv = is_unit(*L, el(L, "2/7"));
  REQUIRE(inv);
  CHECK(L->mul(inv->inverse, el(L, "2/7")) == L->one());
  CHECK(inv->inverse == el(L, "7/2"));
  CHECK_FALSE(is_unit(*L, el(L, "3/2")));

  auto D = make_ring("dualint");
  CHECK(is_unit(*D, el(D, "-1+5/3 x")));
  CHECK_FALSE(is_unit(*D, el(D, "2+0 x")));
}

TEST_CASE("divisibility returns a valid cofactor or nothing") {
  auto Z = make_ring("Z");
  auto t = divides(*Z, el(Z, "6"), el(Z, "18"));
  REQUIRE(t);
  CHECK(*t == el(Z, "3"));
  CHECK_FALSE(divides(*Z, el(Z, "4"), el(Z, "18")));

  auto R = make_ring("Zn:12");
  auto q = divides(*R, el(R, "4"), el(R, "8"));
  REQUIRE(q);
  CHECK(R->mul(el(R, "4"), *q) == el(R, "8"));

  auto A = make_ring("polyq:0:x^2-1");
  CHECK_FALSE(divides(*A, el(A, "5-3x"), el(A, "3+x")));
  auto u = divides(*A, el(A, "1+x"), el(A, "2+2x"));
  REQUIRE(u);
  CHECK(A->mul(el(A, "1+x"), *u) == el(A, "2+2x"));
}

TEST_CASE("integer bezout data matches extended euclid") {
  auto Z = make_ring("Z");
  auto bd = bezout_gcd(*Z, el(Z, "12"), el(Z, "18"));
  CHECK(bd.d == el(Z, "6"));
  CHECK(bd.x == el(Z, "-1"));
  CHECK(bd.y == el(Z, "1"));
  CHECK(bd.a1 == el(Z, "2"));
  CHECK(bd.b1 == el(Z, "3"));
  CHECK(bd.u == el(Z, "-1"));
  CHECK(bd.v == el(Z, "1"));
  CHECK(bezout_identities_hold(*Z, el(Z, "12"), el(Z, "18"), bd));
}

TEST_CASE("bezout of two zeros uses the unit cofactor convention") {
  auto Z = make_ring("Z");
  auto bd = bezout_gcd(*Z, Z->zero(), Z->zero());
  CHECK(bd.d == Z->zero());
  CHECK(bd.a1 == Z->one());
  CHECK(bd.b1 == Z->zero());
  CHECK(bd.u == Z->one());
  CHECK(bd.v == Z->zero());
}

TEST_CASE("comaximal residues have a unit gcd") {
  auto R = make_ring("Zn:6");
  auto bd = bezout_gcd(*R, el(R, "2"), el(R, "3"));
  CHECK(bd.d == R->one());
  CHECK(bezout_identities_hold(*R, el(R, "2"), el(R, "3"), bd));
}

TEST_CASE("bezout identities hold for every pair of small finite rings") {
  for (const char* spec : {"Zn:12", "Zn:8", "prod(Zn:4,Zn:3)", "polyq:3:x^2", "polyq:2:x^2-1", "polyq:3:x^2-1"}) {
    auto R = make_ring(spec);
    std::size_t n = *R->cardinality();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Element a = R->element_at(i), b = R->element_at(j);
        auto bd = bezout_gcd(*R, a, b);
        INFO(spec << " " << R->format(a) << " " << R->format(b));
        CHECK(bezout_identities_hold(*R, a, b, bd));
      }
  }
}

TEST_CASE("non-principal ideals raise NotBezout") {
  auto R = nonbezout8_ring();
  CHECK_THROWS_AS(bezout_gcd(*R, el(R, "u"), el(R, "v")), NotBezout);
}

TEST_CASE("bezout identities hold on random infinite-ring pairs") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> d(-300, 300), den(1, 9);
  auto Z = make_ring("Z");
  auto L = make_ring("zloc:{3,5}");
  auto D = make_ring("dualint");
  const auto& LL = static_cast<const LocalizedRing&>(*L);
  const auto& DD = static_cast<const DualIntegerRing&>(*D);
  for (int k = 0; k < 300; ++k) {
    Element a = Z->from_int(d(rng)), b = Z->from_int(d(rng));
    CHECK(bezout_identities_hold(*Z, a, b, bezout_gcd(*Z, a, b)));
    int q1 = den(rng), q2 = den(rng);
    if (q1 % 3 && q1 % 5 && q2 % 3 && q2 % 5) {
      Element x = LL.fraction(d(rng), q1), y = LL.fraction(d(rng), q2);
      CHECK(bezout_identities_hold(*L, x, y, bezout_gcd(*L, x, y)));
    }
    Element f = DD.dual(d(rng), Rational(d(rng), den(rng))), g = DD.dual(d(rng) % 4, Rational(d(rng), den(rng)));
    CHECK(bezout_identities_hold(*D, f, g, bezout_gcd(*D, f, g)));
  }
}

TEST_CASE("operations stay canonical") {
  auto L = make_ring("zloc:{3,5}");
  Element a = L->parse("4/2");
  CHECK(a.as<Fraction>().num == 2);
  CHECK(a.as<Fraction>().den == 1);
  auto R = make_ring("Zn:7");
  CHECK(R->parse("-1") == R->parse("6"));
  CHECK(R->format(R->add(R->parse("5"), R->parse("4"))) == "2");
}

TEST_CASE("power by repeated multiplication") {
  auto R = make_ring("Zn:12");
  CHECK(power(*R, el(R, "2"), 2) == el(R, "4"));
  CHECK(power(*R, el(R, "2"), 0) == R->one());
}
