#include "edr/rings.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace edr;

namespace {

// Exhaustive axiom oracle over the enumeration.
bool axioms_hold(const Ring& R) {
  std::size_t n = *R.cardinality();
  std::vector<Element> e;
  for (std::size_t i = 0; i < n; ++i) e.push_back(R.element_at(i));
  for (const auto& a : e) {
    if (R.add(a, R.zero()) != a || R.mul(a, R.one()) != a || R.add(a, R.neg(a)) != R.zero()) return false;
    for (const auto& b : e) {
      if (R.add(a, b) != R.add(b, a) || R.mul(a, b) != R.mul(b, a)) return false;
      for (const auto& c : e) {
        if (R.mul(a, R.add(b, c)) != R.add(R.mul(a, b), R.mul(a, c))) return false;
        if (R.mul(R.mul(a, b), c) != R.mul(a, R.mul(b, c))) return false;
        if (R.add(R.add(a, b), c) != R.add(a, R.add(b, c))) return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("spec strings build rings of the expected size") {
  CHECK(make_ring("Zn:12")->cardinality() == 12u);
  CHECK(make_ring("polyq:6:x^2-1")->cardinality() == 36u);
  CHECK(make_ring("polyq:5:x^3")->cardinality() == 125u);
  CHECK(make_ring("prod(Zn:4,Zn:9)")->cardinality() == 36u);
  CHECK(make_ring("prod(Zn:2,Zn:2,Zn:3)")->cardinality() == 12u);
  CHECK_FALSE(make_ring("zloc:{3,5}")->is_finite());
  CHECK_FALSE(make_ring("dualint")->is_finite());
  CHECK(make_ring("table:builtin/nonbezout8")->cardinality() == 8u);
}

TEST_CASE("malformed specs are rejected") {
  CHECK_THROWS_AS(make_ring("Zn:1"), ParseError);
  CHECK_THROWS_AS(make_ring("Zn:abc"), ParseError);
  CHECK_THROWS_AS(make_ring("zloc:{3,3}"), ParseError);
  CHECK_THROWS_AS(make_ring("zloc:{4}"), ParseError);
  CHECK_THROWS_AS(make_ring("polyq:0:x^2+1"), UnsupportedSpec);
  CHECK_THROWS(make_ring("nonsense"));
}

TEST_CASE("enumeration length equals cardinality and indices round-trip") {
  for (const char* spec : {"Zn:10", "prod(Zn:2,Zn:3)", "polyq:3:x^2-1", "polyq:2:x^3", "table:builtin/nonbezout8"}) {
    auto R = make_ring(spec);
    std::size_t n = *R->cardinality();
    for (std::size_t i = 0; i < n; ++i) CHECK(R->index_of(R->element_at(i)) == i);
  }
}

TEST_CASE("ring axioms hold exhaustively on small rings") {
  for (const char* spec : {"Zn:6", "prod(Zn:2,Zn:3)", "polyq:2:x^2-1", "polyq:3:x^2", "table:builtin/nonbezout8",
                           "quot(Zn:12,4)"}) {
    INFO(spec);
    CHECK(axioms_hold(*make_ring(spec)));
  }
}

TEST_CASE("ring axioms hold on random infinite-ring samples") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> d(-50, 50), den(1, 8);
  auto D = make_ring("dualint");
  const auto& DD = static_cast<const DualIntegerRing&>(*D);
  for (int k = 0; k < 200; ++k) {
    Element a = DD.dual(d(rng), Rational(d(rng), den(rng))), b = DD.dual(d(rng), Rational(d(rng), den(rng))),
            c = DD.dual(d(rng), Rational(d(rng), den(rng)));
    CHECK(D->mul(a, D->add(b, c)) == D->add(D->mul(a, b), D->mul(a, c)));
    CHECK(D->mul(D->mul(a, b), c) == D->mul(a, D->mul(b, c)));
  }
}

TEST_CASE("table files with broken axioms are refused") {
  TableRingData data;
  data.size = 2;
  data.add = {{0, 1}, {1, 0}};
  data.mul = {{0, 0}, {0, 0}};  // one * one != one
  data.zero = 0;
  data.one = 1;
  CHECK_THROWS_AS(make_table_ring(data, "table:broken"), AxiomViolation);
}

TEST_CASE("table rings load from json files") {
  auto R = make_ring(std::string("table:") + EDR_TEST_DATA + "/nonbezout8.json");
  CHECK(R->cardinality() == 8u);
  auto data = parse_table_ring(table_ring_json(tabulate(*R)));
  CHECK(data.size == 8);
}

TEST_CASE("quotient of Z/12 by 4 has four classes") {
  auto R = make_ring("Zn:12");
  auto q = quotient_ring(R, {R->parse("4")});
  CHECK(q.target->cardinality() == 4u);
  CHECK(q.ideal.size() == 3);
  // The projection is a homomorphism.
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = 0; j < 12; ++j) {
      Element a = R->element_at(i), b = R->element_at(j);
      CHECK(q.project(R->add(a, b)) == q.target->add(q.project(a), q.project(b)));
      CHECK(q.project(R->mul(a, b)) == q.target->mul(q.project(a), q.project(b)));
    }
}

TEST_CASE("quotient by a unit is the zero ring") {
  auto R = make_ring("Zn:12");
  CHECK(quotient_ring(R, {R->one()}).target->cardinality() == 1u);
}

TEST_CASE("quotient of a product by a principal ideal") {
  auto R = make_ring("prod(Zn:6,Zn:6)");
  Element g = R->parse("(2|3)");
  std::set<std::size_t> multiples;
  for (std::size_t i = 0; i < 36; ++i) multiples.insert(R->index_of(R->mul(g, R->element_at(i))));
  auto q = quotient_ring(R, {g});
  CHECK(q.ideal.size() == multiples.size());
  CHECK(*q.target->cardinality() * multiples.size() == 36);
}

TEST_CASE("localized residue map evaluates fractions") {
  auto L = make_ring("zloc:{3,5}");
  ResidueMap m = localized_residue_map(L);
  const Ring& T = *m.target();
  CHECK(T.format(m(L->parse("7/2"))) == "(2|1)");
  CHECK(m(L->parse("15")) == T.zero());
  CHECK(m(L->parse("15/2")) == T.zero());
  CHECK(m(L->one()) == T.one());
  for (std::size_t i = 0; i < 15; ++i) CHECK(m(m.lift(T.element_at(i))) == T.element_at(i));
}

TEST_CASE("residue map kernel is divisibility of the numerator by 15") {
  auto L = make_ring("zloc:{3,5}");
  const auto& LL = static_cast<const LocalizedRing&>(*L);
  ResidueMap m = localized_residue_map(L);
  std::size_t samples = 0;
  for (long num = -60; num <= 60; ++num)
    for (long den : {1L, 2L, 4L, 7L, 8L, 11L, 13L, 16L}) {
      Element x = LL.fraction(num, den);
      CHECK((m(x) == m.target()->zero()) == (num % 15 == 0));
      ++samples;
    }
  CHECK(samples >= 900);
}

TEST_CASE("polynomial quotients reduce modulo f") {
  auto R = make_ring("polyq:6:x^2-1");
  CHECK(R->mul(R->parse("x"), R->parse("x")) == R->one());
  CHECK(R->format(R->mul(R->parse("2+x"), R->parse("3+x"))) == "1+5x");
}
