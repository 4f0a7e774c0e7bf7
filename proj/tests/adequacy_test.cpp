#include "edr/adequacy.hpp"
#include "edr/rings.hpp"

#include <doctest.h>

#include <cstdlib>
#include <numeric>
#include <random>

using namespace edr;

namespace {

std::vector<long> prime_factors(long v) {
  v = std::labs(v);
  std::vector<long> ps;
  for (long p = 2; p * p <= v; ++p)
    if (v % p == 0) {
      ps.push_back(p);
      while (v % p == 0) v /= p;
    }
  if (v > 1) ps.push_back(v);
  return ps;
}

// Trial-division oracle for the three clauses.
bool clauses_hold(long c, long a, const AdequateFactorization& f) {
  if (f.r * f.s != c) return false;
  if (gcd(f.r, Integer(a)) != 1) return false;
  if (f.s <= 0 || !f.s.fits_slong_p()) return false;
  for (long p : prime_factors(f.s.get_si()))
    if (a % p != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("integer adequate factorizations") {
  auto f = adequate_factor_Z(12, 10);
  CHECK(f.r == 3);
  CHECK(f.s == 4);
  auto g = adequate_factor_Z(7, 10);
  CHECK(g.r == 7);
  CHECK(g.s == 1);
  auto h = adequate_factor_Z(-9, 6);
  CHECK(h.r == -1);
  CHECK(h.s == 9);
  CHECK_THROWS_AS(adequate_factor_Z(0, 5), ZeroInput);
}

TEST_CASE("integer factorization against a zero target keeps everything in s") {
  auto f = adequate_factor_Z(12, 0);
  CHECK(f.r * f.s == 12);
  CHECK(abs(f.r) == 1);
}

TEST_CASE("integer factorization clauses hold on a grid") {
  for (long c = -300; c <= 300; c += 7) {
    if (c == 0) continue;
    for (long a = -300; a <= 300; a += 11) {
      INFO(c << " " << a);
      CHECK(clauses_hold(c, a, adequate_factor_Z(c, a)));
    }
  }
}

TEST_CASE("integer factorization is exact on large values") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 2000; ++k) {
    Integer c = Integer(static_cast<unsigned long>(rng() >> 2)) + 1;
    Integer a = Integer(static_cast<unsigned long>(rng() >> 2));
    auto f = adequate_factor_Z(c, a);
    CHECK(f.r * f.s == c);
    CHECK(gcd(f.r, a) == 1);
  }
}

TEST_CASE("dual integer witnesses") {
  auto D = make_ring("dualint");
  auto w = adequate_witness_dualint(D, D->parse("12+1/2 x"), D->parse("10+0 x"));
  CHECK(D->format(w.s) == D->format(D->parse("3+1/2 x")));
  CHECK(D->format(w.t) == D->format(D->parse("4-1/2 x")));
  CHECK(D->mul(w.s, w.t) == D->parse("12+1/2 x"));

  auto v = adequate_witness_dualint(D, D->parse("7"), D->parse("10"));
  CHECK(v.s == D->parse("7"));
  CHECK(v.t == D->one());

  auto u = adequate_witness_dualint(D, D->parse("4+1 x"), D->parse("2"));
  CHECK(u.s == D->one());
  CHECK(u.t == D->parse("4+1 x"));
}

TEST_CASE("dual integer witness comaximality certificate") {
  auto D = make_ring("dualint");
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> m(1, 500), q(-20, 20), den(1, 20), sign(0, 1);
  for (int k = 0; k < 200; ++k) {
    const auto& DD = static_cast<const DualIntegerRing&>(*D);
    Element f = DD.dual(m(rng) * (sign(rng) ? 1 : -1), Rational(q(rng), den(rng)));
    Element h = DD.dual(m(rng) * (sign(rng) ? 1 : -1), Rational(q(rng), den(rng)));
    auto w = adequate_witness_dualint(D, f, h);
    CHECK(D->mul(w.s, w.t) == f);
    CHECK(D->add(D->mul(w.k, w.s), D->mul(w.l, h)) == w.unit);
    CHECK(D->inverse(w.unit).has_value());
  }
}

TEST_CASE("dual integers with zero integer part are refused") {
  auto D = make_ring("dualint");
  CHECK_THROWS_AS(adequate_witness_dualint(D, D->parse("0+3 x"), D->parse("2")), ZeroIntegerPart);
  CHECK_THROWS_AS(adequate_witness_dualint(make_ring("Z"), make_ring("Z")->one(), make_ring("Z")->one()), Unsupported);
}

TEST_CASE("localized witnesses factor only over the localizing primes") {
  auto L = make_ring("zloc:{3,5}");
  auto w = adequate_witness_zloc(L, L->parse("45/2"), L->parse("3"));
  CHECK(w.s == L->parse("9"));
  CHECK(w.r == L->parse("5/2"));
  CHECK(L->add(L->mul(w.r, w.p), L->mul(L->parse("3"), w.q)) == L->one());

  auto u = adequate_witness_zloc(L, L->parse("7/2"), L->parse("3"));
  CHECK(u.r == L->parse("7/2"));
  CHECK(u.s == L->one());

  auto b = adequate_witness_zloc(L, L->parse("15"), L->parse("15"));
  CHECK(b.r == L->one());
  CHECK(b.s == L->parse("15"));
  CHECK_THROWS_AS(adequate_witness_zloc(L, L->zero(), L->one()), ZeroInput);
}

TEST_CASE("Z[a] case study surfaces the sign discrepancy") {
  auto j = zalpha_case_study();
  CHECK(j["in_ring"]["divides"] == false);
  const auto& q = j["quotients"];
  REQUIRE(q.size() == 2);
  CHECK(q[0]["alpha_maps_to"] == 1);
  CHECK(q[0]["s_prime_image"] == "2");
  CHECK(q[0]["s_image"] == "4");
  CHECK(q[0]["s_prime_divides_s"] == true);
  CHECK(q[1]["alpha_maps_to"] == -1);
  CHECK(q[1]["s_prime_image"] == "8");
  CHECK(q[1]["s_image"] == "2");
  CHECK(q[1]["s_prime_divides_s"] == false);
  CHECK(j["reproducing_quotients"] == 1);
  CHECK(j["sign_discrepancy"] == true);
}

TEST_CASE("Z[a] divisibility agrees with the ring's own division") {
  auto A = make_ring("polyq:0:x^2-1");
  CHECK_FALSE(A->quotient(A->parse("5-3x"), A->parse("3+x")).has_value());
}

TEST_CASE("adequacy reports per ring kind") {
  auto Z = make_ring("Z");
  auto j = adequate_report(Z, Z->parse("12"), Z->parse("10"), AdequacyVariant::classic);
  CHECK(j["witness"]["r"] == "3");
  CHECK(j["witness"]["s"] == "4");

  auto R = make_ring("Zn:12");
  auto k = adequate_report(R, R->parse("0"), R->parse("5"), AdequacyVariant::feckly);
  CHECK(k["adequate"] == true);

  auto N = nonbezout8_ring();
  bool some_failure = false;
  for (std::size_t c = 0; c < 8 && !some_failure; ++c)
    for (std::size_t a = 0; a < 8 && !some_failure; ++a) {
      auto r = adequate_report(N, N->element_at(c), N->element_at(a), AdequacyVariant::classic);
      if (r["adequate"] == false) {
        some_failure = true;
        CHECK(r["failure"].contains("failing_clause"));
      }
    }
}
