#include "edr/engine.hpp"
#include "edr/rings.hpp"

#include <doctest.h>

#include <numeric>
#include <set>

using namespace edr;

namespace {

// Plain-integer oracles for Z/n.
std::set<long> units_mod(long n) {
  std::set<long> s;
  for (long a = 0; a < n; ++a)
    if (std::gcd(a, n) == 1) s.insert(a);
  return s;
}

std::set<long> radical_mod(long n) {
  std::set<long> s;
  for (long x = 0; x < n; ++x) {
    bool ok = true;
    for (long r = 0; r < n && ok; ++r) ok = std::gcd(((1 - x * r) % n + n) % n, n) == 1;
    if (ok) s.insert(x);
  }
  return s;
}

std::set<long> idempotents_mod(long n) {
  std::set<long> s;
  for (long e = 0; e < n; ++e)
    if (e * e % n == e) s.insert(e);
  return s;
}

std::set<long> as_set(const EngineCache& c, const ElementSet& bits) {
  std::set<long> s;
  for (auto i = bits.find_first(); i != ElementSet::npos; i = bits.find_next(i))
    s.insert(std::stol(c.label(static_cast<Index>(i))));
  return s;
}

EngineHandle cache_of(const char* spec) { return EngineCache::build(make_ring(spec)); }

}  // namespace

TEST_CASE("units, radical and idempotents of Z/n agree with the integer oracle") {
  for (long n = 2; n <= 40; ++n) {
    auto c = EngineCache::build(make_ring("Zn:" + std::to_string(n)));
    INFO("n = " << n);
    CHECK(as_set(*c, c->units()) == units_mod(n));
    CHECK(as_set(*c, c->radical()) == radical_mod(n));
    std::set<long> idem;
    for (Index e : c->idempotents()) idem.insert(std::stol(c->label(e)));
    CHECK(idem == idempotents_mod(n));
  }
}

TEST_CASE("Z/12 and Z/4 cache contents") {
  auto c = cache_of("Zn:12");
  CHECK(as_set(*c, c->radical()) == std::set<long>{0, 6});
  CHECK(as_set(*c, c->units()) == std::set<long>{1, 5, 7, 11});
  auto d = cache_of("Zn:4");
  CHECK(as_set(*d, d->radical()) == std::set<long>{0, 2});
  CHECK(d->idempotents().size() == 2);
}

TEST_CASE("product of two fields has trivial radical and four idempotents") {
  auto c = cache_of("prod(Zn:2,Zn:2)");
  CHECK(c->radical().count() == 1);
  CHECK(c->idempotents().size() == 4);
}

TEST_CASE("oversized rings are refused") {
  CHECK_THROWS_AS(EngineCache::build(make_ring("Zn:5000")), TooLarge);
  CHECK_THROWS_AS(EngineCache::build(make_ring("Zn:100"), 50), TooLarge);
  CHECK_THROWS_AS(EngineCache::build(make_ring("Z")), Unsupported);
}

TEST_CASE("element predicates on small residue rings") {
  auto c12 = cache_of("Zn:12");
  auto c4 = cache_of("Zn:4");
  const Ring& R12 = *c12->ring();
  const Ring& R4 = *c4->ring();
  CHECK(element_predicate(*c12, R12.zero(), "feckly_adequate").verdict);
  CHECK_FALSE(element_predicate(*c4, R4.parse("2"), "regular").verdict);
  auto pr = element_predicate(*c4, R4.parse("2"), "pi_regular");
  CHECK(pr.verdict);
  CHECK(pr.witness["n"] == 2);
}

TEST_CASE("regularity matches the b-search oracle on Z/n") {
  for (long n : {6L, 8L, 12L, 18L, 30L}) {
    auto c = EngineCache::build(make_ring("Zn:" + std::to_string(n)));
    for (long a = 0; a < n; ++a) {
      bool oracle = false;
      for (long b = 0; b < n && !oracle; ++b) oracle = a * b % n * a % n == a;
      CHECK(element_predicate(*c, c->ring()->from_int(a), "regular").verdict == oracle);
    }
  }
}

TEST_CASE("Z/12 ring predicates") {
  auto c = cache_of("Zn:12");
  CHECK(ring_predicate(*c, "feckly_zero_adequate").verdict);
  CHECK(ring_predicate(*c, "regular_mod_J").verdict);
  CHECK(ring_predicate(*c, "pi_regular_mod_J").verdict);
  CHECK_FALSE(ring_predicate(*c, "regular").verdict);
}

TEST_CASE("Z/4 is clean with stable range one") {
  auto c = cache_of("Zn:4");
  CHECK(ring_predicate(*c, "clean").verdict);
  CHECK(ring_predicate(*c, "stable_range_1").verdict);
}

TEST_CASE("the eight-element local ring is not Bezout") {
  auto c = EngineCache::build(nonbezout8_ring());
  auto r = ring_predicate(*c, "bezout");
  CHECK_FALSE(r.verdict);
  std::set<std::string> ideal;
  for (const auto& m : r.counterexample["ideal"]) ideal.insert(m.get<std::string>());
  CHECK(ideal == std::set<std::string>{"0", "u", "v", "u+v"});
  // No principal ideal equals (u, v).
  const Ring& R = *c->ring();
  for (std::size_t d = 0; d < 8; ++d) {
    std::set<std::string> dr;
    for (std::size_t x = 0; x < 8; ++x) dr.insert(R.format(R.mul(R.element_at(d), R.element_at(x))));
    CHECK(dr != ideal);
  }
}

TEST_CASE("pi-regular decomposition follows the idempotent construction") {
  auto c = cache_of("Zn:12");
  const Ring& R = *c->ring();
  auto w = pi_regular_decomposition(*c, R.parse("2"));
  CHECK(w.n == 2);
  CHECK(R.format(w.e) == "4");
  CHECK(R.format(w.u) == "1");
  CHECK(R.format(w.w) == "0");
  // e = a^n b and u = 1 - a^n b + a^n
  Element an = power(R, R.parse("2"), w.n);
  CHECK(w.e == R.mul(an, w.b));
  CHECK(w.u == R.add(R.sub(R.one(), R.mul(an, w.b)), an));

  auto c4 = cache_of("Zn:4");
  const Ring& R4 = *c4->ring();
  auto v = pi_regular_decomposition(*c4, R4.parse("3"));
  CHECK(v.n == 1);
  CHECK(R4.format(v.e) == "1");
  CHECK(R4.format(v.u) == "3");

  auto z = pi_regular_decomposition(*c, R.zero());
  CHECK(z.e == R.zero());
  CHECK(z.u == R.one());
}

TEST_CASE("feckly zero-adequacy witnesses re-verify") {
  auto c = cache_of("Zn:12");
  const Ring& R = *c->ring();
  WitnessVerifier v(c->ring());
  for (std::size_t i = 0; i < 12; ++i) {
    auto w = fza_witness(*c, R.element_at(i));
    CHECK(v.check_adequate(w));
    CHECK(w.c == R.zero());
  }
  auto w1 = fza_witness(*c, R.one());
  CHECK(w1.r == R.zero());
  CHECK(w1.s == R.one());
  auto f = cache_of("Zn:7");
  auto wf = fza_witness(*f, f->ring()->zero());
  CHECK(wf.r == f->ring()->one());
  CHECK(wf.s == f->ring()->zero());
}

TEST_CASE("non-Bezout rings have no feckly zero-adequacy witness") {
  auto c = EngineCache::build(nonbezout8_ring());
  CHECK_THROWS_AS(fza_witness(*c, c->ring()->zero()), NotFZA);
}

TEST_CASE("radical characterisation through units") {
  for (const char* spec : {"Zn:12", "prod(Zn:2,Zn:2)", "Zn:7", "polyq:3:x^2"}) {
    INFO(spec);
    CHECK(j_characterization_check(*cache_of(spec)).verdict);
  }
}

TEST_CASE("every predicate payload re-verifies") {
  for (const char* spec : {"Zn:12", "Zn:30", "prod(Zn:4,Zn:3)", "polyq:2:x^2-1", "polyq:4:x^2-1", "table:builtin/nonbezout8"}) {
    auto c = cache_of(spec);
    WitnessVerifier v(c->ring());
    for (const auto& id : ring_predicate_ids()) {
      INFO(spec << " " << id);
      CHECK(v.check(ring_predicate(*c, id)) == "");
    }
    for (std::size_t i = 0; i < c->size(); ++i)
      for (const auto& id : element_predicate_ids()) {
        Element a = c->element(static_cast<Index>(i));
        INFO(spec << " " << id << " " << c->label(static_cast<Index>(i)));
        CHECK(v.check_element(a, element_predicate(*c, a, id)) == "");
      }
  }
}

TEST_CASE("tampered witnesses are rejected") {
  auto c = cache_of("Zn:12");
  WitnessVerifier v(c->ring());
  auto r = ring_predicate(*c, "bezout");
  REQUIRE(r.verdict);
  r.verdict = false;
  r.counterexample = {{"a", "2"}, {"b", "3"}, {"ideal", {"0", "2"}}};
  CHECK(v.check(r) != "");

  auto w = fza_witness(*c, c->ring()->parse("2"));
  w.r = c->ring()->parse("2");
  CHECK_FALSE(v.check_adequate(w));
}

TEST_CASE("classify reports every ring predicate") {
  auto rep = classify_finite(*cache_of("Zn:12"));
  CHECK(rep.ring_spec == "Zn:12");
  auto j = rep.to_json();
  for (const auto& id : ring_predicate_ids()) CHECK(j["predicates"].contains(id));
  CHECK(j["predicates"]["feckly_zero_adequate"]["verdict"] == true);
  CHECK(j["predicates"]["clean"]["verdict"] == true);
}

TEST_CASE("adequacy variants are exposed separately") {
  CHECK(parse_variant("cvariant") == AdequacyVariant::cvariant);
  CHECK(to_string(AdequacyVariant::feckly) == "feckly");
  CHECK_THROWS_AS(parse_variant("other"), ParseError);
}

TEST_CASE("both readings of everywhere-adequate follow the element predicates") {
  for (const char* spec : {"Zn:12", "Zn:8", "prod(Zn:2,Zn:2)", "polyq:3:x^2"}) {
    auto c = cache_of(spec);
    for (auto [ring_id, elt_id] : {std::pair{"everywhere_adequate", "adequate"},
                                   std::pair{"everywhere_adequate_cvariant", "adequate_cvariant"}}) {
      bool all = true;
      for (std::size_t i = 0; i < c->size(); ++i) all = all && element_predicate(*c, c->element(i), elt_id).verdict;
      INFO(spec << " " << ring_id);
      CHECK(ring_predicate(*c, ring_id).verdict == all);
    }
  }
}
