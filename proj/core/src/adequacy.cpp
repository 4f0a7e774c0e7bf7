#include "edr/adequacy.hpp"

namespace edr {

using nlohmann::json;

AdequateFactorization adequate_factor_Z(const Integer& c, const Integer& a) {
  if (c == 0) throw ZeroInput("adequate factorization needs c != 0");
  Integer r = c, s = 1;
  Integer g = gcd(r, a);
  while (g != 1) {
    r /= g;
    s *= g;
    g = gcd(r, g);
  }
  return {c, a, r, s};
}

DualAdequateWitness adequate_witness_dualint(const RingHandle& ring, const Element& f, const Element& h) {
  const auto* R = dynamic_cast<const DualIntegerRing*>(ring.get());
  if (!R) throw Unsupported("dual-integer witness requested on " + ring->spec());
  R->require_owned(f);
  R->require_owned(h);
  const auto& fv = f.as<DualValue>();
  const auto& hv = h.as<DualValue>();
  if (fv.a == 0) throw ZeroIntegerPart("f = " + R->format(f) + " lies in J(R) + xQ");

  auto fac = adequate_factor_Z(fv.a, hv.a);
  // s*e + d*t = b from k*s + l*t = 1.
  auto st = extended_gcd(fac.r, fac.s);
  Rational e = Rational(st.x) * fv.b;
  Rational d = Rational(st.y) * fv.b;
  DualAdequateWitness w;
  w.f = f;
  w.h = h;
  w.s = R->dual(fac.r, d);
  w.t = R->dual(fac.s, e);

  auto kl = extended_gcd(fac.r, hv.a);
  Integer k = kl.x, l = kl.y;
  if (kl.g < 0) {
    k = -k;
    l = -l;
  }
  w.k = R->dual(k, 0);
  w.l = R->dual(l, 0);
  w.unit = R->add(R->mul(w.k, w.s), R->mul(w.l, h));
  return w;
}

LocalAdequateWitness adequate_witness_zloc(const RingHandle& ring, const Element& c, const Element& a) {
  const auto* R = dynamic_cast<const LocalizedRing*>(ring.get());
  if (!R) throw Unsupported("localized witness requested on " + ring->spec());
  R->require_owned(c);
  R->require_owned(a);
  const auto& cv = c.as<Fraction>();
  const auto& av = a.as<Fraction>();
  if (cv.num == 0) throw ZeroInput("adequate factorization needs c != 0");
  // Only the primes of P matter; everything else is a unit.
  Integer a_part = 1;
  for (const auto& p : R->primes())
    if (mpz_divisible_p(av.num.get_mpz_t(), p.get_mpz_t())) a_part *= p;
  auto fac = adequate_factor_Z(cv.num, a_part);
  LocalAdequateWitness w;
  w.c = c;
  w.a = a;
  w.s = R->fraction(fac.s, 1);
  w.r = R->fraction(fac.r, cv.den);
  auto pq = R->comaximal_witness(w.r, a);
  if (!pq) throw std::logic_error("localized factor not comaximal");
  w.p = pq->first;
  w.q = pq->second;
  return w;
}

namespace {

// (x + y t) in Z[t]/(t^2 - 1)
struct ZAlpha {
  Integer x, y;
  std::string str() const {
    std::string s = to_string(x);
    s += y < 0 ? "-" : "+";
    s += to_string(Integer(abs(y)));
    return s + "a";
  }
};

json divisibility_in_zalpha(const ZAlpha& d, const ZAlpha& n) {
  // (p + q t)(u + v t) = (pu + qv) + (pv + qu) t
  Integer det = d.x * d.x - d.y * d.y;
  json j = {{"system", json::array({json::array({d.x.get_str(), d.y.get_str()}), json::array({d.y.get_str(), d.x.get_str()})})},
            {"rhs", {n.x.get_str(), n.y.get_str()}}, {"determinant", det.get_str()}};
  if (det == 0) {
    j["divides"] = nullptr;
    return j;
  }
  Integer u_num = n.x * d.x - d.y * n.y;
  Integer v_num = d.x * n.y - d.y * n.x;
  bool ok = mpz_divisible_p(u_num.get_mpz_t(), det.get_mpz_t()) && mpz_divisible_p(v_num.get_mpz_t(), det.get_mpz_t());
  Rational u(u_num, det), v(v_num, det);
  u.canonicalize();
  v.canonicalize();
  j["quotient_over_Q"] = {to_string(u), to_string(v)};
  j["divides"] = ok;
  return j;
}

json evaluation(const ZAlpha& sp, const ZAlpha& s, int alpha, const std::string& ideal) {
  Integer a = sp.x + sp.y * alpha;
  Integer b = s.x + s.y * alpha;
  bool divides = a != 0 ? mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0 : b == 0;
  bool invertible = abs(a) == 1;
  return {{"ideal", ideal},
          {"alpha_maps_to", alpha},
          {"s_prime_image", a.get_str()},
          {"s_image", b.get_str()},
          {"s_prime_divides_s", divides},
          {"s_prime_invertible", invertible},
          {"matches_claim", a == 2 && b == 4}};
}

}  // namespace

json zalpha_case_study() {
  ZAlpha sp{5, -3}, s{3, 1};
  json plus = evaluation(sp, s, 1, "(1-a)");
  json minus = evaluation(sp, s, -1, "(1+a)");
  std::string reproducing;
  int matches = 0;
  for (const auto* q : {&plus, &minus})
    if ((*q)["matches_claim"].get<bool>()) {
      reproducing = (*q)["ideal"].get<std::string>();
      ++matches;
    }
  return {{"ring", "Z[a]/(a^2-1)"},
          {"s_prime", sp.str()},
          {"s", s.str()},
          {"in_ring", divisibility_in_zalpha(sp, s)},
          {"embedding",
           {{"s_prime", {Integer(sp.x + sp.y).get_str(), Integer(sp.x - sp.y).get_str()}},
            {"s", {Integer(s.x + s.y).get_str(), Integer(s.x - s.y).get_str()}}}},
          {"quotients", {plus, minus}},
          {"claim", {{"ideal", "(1+a)"}, {"s_prime_image", "2"}, {"s_image", "4"}}},
          {"reproducing_quotients", matches},
          {"reproducing_ideal", reproducing},
          {"sign_discrepancy", reproducing != "(1+a)"}};
}

json to_json(const AdequateFactorization& f) {
  return {{"c", f.c.get_str()}, {"a", f.a.get_str()}, {"r", f.r.get_str()}, {"s", f.s.get_str()}};
}

json to_json(const DualAdequateWitness& w) {
  return {{"f", w.f.str()}, {"h", w.h.str()},  {"s", w.s.str()},
          {"t", w.t.str()}, {"k", w.k.str()},  {"l", w.l.str()},
          {"unit", w.unit.str()}};
}

json to_json(const LocalAdequateWitness& w) {
  return {{"c", w.c.str()}, {"a", w.a.str()}, {"r", w.r.str()},
          {"s", w.s.str()}, {"p", w.p.str()}, {"q", w.q.str()}};
}

namespace {

json finite_failure(const EngineCache& cache, Index c, Index a, AdequacyVariant v) {
  // First factorization satisfying the product and comaximality clauses, and
  // the divisor that breaks the last clause.
  const auto& cm = cache.comaximal_with(a);
  for (auto r = cm.find_first(); r != ElementSet::npos; r = cm.find_next(r))
    for (Index s = 0; s < cache.size(); ++s) {
      Index rs = cache.mul(static_cast<Index>(r), s);
      bool ok = v == AdequacyVariant::feckly ? cache.in_radical(cache.sub(c, rs)) : rs == c;
      if (!ok) continue;
      Index against = v == AdequacyVariant::cvariant ? c : a;
      const auto& divs = cache.divisors(s);
      for (auto t = divs.find_first(); t != ElementSet::npos; t = divs.find_next(t))
        if (!cache.is_unit(static_cast<Index>(t)) && cache.comaximal(static_cast<Index>(t), against))
          return {{"failing_clause", "divisor"},
                  {"r", cache.label(static_cast<Index>(r))},
                  {"s", cache.label(s)},
                  {"divisor", cache.label(static_cast<Index>(t))}};
    }
  return {{"failing_clause", "factorization"},
          {"detail", "no r comaximal with a has a cofactor s with the required product"}};
}

}  // namespace

json adequate_report(const RingHandle& ring, const Element& c, const Element& a, AdequacyVariant v) {
  json out = {{"ring", ring->spec()}, {"c", c.str()}, {"a", a.str()}, {"variant", to_string(v)}};
  if (ring->is_finite()) {
    auto cache = EngineCache::build(ring);
    if (auto w = adequate_witness(*cache, c, a, v)) {
      out["adequate"] = true;
      out["witness"] = adequate_witness_json(*w);
    } else {
      out["adequate"] = false;
      out["failure"] = finite_failure(*cache, cache->index(c), cache->index(a), v);
    }
    return out;
  }
  switch (ring->kind()) {
    case RingKind::integers: {
      auto f = adequate_factor_Z(c.as<Integer>(), a.as<Integer>());
      out["adequate"] = true;
      out["witness"] = to_json(f);
      auto pq = ring->comaximal_witness(ring->parse(f.r.get_str()), a);
      out["witness"]["p"] = pq->first.str();
      out["witness"]["q"] = pq->second.str();
      return out;
    }
    case RingKind::localized:
      out["adequate"] = true;
      out["witness"] = to_json(adequate_witness_zloc(ring, c, a));
      return out;
    case RingKind::dual_integers:
      out["adequate"] = true;
      out["witness"] = to_json(adequate_witness_dualint(ring, c, a));
      return out;
    default:
      throw Unsupported("no adequacy construction for " + ring->spec());
  }
}

}  // namespace edr
