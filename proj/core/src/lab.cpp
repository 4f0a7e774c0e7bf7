#include "edr/lab.hpp"

#include "edr/adequacy.hpp"
#include "edr/matrix.hpp"
#include "edr/rings.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <thread>

namespace edr {

using nlohmann::json;

json CorpusConfig::to_json() const {
  return {{"rings", rings},
          {"size_bound", size_bound},
          {"exhaustive_bound", exhaustive_bound},
          {"matrix_size_bound", matrix_size_bound},
          {"samples_2x2", samples_2x2},
          {"samples_3x3", samples_3x3},
          {"tuple_samples", tuple_samples},
          {"z_tuple_samples", z_tuple_samples},
          {"dualint_samples", dualint_samples},
          {"seed", seed},
          {"checks", checks}};
}

CorpusConfig CorpusConfig::from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("corpus config must be an object");
  CorpusConfig c = default_corpus();
  try {
    if (doc.contains("rings")) c.rings = doc["rings"].get<std::vector<std::string>>();
    if (doc.contains("checks")) c.checks = doc["checks"].get<std::vector<std::string>>();
    auto size = [&](const char* key, std::size_t& field) {
      if (doc.contains(key)) field = doc[key].get<std::size_t>();
    };
    size("size_bound", c.size_bound);
    size("exhaustive_bound", c.exhaustive_bound);
    size("matrix_size_bound", c.matrix_size_bound);
    size("samples_2x2", c.samples_2x2);
    size("samples_3x3", c.samples_3x3);
    size("tuple_samples", c.tuple_samples);
    size("z_tuple_samples", c.z_tuple_samples);
    size("dualint_samples", c.dualint_samples);
    if (doc.contains("seed")) c.seed = doc["seed"].get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("corpus config: ") + e.what());
  }
  return c;
}

const std::vector<std::string>& default_corpus_specs() {
  static const std::vector<std::string> specs = [] {
    std::vector<std::string> v;
    for (int n = 2; n <= 60; ++n) v.push_back("Zn:" + std::to_string(n));
    for (const char* s : {"prod(Zn:4,Zn:9)", "prod(Zn:2,Zn:2)", "prod(Zn:8,Zn:3)", "prod(Zn:6,Zn:6)"}) v.push_back(s);
    for (int n : {2, 3, 4, 6, 8, 9}) v.push_back("polyq:" + std::to_string(n) + ":x^2-1");
    for (int p : {2, 3, 5})
      for (int k : {2, 3}) v.push_back("polyq:" + std::to_string(p) + ":x^" + std::to_string(k));
    v.push_back("table:builtin/nonbezout8");
    return v;
  }();
  return specs;
}

CorpusConfig default_corpus() {
  CorpusConfig c;
  c.rings = default_corpus_specs();
  return c;
}

const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids = {
      "T2.5",  "L2.3",  "L2.4",  "C2.6",      "C2.7",      "C2.8", "C2.9", "E2.10",
      "E2.11", "P2.13", "C2.14", "C2.15",     "T2.16",     "C2.17", "T3.1", "C3.2-info",
      "P3.3-info", "L3.7", "T3.8", "C3.9",    "C3.11",     "E3.10", "ZALPHA", "WITNESSES"};
  return ids;
}

bool is_info_check(const std::string& id) { return id.size() > 5 && id.substr(id.size() - 5) == "-info"; }

namespace {

const std::map<std::string, std::string>& statements() {
  static const std::map<std::string, std::string> s = {
      {"T2.5", "on Bezout rings: feckly zero-adequate <=> R/J regular <=> R/J pi-regular"},
      {"L2.3", "feckly zero-adequate rings are feckly clean"},
      {"L2.4", "on feckly zero-adequate rings J(R) = {x : x - u is a unit for every unit u}"},
      {"C2.6", "feckly zero-adequate rings reduce every matrix diagonally"},
      {"C2.7", "feckly zero-adequate <=> Bezout and R/J zero-adequate"},
      {"C2.8", "on Bezout rings: zero-adequate <=> feckly zero-adequate and idempotents lift mod J"},
      {"C2.9", "on Bezout rings: zero-adequate <=> semiregular"},
      {"E2.10", "finite Bezout rings are feckly zero-adequate"},
      {"E2.11", "Z localized at {3,5}: residue map onto Z/3 x Z/5 with regular image"},
      {"P2.13", "quotients of feckly zero-adequate rings by principal ideals stay feckly zero-adequate"},
      {"C2.14", "a product is feckly zero-adequate iff every factor is"},
      {"C2.15", "on Bezout rings: R feckly zero-adequate <=> R/J feckly zero-adequate"},
      {"T2.16", "on Bezout rings: feckly zero-adequate <=> both feckly-idempotent conditions"},
      {"C2.17", "on Bezout rings: zero-adequate <=> both idempotent conditions"},
      {"T3.1", "on Bezout rings: R/aR is feckly zero-adequate for feckly adequate a"},
      {"C3.2-info", "adequate <=> feckly adequate and idempotents lift modulo J(R/aR)"},
      {"P3.3-info", "zero-adequate <=> everywhere adequate <=> local"},
      {"L3.7", "the explicit 2x2 kernel gives P [[a,b],[0,c]] Q = diag(1, -ac)"},
      {"T3.8", "feckly adequate range one: row shortening and triangular reduction, or non-Bezout => not reducible"},
      {"C3.9", "Bezout rings whose non-radical elements are feckly adequate reduce diagonally"},
      {"C3.11", "adequate range one: reducible <=> Bezout"},
      {"E3.10", "dual integers: witnesses for elements with nonzero integer part"},
      {"ZALPHA", "Z[a]/(a^2-1): divisibility of 5-3a and 3+a in the ring and its integer quotients"},
      {"WITNESSES", "every predicate payload re-verifies by direct arithmetic"}};
  return s;
}

// ---- entries ----

json vacuous(const std::string& why) {
  return {{"verdict", "vacuous"}, {"exercised", 0}, {"vacuous", true}, {"detail", {{"reason", why}}}};
}

json outcome(bool ok, std::size_t exercised, json detail) {
  return {{"verdict", ok ? "pass" : "fail"}, {"exercised", exercised}, {"vacuous", false}, {"detail", std::move(detail)}};
}

json info_entry(std::size_t exercised, json detail) {
  return {{"verdict", "info"}, {"exercised", exercised}, {"vacuous", exercised == 0}, {"detail", std::move(detail)}};
}

json error_entry(const std::string& what) {
  return {{"verdict", "error"}, {"exercised", 0}, {"vacuous", false}, {"detail", {{"error", what}}}};
}

json brief(const PropertyResult& r) {
  json j = {{"verdict", r.verdict}};
  if (!r.counterexample.is_null()) j["counterexample"] = r.counterexample;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::mt19937_64 rng_for(std::uint64_t seed, const std::string& spec, const std::string& purpose) {
  std::uint64_t a = fnv1a(spec), b = fnv1a(purpose);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

bool fza_of(const EngineCache& c) {
  return c.adequate_set(AdequacyVariant::feckly).test(c.zero()) && ring_predicate(c, "bezout").verdict;
}

bool fza_of(const RingHandle& ring) { return fza_of(*EngineCache::build(ring)); }

// ---- per-ring context ----

struct RingContext {
  const CorpusConfig& cfg;
  std::string spec;
  RingHandle ring;
  EngineHandle cache;
  std::map<std::string, PropertyResult> memo;
  std::optional<json> sweep_memo;

  const PropertyResult& pred(const std::string& id) {
    auto it = memo.find(id);
    if (it == memo.end()) {
      PropertyResult r = id == "j_characterization" ? j_characterization_check(*cache) : ring_predicate(*cache, id);
      it = memo.emplace(id, std::move(r)).first;
    }
    return it->second;
  }
  bool holds(const std::string& id) { return pred(id).verdict; }
  std::size_t n() const { return cache->size(); }
  std::mt19937_64 rng(const std::string& purpose) const { return rng_for(cfg.seed, spec, purpose); }

  RingMatrix matrix(std::size_t rows, std::size_t cols, const std::vector<Index>& idx) const {
    std::vector<Element> e;
    for (Index i : idx) e.push_back(cache->element(i));
    return RingMatrix(ring, rows, cols, std::move(e));
  }
};

std::optional<json> reduce_and_verify(const RingMatrix& M) {
  try {
    auto cert = diagonal_reduce(M);
    auto v = verify_certificate(M, cert);
    if (!v.verdict) return json{{"matrix", M.rows_json()}, {"violated", v.note}, {"where", v.counterexample}};
  } catch (const ReductionFailed& e) {
    return json{{"matrix", M.rows_json()}, {"error", e.what()}, {"witness", e.witness()}};
  } catch (const std::exception& e) {
    return json{{"matrix", M.rows_json()}, {"error", e.what()}};
  }
  return std::nullopt;
}

const json& sweep(RingContext& ctx) {
  if (ctx.sweep_memo) return *ctx.sweep_memo;
  const std::size_t n = ctx.n();
  json out = {{"ok", true}, {"exercised", 0}};
  if (n > ctx.cfg.matrix_size_bound) {
    out["skipped"] = "ring larger than the matrix size bound";
    return *(ctx.sweep_memo = out);
  }
  std::size_t count = 0;
  std::optional<json> failure;
  auto attempt = [&](std::size_t rows, std::size_t cols, const std::vector<Index>& idx) {
    ++count;
    failure = reduce_and_verify(ctx.matrix(rows, cols, idx));
    return !failure;
  };
  bool exhaustive = n <= ctx.cfg.exhaustive_bound;
  if (exhaustive) {
    for (Index a = 0; a < n && !failure; ++a)
      for (Index b = 0; b < n && !failure; ++b)
        for (Index c = 0; c < n && !failure; ++c)
          for (Index d = 0; d < n && !failure; ++d) attempt(2, 2, {a, b, c, d});
  } else {
    auto rng = ctx.rng("sweep-2x2");
    for (std::size_t k = 0; k < ctx.cfg.samples_2x2 && !failure; ++k) {
      std::vector<Index> idx(4);
      for (auto& i : idx) i = static_cast<Index>(rng() % n);
      attempt(2, 2, idx);
    }
  }
  auto rng = ctx.rng("sweep-3x3");
  for (std::size_t k = 0; k < ctx.cfg.samples_3x3 && !failure; ++k) {
    std::vector<Index> idx(9);
    for (auto& i : idx) i = static_cast<Index>(rng() % n);
    attempt(3, 3, idx);
  }
  out["ok"] = !failure;
  out["exercised"] = count;
  out["exhaustive_2x2"] = exhaustive;
  if (failure) out["failure"] = *failure;
  return *(ctx.sweep_memo = out);
}

// Quotients by each distinct proper nonzero principal ideal in `candidates`.
json quotient_sweep(RingContext& ctx, const ElementSet& candidates) {
  const auto& C = *ctx.cache;
  std::size_t count = 0;
  bool ok = true;
  json results = json::array();
  for (auto a = candidates.find_first(); a != ElementSet::npos; a = candidates.find_next(a)) {
    Index i = static_cast<Index>(a);
    if (C.tables().ideal_id(i) != i || C.is_unit(i) || i == C.zero()) continue;
    ++count;
    auto q = quotient_ring(ctx.ring, {C.element(i)});
    bool v = fza_of(q.target);
    ok = ok && v;
    results.push_back({{"a", C.label(i)}, {"quotient_size", *q.target->cardinality()}, {"feckly_zero_adequate", v}});
  }
  return outcome(ok, count, {{"quotients", count}, {"results", results}});
}

bool comaximal_triple(const EngineCache& C, Index a, Index b, Index c) {
  ElementSet ideal = C.tables().ideal_sum(C.tables().ideal_sum(C.principal(a), C.principal(b)), C.principal(c));
  return ideal.test(C.one());
}

// Exhaustive triples on small rings, else seeded samples satisfying `keep`.
std::vector<std::array<Index, 3>> triples(RingContext& ctx, const std::string& purpose,
                                          const std::function<bool(Index, Index, Index)>& keep) {
  std::vector<std::array<Index, 3>> out;
  const std::size_t n = ctx.n();
  if (n <= ctx.cfg.exhaustive_bound) {
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b)
        for (Index c = 0; c < n; ++c)
          if (keep(a, b, c)) out.push_back({a, b, c});
    return out;
  }
  auto rng = ctx.rng(purpose);
  for (std::size_t tries = 0; out.size() < ctx.cfg.tuple_samples && tries < 50 * ctx.cfg.tuple_samples; ++tries) {
    Index a = static_cast<Index>(rng() % n), b = static_cast<Index>(rng() % n), c = static_cast<Index>(rng() % n);
    if (keep(a, b, c)) out.push_back({a, b, c});
  }
  return out;
}

json lemma37_sweep(const RingHandle& ring, const std::vector<std::array<Element, 4>>& tuples) {
  const Ring& R = *ring;
  std::size_t count = 0;
  for (const auto& [a, b, c, r] : tuples) {
    ++count;
    auto cert = lemma37_reduce(ring, a, b, c, r);
    RingMatrix A(ring, 2, 2, {a, b, R.zero(), c});
    RingMatrix expect(ring, 2, 2, {R.one(), R.zero(), R.zero(), R.neg(R.mul(a, c))});
    bool ok = cert.P * A * cert.Q == expect && (cert.P * cert.Pinv).is_identity() &&
              (cert.Q * cert.Qinv).is_identity();
    if (!ok)
      return outcome(false, count,
                     {{"tuple", {R.format(a), R.format(b), R.format(c), R.format(r)}}, {"D", (cert.P * A * cert.Q).rows_json()}});
  }
  return outcome(true, count, {{"tuples", count}});
}

// Bezout counterexample (a, b) as the matrix [[a, b], [0, 0]]: must not reduce.
json non_bezout_irreducible(RingContext& ctx) {
  const auto& ce = ctx.pred("bezout").counterexample;
  const Ring& R = *ctx.ring;
  RingMatrix M(ctx.ring, 2, 2, {R.parse(ce["a"].get<std::string>()), R.parse(ce["b"].get<std::string>()), R.zero(), R.zero()});
  try {
    diagonal_reduce(M);
  } catch (const ReductionFailed& e) {
    return outcome(true, 1, {{"bezout", false}, {"irreducible", M.rows_json()}, {"witness", e.witness()}});
  }
  return outcome(false, 1, {{"bezout", false}, {"unexpectedly_reduced", M.rows_json()}});
}

using RingCheck = std::function<json(RingContext&)>;

const std::map<std::string, RingCheck>& ring_checks() {
  static const std::map<std::string, RingCheck> m = [] {
    std::map<std::string, RingCheck> m;
    m["T2.5"] = [](RingContext& c) {
      if (!c.holds("bezout")) return vacuous("not a Bezout ring");
      const auto& f = c.pred("feckly_zero_adequate");
      const auto& r = c.pred("regular_mod_J");
      const auto& p = c.pred("pi_regular_mod_J");
      bool ok = f.verdict == r.verdict && r.verdict == p.verdict;
      return outcome(ok, 1, {{"feckly_zero_adequate", brief(f)}, {"regular_mod_J", brief(r)}, {"pi_regular_mod_J", brief(p)}});
    };
    m["L2.3"] = [](RingContext& c) {
      if (!c.holds("feckly_zero_adequate")) return vacuous("not feckly zero-adequate");
      return outcome(c.holds("feckly_clean"), 1, {{"feckly_clean", brief(c.pred("feckly_clean"))}});
    };
    m["L2.4"] = [](RingContext& c) {
      if (!c.holds("feckly_zero_adequate")) return vacuous("not feckly zero-adequate");
      return outcome(c.holds("j_characterization"), 1, {{"j_characterization", brief(c.pred("j_characterization"))}});
    };
    m["C2.6"] = [](RingContext& c) {
      if (!c.holds("feckly_zero_adequate")) return vacuous("not feckly zero-adequate");
      const json& s = sweep(c);
      if (s["exercised"] == 0) return vacuous("ring larger than the matrix size bound");
      return outcome(s["ok"].get<bool>(), s["exercised"].get<std::size_t>(), s);
    };
    m["C2.7"] = [](RingContext& c) {
      const auto& C = *c.cache;
      std::vector<Element> gens;
      for (auto j = C.radical().find_first(); j != ElementSet::npos; j = C.radical().find_next(j))
        gens.push_back(C.element(static_cast<Index>(j)));
      auto q = quotient_ring(c.ring, gens);
      bool za = ring_predicate(*EngineCache::build(q.target), "zero_adequate").verdict;
      bool lhs = c.holds("feckly_zero_adequate"), rhs = c.holds("bezout") && za;
      return outcome(lhs == rhs, 1, {{"feckly_zero_adequate", lhs}, {"bezout", c.holds("bezout")},
                                     {"quotient_zero_adequate", za}, {"quotient", q.target->spec()}});
    };
    m["C2.8"] = [](RingContext& c) {
      if (!c.holds("bezout")) return vacuous("not a Bezout ring");
      bool za = c.holds("zero_adequate"), f = c.holds("feckly_zero_adequate"), l = c.holds("idempotents_lift_mod_J");
      return outcome(za == (f && l), 1, {{"zero_adequate", za}, {"feckly_zero_adequate", f}, {"idempotents_lift_mod_J", l}});
    };
    m["C2.9"] = [](RingContext& c) {
      if (!c.holds("bezout")) return vacuous("not a Bezout ring");
      bool za = c.holds("zero_adequate"), s = c.holds("semiregular");
      return outcome(za == s, 1, {{"zero_adequate", za}, {"semiregular", s}});
    };
    m["E2.10"] = [](RingContext& c) {
      if (!c.holds("bezout")) return vacuous("not a Bezout ring");
      return outcome(c.holds("feckly_zero_adequate"), 1, {{"feckly_zero_adequate", brief(c.pred("feckly_zero_adequate"))}});
    };
    m["P2.13"] = [](RingContext& c) {
      if (!c.holds("feckly_zero_adequate")) return vacuous("not feckly zero-adequate");
      ElementSet all(c.n());
      all.set();
      return quotient_sweep(c, all);
    };
    m["C2.14"] = [](RingContext& c) {
      const auto* P = dynamic_cast<const ProductRing*>(c.ring.get());
      if (!P) return vacuous("not a product ring");
      json factors = json::array();
      bool all = true;
      for (const auto& f : P->factors()) {
        bool v = fza_of(f);
        all = all && v;
        factors.push_back({{"factor", f->spec()}, {"feckly_zero_adequate", v}});
      }
      bool whole = c.holds("feckly_zero_adequate");
      return outcome(whole == all, P->factors().size(), {{"feckly_zero_adequate", whole}, {"factors", factors}});
    };
    m["C2.15"] = [](RingContext& c) {
      if (!c.holds("bezout")) return vacuous("not a Bezout ring");
      const auto& C = *c.cache;
      std::vector<Element> gens;
      for (auto j = C.radical().find_first(); j != ElementSet::npos; j = C.radical().find_next(j))
        gens.push_back(C.element(static_cast<Index>(j)));
      auto q = quotient_ring(c.ring, gens);
      bool lhs = c.holds("feckly_zero_adequate"), rhs = fza_of(q.target);
      return outcome(lhs == rhs, 1, {{"feckly_zero_adequate", lhs}, {"quotient_feckly_zero_adequate", rhs},
                                     {"quotient", q.target->spec()}});
    };
    m["T2.16"] = [](RingContext& c) {
      if (!c.holds("bezout")) return vacuous("not a Bezout ring");
      bool f = c.holds("feckly_zero_adequate"), a = c.holds("t216_cond2"), b = c.holds("t216_cond3");
      return outcome(f == a && a == b, 1,
                     {{"feckly_zero_adequate", f}, {"t216_cond2", brief(c.pred("t216_cond2"))}, {"t216_cond3", brief(c.pred("t216_cond3"))}});
    };
    m["C2.17"] = [](RingContext& c) {
      if (!c.holds("bezout")) return vacuous("not a Bezout ring");
      bool z = c.holds("zero_adequate"), a = c.holds("c217_cond2"), b = c.holds("c217_cond3");
      return outcome(z == a && a == b, 1,
                     {{"zero_adequate", z}, {"c217_cond2", brief(c.pred("c217_cond2"))}, {"c217_cond3", brief(c.pred("c217_cond3"))}});
    };
    m["T3.1"] = [](RingContext& c) {
      if (!c.holds("bezout")) return vacuous("not a Bezout ring");
      return quotient_sweep(c, c.cache->adequate_set(AdequacyVariant::feckly));
    };
    m["C3.2-info"] = [](RingContext& c) {
      if (!c.holds("bezout")) return vacuous("not a Bezout ring");
      const auto& C = *c.cache;
      const auto& A = C.adequate_set(AdequacyVariant::classic);
      const auto& F = C.adequate_set(AdequacyVariant::feckly);
      std::size_t count = 0, agree = 0;
      json mismatches = json::array();
      for (Index a = 0; a < C.size(); ++a) {
        if (C.is_unit(a)) continue;
        ++count;
        auto q = quotient_ring(c.ring, {C.element(a)});
        bool lift = ring_predicate(*EngineCache::build(q.target), "idempotents_lift_mod_J").verdict;
        bool rhs = F.test(a) && lift;
        if (A.test(a) == rhs) {
          ++agree;
        } else if (mismatches.size() < 5) {
          mismatches.push_back({{"a", C.label(a)}, {"adequate", A.test(a)}, {"feckly_adequate", F.test(a)}, {"lifts", lift}});
        }
      }
      bool domain = (~C.units()).count() == 1;
      return info_entry(count, {{"domain", domain}, {"elements", count}, {"agree", agree}, {"mismatches", mismatches}});
    };
    m["P3.3-info"] = [](RingContext& c) {
      if (!c.holds("bezout")) return vacuous("not a Bezout ring");
      const auto& C = *c.cache;
      bool local = (~C.units()) == C.radical();
      bool domain = (~C.units()).count() == 1;
      return info_entry(1, {{"domain", domain},
                            {"zero_adequate", c.holds("zero_adequate")},
                            {"everywhere_adequate", c.holds("everywhere_adequate")},
                            {"local", local}});
    };
    m["L3.7"] = [](RingContext& c) {
      const auto& C = *c.cache;
      std::vector<std::array<Element, 4>> tuples;
      const std::size_t n = C.size();
      auto keep = [&](Index a, Index b, Index cc, Index r) {
        if (C.comaximal(C.add(b, C.mul(a, r)), cc))
          tuples.push_back({C.element(a), C.element(b), C.element(cc), C.element(r)});
      };
      if (n <= c.cfg.exhaustive_bound) {
        for (Index a = 0; a < n; ++a)
          for (Index b = 0; b < n; ++b)
            for (Index cc = 0; cc < n; ++cc)
              for (Index r = 0; r < n; ++r) keep(a, b, cc, r);
      } else {
        auto rng = c.rng("lemma37");
        for (std::size_t k = 0; tuples.size() < c.cfg.tuple_samples && k < 50 * c.cfg.tuple_samples; ++k)
          keep(static_cast<Index>(rng() % n), static_cast<Index>(rng() % n), static_cast<Index>(rng() % n),
               static_cast<Index>(rng() % n));
      }
      return lemma37_sweep(c.ring, tuples);
    };
    m["T3.8"] = [](RingContext& c) {
      if (!c.holds("feckly_adequate_range_1")) return vacuous("no feckly adequate range one");
      if (!c.holds("bezout")) return non_bezout_irreducible(c);
      const auto& C = *c.cache;
      const Ring& R = *c.ring;
      auto rows = triples(c, "step1", [&](Index a, Index b, Index cc) { return comaximal_triple(C, a, b, cc); });
      for (const auto& [a, b, cc] : rows) {
        auto s = theorem38_step1(C, C.element(a), C.element(b), C.element(cc));
        Index f = C.index(s.first), g = C.index(s.second);
        bool ok = C.comaximal(f, g) && C.principal(cc).test(C.sub(f, b)) && C.principal(cc).test(C.sub(g, a));
        if (!ok)
          return outcome(false, rows.size(),
                         {{"step", 1}, {"row", {C.label(a), C.label(b), C.label(cc)}}, {"pair", {s.first.str(), s.second.str()}}});
      }
      auto mats = triples(c, "step2", [&](Index a, Index b, Index cc) { return comaximal_triple(C, a, b, cc); });
      for (const auto& [a, b, cc] : mats) {
        auto tr = theorem38_step2(C, C.element(a), C.element(b), C.element(cc));
        RingMatrix M(c.ring, 2, 2, {C.element(a), R.zero(), C.element(b), C.element(cc)});
        auto v = verify_certificate(M, tr.certificate);
        if (!v.verdict || tr.certificate.D.at(0, 0) != R.one())
          return outcome(false, rows.size() + mats.size(),
                         {{"step", 2}, {"matrix", M.rows_json()}, {"violated", v.note}});
      }
      return outcome(true, rows.size() + mats.size(), {{"rows", rows.size()}, {"matrices", mats.size()}});
    };
    m["C3.9"] = [](RingContext& c) {
      if (!c.holds("bezout") || !c.holds("feckly_adequate_off_radical"))
        return vacuous("not Bezout, or some element outside J(R) is not feckly adequate");
      const json& s = sweep(c);
      bool range = c.holds("feckly_adequate_range_1");
      if (s["exercised"] == 0) return outcome(range, 1, {{"feckly_adequate_range_1", range}, {"sweep", s}});
      return outcome(range && s["ok"].get<bool>(), s["exercised"].get<std::size_t>(),
                     {{"feckly_adequate_range_1", range}, {"sweep", s}});
    };
    m["C3.11"] = [](RingContext& c) {
      if (!c.holds("adequate_range_1")) return vacuous("no adequate range one");
      if (!c.holds("bezout")) return non_bezout_irreducible(c);
      const json& s = sweep(c);
      if (s["exercised"] == 0) return vacuous("ring larger than the matrix size bound");
      return outcome(s["ok"].get<bool>(), s["exercised"].get<std::size_t>(), {{"bezout", true}, {"sweep", s}});
    };
    m["WITNESSES"] = [](RingContext& c) {
      WitnessVerifier v(c.ring);
      std::size_t count = 0;
      std::vector<std::string> ids = ring_predicate_ids();
      ids.push_back("j_characterization");
      for (const auto& id : ids) {
        ++count;
        auto msg = v.check(c.pred(id));
        if (!msg.empty()) return outcome(false, count, {{"predicate", id}, {"failed", msg}});
      }
      if (c.holds("feckly_zero_adequate")) {
        const auto& C = *c.cache;
        for (Index a = 0; a < C.size(); ++a) {
          count += 2;
          Element e = C.element(a);
          auto w = fza_witness(C, e);
          if (!v.check_adequate(w)) return outcome(false, count, {{"fza_witness", adequate_witness_json(w)}});
          auto d = pi_regular_decomposition(C, e);
          if (!v.check_pi_regular(e, d)) return outcome(false, count, {{"pi_regular", pi_regular_json(e, d)}});
        }
      }
      return outcome(true, count, {{"payloads", count}});
    };
    return m;
  }();
  return m;
}

// ---- global checks ----

json global_entry(const std::string& spec, json entry) {
  entry["ring_spec"] = spec;
  return entry;
}

json lemma37_Z(const CorpusConfig& cfg) {
  auto Z = make_ring("Z");
  auto rng = rng_for(cfg.seed, "Z", "lemma37");
  std::uniform_int_distribution<long> dist(-100, 100);
  std::vector<std::array<Element, 4>> tuples;
  while (tuples.size() < cfg.z_tuple_samples) {
    long a = dist(rng), b = dist(rng), c = dist(rng), r = dist(rng);
    if (gcd(Integer(b + a * r), Integer(c)) != 1) continue;
    tuples.push_back({Z->from_int(a), Z->from_int(b), Z->from_int(c), Z->from_int(r)});
  }
  return global_entry("Z", lemma37_sweep(Z, tuples));
}

json dualint_check(const CorpusConfig& cfg) {
  auto D = make_ring("dualint");
  const auto& R = static_cast<const DualIntegerRing&>(*D);
  auto rng = rng_for(cfg.seed, "dualint", "witnesses");
  std::uniform_int_distribution<long> mag(1, 500), num(-20, 20), den(1, 20), sign(0, 1);
  for (std::size_t k = 0; k < cfg.dualint_samples; ++k) {
    Integer y = mag(rng) * (sign(rng) ? 1 : -1), z = mag(rng) * (sign(rng) ? 1 : -1);
    Rational b(num(rng), den(rng)), cc(num(rng), den(rng));
    b.canonicalize();
    cc.canonicalize();
    Element f = R.dual(y, b), h = R.dual(z, cc);
    auto w = adequate_witness_dualint(D, f, h);
    const auto& sv = w.s.as<DualValue>();
    const auto& tv = w.t.as<DualValue>();
    // t's integer part has only primes of z: strip common factors until 1.
    Integer rest = abs(tv.a);
    for (Integer g = gcd(rest, z); g != 1; g = gcd(rest, g)) rest /= g;
    bool ok = R.mul(w.s, w.t) == f && abs(w.unit.as<DualValue>().a) == 1 &&
              R.add(R.mul(w.k, w.s), R.mul(w.l, h)) == w.unit && gcd(sv.a, z) == 1 && rest == 1;
    if (!ok) return global_entry("dualint", outcome(false, k + 1, {{"witness", to_json(w)}}));
  }
  return global_entry("dualint", outcome(true, cfg.dualint_samples, {{"samples", cfg.dualint_samples}}));
}

json zalpha_check() {
  json study = zalpha_case_study();
  bool ok = !study["in_ring"]["divides"].get<bool>() && study["reproducing_quotients"] == 1 &&
            study["reproducing_ideal"] == "(1-a)" && study["sign_discrepancy"].get<bool>();
  return global_entry("Z[a]/(a^2-1)", outcome(ok, 1, study));
}

json aggregate_of(const std::string& id, const json& per_ring) {
  if (is_info_check(id)) return "info";
  for (const auto& e : per_ring)
    if (e["verdict"] == "fail" || e["verdict"] == "error") return "fail";
  return "pass";
}

}  // namespace

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("EDR_WORKERS")) {
    int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

json check_example_2_11() {
  auto R = make_ring("zloc:{3,5}");
  const auto& L = static_cast<const LocalizedRing&>(*R);
  ResidueMap map = localized_residue_map(R);
  const Ring& T = *map.target();
  std::vector<Element> samples;
  for (long num : {1L, 2L, 7L, 22L, 15L, -3L, 45L, 5L, 0L, 9L, -30L, 11L, 60L, 4L})
    for (long den : {1L, 2L, 4L, 7L, 11L}) samples.push_back(L.fraction(num, den));
  for (std::size_t i = 0; i < *T.cardinality(); ++i) samples.push_back(map.lift(T.element_at(i)));

  bool hom = map(R->one()) == T.one();
  for (std::size_t i = 0; i < samples.size() && hom; ++i)
    for (std::size_t j = 0; j < samples.size() && hom; j += 3) {
      const auto& x = samples[i];
      const auto& y = samples[j];
      hom = map(R->add(x, y)) == T.add(map(x), map(y)) && map(R->mul(x, y)) == T.mul(map(x), map(y));
    }
  bool onto = true;
  for (std::size_t i = 0; i < *T.cardinality(); ++i) onto = onto && map(map.lift(T.element_at(i))) == T.element_at(i);
  bool kernel = true;
  for (const auto& x : samples) {
    bool in_kernel = map(x) == T.zero();
    bool divisible = mpz_divisible_ui_p(x.as<Fraction>().num.get_mpz_t(), 15) != 0;
    kernel = kernel && in_kernel == divisible;
  }
  bool regular = ring_predicate(*EngineCache::build(map.target()), "regular").verdict;
  json detail = {{"homomorphism_on_samples", hom},
                 {"surjective", onto},
                 {"kernel_is_15R_on_samples", kernel},
                 {"image", map.target()->spec()},
                 {"image_regular", regular},
                 {"samples", samples.size()},
                 {"feckly_zero_adequate", "true: R/J(R) is the regular image"},
                 {"zero_adequate", "paper-asserted false, untested"}};
  json entry = global_entry(R->spec(), outcome(hom && onto && kernel && regular, samples.size(), detail));
  json per_ring = json::array({entry});
  return {{"id", "E2.11"}, {"statement", statements().at("E2.11")}, {"per_ring", per_ring},
          {"aggregate", aggregate_of("E2.11", per_ring)}, {"info", false}};
}

json run_corpus(const CorpusConfig& cfg) {
  std::vector<std::string> wanted = cfg.checks.empty() ? check_ids() : cfg.checks;
  for (const auto& id : wanted)
    if (std::find(check_ids().begin(), check_ids().end(), id) == check_ids().end())
      throw ParseError("unknown check id '" + id + "'");
  auto want = [&](const std::string& id) { return std::find(wanted.begin(), wanted.end(), id) != wanted.end(); };

  std::vector<std::string> specs = cfg.rings;
  std::sort(specs.begin(), specs.end());
  specs.erase(std::unique(specs.begin(), specs.end()), specs.end());

  const auto& checks = ring_checks();
  std::vector<std::map<std::string, json>> per_spec(specs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < specs.size(); i = next++) {
      auto& out = per_spec[i];
      std::optional<RingContext> ctx;
      try {
        RingHandle ring = make_ring(specs[i]);
        ctx.emplace(RingContext{cfg, specs[i], ring, EngineCache::build(ring, cfg.size_bound), {}, {}});
      } catch (const std::exception& e) {
        for (const auto& [id, fn] : checks)
          if (want(id)) out[id] = error_entry(e.what());
        continue;
      }
      for (const auto& id : check_ids()) {
        auto it = checks.find(id);
        if (it == checks.end() || !want(id)) continue;
        try {
          out[id] = it->second(*ctx);
        } catch (const std::exception& e) {
          out[id] = error_entry(e.what());
        }
      }
    }
  };
  unsigned n_workers = std::min<std::size_t>(resolve_workers(cfg.workers), std::max<std::size_t>(1, specs.size()));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < n_workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  json results = json::array();
  std::size_t pass = 0, fail = 0, info = 0;
  for (const auto& id : check_ids()) {
    if (!want(id)) continue;
    json per_ring = json::array();
    if (id == "E2.11") {
      json r = check_example_2_11();
      per_ring = r["per_ring"];
    } else {
      for (std::size_t i = 0; i < specs.size(); ++i) {
        auto it = per_spec[i].find(id);
        if (it == per_spec[i].end()) continue;
        json e = {{"ring_spec", specs[i]}};
        e.update(it->second);
        per_ring.push_back(e);
      }
      try {
        if (id == "L3.7") per_ring.push_back(lemma37_Z(cfg));
        if (id == "E3.10") per_ring.push_back(dualint_check(cfg));
        if (id == "ZALPHA") per_ring.push_back(zalpha_check());
      } catch (const std::exception& e) {
        per_ring.push_back(global_entry(id, error_entry(e.what())));
      }
      std::stable_sort(per_ring.begin(), per_ring.end(), [](const json& a, const json& b) {
        return a["ring_spec"].get<std::string>() < b["ring_spec"].get<std::string>();
      });
    }
    std::size_t exercised = 0;
    for (const auto& e : per_ring)
      if (!e["vacuous"].get<bool>()) ++exercised;
    json agg = aggregate_of(id, per_ring);
    (agg == "pass" ? pass : agg == "fail" ? fail : info) += 1;
    results.push_back({{"id", id},
                       {"statement", statements().at(id)},
                       {"info", is_info_check(id)},
                       {"per_ring", per_ring},
                       {"rings_exercised", exercised},
                       {"aggregate", agg}});
  }
  return {{"config", cfg.to_json()}, {"results", results}, {"summary", {{"pass", pass}, {"fail", fail}, {"info", info}}}};
}

// ---- structured classification ----

namespace {

PropertyResult structural(std::string id, bool verdict, json payload, std::string note) {
  PropertyResult r{std::move(id), verdict, json(), json(), std::move(note)};
  (verdict ? r.witness : r.counterexample) = std::move(payload);
  return r;
}

}  // namespace

PropertyReport classify(const RingHandle& ring, std::size_t bound) {
  if (ring->is_finite()) return classify_finite(*EngineCache::build(ring, bound));
  PropertyReport rep;
  rep.ring_spec = ring->spec();
  switch (ring->kind()) {
    case RingKind::integers:
      rep.predicates = {
          structural("bezout", true, {{"reason", "Euclidean domain"}}, "structural"),
          structural("regular_mod_J", false, {{"a", "2"}, {"reason", "J(Z) = 0 and 2b2 = 2 has no integral b"}}, "structural"),
          structural("pi_regular_mod_J", false, {{"a", "2"}, {"reason", "2^n b 2^n = 2^n forces 2^n b = 1"}}, "structural"),
          structural("feckly_zero_adequate", false, {{"reason", "R/J(R) = Z is not regular"}}, "derived"),
          structural("zero_adequate", false, {{"c", "0"}, {"target", "2"}}, "derived"),
      };
      rep.extra = {{"radical", "0"}, {"units", {"1", "-1"}}};
      return rep;
    case RingKind::localized: {
      ResidueMap map = localized_residue_map(ring);
      bool regular = ring_predicate(*EngineCache::build(map.target()), "regular").verdict;
      json route = {{"residue_ring", map.target()->spec()}, {"residue_ring_regular", regular}};
      rep.predicates = {
          structural("bezout", true, {{"reason", "semilocal principal ideal domain"}}, "structural"),
          structural("regular_mod_J", regular, route, "via the residue map"),
          structural("pi_regular_mod_J", regular, route, "via the residue map"),
          structural("feckly_zero_adequate", regular, route, "Bezout and R/J(R) regular"),
          structural("zero_adequate", false, {{"status", "paper-asserted false, untested"}}, "paper-asserted false, untested"),
      };
      const auto& L = static_cast<const LocalizedRing&>(*ring);
      Integer prod = 1;
      for (const auto& p : L.primes()) prod *= p;
      rep.extra = {{"radical_generator", prod.get_str()}, {"residue_ring", map.target()->spec()}};
      return rep;
    }
    case RingKind::dual_integers:
      rep.predicates = {
          structural("bezout", true, {{"reason", "gcd of integer parts, else of the x-coefficients"}}, "structural"),
          structural("regular_mod_J", false, {{"a", "2+0 x"}, {"reason", "R/J(R) = Z is not regular"}}, "structural"),
          structural("feckly_zero_adequate", false, {{"reason", "R/J(R) = Z is not regular"}}, "derived"),
          structural("feckly_adequate_off_radical", true,
                     {{"construction", "f = s(x) t(x) from the integer adequate factorization"}}, "constructive"),
      };
      rep.extra = {{"radical", "{b x : b rational}"}};
      return rep;
    default:
      throw Unsupported("no classification for " + ring->spec());
  }
}

}  // namespace edr
