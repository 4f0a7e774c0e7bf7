#pragma once

// Adequacy witnesses on the infinite structured rings, by gcd arithmetic only.

#include "edr/engine.hpp"
#include "edr/rings.hpp"

#include <nlohmann/json.hpp>

namespace edr {

/// c = r*s, gcd(r, a) = 1, every prime of s divides a; s > 0.
struct AdequateFactorization {
  Integer c, a, r, s;
};

// Throws ZeroInput when c == 0.
AdequateFactorization adequate_factor_Z(const Integer& c, const Integer& a);

/// f = s(x) * t(x) with s(x) comaximal with h: k*s(x) + l*h = unit, where
/// unit = 1 + (k*d + l*e_h) x.
struct DualAdequateWitness {
  Element f, h;
  Element s, t;
  Element k, l;
  Element unit;
};

// f must have a nonzero integer part; throws ZeroIntegerPart otherwise.
DualAdequateWitness adequate_witness_dualint(const RingHandle& dualint, const Element& f, const Element& h);

/// c = r*s in Z localized at P, with r*p + a*q = 1.
struct LocalAdequateWitness {
  Element c, a, r, s, p, q;
};

// Throws ZeroInput when c == 0.
LocalAdequateWitness adequate_witness_zloc(const RingHandle& zloc, const Element& c, const Element& a);

// Images of 5-3t and 3+t in Z[t]/(t^2-1) and its two integer quotients.
nlohmann::json zalpha_case_study();

nlohmann::json to_json(const AdequateFactorization& f);
nlohmann::json to_json(const DualAdequateWitness& w);
nlohmann::json to_json(const LocalAdequateWitness& w);

// Witness for c against a in any supported ring, or the failing target.
// Throws Unsupported for ring kinds or elements with no construction.
nlohmann::json adequate_report(const RingHandle& ring, const Element& c, const Element& a, AdequacyVariant v);

}  // namespace edr
