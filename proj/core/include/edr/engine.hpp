#pragma once

// Exhaustive decision of element- and ring-level predicates on finite rings.

#include "edr/finite_search.hpp"
#include "edr/property.hpp"
#include "edr/ring.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace edr {

enum class AdequacyVariant { classic, feckly, cvariant };

std::string_view to_string(AdequacyVariant v);
AdequacyVariant parse_variant(std::string_view text);

class EngineCache;
using EngineHandle = std::shared_ptr<const EngineCache>;

/// Units, radical and idempotents of a finite ring, plus the divisor and
/// comaximality relations every predicate is phrased in.
class EngineCache {
 public:
  static EngineHandle build(RingHandle ring, std::size_t bound = kDefaultSizeBound);

  const RingHandle& ring() const { return ring_; }
  const SearchTables& tables() const { return *tables_; }
  std::size_t size() const { return n_; }

  Element element(Index i) const { return elements_[i]; }
  Index index(const Element& a) const;
  std::string label(Index i) const { return ring_->format(elements_[i]); }

  Index zero() const { return tables_->zero(); }
  Index one() const { return tables_->one(); }
  Index add(Index a, Index b) const { return tables_->add(a, b); }
  Index sub(Index a, Index b) const { return tables_->sub(a, b); }
  Index mul(Index a, Index b) const { return tables_->mul(a, b); }
  Index pow(Index a, std::size_t n) const;

  bool is_unit(Index a) const { return units_.test(a); }
  Index inverse(Index a) const { return inverse_[a]; }
  bool in_radical(Index a) const { return radical_.test(a); }
  bool is_feckly_idempotent(Index e) const { return in_radical(sub(e, mul(e, e))); }

  const ElementSet& units() const { return units_; }
  const ElementSet& radical() const { return radical_; }
  const std::vector<Index>& idempotents() const { return idempotents_; }

  const ElementSet& principal(Index a) const { return tables_->principal_ideal(a); }
  // {t : s in tR}
  const ElementSet& divisors(Index s) const { return divisors_[s]; }
  const ElementSet& comaximal_with(Index a) const { return comax_[a]; }
  bool comaximal(Index a, Index b) const { return comax_[a].test(b); }
  // No non-invertible divisor of s is comaximal with `target`.
  bool clause3(Index s, Index target) const;

  // Least-index generator of aR + bR, if principal.
  std::optional<Index> sum_generator(Index a, Index b) const;
  ElementSet ideal_sum(Index a, Index b) const;

  // Elements that are adequate (resp. feckly adequate) against every target.
  const ElementSet& adequate_set(AdequacyVariant v) const;

 private:
  EngineCache() = default;
  void compute_adequacy() const;

  RingHandle ring_;
  std::shared_ptr<const SearchTables> tables_;
  std::size_t n_ = 0;
  std::vector<Element> elements_;
  ElementSet units_, radical_;
  std::vector<Index> inverse_;
  std::vector<Index> idempotents_;
  std::vector<ElementSet> divisors_, comax_;
  ElementSet nonunits_;

  mutable std::once_flag adequacy_once_;
  mutable ElementSet adequate_, feckly_adequate_, cvariant_;
};

struct AdequateWitness {
  AdequacyVariant variant = AdequacyVariant::classic;
  Element c, a, r, s;
  Element j;     // c - r*s; zero in the classic variant
  Element p, q;  // r*p + a*q = 1
};

struct PiRegularWitness {
  unsigned long n = 1;
  Element b, e, u, w;  // a^n = e*u + w
};

// Element-level predicates: regular, pi_regular, clean, feckly_clean,
// adequate, feckly_adequate, adequate_cvariant.
PropertyResult element_predicate(const EngineCache& cache, const Element& a, std::string_view id);

// First adequacy witness against one target, in enumeration order.
std::optional<AdequateWitness> adequate_witness(const EngineCache& cache, const Element& c,
                                                const Element& target, AdequacyVariant v);

// Ring-level predicates; see ring_predicate_ids().
PropertyResult ring_predicate(const EngineCache& cache, std::string_view id);
const std::vector<std::string>& ring_predicate_ids();
const std::vector<std::string>& element_predicate_ids();

// r = 1 - e, s = e from the decomposition of a; throws NotFZA.
AdequateWitness fza_witness(const EngineCache& cache, const Element& a);

// Throws NoDecomposition.
PiRegularWitness pi_regular_decomposition(const EngineCache& cache, const Element& a);

// J(R) against {x : x - u is a unit for every unit u}.
PropertyResult j_characterization_check(const EngineCache& cache);

/// Every predicate for one ring, as served by classify.
struct PropertyReport {
  std::string ring_spec;
  std::vector<PropertyResult> predicates;
  nlohmann::json extra;  // kind-specific notes

  nlohmann::json to_json() const;
};

PropertyReport classify_finite(const EngineCache& cache);

/// Re-checks payloads by direct ring arithmetic, sharing nothing with the
/// engine's precomputed sets.
class WitnessVerifier {
 public:
  explicit WitnessVerifier(RingHandle ring);

  bool is_unit(const Element& a) const;
  bool in_radical(const Element& a) const;
  bool comaximal(const Element& a, const Element& b) const;
  bool divides(const Element& a, const Element& b) const;
  // Every non-invertible divisor of s fails to be comaximal with target.
  bool clause3(const Element& s, const Element& target) const;

  bool check_adequate(const AdequateWitness& w) const;
  bool check_pi_regular(const Element& a, const PiRegularWitness& w) const;

  // Empty string on success, else the first failing entry.
  std::string check(const PropertyResult& result) const;
  std::string check_element(const Element& a, const PropertyResult& result) const;

 private:
  Element parse(const nlohmann::json& text) const;
  // aR, memoized per element.
  const std::vector<bool>& multiples(const Element& a) const;

  RingHandle ring_;
  std::vector<Element> elements_;
  std::vector<bool> unit_, radical_;
  mutable std::vector<std::vector<bool>> multiples_;
  std::size_t index(const Element& a) const { return ring_->index_of(a); }
};

nlohmann::json adequate_witness_json(const AdequateWitness& w);
nlohmann::json pi_regular_json(const Element& a, const PiRegularWitness& w);

}  // namespace edr
