#pragma once

// Concrete ring kinds: Z, Z/n, finite direct products, Z[x]/(n, f), Z
// localized at a finite prime set, dual integers Z + Qx, and table rings.

#include "edr/finite_search.hpp"
#include "edr/ring.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace edr {

class IntegerRing final : public Ring {
 public:
  RingKind kind() const override { return RingKind::integers; }
  std::string spec() const override { return "Z"; }
  std::optional<std::size_t> cardinality() const override { return std::nullopt; }
  Element zero() const override;
  Element one() const override;
  Element from_int(long long k) const override;
  Element add(const Element& a, const Element& b) const override;
  Element neg(const Element& a) const override;
  Element mul(const Element& a, const Element& b) const override;
  std::optional<Element> inverse(const Element& a) const override;
  std::optional<Element> quotient(const Element& a, const Element& b) const override;
  BezoutData bezout(const Element& a, const Element& b) const override;
  Element normalizing_unit(const Element& a) const override;
  Element parse(std::string_view text) const override;
  std::string format(const Element& a) const override;

  Element make_integer(Integer v) const { return make(std::move(v)); }
};

class ResidueRing final : public Ring {
 public:
  explicit ResidueRing(Integer modulus);

  const Integer& modulus() const { return n_; }
  RingKind kind() const override { return RingKind::residues; }
  std::string spec() const override;
  std::optional<std::size_t> cardinality() const override;
  Element zero() const override;
  Element one() const override;
  Element from_int(long long k) const override;
  Element add(const Element& a, const Element& b) const override;
  Element neg(const Element& a) const override;
  Element mul(const Element& a, const Element& b) const override;
  std::optional<Element> inverse(const Element& a) const override;
  std::optional<Element> quotient(const Element& a, const Element& b) const override;
  BezoutData bezout(const Element& a, const Element& b) const override;
  Element normalizing_unit(const Element& a) const override;
  Element parse(std::string_view text) const override;
  std::string format(const Element& a) const override;
  std::size_t index_of(const Element& a) const override;
  Element element_at(std::size_t index) const override;

  Element residue(const Integer& v) const;

 private:
  Integer n_;
};

class ProductRing final : public Ring {
 public:
  explicit ProductRing(std::vector<RingHandle> factors);

  const std::vector<RingHandle>& factors() const { return factors_; }
  RingKind kind() const override { return RingKind::product; }
  std::string spec() const override;
  std::optional<std::size_t> cardinality() const override { return card_; }
  Element zero() const override;
  Element one() const override;
  Element from_int(long long k) const override;
  Element add(const Element& a, const Element& b) const override;
  Element neg(const Element& a) const override;
  Element mul(const Element& a, const Element& b) const override;
  std::optional<Element> inverse(const Element& a) const override;
  std::optional<Element> quotient(const Element& a, const Element& b) const override;
  bool supports_bezout() const override;
  BezoutData bezout(const Element& a, const Element& b) const override;
  std::optional<std::pair<Element, Element>> comaximal_witness(const Element& a,
                                                               const Element& b) const override;
  Element normalizing_unit(const Element& a) const override;
  Element parse(std::string_view text) const override;
  std::string format(const Element& a) const override;
  std::size_t index_of(const Element& a) const override;
  Element element_at(std::size_t index) const override;

  Element tuple(std::vector<Element> parts) const;
  const Element& component(const Element& a, std::size_t i) const;

 private:
  std::vector<RingHandle> factors_;
  std::optional<std::size_t> card_;
};

// Base for finite kinds whose division, inverse and Bezout data come from
// exhaustive search over lazily built operation tables.
class SearchRing : public Ring {
 public:
  std::optional<Element> inverse(const Element& a) const override;
  std::optional<Element> quotient(const Element& a, const Element& b) const override;
  bool supports_bezout() const override { return false; }
  BezoutData bezout(const Element& a, const Element& b) const override;
  std::optional<std::pair<Element, Element>> comaximal_witness(const Element& a,
                                                               const Element& b) const override;
  Element normalizing_unit(const Element& a) const override;

  const SearchTables& tables() const;

 protected:
  virtual std::unique_ptr<SearchTables> build_tables() const;

 private:
  mutable std::once_flag once_;
  mutable std::unique_ptr<SearchTables> tables_;
};

/// Z[x]/(n, f) for monic f. n >= 2 gives a finite ring of n^deg(f) elements;
/// n = 0 is only accepted with f = x^2 - 1 (the ring Z[alpha], alpha^2 = 1).
class PolyQuotientRing final : public SearchRing {
 public:
  PolyQuotientRing(Integer modulus, std::vector<Integer> monic_f);

  const Integer& modulus() const { return n_; }
  std::size_t degree() const { return f_.size() - 1; }
  bool is_zalpha() const { return n_ == 0; }

  RingKind kind() const override { return RingKind::poly_quotient; }
  std::string spec() const override;
  std::optional<std::size_t> cardinality() const override { return card_; }
  Element zero() const override;
  Element one() const override;
  Element from_int(long long k) const override;
  Element add(const Element& a, const Element& b) const override;
  Element neg(const Element& a) const override;
  Element mul(const Element& a, const Element& b) const override;
  std::optional<Element> inverse(const Element& a) const override;
  std::optional<Element> quotient(const Element& a, const Element& b) const override;
  BezoutData bezout(const Element& a, const Element& b) const override;
  std::optional<std::pair<Element, Element>> comaximal_witness(const Element& a,
                                                               const Element& b) const override;
  Element normalizing_unit(const Element& a) const override;
  Element parse(std::string_view text) const override;
  std::string format(const Element& a) const override;
  std::size_t index_of(const Element& a) const override;
  Element element_at(std::size_t index) const override;

  Element polynomial(std::vector<Integer> coeffs) const;
  // Z[alpha] only: the images under alpha -> +1 and alpha -> -1.
  std::pair<Integer, Integer> evaluation_pair(const Element& a) const;

 private:
  std::vector<Integer> reduce(std::vector<Integer> coeffs) const;

  Integer n_;
  std::vector<Integer> f_;  // monic, low degree first
  std::optional<std::size_t> card_;
};

/// {m/d : d coprime to every p in P}.
class LocalizedRing final : public Ring {
 public:
  explicit LocalizedRing(std::vector<Integer> primes);

  const std::vector<Integer>& primes() const { return primes_; }
  RingKind kind() const override { return RingKind::localized; }
  std::string spec() const override;
  std::optional<std::size_t> cardinality() const override { return std::nullopt; }
  Element zero() const override;
  Element one() const override;
  Element from_int(long long k) const override;
  Element add(const Element& a, const Element& b) const override;
  Element neg(const Element& a) const override;
  Element mul(const Element& a, const Element& b) const override;
  std::optional<Element> inverse(const Element& a) const override;
  std::optional<Element> quotient(const Element& a, const Element& b) const override;
  BezoutData bezout(const Element& a, const Element& b) const override;
  Element normalizing_unit(const Element& a) const override;
  Element parse(std::string_view text) const override;
  std::string format(const Element& a) const override;

  // Throws ParseError if den is divisible by a prime of P.
  Element fraction(const Integer& num, const Integer& den) const;
  // Product of p^v_p(num) over p in P (1 for units, 0 for zero).
  Integer prime_part(const Element& a) const;

 private:
  bool coprime_to_primes(const Integer& v) const;
  std::vector<Integer> primes_;
};

/// {a + b x : a in Z, b in Q, x^2 = 0}.
class DualIntegerRing final : public Ring {
 public:
  RingKind kind() const override { return RingKind::dual_integers; }
  std::string spec() const override { return "dualint"; }
  std::optional<std::size_t> cardinality() const override { return std::nullopt; }
  Element zero() const override;
  Element one() const override;
  Element from_int(long long k) const override;
  Element add(const Element& a, const Element& b) const override;
  Element neg(const Element& a) const override;
  Element mul(const Element& a, const Element& b) const override;
  std::optional<Element> inverse(const Element& a) const override;
  std::optional<Element> quotient(const Element& a, const Element& b) const override;
  BezoutData bezout(const Element& a, const Element& b) const override;
  Element normalizing_unit(const Element& a) const override;
  Element parse(std::string_view text) const override;
  std::string format(const Element& a) const override;

  Element dual(Integer a, Rational b) const;
};

struct TableRingData {
  std::size_t size = 0;
  std::vector<std::vector<std::size_t>> add, mul;
  std::size_t zero = 0, one = 0;
};

TableRingData parse_table_ring(const nlohmann::json& doc);
nlohmann::json table_ring_json(const TableRingData& data);

class TableRing final : public SearchRing {
 public:
  // Verifies every ring axiom exhaustively; throws AxiomViolation.
  TableRing(const TableRingData& data, std::string spec, std::vector<std::string> labels = {});

  RingKind kind() const override { return RingKind::table; }
  std::string spec() const override { return spec_; }
  std::optional<std::size_t> cardinality() const override { return n_; }
  Element zero() const override;
  Element one() const override;
  Element add(const Element& a, const Element& b) const override;
  Element neg(const Element& a) const override;
  Element mul(const Element& a, const Element& b) const override;
  Element parse(std::string_view text) const override;
  std::string format(const Element& a) const override;
  std::size_t index_of(const Element& a) const override;
  Element element_at(std::size_t index) const override;

  TableRingData data() const;

 protected:
  std::unique_ptr<SearchTables> build_tables() const override;

 private:
  std::size_t n_;
  std::vector<Index> add_, mul_, neg_;
  Index zero_, one_;
  std::string spec_;
  std::vector<std::string> labels_;
};

// Every finite ring exports to the table format.
TableRingData tabulate(const Ring& ring, std::size_t bound = kDefaultSizeBound);

RingHandle make_ring(std::string_view spec);
RingHandle make_table_ring(const TableRingData& data, std::string spec,
                           std::vector<std::string> labels = {});
RingHandle load_table_ring(const std::filesystem::path& path);

/// Z[u,v]/(2, u^2, uv, v^2): eight elements, local, not Bezout.
RingHandle nonbezout8_ring();

struct QuotientMap {
  RingHandle source;
  RingHandle target;
  std::vector<std::size_t> projection;  // source index -> target index
  std::vector<std::size_t> ideal;       // source indices of the ideal

  Element project(const Element& a) const;
};

/// R / (gens) materialized as a table ring; cosets are labelled by their
/// least-index representative.
QuotientMap quotient_ring(const RingHandle& ring, const std::vector<Element>& gens);

/// The map m/d -> (m * d^-1 mod p)_p from Z localized at P onto prod Z/p.
class ResidueMap {
 public:
  explicit ResidueMap(RingHandle localized);

  const RingHandle& source() const { return source_; }
  const RingHandle& target() const { return target_; }
  Element operator()(const Element& a) const;
  // Preimage n/1 of an image tuple via CRT.
  Element lift(const Element& image) const;

 private:
  RingHandle source_;
  RingHandle target_;
};

ResidueMap localized_residue_map(const RingHandle& ring);

}  // namespace edr
