#pragma once

// Index-level operation tables for finite rings and the exhaustive searches
// (inverse, division, comaximality, Bezout witnesses) built on top of them.

#include "edr/ring.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace edr {

using Index = std::uint32_t;
using ElementSet = boost::dynamic_bitset<std::uint64_t>;

inline constexpr std::size_t kDefaultSizeBound = 4096;

struct IndexBezout {
  Index d, x, y, a1, b1, u, v;
};

class SearchTables {
 public:
  // Enumerates `ring` and tabulates its operations. Throws TooLarge when
  // |ring| exceeds `bound`.
  explicit SearchTables(const Ring& ring, std::size_t bound = kDefaultSizeBound);
  SearchTables(std::size_t n, std::vector<Index> add, std::vector<Index> mul, Index zero,
               Index one);

  std::size_t size() const { return n_; }
  Index zero() const { return zero_; }
  Index one() const { return one_; }
  Index add(Index a, Index b) const { return add_[std::size_t(a) * n_ + b]; }
  Index mul(Index a, Index b) const { return mul_[std::size_t(a) * n_ + b]; }
  Index neg(Index a) const { return neg_[a]; }
  Index sub(Index a, Index b) const { return add(a, neg(b)); }

  const std::vector<Index>& add_table() const { return add_; }
  const std::vector<Index>& mul_table() const { return mul_; }

  // aR as a set of indices.
  const ElementSet& principal_ideal(Index a) const { return principal_[a]; }
  // Least index generating the same principal ideal as `a`.
  Index ideal_id(Index a) const { return ideal_id_[a]; }
  bool in_ideal(Index x, Index a) const { return principal_[a].test(x); }

  ElementSet ideal_sum(const ElementSet& lhs, const ElementSet& rhs) const;

  std::optional<Index> inverse(Index a) const;
  // Least t with a*t == b.
  std::optional<Index> quotient(Index a, Index b) const;
  // Least p (then q) with a*p + b*q == 1.
  std::optional<std::pair<Index, Index>> comaximal_witness(Index a, Index b) const;
  // d is the least index generating aR + bR; nullopt when the ideal is not
  // principal or no comaximal cofactors exist.
  std::optional<IndexBezout> bezout(Index a, Index b) const;

 private:
  void finish();

  std::size_t n_ = 0;
  std::vector<Index> add_, mul_, neg_;
  Index zero_ = 0, one_ = 0;
  std::vector<ElementSet> principal_;
  std::vector<Index> ideal_id_;
};

}  // namespace edr
