#include "edr/finite_search.hpp"

#include <string>

namespace edr {

SearchTables::SearchTables(const Ring& ring, std::size_t bound) {
  auto card = ring.cardinality();
  if (!card) throw Unsupported("ring " + ring.spec() + " is infinite");
  if (*card > bound)
    throw TooLarge("ring " + ring.spec() + " has " + std::to_string(*card) +
                   " elements, above the bound " + std::to_string(bound));
  n_ = *card;
  std::vector<Element> elems;
  elems.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) elems.push_back(ring.element_at(i));
  add_.assign(n_ * n_, 0);
  mul_.assign(n_ * n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i; j < n_; ++j) {
      auto s = static_cast<Index>(ring.index_of(ring.add(elems[i], elems[j])));
      auto p = static_cast<Index>(ring.index_of(ring.mul(elems[i], elems[j])));
      add_[i * n_ + j] = add_[j * n_ + i] = s;
      mul_[i * n_ + j] = mul_[j * n_ + i] = p;
    }
  }
  zero_ = static_cast<Index>(ring.index_of(ring.zero()));
  one_ = static_cast<Index>(ring.index_of(ring.one()));
  finish();
}

SearchTables::SearchTables(std::size_t n, std::vector<Index> add, std::vector<Index> mul, Index zero,
                           Index one)
    : n_(n), add_(std::move(add)), mul_(std::move(mul)), zero_(zero), one_(one) {
  finish();
}

void SearchTables::finish() {
  neg_.assign(n_, 0);
  for (Index a = 0; a < n_; ++a)
    for (Index b = 0; b < n_; ++b)
      if (add(a, b) == zero_) {
        neg_[a] = b;
        break;
      }
  principal_.assign(n_, ElementSet(n_));
  for (Index a = 0; a < n_; ++a)
    for (Index r = 0; r < n_; ++r) principal_[a].set(mul(a, r));
  ideal_id_.assign(n_, 0);
  for (Index a = 0; a < n_; ++a) {
    ideal_id_[a] = a;
    for (Index b = 0; b < a; ++b)
      if (ideal_id_[b] == b && principal_[b] == principal_[a]) {
        ideal_id_[a] = b;
        break;
      }
  }
}

ElementSet SearchTables::ideal_sum(const ElementSet& lhs, const ElementSet& rhs) const {
  if (rhs.is_subset_of(lhs)) return lhs;
  if (lhs.is_subset_of(rhs)) return rhs;
  ElementSet out(n_);
  for (auto x = lhs.find_first(); x != ElementSet::npos; x = lhs.find_next(x))
    for (auto y = rhs.find_first(); y != ElementSet::npos; y = rhs.find_next(y))
      out.set(add(static_cast<Index>(x), static_cast<Index>(y)));
  return out;
}

std::optional<Index> SearchTables::inverse(Index a) const { return quotient(a, one_); }

std::optional<Index> SearchTables::quotient(Index a, Index b) const {
  if (!principal_[a].test(b)) return std::nullopt;
  const Index* row = &mul_[std::size_t(a) * n_];
  for (Index t = 0; t < n_; ++t)
    if (row[t] == b) return t;
  return std::nullopt;
}

std::optional<std::pair<Index, Index>> SearchTables::comaximal_witness(Index a, Index b) const {
  for (Index p = 0; p < n_; ++p) {
    Index rest = sub(one_, mul(a, p));
    if (in_ideal(rest, b)) return std::make_pair(p, *quotient(b, rest));
  }
  return std::nullopt;
}

std::optional<IndexBezout> SearchTables::bezout(Index a, Index b) const {
  if (a == zero_ && b == zero_) return IndexBezout{zero_, zero_, zero_, one_, zero_, one_, zero_};
  ElementSet ideal = ideal_sum(principal_[a], principal_[b]);
  for (Index d = 0; d < n_; ++d) {
    if (principal_[d] != ideal) continue;
    const Index* row = &mul_[std::size_t(d) * n_];
    std::vector<Index> a1s, b1s;
    for (Index t = 0; t < n_; ++t) {
      if (row[t] == a) a1s.push_back(t);
      if (row[t] == b) b1s.push_back(t);
    }
    for (Index a1 : a1s)
      for (Index b1 : b1s)
        if (auto w = comaximal_witness(a1, b1))
          return IndexBezout{d, w->first, w->second, a1, b1, w->first, w->second};
  }
  return std::nullopt;
}

}  // namespace edr
