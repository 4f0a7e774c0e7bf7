#include "edr/rings.hpp"

#include <limits>

namespace edr {

ProductRing::ProductRing(std::vector<RingHandle> factors) : factors_(std::move(factors)) {
  if (factors_.size() < 2) throw UnsupportedSpec("prod(...) needs at least two factors");
  std::size_t card = 1;
  bool finite = true;
  for (const auto& f : factors_) {
    auto c = f->cardinality();
    if (!c) {
      finite = false;
      break;
    }
    if (*c != 0 && card > std::numeric_limits<std::size_t>::max() / *c) {
      card = std::numeric_limits<std::size_t>::max();
    } else {
      card *= *c;
    }
  }
  if (finite) card_ = card;
}

std::string ProductRing::spec() const {
  std::string s = "prod(";
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) s += ",";
    s += factors_[i]->spec();
  }
  return s + ")";
}

Element ProductRing::tuple(std::vector<Element> parts) const {
  if (parts.size() != factors_.size()) throw MixedRings("tuple arity mismatch");
  for (std::size_t i = 0; i < parts.size(); ++i) factors_[i]->require_owned(parts[i]);
  return make(std::move(parts));
}

const Element& ProductRing::component(const Element& a, std::size_t i) const {
  return a.as<std::vector<Element>>()[i];
}

namespace {
template <class F>
std::vector<Element> each(const std::vector<RingHandle>& factors, F&& f) {
  std::vector<Element> out;
  out.reserve(factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) out.push_back(f(i, *factors[i]));
  return out;
}
}  // namespace

Element ProductRing::zero() const {
  return make(each(factors_, [](std::size_t, const Ring& r) { return r.zero(); }));
}
Element ProductRing::one() const {
  return make(each(factors_, [](std::size_t, const Ring& r) { return r.one(); }));
}
Element ProductRing::from_int(long long k) const {
  return make(each(factors_, [k](std::size_t, const Ring& r) { return r.from_int(k); }));
}

Element ProductRing::add(const Element& a, const Element& b) const {
  return make(each(factors_, [&](std::size_t i, const Ring& r) {
    return r.add(component(a, i), component(b, i));
  }));
}
Element ProductRing::neg(const Element& a) const {
  return make(each(factors_, [&](std::size_t i, const Ring& r) { return r.neg(component(a, i)); }));
}
Element ProductRing::mul(const Element& a, const Element& b) const {
  return make(each(factors_, [&](std::size_t i, const Ring& r) {
    return r.mul(component(a, i), component(b, i));
  }));
}

std::optional<Element> ProductRing::inverse(const Element& a) const {
  std::vector<Element> parts;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    auto inv = factors_[i]->inverse(component(a, i));
    if (!inv) return std::nullopt;
    parts.push_back(std::move(*inv));
  }
  return make(std::move(parts));
}

std::optional<Element> ProductRing::quotient(const Element& a, const Element& b) const {
  std::vector<Element> parts;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    auto t = factors_[i]->quotient(component(a, i), component(b, i));
    if (!t) return std::nullopt;
    parts.push_back(std::move(*t));
  }
  return make(std::move(parts));
}

bool ProductRing::supports_bezout() const {
  for (const auto& f : factors_)
    if (!f->supports_bezout()) return false;
  return true;
}

BezoutData ProductRing::bezout(const Element& a, const Element& b) const {
  std::vector<Element> d, x, y, a1, b1, u, v;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    BezoutData g = factors_[i]->bezout(component(a, i), component(b, i));
    d.push_back(g.d);
    x.push_back(g.x);
    y.push_back(g.y);
    a1.push_back(g.a1);
    b1.push_back(g.b1);
    u.push_back(g.u);
    v.push_back(g.v);
  }
  return {make(std::move(d)), make(std::move(x)), make(std::move(y)), make(std::move(a1)),
          make(std::move(b1)), make(std::move(u)), make(std::move(v))};
}

std::optional<std::pair<Element, Element>> ProductRing::comaximal_witness(const Element& a,
                                                                          const Element& b) const {
  std::vector<Element> p, q;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    auto w = factors_[i]->comaximal_witness(component(a, i), component(b, i));
    if (!w) return std::nullopt;
    p.push_back(std::move(w->first));
    q.push_back(std::move(w->second));
  }
  return std::make_pair(make(std::move(p)), make(std::move(q)));
}

Element ProductRing::normalizing_unit(const Element& a) const {
  return make(each(factors_, [&](std::size_t i, const Ring& r) {
    return r.normalizing_unit(component(a, i));
  }));
}

Element ProductRing::parse(std::string_view text) const {
  text = trim(text);
  if (text.size() < 2 || text.front() != '(' || text.back() != ')')
    throw ParseError("product element must look like (a|b): '" + std::string(text) + "'");
  auto parts = split_top_level(text.substr(1, text.size() - 2), '|');
  if (parts.size() != factors_.size())
    throw ParseError("product element has " + std::to_string(parts.size()) + " components, expected " +
                     std::to_string(factors_.size()));
  return make(each(factors_, [&](std::size_t i, const Ring& r) { return r.parse(parts[i]); }));
}

std::string ProductRing::format(const Element& a) const {
  std::string s = "(";
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) s += "|";
    s += factors_[i]->format(component(a, i));
  }
  return s + ")";
}

// Lexicographic: the last component varies fastest.
std::size_t ProductRing::index_of(const Element& a) const {
  if (!card_) return Ring::index_of(a);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    idx = idx * *factors_[i]->cardinality() + factors_[i]->index_of(component(a, i));
  return idx;
}

Element ProductRing::element_at(std::size_t index) const {
  if (!card_) return Ring::element_at(index);
  std::vector<Element> parts(factors_.size());
  for (std::size_t i = factors_.size(); i-- > 0;) {
    std::size_t c = *factors_[i]->cardinality();
    parts[i] = factors_[i]->element_at(index % c);
    index /= c;
  }
  return make(std::move(parts));
}

}  // namespace edr
