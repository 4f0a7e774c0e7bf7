#include "edr/ring.hpp"

namespace edr {

Element::Element(RingHandle ring, Payload value) : ring_(std::move(ring)), value_(std::move(value)) {}

std::string Element::str() const { return ring_ ? ring_->format(*this) : "<unbound>"; }

bool operator==(const Element& l, const Element& r) {
  return l.ring_.get() == r.ring_.get() && l.value_ == r.value_;
}

namespace {
const Ring& common_ring(const Element& a, const Element& b) {
  if (!a.ring() || a.ring() != b.ring()) throw MixedRings("operands belong to different rings");
  return *a.ring();
}
}  // namespace

Element operator+(const Element& a, const Element& b) { return common_ring(a, b).add(a, b); }
Element operator-(const Element& a, const Element& b) { return common_ring(a, b).sub(a, b); }
Element operator*(const Element& a, const Element& b) { return common_ring(a, b).mul(a, b); }
Element operator-(const Element& a) {
  if (!a.ring()) throw MixedRings("unbound element");
  return a.ring()->neg(a);
}

std::string_view to_string(RingKind kind) {
  switch (kind) {
    case RingKind::integers: return "integers";
    case RingKind::residues: return "residues";
    case RingKind::product: return "product";
    case RingKind::poly_quotient: return "poly_quotient";
    case RingKind::localized: return "localized";
    case RingKind::dual_integers: return "dual_integers";
    case RingKind::table: return "table";
  }
  return "unknown";
}

Element Ring::from_int(long long k) const {
  // double-and-add on the identity
  Element acc = zero();
  Element base = k < 0 ? neg(one()) : one();
  unsigned long long m = k < 0 ? 0ULL - static_cast<unsigned long long>(k) : k;
  while (m) {
    if (m & 1ULL) acc = add(acc, base);
    base = add(base, base);
    m >>= 1;
  }
  return acc;
}

std::optional<std::pair<Element, Element>> Ring::comaximal_witness(const Element& a,
                                                                   const Element& b) const {
  BezoutData g = bezout(a, b);
  auto inv = inverse(g.d);
  if (!inv) return std::nullopt;
  return std::make_pair(mul(g.x, *inv), mul(g.y, *inv));
}

Element Ring::normalizing_unit(const Element&) const { return one(); }

std::size_t Ring::index_of(const Element&) const {
  throw Unsupported("ring " + spec() + " has no finite enumeration");
}

Element Ring::element_at(std::size_t) const {
  throw Unsupported("ring " + spec() + " has no finite enumeration");
}

void Ring::require_owned(const Element& a) const {
  if (!owns(a)) throw MixedRings("element does not belong to ring " + spec());
}

Element arith(const Ring& ring, ArithOp op, const Element& a, const Element& b) {
  ring.require_owned(a);
  if (op != ArithOp::neg) ring.require_owned(b);
  switch (op) {
    case ArithOp::add: return ring.add(a, b);
    case ArithOp::mul: return ring.mul(a, b);
    case ArithOp::neg: return ring.neg(a);
    case ArithOp::sub: return ring.sub(a, b);
  }
  return ring.zero();
}

std::optional<UnitWitness> is_unit(const Ring& ring, const Element& a) {
  ring.require_owned(a);
  if (auto inv = ring.inverse(a)) return UnitWitness{*inv};
  return std::nullopt;
}

std::optional<Element> divides(const Ring& ring, const Element& a, const Element& b) {
  ring.require_owned(a);
  ring.require_owned(b);
  return ring.quotient(a, b);
}

BezoutData bezout_gcd(const Ring& ring, const Element& a, const Element& b) {
  ring.require_owned(a);
  ring.require_owned(b);
  return ring.bezout(a, b);
}

bool bezout_identities_hold(const Ring& ring, const Element& a, const Element& b,
                            const BezoutData& g) {
  return ring.add(ring.mul(a, g.x), ring.mul(b, g.y)) == g.d && ring.mul(g.a1, g.d) == a &&
         ring.mul(g.b1, g.d) == b && ring.add(ring.mul(g.a1, g.u), ring.mul(g.b1, g.v)) == ring.one();
}

bool comaximal(const Ring& ring, const Element& a, const Element& b) {
  ring.require_owned(a);
  ring.require_owned(b);
  return ring.comaximal_witness(a, b).has_value();
}

Element power(const Ring& ring, const Element& a, unsigned long exponent) {
  Element acc = ring.one();
  Element base = a;
  while (exponent) {
    if (exponent & 1UL) acc = ring.mul(acc, base);
    base = ring.mul(base, base);
    exponent >>= 1;
  }
  return acc;
}

}  // namespace edr
