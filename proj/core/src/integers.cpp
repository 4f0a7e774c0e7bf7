#include "edr/rings.hpp"

#include <limits>

namespace edr {

// ---- Z ----

Element IntegerRing::zero() const { return make(Integer(0)); }
Element IntegerRing::one() const { return make(Integer(1)); }
Element IntegerRing::from_int(long long k) const { return make(Integer(static_cast<long>(k))); }

Element IntegerRing::add(const Element& a, const Element& b) const {
  return make(Integer(a.as<Integer>() + b.as<Integer>()));
}
Element IntegerRing::neg(const Element& a) const { return make(Integer(-a.as<Integer>())); }
Element IntegerRing::mul(const Element& a, const Element& b) const {
  return make(Integer(a.as<Integer>() * b.as<Integer>()));
}

std::optional<Element> IntegerRing::inverse(const Element& a) const {
  const auto& v = a.as<Integer>();
  if (v == 1 || v == -1) return a;
  return std::nullopt;
}

std::optional<Element> IntegerRing::quotient(const Element& a, const Element& b) const {
  const auto& x = a.as<Integer>();
  const auto& y = b.as<Integer>();
  if (x == 0) {
    if (y == 0) return zero();
    return std::nullopt;
  }
  if (!mpz_divisible_p(y.get_mpz_t(), x.get_mpz_t())) return std::nullopt;
  Integer t;
  mpz_divexact(t.get_mpz_t(), y.get_mpz_t(), x.get_mpz_t());
  return make(std::move(t));
}

BezoutData IntegerRing::bezout(const Element& a, const Element& b) const {
  const auto& x = a.as<Integer>();
  const auto& y = b.as<Integer>();
  if (x == 0 && y == 0) return {zero(), zero(), zero(), one(), zero(), one(), zero()};
  auto e = extended_gcd(x, y);
  Integer a1 = x / e.g, b1 = y / e.g;
  return {make(e.g), make(e.x), make(e.y), make(a1), make(b1), make(e.x), make(e.y)};
}

Element IntegerRing::normalizing_unit(const Element& a) const {
  return make(Integer(a.as<Integer>() < 0 ? -1 : 1));
}

Element IntegerRing::parse(std::string_view text) const { return make(parse_integer(text)); }
std::string IntegerRing::format(const Element& a) const { return to_string(a.as<Integer>()); }

// ---- Z/n ----

ResidueRing::ResidueRing(Integer modulus) : n_(std::move(modulus)) {
  if (n_ < 2) throw ParseError("Zn requires n >= 2");
}

std::string ResidueRing::spec() const { return "Zn:" + to_string(n_); }

std::optional<std::size_t> ResidueRing::cardinality() const {
  if (!n_.fits_ulong_p()) return std::numeric_limits<std::size_t>::max();
  return static_cast<std::size_t>(n_.get_ui());
}

Element ResidueRing::residue(const Integer& v) const { return make(mod_nonneg(v, n_)); }

Element ResidueRing::zero() const { return make(Integer(0)); }
Element ResidueRing::one() const { return make(Integer(1)); }
Element ResidueRing::from_int(long long k) const { return residue(Integer(static_cast<long>(k))); }

Element ResidueRing::add(const Element& a, const Element& b) const {
  Integer s = a.as<Integer>() + b.as<Integer>();
  if (s >= n_) s -= n_;
  return make(std::move(s));
}
Element ResidueRing::neg(const Element& a) const {
  const auto& v = a.as<Integer>();
  return make(v == 0 ? Integer(0) : Integer(n_ - v));
}
Element ResidueRing::mul(const Element& a, const Element& b) const {
  return residue(a.as<Integer>() * b.as<Integer>());
}

std::optional<Element> ResidueRing::inverse(const Element& a) const {
  Integer inv;
  if (!mpz_invert(inv.get_mpz_t(), a.as<Integer>().get_mpz_t(), n_.get_mpz_t())) return std::nullopt;
  return make(std::move(inv));
}

std::optional<Element> ResidueRing::quotient(const Element& a, const Element& b) const {
  const auto& x = a.as<Integer>();
  const auto& y = b.as<Integer>();
  Integer g = gcd(x, n_);
  if (!mpz_divisible_p(y.get_mpz_t(), g.get_mpz_t())) return std::nullopt;
  Integer m = n_ / g;
  if (m == 1) return zero();
  Integer inv;
  mpz_invert(inv.get_mpz_t(), Integer(x / g).get_mpz_t(), m.get_mpz_t());
  return make(mod_nonneg(Integer(y / g) * inv, m));
}

BezoutData ResidueRing::bezout(const Element& a, const Element& b) const {
  const auto& x = a.as<Integer>();
  const auto& y = b.as<Integer>();
  if (x == 0 && y == 0) return {zero(), zero(), zero(), one(), zero(), one(), zero()};
  // d is the least generator of (a, b): gcd(a, b, n).
  Integer d = gcd(gcd(x, y), n_);
  Integer m = n_ / d;
  Integer alpha = x / d, beta = y / d;
  // Shift alpha along its class mod n/d until the cofactors are comaximal mod n.
  Integer a1 = alpha;
  while (gcd(gcd(a1, beta), n_) != 1) a1 += m;
  auto e = extended_gcd(a1, beta);
  Integer scale;
  mpz_invert(scale.get_mpz_t(), e.g.get_mpz_t(), n_.get_mpz_t());
  Element u = residue(e.x * scale), v = residue(e.y * scale);
  return {residue(d), u, v, residue(a1), residue(beta), u, v};
}

Element ResidueRing::normalizing_unit(const Element& a) const {
  const auto& x = a.as<Integer>();
  if (x == 0) return one();
  Integer g = gcd(x, n_);
  Integer m = n_ / g;
  Integer u = 1;
  if (m > 1) mpz_invert(u.get_mpz_t(), Integer(x / g).get_mpz_t(), m.get_mpz_t());
  while (gcd(u, n_) != 1) u += m;
  return residue(u);
}

Element ResidueRing::parse(std::string_view text) const { return residue(parse_integer(text)); }
std::string ResidueRing::format(const Element& a) const { return to_string(a.as<Integer>()); }

std::size_t ResidueRing::index_of(const Element& a) const { return a.as<Integer>().get_ui(); }
Element ResidueRing::element_at(std::size_t index) const {
  return make(Integer(static_cast<unsigned long>(index)));
}

}  // namespace edr
