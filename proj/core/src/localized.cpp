#include "edr/rings.hpp"

#include <algorithm>

namespace edr {

LocalizedRing::LocalizedRing(std::vector<Integer> primes) : primes_(std::move(primes)) {
  if (primes_.empty()) throw UnsupportedSpec("zloc needs at least one prime");
  std::sort(primes_.begin(), primes_.end());
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    if (primes_[i] < 2 || !is_probable_prime(primes_[i]))
      throw ParseError("zloc: " + to_string(primes_[i]) + " is not prime");
    if (i && primes_[i] == primes_[i - 1]) throw ParseError("zloc: primes must be distinct");
  }
}

std::string LocalizedRing::spec() const {
  std::string s = "zloc:{";
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    if (i) s += ",";
    s += to_string(primes_[i]);
  }
  return s + "}";
}

bool LocalizedRing::coprime_to_primes(const Integer& v) const {
  for (const auto& p : primes_)
    if (mpz_divisible_p(v.get_mpz_t(), p.get_mpz_t())) return false;
  return true;
}

Element LocalizedRing::fraction(const Integer& num, const Integer& den) const {
  if (den == 0) throw ParseError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  if (!coprime_to_primes(q.get_den()))
    throw ParseError("denominator " + to_string(q.get_den()) + " is divisible by a localizing prime");
  return make(Fraction{q.get_num(), q.get_den()});
}

namespace {
Rational as_rational(const Element& a) {
  const auto& f = a.as<Fraction>();
  return Rational(f.num, f.den);
}
}  // namespace

Element LocalizedRing::zero() const { return make(Fraction{Integer(0), Integer(1)}); }
Element LocalizedRing::one() const { return make(Fraction{Integer(1), Integer(1)}); }
Element LocalizedRing::from_int(long long k) const {
  return make(Fraction{Integer(static_cast<long>(k)), Integer(1)});
}

Element LocalizedRing::add(const Element& a, const Element& b) const {
  Rational q = as_rational(a) + as_rational(b);
  return make(Fraction{q.get_num(), q.get_den()});
}
Element LocalizedRing::neg(const Element& a) const {
  const auto& f = a.as<Fraction>();
  return make(Fraction{Integer(-f.num), f.den});
}
Element LocalizedRing::mul(const Element& a, const Element& b) const {
  Rational q = as_rational(a) * as_rational(b);
  return make(Fraction{q.get_num(), q.get_den()});
}

std::optional<Element> LocalizedRing::inverse(const Element& a) const {
  const auto& f = a.as<Fraction>();
  if (f.num == 0 || !coprime_to_primes(f.num)) return std::nullopt;
  return fraction(f.den, f.num);
}

std::optional<Element> LocalizedRing::quotient(const Element& a, const Element& b) const {
  const auto& x = a.as<Fraction>();
  const auto& y = b.as<Fraction>();
  if (y.num == 0) return zero();
  if (x.num == 0) return std::nullopt;
  for (const auto& p : primes_)
    if (valuation(y.num, p) < valuation(x.num, p)) return std::nullopt;
  return fraction(y.num * x.den, y.den * x.num);
}

Integer LocalizedRing::prime_part(const Element& a) const {
  const auto& f = a.as<Fraction>();
  if (f.num == 0) return 0;
  Integer part = 1;
  for (const auto& p : primes_) {
    Integer pk;
    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), valuation(f.num, p));
    part *= pk;
  }
  return part;
}

BezoutData LocalizedRing::bezout(const Element& a, const Element& b) const {
  const auto& x = a.as<Fraction>();
  const auto& y = b.as<Fraction>();
  if (x.num == 0 && y.num == 0) return {zero(), zero(), zero(), one(), zero(), one(), zero()};
  // d = gcd of the P-parts of the numerators.
  Integer d = x.num == 0 ? prime_part(b) : y.num == 0 ? prime_part(a) : gcd(prime_part(a), prime_part(b));
  Element de = fraction(d, 1);
  Element a1 = *quotient(de, a);
  Element b1 = *quotient(de, b);
  const auto& fa = a1.as<Fraction>();
  const auto& fb = b1.as<Fraction>();
  // gcd of the numerators avoids every p in P, so it is a unit here.
  auto e = extended_gcd(fa.num, fb.num);
  Element u = fraction(e.x * fa.den, e.g);
  Element v = fraction(e.y * fb.den, e.g);
  return {de, u, v, a1, b1, u, v};
}

Element LocalizedRing::normalizing_unit(const Element& a) const {
  const auto& f = a.as<Fraction>();
  if (f.num == 0) return one();
  return fraction(prime_part(a) * f.den, f.num);
}

Element LocalizedRing::parse(std::string_view text) const {
  Rational q = parse_rational(text);
  return fraction(q.get_num(), q.get_den());
}

std::string LocalizedRing::format(const Element& a) const {
  const auto& f = a.as<Fraction>();
  return to_string(f.num) + "/" + to_string(f.den);
}

}  // namespace edr
