#include "edr/rings.hpp"

#include <cctype>

namespace edr {

Element DualIntegerRing::dual(Integer a, Rational b) const {
  b.canonicalize();
  return make(DualValue{std::move(a), std::move(b)});
}

Element DualIntegerRing::zero() const { return dual(0, 0); }
Element DualIntegerRing::one() const { return dual(1, 0); }
Element DualIntegerRing::from_int(long long k) const { return dual(Integer(static_cast<long>(k)), 0); }

Element DualIntegerRing::add(const Element& p, const Element& q) const {
  const auto& x = p.as<DualValue>();
  const auto& y = q.as<DualValue>();
  return dual(x.a + y.a, Rational(x.b + y.b));
}

Element DualIntegerRing::neg(const Element& p) const {
  const auto& x = p.as<DualValue>();
  return dual(-x.a, Rational(-x.b));
}

// (a + bx)(c + dx) = ac + (ad + bc)x
Element DualIntegerRing::mul(const Element& p, const Element& q) const {
  const auto& x = p.as<DualValue>();
  const auto& y = q.as<DualValue>();
  return dual(x.a * y.a, Rational(x.a * y.b + x.b * y.a));
}

std::optional<Element> DualIntegerRing::inverse(const Element& p) const {
  const auto& x = p.as<DualValue>();
  if (abs(x.a) != 1) return std::nullopt;
  return dual(x.a, Rational(-x.b));
}

std::optional<Element> DualIntegerRing::quotient(const Element& p, const Element& q) const {
  const auto& x = p.as<DualValue>();
  const auto& y = q.as<DualValue>();
  if (x.a != 0) {
    if (!mpz_divisible_p(y.a.get_mpz_t(), x.a.get_mpz_t())) return std::nullopt;
    Integer g = y.a / x.a;
    Rational h = (y.b - x.b * g) / x.a;
    return dual(std::move(g), std::move(h));
  }
  // p = bx lies in the radical: it divides exactly the multiples bgx, g integral.
  if (y.a != 0) return std::nullopt;
  if (x.b == 0) {
    if (y.b == 0) return zero();
    return std::nullopt;
  }
  Rational g = y.b / x.b;
  if (g.get_den() != 1) return std::nullopt;
  return dual(g.get_num(), 0);
}

namespace {
Rational rational_gcd(const Rational& p, const Rational& q) {
  if (p == 0) return abs(q);
  if (q == 0) return abs(p);
  Integer num = gcd(Integer(p.get_num() * q.get_den()), Integer(q.get_num() * p.get_den()));
  Rational g(num, Integer(p.get_den() * q.get_den()));
  g.canonicalize();
  return g;
}
}  // namespace

BezoutData DualIntegerRing::bezout(const Element& p, const Element& q) const {
  const auto& x = p.as<DualValue>();
  const auto& y = q.as<DualValue>();
  if (p == zero() && q == zero()) return {zero(), zero(), zero(), one(), zero(), one(), zero()};
  Element d;
  if (x.a != 0 || y.a != 0) {
    d = dual(gcd(x.a, y.a), 0);
  } else {
    d = dual(0, rational_gcd(x.b, y.b));
  }
  Element a1 = *quotient(d, p);
  Element b1 = *quotient(d, q);
  auto e = extended_gcd(a1.as<DualValue>().a, b1.as<DualValue>().a);
  Element u = dual(e.x, 0), v = dual(e.y, 0);
  // a1*u + b1*v = 1 + gamma*x; divide by that unit.
  Element combo = add(mul(a1, u), mul(b1, v));
  Element fix = *inverse(combo);
  u = mul(u, fix);
  v = mul(v, fix);
  return {d, u, v, a1, b1, u, v};
}

Element DualIntegerRing::normalizing_unit(const Element& p) const {
  const auto& x = p.as<DualValue>();
  int sign = x.a != 0 ? sgn(x.a) : sgn(x.b);
  return dual(sign < 0 ? -1 : 1, 0);
}

Element DualIntegerRing::parse(std::string_view text) const {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  for (auto pos = s.find("\xE2\x88\x92"); pos != std::string::npos; pos = s.find("\xE2\x88\x92"))
    s.replace(pos, 3, "-");
  if (s.empty()) throw ParseError("empty dual integer");
  if (s.back() != 'x') return dual(parse_integer(s), 0);
  std::string body = s.substr(0, s.size() - 1);
  if (!body.empty() && body.back() == '*') body.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;)
    if (body[i] == '+' || body[i] == '-') {
      split = i;
      break;
    }
  std::string int_part = split == std::string::npos ? "0" : body.substr(0, split);
  std::string x_part = split == std::string::npos ? body : body.substr(split);
  Rational b;
  if (x_part.empty() || x_part == "+") {
    b = 1;
  } else if (x_part == "-") {
    b = -1;
  } else {
    b = parse_rational(x_part.front() == '+' ? x_part.substr(1) : x_part);
  }
  return dual(parse_integer(int_part), b);
}

std::string DualIntegerRing::format(const Element& p) const {
  const auto& x = p.as<DualValue>();
  std::string s = to_string(x.a);
  s += x.b < 0 ? "-" : "+";
  s += to_string(Rational(abs(x.b)));
  return s + " x";
}

}  // namespace edr
