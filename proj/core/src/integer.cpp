#include "edr/integer.hpp"

#include "edr/errors.hpp"

#include <cctype>

namespace edr {

ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
  ExtendedGcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.x.get_mpz_t(), r.y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer mod_nonneg(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

unsigned long valuation(const Integer& a, const Integer& p) {
  if (a == 0) return 0;
  Integer rest;
  return mpz_remove(rest.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
}

bool is_probable_prime(const Integer& p) { return mpz_probab_prime_p(p.get_mpz_t(), 30) > 0; }

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  return text;
}

Integer parse_integer(std::string_view text) {
  text = trim(text);
  std::string s(text);
  // accept U+2212 MINUS SIGN
  for (auto pos = s.find("\xE2\x88\x92"); pos != std::string::npos; pos = s.find("\xE2\x88\x92"))
    s.replace(pos, 3, "-");
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  if (s.empty()) throw ParseError("empty integer");
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (!(std::isdigit(static_cast<unsigned char>(c)) || (i == 0 && c == '-')) ||
        (c == '-' && s.size() == 1))
      throw ParseError("invalid integer '" + std::string(text) + "'");
  }
  return Integer(s, 10);
}

Rational parse_rational(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Integer& a) { return a.get_str(); }
std::string to_string(const Rational& q) { return q.get_str(); }

std::vector<std::string> split_top_level(std::string_view text, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '(' || c == '{' || c == '[') ++depth;
    if (c == ')' || c == '}' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.emplace_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.emplace_back(trim(cur));
  return out;
}

}  // namespace edr
