#include "edr/rings.hpp"

#include <cctype>
#include <limits>
#include <map>

namespace edr {

namespace {

// Parses sums of terms c, c*x, cx, x^k, c*x^k into a coefficient vector.
std::vector<Integer> parse_polynomial(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  for (auto pos = s.find("\xE2\x88\x92"); pos != std::string::npos; pos = s.find("\xE2\x88\x92"))
    s.replace(pos, 3, "-");
  if (s.empty()) throw ParseError("empty polynomial");
  std::map<std::size_t, Integer> terms;
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = -1;
      ++i;
    }
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    Integer coeff = start == i ? Integer(1) : Integer(s.substr(start, i - start), 10);
    bool has_digits = start != i;
    std::size_t deg = 0;
    if (i < s.size() && s[i] == '*') ++i;
    if (i < s.size() && s[i] == 'x') {
      ++i;
      deg = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::size_t ds = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (ds == i) throw ParseError("missing exponent in '" + std::string(text) + "'");
        deg = std::stoul(s.substr(ds, i - ds));
      }
    } else if (!has_digits) {
      throw ParseError("invalid polynomial '" + std::string(text) + "'");
    }
    if (i < s.size() && s[i] != '+' && s[i] != '-')
      throw ParseError("invalid polynomial '" + std::string(text) + "'");
    terms[deg] += sign * coeff;
  }
  std::vector<Integer> out(terms.rbegin()->first + 1, Integer(0));
  for (auto& [deg, c] : terms) out[deg] = c;
  return out;
}

std::string format_polynomial(const std::vector<Integer>& coeffs) {
  std::string s;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const Integer& c = coeffs[k];
    if (c == 0) continue;
    Integer mag = abs(c);
    if (c < 0) {
      s += "-";
    } else if (!s.empty()) {
      s += "+";
    }
    if (k == 0 || mag != 1) s += to_string(mag);
    if (k >= 1) s += "x";
    if (k >= 2) s += "^" + std::to_string(k);
  }
  return s.empty() ? "0" : s;
}

}  // namespace

PolyQuotientRing::PolyQuotientRing(Integer modulus, std::vector<Integer> monic_f)
    : n_(std::move(modulus)), f_(std::move(monic_f)) {
  while (f_.size() > 1 && f_.back() == 0) f_.pop_back();
  if (f_.size() < 2) throw UnsupportedSpec("polyq needs deg(f) >= 1");
  if (n_ < 0 || n_ == 1) throw UnsupportedSpec("polyq modulus must be 0 or >= 2");
  if (n_ == 0) {
    if (!(f_.size() == 3 && f_[0] == -1 && f_[1] == 0 && f_[2] == 1))
      throw UnsupportedSpec("polyq with modulus 0 is only supported for f = x^2-1");
  } else {
    for (auto& c : f_) c = mod_nonneg(c, n_);
    if (f_.back() != 1) throw UnsupportedSpec("polyq needs a monic f");
    Integer card;
    mpz_pow_ui(card.get_mpz_t(), n_.get_mpz_t(), degree());
    card_ = card.fits_ulong_p() ? static_cast<std::size_t>(card.get_ui())
                                : std::numeric_limits<std::size_t>::max();
  }
}

std::string PolyQuotientRing::spec() const {
  std::vector<Integer> f = f_;
  if (n_ != 0) {
    // print with balanced signs so x^2-1 stays readable
    for (auto& c : f)
      if (c * 2 > n_) c -= n_;
  }
  return "polyq:" + to_string(n_) + ":" + format_polynomial(f);
}

std::vector<Integer> PolyQuotientRing::reduce(std::vector<Integer> c) const {
  const std::size_t deg = degree();
  for (std::size_t k = c.size(); k-- > deg;) {
    if (c[k] == 0) continue;
    Integer lead = c[k];
    for (std::size_t i = 0; i < deg; ++i) c[k - deg + i] -= lead * f_[i];
    c[k] = 0;
  }
  c.resize(deg, Integer(0));
  if (n_ != 0)
    for (auto& x : c) x = mod_nonneg(x, n_);
  return c;
}

Element PolyQuotientRing::polynomial(std::vector<Integer> coeffs) const {
  return make(reduce(std::move(coeffs)));
}

Element PolyQuotientRing::zero() const { return make(std::vector<Integer>(degree(), Integer(0))); }
Element PolyQuotientRing::one() const { return from_int(1); }
Element PolyQuotientRing::from_int(long long k) const {
  return polynomial({Integer(static_cast<long>(k))});
}

Element PolyQuotientRing::add(const Element& a, const Element& b) const {
  const auto& x = a.as<std::vector<Integer>>();
  const auto& y = b.as<std::vector<Integer>>();
  std::vector<Integer> out(degree());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = x[i] + y[i];
    if (n_ != 0 && out[i] >= n_) out[i] -= n_;
  }
  return make(std::move(out));
}

Element PolyQuotientRing::neg(const Element& a) const {
  std::vector<Integer> out = a.as<std::vector<Integer>>();
  for (auto& c : out) c = n_ != 0 && c != 0 ? Integer(n_ - c) : Integer(-c);
  return make(std::move(out));
}

Element PolyQuotientRing::mul(const Element& a, const Element& b) const {
  const auto& x = a.as<std::vector<Integer>>();
  const auto& y = b.as<std::vector<Integer>>();
  std::vector<Integer> prod(2 * degree() - 1, Integer(0));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) prod[i + j] += x[i] * y[j];
  }
  return make(reduce(std::move(prod)));
}

std::pair<Integer, Integer> PolyQuotientRing::evaluation_pair(const Element& a) const {
  if (!is_zalpha()) throw Unsupported("evaluation pair is defined for Z[alpha] only");
  const auto& c = a.as<std::vector<Integer>>();
  return {c[0] + c[1], c[0] - c[1]};
}

std::optional<Element> PolyQuotientRing::inverse(const Element& a) const {
  if (!is_zalpha()) return SearchRing::inverse(a);
  auto [p, m] = evaluation_pair(a);
  if (abs(p) != 1 || abs(m) != 1) return std::nullopt;
  // (p, m)^-1 = (p, m); pull back through alpha -> (+1, -1).
  return polynomial({Integer((p + m) / 2), Integer((p - m) / 2)});
}

std::optional<Element> PolyQuotientRing::quotient(const Element& a, const Element& b) const {
  if (!is_zalpha()) return SearchRing::quotient(a, b);
  // a*t = b inside Z x Z, then require the preimage to have integer coordinates.
  auto [p1, m1] = evaluation_pair(a);
  auto [p2, m2] = evaluation_pair(b);
  auto solve = [](const Integer& lhs, const Integer& rhs) -> std::optional<std::optional<Integer>> {
    if (lhs == 0) {
      if (rhs != 0) return std::nullopt;
      return std::optional<Integer>{};  // free
    }
    if (!mpz_divisible_p(rhs.get_mpz_t(), lhs.get_mpz_t())) return std::nullopt;
    return std::optional<Integer>{Integer(rhs / lhs)};
  };
  auto xs = solve(p1, p2);
  auto ys = solve(m1, m2);
  if (!xs || !ys) return std::nullopt;
  Integer x, y;
  if (*xs && *ys) {
    x = **xs;
    y = **ys;
    if (mpz_even_p(Integer(x - y).get_mpz_t()) == 0) return std::nullopt;
  } else if (*xs) {
    x = y = **xs;
  } else if (*ys) {
    x = y = **ys;
  } else {
    x = y = 0;
  }
  return polynomial({Integer((x + y) / 2), Integer((x - y) / 2)});
}

BezoutData PolyQuotientRing::bezout(const Element& a, const Element& b) const {
  if (is_zalpha()) throw NotBezout("Z[alpha] is not treated as a Bezout ring");
  return SearchRing::bezout(a, b);
}

std::optional<std::pair<Element, Element>> PolyQuotientRing::comaximal_witness(
    const Element& a, const Element& b) const {
  if (is_zalpha()) throw Unsupported("comaximality is not decided in Z[alpha]");
  return SearchRing::comaximal_witness(a, b);
}

Element PolyQuotientRing::normalizing_unit(const Element& a) const {
  if (is_zalpha()) return one();
  return SearchRing::normalizing_unit(a);
}

Element PolyQuotientRing::parse(std::string_view text) const { return polynomial(parse_polynomial(text)); }
std::string PolyQuotientRing::format(const Element& a) const {
  return format_polynomial(a.as<std::vector<Integer>>());
}

std::size_t PolyQuotientRing::index_of(const Element& a) const {
  if (is_zalpha()) return Ring::index_of(a);
  const auto& c = a.as<std::vector<Integer>>();
  std::size_t idx = 0;
  const std::size_t n = n_.get_ui();
  for (std::size_t k = c.size(); k-- > 0;) idx = idx * n + c[k].get_ui();
  return idx;
}

Element PolyQuotientRing::element_at(std::size_t index) const {
  if (is_zalpha()) return Ring::element_at(index);
  const std::size_t n = n_.get_ui();
  std::vector<Integer> c(degree());
  for (auto& x : c) {
    x = static_cast<unsigned long>(index % n);
    index /= n;
  }
  return make(std::move(c));
}

// exposed for make_ring
std::vector<Integer> parse_polynomial_coefficients(std::string_view text) { return parse_polynomial(text); }

}  // namespace edr
