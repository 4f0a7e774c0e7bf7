#include "edr/rings.hpp"

namespace edr {

std::vector<Integer> parse_polynomial_coefficients(std::string_view text);

namespace {

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

std::string_view inside(std::string_view s, std::size_t open, char close, std::string_view whole) {
  if (s.size() <= open || s.back() != close)
    throw ParseError("unbalanced ring spec '" + std::string(whole) + "'");
  return s.substr(open, s.size() - open - 1);
}

}  // namespace

RingHandle make_ring(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw ParseError("empty ring spec");
  if (s == "Z") return std::make_shared<IntegerRing>();
  if (s == "dualint") return std::make_shared<DualIntegerRing>();
  if (starts_with(s, "Zn:")) {
    Integer n = parse_integer(s.substr(3));
    return std::make_shared<ResidueRing>(n);
  }
  if (starts_with(s, "prod(")) {
    auto parts = split_top_level(inside(s, 5, ')', text), ',');
    std::vector<RingHandle> factors;
    for (auto part : parts) factors.push_back(make_ring(part));
    return std::make_shared<ProductRing>(std::move(factors));
  }
  if (starts_with(s, "polyq:")) {
    auto rest = s.substr(6);
    auto colon = rest.find(':');
    if (colon == std::string_view::npos) throw ParseError("polyq spec needs polyq:<n>:<f>");
    Integer n = parse_integer(rest.substr(0, colon));
    return std::make_shared<PolyQuotientRing>(n, parse_polynomial_coefficients(rest.substr(colon + 1)));
  }
  if (starts_with(s, "zloc:")) {
    auto body = trim(s.substr(5));
    if (body.size() < 2 || body.front() != '{' || body.back() != '}')
      throw ParseError("zloc spec needs zloc:{p1,p2,...}");
    std::vector<Integer> primes;
    for (auto p : split_top_level(body.substr(1, body.size() - 2), ',')) primes.push_back(parse_integer(p));
    return std::make_shared<LocalizedRing>(std::move(primes));
  }
  if (starts_with(s, "table:")) {
    auto path = trim(s.substr(6));
    if (path == "builtin/nonbezout8") return nonbezout8_ring();
    return load_table_ring(std::filesystem::path(std::string(path)));
  }
  if (starts_with(s, "quot(")) {
    auto parts = split_top_level(inside(s, 5, ')', text), ',');
    if (parts.size() < 2) throw ParseError("quot spec needs quot(<spec>,<element>)");
    RingHandle base = make_ring(parts.front());
    if (!base->is_finite()) throw UnsupportedSpec("quot(...) needs a finite base ring");
    std::vector<Element> gens;
    for (std::size_t i = 1; i < parts.size(); ++i) gens.push_back(base->parse(parts[i]));
    return quotient_ring(base, gens).target;
  }
  throw ParseError("unknown ring spec '" + std::string(text) + "'");
}

}  // namespace edr
