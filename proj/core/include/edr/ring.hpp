#pragma once

// Abstract commutative ring interface shared by every ring kind, plus the
// Bezout-gcd contract consumed by the reduction algorithms.

#include "edr/errors.hpp"
#include "edr/integer.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace edr {

class Ring;
using RingHandle = std::shared_ptr<const Ring>;

/// m/den with den > 0, gcd(m, den) = 1 (elements of Z localized at P).
struct Fraction {
  Integer num;
  Integer den;
  friend bool operator==(const Fraction& l, const Fraction& r) {
    return l.num == r.num && l.den == r.den;
  }
};

/// a + b*x with x^2 = 0, a integral and b rational.
struct DualValue {
  Integer a;
  Rational b;
  friend bool operator==(const DualValue& l, const DualValue& r) {
    return l.a == r.a && l.b == r.b;
  }
};

class Element;

/// Kind-specific exact payload. Always canonical: equal ring values have equal
/// payloads.
using Payload = std::variant<Integer,                // Z, Z/n
                             std::vector<Integer>,   // Z[x]/(n, f) coefficients
                             std::vector<Element>,   // direct product
                             std::size_t,            // table ring index
                             Fraction,               // localized Z
                             DualValue>;             // dual integers

class Element {
 public:
  Element() = default;
  Element(RingHandle ring, Payload value);

  const RingHandle& ring() const { return ring_; }
  const Payload& value() const { return value_; }

  template <class T>
  const T& as() const {
    return std::get<T>(value_);
  }

  std::string str() const;

  friend bool operator==(const Element& l, const Element& r);

  friend Element operator+(const Element& a, const Element& b);
  friend Element operator-(const Element& a, const Element& b);
  friend Element operator*(const Element& a, const Element& b);
  friend Element operator-(const Element& a);

 private:
  RingHandle ring_;
  Payload value_;
};

/// d generates aR + bR; a*x + b*y = d; a = a1*d; b = b1*d; a1*u + b1*v = 1.
struct BezoutData {
  Element d, x, y, a1, b1, u, v;
};

struct UnitWitness {
  Element inverse;
};

enum class RingKind { integers, residues, product, poly_quotient, localized, dual_integers, table };

std::string_view to_string(RingKind kind);

class Ring : public std::enable_shared_from_this<Ring> {
 public:
  virtual ~Ring() = default;

  virtual RingKind kind() const = 0;
  // Canonical ring-spec string (round-trips through make_ring where possible).
  virtual std::string spec() const = 0;
  // nullopt for infinite rings.
  virtual std::optional<std::size_t> cardinality() const = 0;
  bool is_finite() const { return cardinality().has_value(); }

  virtual Element zero() const = 0;
  virtual Element one() const = 0;
  virtual Element from_int(long long k) const;

  virtual Element add(const Element& a, const Element& b) const = 0;
  virtual Element neg(const Element& a) const = 0;
  virtual Element mul(const Element& a, const Element& b) const = 0;
  Element sub(const Element& a, const Element& b) const { return add(a, neg(b)); }

  virtual std::optional<Element> inverse(const Element& a) const = 0;
  // Some t with b = a*t, or nullopt when a does not divide b.
  virtual std::optional<Element> quotient(const Element& a, const Element& b) const = 0;

  // Whether bezout() is guaranteed to produce witnesses for this kind.
  virtual bool supports_bezout() const { return true; }
  // Throws NotBezout when no witness exists.
  virtual BezoutData bezout(const Element& a, const Element& b) const = 0;

  // (p, q) with a*p + b*q = 1, or nullopt if aR + bR != R.
  virtual std::optional<std::pair<Element, Element>> comaximal_witness(const Element& a,
                                                                       const Element& b) const;

  // A unit u such that a*u is the canonical associate of a.
  virtual Element normalizing_unit(const Element& a) const;

  virtual Element parse(std::string_view text) const = 0;
  virtual std::string format(const Element& a) const = 0;

  // Enumeration of finite rings; index_of(element_at(i)) == i.
  virtual std::size_t index_of(const Element& a) const;
  virtual Element element_at(std::size_t index) const;

  bool is_zero(const Element& a) const { return a == zero(); }
  bool owns(const Element& a) const { return a.ring().get() == this; }
  void require_owned(const Element& a) const;

  RingHandle handle() const { return shared_from_this(); }

 protected:
  Element make(Payload value) const { return Element(shared_from_this(), std::move(value)); }
};

// Public ring-core operations with membership checks.

enum class ArithOp { add, mul, neg, sub };

Element arith(const Ring& ring, ArithOp op, const Element& a, const Element& b);
std::optional<UnitWitness> is_unit(const Ring& ring, const Element& a);
std::optional<Element> divides(const Ring& ring, const Element& a, const Element& b);
BezoutData bezout_gcd(const Ring& ring, const Element& a, const Element& b);

// Checks the four identities of a BezoutData record by ring arithmetic.
bool bezout_identities_hold(const Ring& ring, const Element& a, const Element& b,
                            const BezoutData& data);

bool comaximal(const Ring& ring, const Element& a, const Element& b);

Element power(const Ring& ring, const Element& a, unsigned long exponent);

}  // namespace edr
