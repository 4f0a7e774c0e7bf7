#include "edr/rings.hpp"

#include <fstream>

namespace edr {

// ---- search-backed finite rings ----

const SearchTables& SearchRing::tables() const {
  std::call_once(once_, [this] { tables_ = build_tables(); });
  return *tables_;
}

std::unique_ptr<SearchTables> SearchRing::build_tables() const {
  return std::make_unique<SearchTables>(*this);
}

std::optional<Element> SearchRing::inverse(const Element& a) const {
  auto t = tables().inverse(static_cast<Index>(index_of(a)));
  if (!t) return std::nullopt;
  return element_at(*t);
}

std::optional<Element> SearchRing::quotient(const Element& a, const Element& b) const {
  auto t = tables().quotient(static_cast<Index>(index_of(a)), static_cast<Index>(index_of(b)));
  if (!t) return std::nullopt;
  return element_at(*t);
}

BezoutData SearchRing::bezout(const Element& a, const Element& b) const {
  auto g = tables().bezout(static_cast<Index>(index_of(a)), static_cast<Index>(index_of(b)));
  if (!g)
    throw NotBezout("no Bezout witness for (" + format(a) + ", " + format(b) + ") in " + spec());
  return {element_at(g->d),  element_at(g->x), element_at(g->y), element_at(g->a1),
          element_at(g->b1), element_at(g->u), element_at(g->v)};
}

std::optional<std::pair<Element, Element>> SearchRing::comaximal_witness(const Element& a,
                                                                         const Element& b) const {
  auto w = tables().comaximal_witness(static_cast<Index>(index_of(a)), static_cast<Index>(index_of(b)));
  if (!w) return std::nullopt;
  return std::make_pair(element_at(w->first), element_at(w->second));
}

// Least-index associate.
Element SearchRing::normalizing_unit(const Element& a) const {
  const auto& t = tables();
  Index ia = static_cast<Index>(index_of(a));
  Index best_u = t.one(), best = t.mul(ia, t.one());
  for (Index u = 0; u < t.size(); ++u) {
    if (!t.principal_ideal(u).test(t.one())) continue;
    Index m = t.mul(ia, u);
    if (m < best) {
      best = m;
      best_u = u;
    }
  }
  return element_at(best_u);
}

// ---- table rings ----

TableRingData parse_table_ring(const nlohmann::json& doc) {
  try {
    TableRingData d;
    d.size = doc.at("size").get<std::size_t>();
    d.add = doc.at("add").get<std::vector<std::vector<std::size_t>>>();
    d.mul = doc.at("mul").get<std::vector<std::vector<std::size_t>>>();
    d.zero = doc.at("zero").get<std::size_t>();
    d.one = doc.at("one").get<std::size_t>();
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed table ring: ") + e.what());
  }
}

nlohmann::json table_ring_json(const TableRingData& d) {
  return {{"size", d.size}, {"add", d.add}, {"mul", d.mul}, {"zero", d.zero}, {"one", d.one}};
}

TableRing::TableRing(const TableRingData& d, std::string spec, std::vector<std::string> labels)
    : n_(d.size), zero_(0), one_(0), spec_(std::move(spec)), labels_(std::move(labels)) {
  const std::size_t n = n_;
  if (n == 0) throw AxiomViolation("table ring must be nonempty");
  if (d.add.size() != n || d.mul.size() != n) throw AxiomViolation("table dimensions differ from size");
  if (d.zero >= n || d.one >= n) throw AxiomViolation("zero/one index out of range");
  if (!labels_.empty() && labels_.size() != n) throw AxiomViolation("label count differs from size");
  add_.resize(n * n);
  mul_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (d.add[i].size() != n || d.mul[i].size() != n) throw AxiomViolation("table row has wrong length");
    for (std::size_t j = 0; j < n; ++j) {
      if (d.add[i][j] >= n || d.mul[i][j] >= n) throw AxiomViolation("table entry out of range");
      add_[i * n + j] = static_cast<Index>(d.add[i][j]);
      mul_[i * n + j] = static_cast<Index>(d.mul[i][j]);
    }
  }
  zero_ = static_cast<Index>(d.zero);
  one_ = static_cast<Index>(d.one);
  auto A = [&](std::size_t a, std::size_t b) { return std::size_t(add_[a * n + b]); };
  auto M = [&](std::size_t a, std::size_t b) { return std::size_t(mul_[a * n + b]); };
  auto fail = [](const std::string& what, std::size_t a, std::size_t b, std::size_t c) {
    throw AxiomViolation(what + " fails at (" + std::to_string(a) + ", " + std::to_string(b) + ", " +
                         std::to_string(c) + ")");
  };
  neg_.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    if (A(a, zero_) != a) fail("additive identity", a, zero_, 0);
    if (M(a, one_) != a) fail("multiplicative identity", a, one_, 0);
    bool has_neg = false;
    for (std::size_t b = 0; b < n; ++b) {
      if (A(a, b) != A(b, a)) fail("additive commutativity", a, b, 0);
      if (M(a, b) != M(b, a)) fail("multiplicative commutativity", a, b, 0);
      if (A(a, b) == zero_ && !has_neg) {
        neg_[a] = static_cast<Index>(b);
        has_neg = true;
      }
      for (std::size_t c = 0; c < n; ++c) {
        if (A(A(a, b), c) != A(a, A(b, c))) fail("additive associativity", a, b, c);
        if (M(M(a, b), c) != M(a, M(b, c))) fail("multiplicative associativity", a, b, c);
        if (M(a, A(b, c)) != A(M(a, b), M(a, c))) fail("distributivity", a, b, c);
      }
    }
    if (!has_neg) fail("additive inverse", a, 0, 0);
  }
}

TableRingData TableRing::data() const {
  TableRingData d;
  d.size = n_;
  d.add.assign(n_, std::vector<std::size_t>(n_));
  d.mul.assign(n_, std::vector<std::size_t>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      d.add[i][j] = add_[i * n_ + j];
      d.mul[i][j] = mul_[i * n_ + j];
    }
  d.zero = zero_;
  d.one = one_;
  return d;
}

std::unique_ptr<SearchTables> TableRing::build_tables() const {
  return std::make_unique<SearchTables>(n_, add_, mul_, zero_, one_);
}

Element TableRing::zero() const { return make(std::size_t(zero_)); }
Element TableRing::one() const { return make(std::size_t(one_)); }
Element TableRing::add(const Element& a, const Element& b) const {
  return make(std::size_t(add_[a.as<std::size_t>() * n_ + b.as<std::size_t>()]));
}
Element TableRing::neg(const Element& a) const { return make(std::size_t(neg_[a.as<std::size_t>()])); }
Element TableRing::mul(const Element& a, const Element& b) const {
  return make(std::size_t(mul_[a.as<std::size_t>() * n_ + b.as<std::size_t>()]));
}

Element TableRing::parse(std::string_view text) const {
  text = trim(text);
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == text) return make(i);
  if (!text.empty() && text.front() == '#') text.remove_prefix(1);
  Integer v = parse_integer(text);
  if (v < 0 || v >= static_cast<unsigned long>(n_))
    throw ParseError("table element '" + std::string(text) + "' out of range");
  return make(std::size_t(v.get_ui()));
}

std::string TableRing::format(const Element& a) const {
  auto i = a.as<std::size_t>();
  return labels_.empty() ? std::to_string(i) : labels_[i];
}

std::size_t TableRing::index_of(const Element& a) const { return a.as<std::size_t>(); }
Element TableRing::element_at(std::size_t index) const { return make(index); }

RingHandle make_table_ring(const TableRingData& data, std::string spec, std::vector<std::string> labels) {
  return std::make_shared<TableRing>(data, std::move(spec), std::move(labels));
}

RingHandle load_table_ring(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open table ring file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid JSON in " + path.string() + ": " + e.what());
  }
  std::vector<std::string> labels;
  if (doc.contains("labels")) labels = doc["labels"].get<std::vector<std::string>>();
  return make_table_ring(parse_table_ring(doc), "table:" + path.string(), std::move(labels));
}

TableRingData tabulate(const Ring& ring, std::size_t bound) {
  SearchTables t(ring, bound);
  TableRingData d;
  d.size = t.size();
  d.add.assign(d.size, std::vector<std::size_t>(d.size));
  d.mul.assign(d.size, std::vector<std::size_t>(d.size));
  for (Index i = 0; i < d.size; ++i)
    for (Index j = 0; j < d.size; ++j) {
      d.add[i][j] = t.add(i, j);
      d.mul[i][j] = t.mul(i, j);
    }
  d.zero = t.zero();
  d.one = t.one();
  return d;
}

RingHandle nonbezout8_ring() {
  // a + b u + c v over F2 at index a + 2b + 4c; u^2 = uv = v^2 = 0.
  TableRingData d;
  d.size = 8;
  d.add.assign(8, std::vector<std::size_t>(8));
  d.mul.assign(8, std::vector<std::size_t>(8));
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      std::size_t a1 = i & 1, b1 = (i >> 1) & 1, c1 = (i >> 2) & 1;
      std::size_t a2 = j & 1, b2 = (j >> 1) & 1, c2 = (j >> 2) & 1;
      d.add[i][j] = i ^ j;
      std::size_t a = a1 & a2, b = (a1 & b2) ^ (b1 & a2), c = (a1 & c2) ^ (c1 & a2);
      d.mul[i][j] = a | (b << 1) | (c << 2);
    }
  d.zero = 0;
  d.one = 1;
  return make_table_ring(d, "table:builtin/nonbezout8",
                         {"0", "1", "u", "1+u", "v", "1+v", "u+v", "1+u+v"});
}

// ---- quotients ----

Element QuotientMap::project(const Element& a) const {
  source->require_owned(a);
  return target->element_at(projection[source->index_of(a)]);
}

QuotientMap quotient_ring(const RingHandle& ring, const std::vector<Element>& gens) {
  if (!ring->is_finite()) throw Unsupported("quotients are only materialized for finite rings");
  std::unique_ptr<SearchTables> own;
  const SearchTables* t;
  if (auto sr = dynamic_cast<const SearchRing*>(ring.get())) {
    t = &sr->tables();
  } else {
    own = std::make_unique<SearchTables>(*ring);
    t = own.get();
  }
  const std::size_t n = t->size();
  ElementSet ideal(n);
  ideal.set(t->zero());
  std::string spec = "quot(" + ring->spec();
  for (const auto& g : gens) {
    ring->require_owned(g);
    ideal = t->ideal_sum(ideal, t->principal_ideal(static_cast<Index>(ring->index_of(g))));
    spec += "," + ring->format(g);
  }
  spec += ")";

  constexpr std::size_t unassigned = static_cast<std::size_t>(-1);
  std::vector<std::size_t> proj(n, unassigned);
  std::vector<Index> reps;
  for (Index x = 0; x < n; ++x) {
    if (proj[x] != unassigned) continue;
    std::size_t cls = reps.size();
    reps.push_back(x);
    for (auto i = ideal.find_first(); i != ElementSet::npos; i = ideal.find_next(i))
      proj[t->add(x, static_cast<Index>(i))] = cls;
  }
  const std::size_t k = reps.size();
  TableRingData d;
  d.size = k;
  d.add.assign(k, std::vector<std::size_t>(k));
  d.mul.assign(k, std::vector<std::size_t>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      d.add[i][j] = proj[t->add(reps[i], reps[j])];
      d.mul[i][j] = proj[t->mul(reps[i], reps[j])];
    }
  d.zero = proj[t->zero()];
  d.one = proj[t->one()];
  std::vector<std::string> labels;
  labels.reserve(k);
  for (Index r : reps) labels.push_back(ring->format(ring->element_at(r)));

  QuotientMap q;
  q.source = ring;
  q.target = make_table_ring(d, spec, std::move(labels));
  q.projection = std::move(proj);
  for (auto i = ideal.find_first(); i != ElementSet::npos; i = ideal.find_next(i)) q.ideal.push_back(i);
  return q;
}

// ---- residue map of Z localized at P ----

ResidueMap::ResidueMap(RingHandle localized) : source_(std::move(localized)) {
  auto loc = dynamic_cast<const LocalizedRing*>(source_.get());
  if (!loc) throw Unsupported("residue map needs a zloc ring");
  std::vector<RingHandle> fields;
  for (const auto& p : loc->primes()) fields.push_back(std::make_shared<ResidueRing>(p));
  target_ = fields.size() == 1 ? fields.front() : RingHandle(std::make_shared<ProductRing>(fields));
}

Element ResidueMap::operator()(const Element& a) const {
  source_->require_owned(a);
  const auto& f = a.as<Fraction>();
  auto loc = static_cast<const LocalizedRing*>(source_.get());
  std::vector<Element> parts;
  for (const auto& p : loc->primes()) {
    Integer inv;
    mpz_invert(inv.get_mpz_t(), f.den.get_mpz_t(), p.get_mpz_t());
    parts.push_back(std::make_shared<ResidueRing>(p)->residue(f.num * inv));
  }
  if (parts.size() == 1) {
    return static_cast<const ResidueRing&>(*target_).residue(parts.front().as<Integer>());
  }
  auto& prod = static_cast<const ProductRing&>(*target_);
  std::vector<Element> own;
  for (std::size_t i = 0; i < parts.size(); ++i)
    own.push_back(static_cast<const ResidueRing&>(*prod.factors()[i]).residue(parts[i].as<Integer>()));
  return prod.tuple(std::move(own));
}

Element ResidueMap::lift(const Element& image) const {
  target_->require_owned(image);
  auto loc = static_cast<const LocalizedRing*>(source_.get());
  const auto& primes = loc->primes();
  Integer value = 0, modulus = 1;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const Integer& c = primes.size() == 1 ? image.as<Integer>()
                                          : image.as<std::vector<Element>>()[i].as<Integer>();
    // value + modulus * k == c (mod p)
    Integer inv;
    mpz_invert(inv.get_mpz_t(), modulus.get_mpz_t(), primes[i].get_mpz_t());
    Integer k = mod_nonneg(Integer((c - value) * inv), primes[i]);
    value += modulus * k;
    modulus *= primes[i];
  }
  return loc->fraction(value, 1);
}

ResidueMap localized_residue_map(const RingHandle& ring) { return ResidueMap(ring); }

}  // namespace edr
