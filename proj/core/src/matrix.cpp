#include "edr/matrix.hpp"

#include "edr/engine.hpp"
#include "edr/rings.hpp"

#include <array>

namespace edr {

using nlohmann::json;

// ---- RingMatrix ----

RingMatrix::RingMatrix(RingHandle ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(rows * cols, ring_->zero()) {}

RingMatrix::RingMatrix(RingHandle ring, std::size_t rows, std::size_t cols, std::vector<Element> entries)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) throw ParseError("matrix entry count does not match its shape");
  for (const auto& e : entries_) ring_->require_owned(e);
}

RingMatrix RingMatrix::identity(RingHandle ring, std::size_t n) {
  RingMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = ring->one();
  return m;
}

RingMatrix RingMatrix::parse(RingHandle ring, const std::vector<std::vector<std::string>>& rows) {
  if (rows.empty() || rows.front().empty()) throw ParseError("matrix needs at least one row and column");
  std::vector<Element> entries;
  for (const auto& row : rows) {
    if (row.size() != rows.front().size()) throw ParseError("ragged matrix rows");
    for (const auto& s : row) entries.push_back(ring->parse(s));
  }
  return RingMatrix(ring, rows.size(), rows.front().size(), std::move(entries));
}

RingMatrix RingMatrix::operator*(const RingMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix shapes do not compose");
  const Ring& R = *ring_;
  RingMatrix out(ring_, rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < rhs.cols_; ++j) {
      Element acc = R.zero();
      for (std::size_t k = 0; k < cols_; ++k) acc = R.add(acc, R.mul(at(i, k), rhs.at(k, j)));
      out.at(i, j) = acc;
    }
  return out;
}

bool operator==(const RingMatrix& l, const RingMatrix& r) {
  return l.rows_ == r.rows_ && l.cols_ == r.cols_ && l.entries_ == r.entries_;
}

bool RingMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? ring_->one() : ring_->zero())) return false;
  return true;
}

json RingMatrix::rows_json() const {
  json rows = json::array();
  for (std::size_t i = 0; i < rows_; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < cols_; ++j) row.push_back(ring_->format(at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

// ---- strategies ----

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::euclidean_Z: return "euclidean_Z";
    case Strategy::finite_search: return "finite_search";
    case Strategy::zloc_structural: return "zloc_structural";
  }
  return "finite_search";
}

Strategy parse_strategy(std::string_view text) {
  if (text == "euclidean_Z") return Strategy::euclidean_Z;
  if (text == "finite_search") return Strategy::finite_search;
  if (text == "zloc_structural") return Strategy::zloc_structural;
  throw ParseError("unknown strategy '" + std::string(text) + "'");
}

Strategy default_strategy(const Ring& ring) {
  if (ring.kind() == RingKind::integers) return Strategy::euclidean_Z;
  if (ring.kind() == RingKind::localized) return Strategy::zloc_structural;
  return Strategy::finite_search;
}

// ---- 2x2 building blocks ----

namespace {

using Block = std::array<Element, 4>;  // row-major 2x2

RingMatrix block_matrix(const RingHandle& ring, const Block& b) {
  return RingMatrix(ring, 2, 2, {b[0], b[1], b[2], b[3]});
}

}  // namespace

RingMatrix swap_matrix(const RingHandle& ring) {
  return block_matrix(ring, {ring->zero(), ring->one(), ring->one(), ring->zero()});
}

HermiteStep hermite_step(const RingHandle& ring, const Element& a, const Element& b) {
  const Ring& R = *ring;
  R.require_owned(a);
  R.require_owned(b);
  BezoutData bd = R.bezout(a, b);
  // det = u*a1 + v*b1 = 1
  HermiteStep h;
  h.d = bd.d;
  h.Q = block_matrix(ring, {bd.u, R.neg(bd.b1), bd.v, bd.a1});
  h.Qinv = block_matrix(ring, {bd.a1, bd.b1, R.neg(bd.v), bd.u});
  return h;
}

ReductionCertificate lemma37_reduce(const RingHandle& ring, const Element& a, const Element& b,
                                    const Element& c, const Element& r) {
  const Ring& R = *ring;
  for (const auto* e : {&a, &b, &c, &r}) R.require_owned(*e);
  Element bar = R.add(b, R.mul(a, r));
  auto xy = R.comaximal_witness(bar, c);
  if (!xy) throw NotComaximal(R.format(bar) + " and " + R.format(c) + " are not comaximal");
  const Element& x = xy->first;
  const Element& y = xy->second;
  Element ax = R.mul(a, x);
  Element one = R.one(), zero = R.zero();
  ReductionCertificate cert;
  cert.P = block_matrix(ring, {x, y, R.neg(c), bar});
  cert.Pinv = block_matrix(ring, {bar, R.neg(y), c, x});
  // [[1, r], [0, 1]] [[1, 0], [-ax, 1]] [[0, 1], [1, 0]]
  cert.Q = block_matrix(ring, {r, R.sub(one, R.mul(r, ax)), one, R.neg(ax)});
  cert.Qinv = block_matrix(ring, {ax, R.sub(one, R.mul(ax, r)), one, R.neg(r)});
  cert.D = block_matrix(ring, {one, zero, zero, R.neg(R.mul(a, c))});
  return cert;
}

Element solve_reduction_residue(const RingHandle& ring, const Element& a, const Element& b, const Element& c,
                                ResidueStrategy strategy) {
  const Ring& R = *ring;
  auto card = R.cardinality();
  if (!card) throw Unsupported("residue search needs a finite ring");
  if (strategy == ResidueStrategy::direct) {
    for (std::size_t i = 0; i < *card; ++i) {
      Element r = R.element_at(i);
      if (comaximal(R, R.add(b, R.mul(a, r)), c)) return r;
    }
    throw NoResidue("no r makes b + a r comaximal with c");
  }
  // R/cR has stable range one: find y with b + a y a unit there, then lift.
  QuotientMap q = quotient_ring(ring, {c});
  const Ring& Rc = *q.target;
  Element ab = q.project(a), bb = q.project(b);
  for (std::size_t i = 0; i < *card; ++i) {
    Element r = R.element_at(i);
    if (!Rc.inverse(Rc.add(bb, Rc.mul(ab, q.project(r))))) continue;
    if (!comaximal(R, R.add(b, R.mul(a, r)), c)) throw std::logic_error("lifted residue not comaximal");
    return r;
  }
  throw NoResidue("no y makes b + a y a unit modulo c");
}

// ---- the two steps of the reduction pipeline ----

namespace {

struct Triple {
  Index x, y, z;
};

std::optional<Triple> unit_combination(const EngineCache& c, Index a, Index b, Index cc) {
  for (Index x = 0; x < c.size(); ++x)
    for (Index y = 0; y < c.size(); ++y) {
      Index rest = c.sub(c.one(), c.add(c.mul(a, x), c.mul(b, y)));
      if (!c.principal(cc).test(rest)) continue;
      if (auto z = c.tables().quotient(cc, rest)) return Triple{x, y, *z};
    }
  return std::nullopt;
}

}  // namespace

RowShortening theorem38_step1(const RingHandle& ring, const Element& a, const Element& b, const Element& c) {
  return theorem38_step1(*EngineCache::build(ring), a, b, c);
}

RowShortening theorem38_step1(const EngineCache& C, const Element& ea, const Element& eb, const Element& ec) {
  Index a = C.index(ea), b = C.index(eb), c = C.index(ec);
  auto t = unit_combination(C, a, b, c);
  if (!t) throw NotComaximal("row is not comaximal");
  const auto& fa = C.adequate_set(AdequacyVariant::feckly);
  for (Index k = 0; k < C.size(); ++k) {
    Index w = C.add(a, C.mul(C.add(C.mul(b, t->y), C.mul(c, t->z)), k));
    if (!fa.test(w)) continue;
    Index m = C.sub(C.one(), C.mul(k, t->x));
    Index czm = C.mul(C.mul(c, t->z), m);
    for (Index h = 0; h < C.size(); ++h) {
      Index first = C.add(b, C.mul(czm, h));
      if (!C.comaximal(first, w)) continue;
      Index inner = C.sub(C.one(), C.mul(C.mul(m, h), t->y));
      Index second = C.add(a, C.mul(C.mul(C.mul(c, t->z), k), inner));
      RowShortening out{C.element(t->x), C.element(t->y), C.element(t->z), C.element(k), C.element(h),
                        C.element(w),    C.element(first), C.element(second)};
      return out;
    }
  }
  throw NoResidue("no feckly adequate a + (b y + c z) k with a comaximal partner");
}

namespace {

ReductionCertificate compose(const RingMatrix& L, const RingMatrix& Linv, const ReductionCertificate& inner,
                             const RingMatrix& Rm, const RingMatrix& Rinv) {
  // inner.P * (L A Rm) * inner.Q = D
  return {inner.P * L, Linv * inner.Pinv, inner.D, Rm * inner.Q, inner.Qinv * Rinv};
}

}  // namespace

StepTwoTrace theorem38_step2(const RingHandle& ring, const Element& a, const Element& b, const Element& c) {
  return theorem38_step2(*EngineCache::build(ring), a, b, c);
}

StepTwoTrace theorem38_step2(const EngineCache& C, const Element& ea, const Element& eb, const Element& ec) {
  const RingHandle& ring = C.ring();
  const Ring& R = *ring;
  Index a = C.index(ea), b = C.index(eb), c = C.index(ec);
  auto t = unit_combination(C, a, b, c);
  if (!t) throw NotComaximal("entries do not generate the unit ideal");
  const auto& fa = C.adequate_set(AdequacyVariant::feckly);
  Index xa = C.mul(t->x, a), zc = C.mul(t->z, c);
  std::optional<std::pair<Index, Index>> st;
  for (Index s = 0; s < C.size() && !st; ++s)
    for (Index u = 0; u < C.size() && !st; ++u)
      if (fa.test(C.add(b, C.add(C.mul(xa, s), C.mul(zc, u))))) st = std::make_pair(s, u);
  if (!st) throw NoResidue("no feckly adequate b' + a'xs + c'zt");

  StepTwoTrace tr;
  tr.x = C.element(t->x);
  tr.y = C.element(t->y);
  tr.z = C.element(t->z);
  tr.s = C.element(st->first);
  tr.t = C.element(st->second);
  Index w = C.add(b, C.add(C.mul(xa, st->first), C.mul(zc, st->second)));
  tr.w = C.element(w);

  Element one = R.one(), zero = R.zero();
  Element xs = C.element(C.mul(t->x, st->first)), zt = C.element(C.mul(t->z, st->second));
  RingMatrix L = block_matrix(ring, {one, zero, xs, one});
  RingMatrix Linv = block_matrix(ring, {one, zero, R.neg(xs), one});
  RingMatrix Rm = block_matrix(ring, {one, zero, zt, one});
  RingMatrix Rinv = block_matrix(ring, {one, zero, R.neg(zt), one});

  // (w c') H = (d 0); swapping the columns gives (0 d).
  HermiteStep h = hermite_step(ring, tr.w, ec);
  RingMatrix S = swap_matrix(ring);
  RingMatrix H = h.Q * S, Hinv = S * h.Qinv;
  RingMatrix tri = block_matrix(ring, {ea, zero, tr.w, ec}) * H;
  if (tri.at(1, 0) != zero) throw std::logic_error("Hermite column did not clear");
  tr.a = tri.at(0, 0);
  tr.b = tri.at(0, 1);
  tr.c = tri.at(1, 1);
  Index ai = C.index(tr.a), bi = C.index(tr.b), ci = C.index(tr.c);
  std::optional<Index> r;
  for (Index k = 0; k < C.size() && !r; ++k)
    if (C.comaximal(C.add(bi, C.mul(ai, k)), ci)) r = k;
  if (!r) throw NoResidue("no r makes b + a r comaximal with c");
  tr.r = C.element(*r);
  auto inner = lemma37_reduce(ring, tr.a, tr.b, tr.c, tr.r);
  tr.certificate = compose(L, Linv, inner, Rm * H, Hinv * Rinv);
  return tr;
}

// ---- general reduction ----

namespace {

class Reducer {
 public:
  Reducer(const RingMatrix& A, Strategy strategy)
      : ring_(A.ring()),
        R(*ring_),
        strategy_(strategy),
        D(A),
        P(RingMatrix::identity(ring_, A.rows())),
        Pinv(P),
        Q(RingMatrix::identity(ring_, A.cols())),
        Qinv(Q) {}

  ReductionCertificate run() {
    const std::size_t m = D.rows(), n = D.cols();
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
      if (!choose_pivot(t)) break;
      std::size_t guard = 0;
      while (true) {
        if (++guard > 100000) throw ReductionFailed("reduction made no progress", block_json(t, t, t));
        clear_column(t);
        clear_row(t);
        if (!column_clear(t)) continue;
        auto bad = non_dividing(t);
        if (!bad) break;
        fix_divisibility(t, bad->first, bad->second);
      }
    }
    normalize();
    return {P, Pinv, D, Q, Qinv};
  }

 private:
  // E acts on rows (i, k) of D and P, E^-1 on columns (i, k) of Pinv.
  void left(std::size_t i, std::size_t k, const Block& E, const Block& Einv) {
    row_op(D, i, k, E);
    row_op(P, i, k, E);
    col_op(Pinv, i, k, Einv);
  }
  void right(std::size_t j, std::size_t l, const Block& F, const Block& Finv) {
    col_op(D, j, l, F);
    col_op(Q, j, l, F);
    row_op(Qinv, j, l, Finv);
  }
  void row_op(RingMatrix& M, std::size_t i, std::size_t k, const Block& E) {
    for (std::size_t c = 0; c < M.cols(); ++c) {
      Element x = M.at(i, c), y = M.at(k, c);
      M.at(i, c) = R.add(R.mul(E[0], x), R.mul(E[1], y));
      M.at(k, c) = R.add(R.mul(E[2], x), R.mul(E[3], y));
    }
  }
  void col_op(RingMatrix& M, std::size_t j, std::size_t l, const Block& F) {
    for (std::size_t r = 0; r < M.rows(); ++r) {
      Element x = M.at(r, j), y = M.at(r, l);
      M.at(r, j) = R.add(R.mul(x, F[0]), R.mul(y, F[2]));
      M.at(r, l) = R.add(R.mul(x, F[1]), R.mul(y, F[3]));
    }
  }
  Block swap_block() const { return {R.zero(), R.one(), R.one(), R.zero()}; }
  void swap_rows(std::size_t i, std::size_t k) {
    if (i != k) left(i, k, swap_block(), swap_block());
  }
  void swap_cols(std::size_t j, std::size_t l) {
    if (j != l) right(j, l, swap_block(), swap_block());
  }
  // row k -= q row i
  void subtract_row(std::size_t i, std::size_t k, const Element& q) {
    left(i, k, {R.one(), R.zero(), R.neg(q), R.one()}, {R.one(), R.zero(), q, R.one()});
  }
  // col l -= q col j
  void subtract_col(std::size_t j, std::size_t l, const Element& q) {
    right(j, l, {R.one(), R.neg(q), R.zero(), R.one()}, {R.one(), q, R.zero(), R.one()});
  }

  BezoutData bezout(std::size_t t, std::size_t i, std::size_t j, const Element& p, const Element& q) {
    try {
      return R.bezout(p, q);
    } catch (const NotBezout& e) {
      json w = block_json(t, i, j);
      w["pair"] = {R.format(p), R.format(q)};
      w["reason"] = e.what();
      throw ReductionFailed("no principal generator for the ideal (" + R.format(p) + ", " + R.format(q) + ")",
                            w);
    }
  }

  // The 2x2 block on rows (t, i) and cols (t, j); a single row or column
  // pair is padded with zeros.
  json block_json(std::size_t t, std::size_t i, std::size_t j) const {
    auto f = [&](std::size_t r, std::size_t c) { return R.format(D.at(r, c)); };
    std::string z = R.format(R.zero());
    auto row = [](std::string a, std::string b) { return json::array({std::move(a), std::move(b)}); };
    json rows;
    if (i == t && j != t) {
      rows = json::array({row(f(t, t), f(t, j)), row(z, z)});
    } else if (j == t && i != t) {
      rows = json::array({row(f(t, t), z), row(f(i, t), z)});
    } else {
      rows = json::array({row(f(t, t), f(t, j)), row(f(i, t), f(i, j))});
    }
    return {{"block", rows}, {"rows", json::array({t, i})}, {"cols", json::array({t, j})}, {"matrix", D.rows_json()}};
  }

  // Integers: |v|; localizations: the P-part of the numerator.
  Integer size_key(const Element& e) const {
    if (strategy_ == Strategy::euclidean_Z) return abs(e.as<Integer>());
    if (strategy_ == Strategy::zloc_structural)
      return static_cast<const LocalizedRing&>(R).prime_part(e);
    return 0;
  }

  bool choose_pivot(std::size_t t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Integer best_key;
    for (std::size_t i = t; i < D.rows(); ++i)
      for (std::size_t j = t; j < D.cols(); ++j) {
        if (R.is_zero(D.at(i, j))) continue;
        Integer key = size_key(D.at(i, j));
        if (!best || key < best_key) {
          best = std::make_pair(i, j);
          best_key = key;
        }
        if (strategy_ == Strategy::finite_search) break;
      }
    if (!best) return false;
    swap_rows(t, best->first);
    swap_cols(t, best->second);
    return true;
  }

  bool column_clear(std::size_t t) const {
    for (std::size_t i = t + 1; i < D.rows(); ++i)
      if (!R.is_zero(D.at(i, t))) return false;
    return true;
  }
  bool row_clear(std::size_t t) const {
    for (std::size_t j = t + 1; j < D.cols(); ++j)
      if (!R.is_zero(D.at(t, j))) return false;
    return true;
  }

  Integer floor_quotient(const Element& num, const Element& den) const {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), num.as<Integer>().get_mpz_t(), den.as<Integer>().get_mpz_t());
    return q;
  }

  void clear_column(std::size_t t) {
    if (strategy_ == Strategy::euclidean_Z) {
      while (!column_clear(t)) {
        for (std::size_t i = t + 1; i < D.rows(); ++i)
          if (!R.is_zero(D.at(i, t)) && !R.is_zero(D.at(t, t)))
            subtract_row(t, i, R.parse(floor_quotient(D.at(i, t), D.at(t, t)).get_str()));
        std::size_t best = t;
        for (std::size_t i = t + 1; i < D.rows(); ++i)
          if (!R.is_zero(D.at(i, t)) &&
              (R.is_zero(D.at(best, t)) || size_key(D.at(i, t)) < size_key(D.at(best, t))))
            best = i;
        swap_rows(t, best);
      }
      return;
    }
    for (std::size_t i = t + 1; i < D.rows(); ++i) {
      const Element q = D.at(i, t);
      if (R.is_zero(q)) continue;
      const Element p = D.at(t, t);
      if (auto k = R.quotient(p, q)) {
        subtract_row(t, i, *k);
        continue;
      }
      BezoutData bd = bezout(t, i, t, p, q);
      left(t, i, {bd.u, bd.v, R.neg(bd.b1), bd.a1}, {bd.a1, R.neg(bd.v), bd.b1, bd.u});
    }
  }

  void clear_row(std::size_t t) {
    if (strategy_ == Strategy::euclidean_Z) {
      while (!row_clear(t)) {
        for (std::size_t j = t + 1; j < D.cols(); ++j)
          if (!R.is_zero(D.at(t, j)) && !R.is_zero(D.at(t, t)))
            subtract_col(t, j, R.parse(floor_quotient(D.at(t, j), D.at(t, t)).get_str()));
        std::size_t best = t;
        for (std::size_t j = t + 1; j < D.cols(); ++j)
          if (!R.is_zero(D.at(t, j)) &&
              (R.is_zero(D.at(t, best)) || size_key(D.at(t, j)) < size_key(D.at(t, best))))
            best = j;
        swap_cols(t, best);
      }
      return;
    }
    for (std::size_t j = t + 1; j < D.cols(); ++j) {
      const Element q = D.at(t, j);
      if (R.is_zero(q)) continue;
      const Element p = D.at(t, t);
      if (auto k = R.quotient(p, q)) {
        subtract_col(t, j, *k);
        continue;
      }
      BezoutData bd = bezout(t, t, j, p, q);
      right(t, j, {bd.u, R.neg(bd.b1), bd.v, bd.a1}, {bd.a1, bd.b1, R.neg(bd.v), bd.u});
    }
  }

  std::optional<std::pair<std::size_t, std::size_t>> non_dividing(std::size_t t) const {
    const Element& p = D.at(t, t);
    for (std::size_t i = t + 1; i < D.rows(); ++i)
      for (std::size_t j = t + 1; j < D.cols(); ++j)
        if (!R.quotient(p, D.at(i, j))) return std::make_pair(i, j);
    return std::nullopt;
  }

  void fix_divisibility(std::size_t t, std::size_t i, std::size_t j) {
    if (strategy_ == Strategy::euclidean_Z) {
      // row t += row i brings the offending entry into the pivot row.
      left(t, i, {R.one(), R.one(), R.zero(), R.one()}, {R.one(), R.neg(R.one()), R.zero(), R.one()});
      return;
    }
    // The block on rows (t, i), cols (t, j) is g * diag(p1, q1) with p1, q1
    // comaximal. Swapping gives the triangular g * [[q1, 0], [0, p1]], which
    // the 2x2 kernel sends to diag(g, -g p1 q1).
    const Element p = D.at(t, t), q = D.at(i, j);
    BezoutData bd = bezout(t, i, j, p, q);
    swap_rows(t, i);
    swap_cols(t, j);
    Element r;
    if (strategy_ == Strategy::finite_search) {
      r = solve_reduction_residue(ring_, bd.b1, R.zero(), bd.a1);
    } else {
      r = bd.v;  // q1 v + p1 u = 1
    }
    auto cert = lemma37_reduce(ring_, bd.b1, R.zero(), bd.a1, r);
    const auto& E = cert.P.entries();
    const auto& Ei = cert.Pinv.entries();
    const auto& F = cert.Q.entries();
    const auto& Fi = cert.Qinv.entries();
    left(t, i, {E[0], E[1], E[2], E[3]}, {Ei[0], Ei[1], Ei[2], Ei[3]});
    right(t, j, {F[0], F[1], F[2], F[3]}, {Fi[0], Fi[1], Fi[2], Fi[3]});
  }

  void normalize() {
    for (std::size_t t = 0; t < std::min(D.rows(), D.cols()); ++t) {
      const Element d = D.at(t, t);
      if (R.is_zero(d)) continue;
      Element u = R.normalizing_unit(d);
      if (u == R.one()) continue;
      Element uinv = *R.inverse(u);
      for (std::size_t c = 0; c < D.cols(); ++c) D.at(t, c) = R.mul(u, D.at(t, c));
      for (std::size_t c = 0; c < P.cols(); ++c) P.at(t, c) = R.mul(u, P.at(t, c));
      for (std::size_t r = 0; r < Pinv.rows(); ++r) Pinv.at(r, t) = R.mul(Pinv.at(r, t), uinv);
    }
  }

  RingHandle ring_;
  const Ring& R;
  Strategy strategy_;
  RingMatrix D, P, Pinv, Q, Qinv;
};

}  // namespace

ReductionCertificate diagonal_reduce(const RingMatrix& A, Strategy strategy) {
  const Ring& R = *A.ring();
  switch (strategy) {
    case Strategy::euclidean_Z:
      if (R.kind() != RingKind::integers) throw Unsupported("euclidean_Z needs the ring Z, got " + R.spec());
      break;
    case Strategy::zloc_structural:
      if (R.kind() != RingKind::localized)
        throw Unsupported("zloc_structural needs a localization of Z, got " + R.spec());
      break;
    case Strategy::finite_search:
      if (!R.is_finite()) throw Unsupported("finite_search needs a finite ring, got " + R.spec());
      break;
  }
  return Reducer(A, strategy).run();
}

// ---- verification ----

PropertyResult verify_certificate(const RingMatrix& A, const ReductionCertificate& cert) {
  const Ring& R = *A.ring();
  PropertyResult res{"certificate", false, json(), json(), ""};
  auto fail = [&](std::string what, json where) {
    res.note = std::move(what);
    res.counterexample = std::move(where);
    return res;
  };
  const std::size_t m = A.rows(), n = A.cols();
  auto shaped = [](const RingMatrix& M, std::size_t r, std::size_t c) { return M.rows() == r && M.cols() == c; };
  if (!shaped(cert.P, m, m) || !shaped(cert.Pinv, m, m) || !shaped(cert.Q, n, n) || !shaped(cert.Qinv, n, n) ||
      !shaped(cert.D, m, n))
    return fail("dimensions", json::object());
  if (!(cert.P * cert.Pinv).is_identity() || !(cert.Pinv * cert.P).is_identity())
    return fail("P invertibility", json::object());
  if (!(cert.Q * cert.Qinv).is_identity() || !(cert.Qinv * cert.Q).is_identity())
    return fail("Q invertibility", json::object());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && !R.is_zero(cert.D.at(i, j))) return fail("diagonal", {{"row", i}, {"col", j}});
  for (std::size_t k = 1; k < std::min(m, n); ++k)
    if (!R.quotient(cert.D.at(k - 1, k - 1), cert.D.at(k, k)))
      return fail("divisibility chain", {{"index", k}});
  RingMatrix prod = cert.P * A * cert.Q;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (prod.at(i, j) != cert.D.at(i, j)) return fail("product PAQ = D", {{"row", i}, {"col", j}});
  res.verdict = true;
  json diag = json::array();
  for (std::size_t k = 0; k < std::min(m, n); ++k) diag.push_back(R.format(cert.D.at(k, k)));
  res.witness = {{"diagonal", diag}};
  return res;
}

// ---- JSON ----

json matrix_file_json(const RingMatrix& A) { return {{"ring", A.ring()->spec()}, {"rows", A.rows_json()}}; }

RingMatrix matrix_from_json(RingHandle ring, const json& rows) {
  if (!rows.is_array()) throw ParseError("matrix rows must be an array");
  std::vector<std::vector<std::string>> text;
  for (const auto& row : rows) {
    if (!row.is_array()) throw ParseError("matrix row must be an array");
    std::vector<std::string> r;
    for (const auto& e : row) r.push_back(e.is_string() ? e.get<std::string>() : e.dump());
    text.push_back(std::move(r));
  }
  return RingMatrix::parse(std::move(ring), text);
}

RingMatrix matrix_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("ring") || !doc.contains("rows"))
    throw ParseError("matrix file needs 'ring' and 'rows'");
  return matrix_from_json(make_ring(doc["ring"].get<std::string>()), doc["rows"]);
}

json certificate_json(const ReductionCertificate& cert, bool verified) {
  return {{"ring", cert.D.ring()->spec()}, {"P", cert.P.rows_json()},       {"Pinv", cert.Pinv.rows_json()},
          {"D", cert.D.rows_json()},       {"Q", cert.Q.rows_json()},       {"Qinv", cert.Qinv.rows_json()},
          {"verified", verified}};
}

ReductionCertificate certificate_from_json(RingHandle ring, const json& doc) {
  for (const char* key : {"P", "Pinv", "D", "Q", "Qinv"})
    if (!doc.contains(key)) throw ParseError(std::string("certificate lacks '") + key + "'");
  return {matrix_from_json(ring, doc["P"]), matrix_from_json(ring, doc["Pinv"]), matrix_from_json(ring, doc["D"]),
          matrix_from_json(ring, doc["Q"]), matrix_from_json(ring, doc["Qinv"])};
}

}  // namespace edr
