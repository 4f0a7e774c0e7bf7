#pragma once

// Certified diagonal reduction of matrices over Bezout rings.

#include "edr/property.hpp"
#include "edr/ring.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace edr {

class EngineCache;

class RingMatrix {
 public:
  RingMatrix() = default;
  RingMatrix(RingHandle ring, std::size_t rows, std::size_t cols);  // zero matrix
  RingMatrix(RingHandle ring, std::size_t rows, std::size_t cols, std::vector<Element> entries);
  static RingMatrix identity(RingHandle ring, std::size_t n);
  // Parses a rows x cols array of element strings.
  static RingMatrix parse(RingHandle ring, const std::vector<std::vector<std::string>>& rows);

  const RingHandle& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Element& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  Element& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const std::vector<Element>& entries() const { return entries_; }

  RingMatrix operator*(const RingMatrix& rhs) const;
  friend bool operator==(const RingMatrix& l, const RingMatrix& r);

  bool is_identity() const;
  // Rows of formatted element strings.
  nlohmann::json rows_json() const;

 private:
  RingHandle ring_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Element> entries_;
};

/// P * A * Q = D with the inverses carried alongside.
struct ReductionCertificate {
  RingMatrix P, Pinv, D, Q, Qinv;
};

enum class Strategy { euclidean_Z, finite_search, zloc_structural };

std::string_view to_string(Strategy s);
Strategy parse_strategy(std::string_view text);
// euclidean_Z for Z, zloc_structural for localizations, finite_search otherwise.
Strategy default_strategy(const Ring& ring);

/// The ring failed to reduce `witness`; for Bezout failures it carries the
/// pair whose ideal is not principal.
class ReductionFailed : public Error {
 public:
  ReductionFailed(const std::string& what, nlohmann::json witness)
      : Error(what), witness_(std::move(witness)) {}
  const nlohmann::json& witness() const { return witness_; }

 private:
  nlohmann::json witness_;
};

struct HermiteStep {
  Element d;
  RingMatrix Q, Qinv;  // (a b) Q = (d 0)
};

// Throws NotBezout.
HermiteStep hermite_step(const RingHandle& ring, const Element& a, const Element& b);

// Certificate for [[a, b], [0, c]] with D = diag(1, -ac); throws NotComaximal
// unless (b + a r) and c are comaximal.
ReductionCertificate lemma37_reduce(const RingHandle& ring, const Element& a, const Element& b,
                                    const Element& c, const Element& r);

// S * [[a, 0], [b, c]] * S = [[c, b], [0, a]] with S the 2x2 swap.
RingMatrix swap_matrix(const RingHandle& ring);

enum class ResidueStrategy { direct, proof };

// Some r with (b + a r) R + c R = R on a finite ring; throws NoResidue.
Element solve_reduction_residue(const RingHandle& ring, const Element& a, const Element& b, const Element& c,
                                ResidueStrategy strategy = ResidueStrategy::direct);

/// Step I: a comaximal row (a, b, c) shortened to a comaximal pair by adding
/// multiples of c to a and b.
struct RowShortening {
  Element x, y, z;  // a x + b y + c z = 1
  Element k, h;
  Element w;        // a + b y k + c z k, feckly adequate
  Element first, second;
};

// Finite rings only; throws NotComaximal or NoResidue.
RowShortening theorem38_step1(const RingHandle& ring, const Element& a, const Element& b, const Element& c);
RowShortening theorem38_step1(const EngineCache& cache, const Element& a, const Element& b, const Element& c);

/// Step II: [[a', 0], [b', c']] with a'R + b'R + c'R = R taken to diag(1, *).
struct StepTwoTrace {
  Element x, y, z, s, t, w;
  Element a, b, c, r;  // the upper-triangular form handed to lemma37_reduce
  ReductionCertificate certificate;
};

StepTwoTrace theorem38_step2(const RingHandle& ring, const Element& a, const Element& b, const Element& c);
StepTwoTrace theorem38_step2(const EngineCache& cache, const Element& a, const Element& b, const Element& c);

ReductionCertificate diagonal_reduce(const RingMatrix& A, Strategy strategy);
inline ReductionCertificate diagonal_reduce(const RingMatrix& A) {
  return diagonal_reduce(A, default_strategy(*A.ring()));
}

// id "certificate"; the note names the first violated invariant.
PropertyResult verify_certificate(const RingMatrix& A, const ReductionCertificate& cert);

// {ring, rows}
nlohmann::json matrix_file_json(const RingMatrix& A);
RingMatrix matrix_from_json(const nlohmann::json& doc);
RingMatrix matrix_from_json(RingHandle ring, const nlohmann::json& rows);

// {P, Pinv, D, Q, Qinv, verified}
nlohmann::json certificate_json(const ReductionCertificate& cert, bool verified);
ReductionCertificate certificate_from_json(RingHandle ring, const nlohmann::json& doc);

}  // namespace edr
