#pragma once

#include <array>
#include <utility>
#include <vector>

namespace spinsign {

// Symmetric integer matrix of the doubled form: Q(x) = (1/2) x^T G x, so the
// diagonal holds twice the squared-variable coefficients and off-diagonal
// entries equal the mixed coefficients.
using Gram = std::array<std::array<long long, 3>, 3>;

// Positive definite integral ternary quadratic form.  Construction validates
// symmetry, even diagonal, positive definiteness (via leading minors), and an
// entry bound of 10^6 that keeps all internal arithmetic exact.
class TernaryForm {
 public:
  explicit TernaryForm(const Gram& gram);

  const Gram& gram() const { return gram_; }

  // Q(x1, x2, x3).
  long long evaluate(long long x1, long long x2, long long x3) const;
  long long evaluate(const std::array<long long, 3>& x) const;

  // Determinant of the doubled matrix (positive for a valid form).
  long long det_gram() const { return det_; }

 private:
  Gram gram_;
  long long det_ = 0;
};

// Number of integer vectors with Q(x) = n.  Requires n >= 0; r(0) = 1.
// Throws std::domain_error when the exact search bound would overflow.
long long representation_count(const TernaryForm& q, long long n);

// Evaluation strategy for representation_counts.  Both strategies produce
// identical counts and identical errors; `automatic` picks by a cost
// estimate.  `direct` enumerates each target separately.  `tables` completes
// the square along x1 (2 a11 Q = u^2 + B(x2, x3), with integer x1 exactly
// when u is congruent to a12 x2 + a13 x3 mod a11), histograms the binary
// section B once up to the largest target, and then answers each target by
// walking u over the realized congruence classes -- a large win when many
// large targets share one form.
enum class BulkStrategy { automatic, direct, tables };

// representation_count for each target, sharing per-form setup.  Entries may
// be large (e.g. t*p^2 for p up to 10^5); dense batches of large targets are
// served from a section table when that is cheaper than target-by-target
// enumeration.
std::vector<long long> representation_counts(const TernaryForm& q,
                                             const std::vector<long long>& targets,
                                             BulkStrategy strategy = BulkStrategy::automatic);

// Representations by primitive vectors only (coordinate gcd 1).  n >= 1.
long long primitive_representation_count(const TernaryForm& q, long long n);

// Every solution of Q(x) = n, including both vectors of each +-x pair.
std::vector<std::array<long long, 3>> represent_vectors(const TernaryForm& q, long long n);

// Order of the integral orthogonal group {U : U^T G U = G}.
long long automorphism_order(const TernaryForm& q);

// (level, determinant).  The level is the least N > 0 for which N * G^{-1} is
// integral with even diagonal; the determinant is det(G)/8.  Throws
// std::domain_error when det(G) is not divisible by 8.
std::pair<long long, long long> level_and_determinant(const TernaryForm& q);

// r(0), r(1), ..., r(n_max) from a single sweep of the ellipsoid Q(x) <= n_max.
std::vector<long long> theta_coefficients(const TernaryForm& q, long long n_max);

}  // namespace spinsign
