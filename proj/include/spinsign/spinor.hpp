#pragma once

#include <spinsign/quadform.hpp>
#include <spinsign/rational.hpp>

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace spinsign {

enum class ClassSetKind { spinor_genus, genus };

// One ingested class representative; the automorphism order may carry a
// claimed value to be cross-checked against recomputation.
struct ClassInput {
  std::string name;
  TernaryForm form;
  std::optional<long long> claimed_aut_order;
};

struct FormClass {
  std::string name;
  TernaryForm form;
  long long aut_order;
};

// A complete set of class representatives of one spinor genus (or genus).
// Construction recomputes every automorphism order (a claimed order that
// disagrees raises consistency_error), checks that all classes share one
// (level, determinant), and validates the distinguished index.
class SpinorClassSet {
 public:
  SpinorClassSet(ClassSetKind kind, std::size_t distinguished,
                 const std::vector<ClassInput>& entries);

  ClassSetKind kind() const { return kind_; }
  std::size_t distinguished_index() const { return distinguished_; }
  const std::vector<FormClass>& classes() const { return classes_; }
  const FormClass& distinguished() const { return classes_[distinguished_]; }
  long long level() const { return level_; }
  long long determinant() const { return determinant_; }

 private:
  ClassSetKind kind_;
  std::size_t distinguished_;
  std::vector<FormClass> classes_;
  long long level_;
  long long determinant_;
};

// Mass-weighted representation average over the class set:
//   (sum_K 1/|O(K)|)^(-1) * sum_K r(n, K)/|O(K)|,
// the exact rational the distinguished form's theta series is compared
// against.  Independent of the distinguished index.
Rational siegel_weil_average(const SpinorClassSet& s, long long n);
std::vector<Rational> siegel_weil_averages(const SpinorClassSet& s,
                                           const std::vector<long long>& targets);

// Cuspidal coefficient of the distinguished form at n:
//   a_f(n, Q) = r(n, Q) - siegel_weil_average(s, n).
// Requires a spinor-genus set; the genus average feeds the Eisenstein part
// instead.
Rational cusp_coefficient(const SpinorClassSet& s, long long n);
std::vector<Rational> cusp_coefficients(const SpinorClassSet& s,
                                        const std::vector<long long>& targets);

// theta_Q = E + H + f split of the distinguished form's theta series up to
// n_max.  The spinor set alone determines f; the genus set (same level and
// determinant, containing every spinor class) additionally splits off
// e (genus average) and h (spinor average minus genus average).
struct ThetaDecomposition {
  long long n_max;
  std::vector<long long> theta;                  // r(n, Q), n = 0..n_max
  std::vector<Rational> f_part;                  // theta - spinor average
  std::optional<std::vector<Rational>> e_part;   // genus average
  std::optional<std::vector<Rational>> h_part;   // spinor minus genus average
};

ThetaDecomposition decompose_theta(const SpinorClassSet& spinor_set,
                                   const SpinorClassSet* genus_set, long long n_max);

// One scanned prime of a square-class stability probe.
struct SpinorScanRow {
  long long p;
  std::vector<long long> class_counts;  // r(t p^2, K_j) per class
  Rational spinor_average;              // r(t p^2, spn)
  Rational cusp;                        // a_f(t p^2, distinguished)
  bool stable;                          // r(t p^2, K_j) = r(t, K_j) for every j
};

struct SpinorScanReport {
  long long t;
  std::vector<long long> base_counts;  // r(t, K_j) per class
  std::vector<SpinorScanRow> rows;     // ascending primes
};

// Evaluates r(t p^2, .) across the class set for every prime p <= prime_bound
// accepted by residue_filter (empty filter accepts all primes), flagging the
// primes where every class count is frozen at its base value r(t, K) -- the
// stability signature of a spinor exception.
SpinorScanReport spinor_exception_scan(const SpinorClassSet& s, long long t,
                                       long long prime_bound,
                                       const std::function<bool(long long)>& residue_filter);

}  // namespace spinsign
