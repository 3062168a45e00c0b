#pragma once

#include <spinsign/arith.hpp>
#include <spinsign/characters.hpp>
#include <spinsign/rational.hpp>

#include <map>
#include <vector>

namespace spinsign {

// Coefficients of a weight-(k + 1/2) form on one square class: index n holds
// a(t*n^2).  The table is sparse -- populate only the indices you need (a
// prime scan touches 1 and the primes, a divisor sum needs every divisor) --
// and reading an unpopulated index is a range error.
class CoefficientSeries {
 public:
  // t: positive squarefree square-class index; k >= 1 (the form has weight
  // k + 1/2); level: positive; psi: Nebentypus character.
  CoefficientSeries(long long t, int k, long long level, DirichletCharacter psi);

  // Dense convenience: values[i] becomes the coefficient at index i + 1.
  static CoefficientSeries from_dense(long long t, int k, long long level,
                                      DirichletCharacter psi,
                                      const std::vector<Rational>& values);

  void set(long long n, Rational value);
  bool has(long long n) const { return values_.count(n) != 0; }
  const Rational& value(long long n) const;  // throws std::out_of_range if unset

  long long t() const { return t_; }
  int k() const { return k_; }
  long long level() const { return level_; }
  const DirichletCharacter& psi() const { return psi_; }
  const std::map<long long, Rational>& values() const { return values_; }

 private:
  long long t_;
  int k_;
  long long level_;
  DirichletCharacter psi_;
  std::map<long long, Rational> values_;
};

// Coefficients a(n) of the weight-2k lift, at level half the source level.
// Sparse on the same index set as its source.
class LiftSeries {
 public:
  LiftSeries(int k2, long long level);

  void set(long long n, Rational value);
  bool has(long long n) const { return values_.count(n) != 0; }
  const Rational& value(long long n) const;  // throws std::out_of_range if unset

  int k2() const { return k2_; }
  long long level() const { return level_; }
  const std::map<long long, Rational>& values() const { return values_; }

  // Deligne-normalized coefficient a(n)/n^((k2-1)/2) as a double; the
  // exponent is a half-integer, so this view is inherently inexact and
  // meant for diagnostics only.
  double lambda(long long n) const;

 private:
  int k2_;
  long long level_;
  std::map<long long, Rational> values_;
};

// The t-th lift a(n) = sum_{d|n} chi(d) d^(k-1) s(n/d) with chi derived from
// the series' Nebentypus via psi_tN.  Output index n is populated exactly
// when every divisor of n is populated in the source, so dense inputs give
// dense outputs and {1, primes} inputs give prime-indexed outputs.  Requires
// the derived character to be real (complex-valued lifts are out of scope);
// the source level must be even, the lift living at half of it.
LiftSeries shimura_lift(const CoefficientSeries& s);

// Exact inverse: s(n) = sum_{d|n} mu(d) chi(d) d^(k-1) L(n/d), with chi the
// same derived character handed back explicitly.  The reconstructed series
// stores a Nebentypus recovered from chi; it is pointwise equivalent to the
// original for every lifting purpose (their derived characters agree at all
// integers), though its modulus may be the induced one.
CoefficientSeries mobius_invert(const LiftSeries& lift, const DirichletCharacter& twisted_psi,
                                int k, long long t);

// Pointwise twist: values[n] = chi(n) * L(n).  Restricted to real chi for
// the same reason the lift is.
LiftSeries twist_series(const LiftSeries& lift, const DirichletCharacter& chi);

// For every prime p <= bound with (D/p) = -1: a nonzero populated a(p) is a
// violation of CM vanishing; an unpopulated index cannot be certified and is
// reported separately.  Empty violations + empty unchecked <=> the lift is
// CM-compatible with D up to the bound.
struct CmVanishingReport {
  long long discriminant;
  long long bound;
  std::vector<long long> violations;
  std::vector<long long> unchecked;
};

CmVanishingReport cm_vanishing_check(const LiftSeries& lift, const FundamentalDiscriminant& d,
                                     long long bound);

}  // namespace spinsign
