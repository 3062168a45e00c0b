#pragma once

#include <spinsign/arith.hpp>

#include <vector>

namespace spinsign {

// Exact root of unity exp(2*pi*i * e/q), or zero.  Stored normalized:
// 0 <= e < q and gcd(e, q) = 1 (with e = 0 forcing q = 1), so equality is
// plain member comparison.
class UnitValue {
 public:
  static UnitValue zero() { return UnitValue(); }
  static UnitValue one() { return root(1, 0); }
  static UnitValue minus_one() { return root(2, 1); }
  static UnitValue root(long long q, long long e);  // q >= 1, any e

  bool is_zero() const { return q_ == 0; }
  bool is_real() const { return q_ <= 2; }
  // 1, -1 or 0; throws std::domain_error for a complex value.
  int real_sign() const;

  long long order() const { return q_; }
  long long exponent() const { return e_; }

  UnitValue operator*(const UnitValue& other) const;
  UnitValue conjugate() const;
  bool operator==(const UnitValue&) const = default;

 private:
  UnitValue() = default;
  long long q_ = 0;  // 0 marks the zero value
  long long e_ = 0;
};

// Dirichlet character stored as a dense table of exact values over the
// residue classes mod N.  values[a] is zero exactly when gcd(a, N) > 1.
// The conductor (smallest quasi-period dividing N) is computed on
// construction.
class DirichletCharacter {
 public:
  static DirichletCharacter principal(long long modulus);

  // The quadratic character chi_D(n) = (D/n) of a fundamental discriminant,
  // tabulated mod |D| (mod 1 for D = 1).
  static DirichletCharacter from_kronecker(const FundamentalDiscriminant& d);

  // (m/n) as a character in the lower argument for arbitrary nonzero m,
  // tabulated mod 4|m| (odd residues coprime to m carry the symbol; every
  // class sharing a factor with the modulus is zero).
  static DirichletCharacter kronecker_character(long long m);

  // Untrusted ingestion: validates the zero pattern, the value at 1, and
  // complete multiplicativity of the table.  Supports moduli up to 10000.
  static DirichletCharacter from_table(long long modulus, std::vector<UnitValue> values);

  long long modulus() const { return modulus_; }
  long long conductor() const { return conductor_; }

  // Periodic evaluation at any integer.
  const UnitValue& at(long long n) const;

  bool is_real() const;

  // The character mod conductor() inducing this one.
  DirichletCharacter primitive_part() const;

  bool operator==(const DirichletCharacter&) const = default;

 private:
  DirichletCharacter(long long modulus, std::vector<UnitValue> values);

  // Products of valid characters are characters; multiply skips re-validation.
  friend DirichletCharacter multiply(const DirichletCharacter&, const DirichletCharacter&);

  long long modulus_ = 1;
  long long conductor_ = 1;
  std::vector<UnitValue> values_;
};

// Product character mod lcm of the moduli.
DirichletCharacter multiply(const DirichletCharacter& a, const DirichletCharacter& b);

// The twisted character psi(d) * ((-1)^k t / d) attached to a half-integral
// form of character psi, square class t and weight k + 1/2, tabulated mod
// lcm(modulus(psi), 4t).  t must be positive and squarefree.  Depends on k
// only through its parity.
DirichletCharacter psi_tN(const DirichletCharacter& psi, long long t, int k);

// True iff the primitive characters inducing a and b agree on every residue
// class mod lcm(m1, m2) coprime to m1*m2, where m1, m2 are the conductors.
// Equivalently: the characters agree at all primes not dividing m1*m2.
bool almost_equal(const DirichletCharacter& a, const DirichletCharacter& b);

}  // namespace spinsign
