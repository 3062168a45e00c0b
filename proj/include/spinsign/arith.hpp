#pragma once

#include <cstdint>
#include <vector>

namespace spinsign {

// ============================================================================
// Elementary number theory: primes, Moebius, Kronecker symbols, fundamental
// discriminants.  Everything here is pure and exact; inputs are 64-bit.
// ============================================================================

class PrimeSieve {
 public:
  // Sieve of Eratosthenes up to and including `limit`.  limit >= 2.
  explicit PrimeSieve(long long limit);

  long long limit() const { return limit_; }

  // O(1) lookup for 0 <= n <= limit(); throws std::out_of_range beyond.
  bool is_prime(long long n) const;

  const std::vector<long long>& primes() const { return primes_; }

  // pi(limit): number of primes found.
  std::size_t count() const { return primes_.size(); }

 private:
  long long limit_;
  std::vector<bool> composite_;
  std::vector<long long> primes_;
};

// Floor of the square root, exact over the whole nonnegative long long
// range.  Negative input throws std::invalid_argument.
long long isqrt(long long n);

// Moebius function.  n >= 1.
int moebius(long long n);

// True iff no square > 1 divides n.  n >= 1.
bool is_squarefree(long long n);

// Kronecker symbol (a/n), the complete extension of the Jacobi symbol to all
// integer pairs:
//   (a/0)  = 1 if a = +-1, else 0
//   (a/-1) = -1 if a < 0, else 1
//   (a/2)  = 0 if a even, 1 if a = +-1 (mod 8), -1 if a = +-3 (mod 8)
// and completely multiplicative in the lower argument.
int kronecker(long long a, long long n);

// A fundamental discriminant is 1, or a squarefree D = 1 (mod 4), or 4m with
// m squarefree and m = 2 or 3 (mod 4).  These are exactly the discriminants
// of quadratic fields (with 1 standing in for the rationals themselves).
bool is_fundamental_discriminant(long long d);

// Value type for a validated fundamental discriminant.  D = 1 is permitted
// (the trivial symbol); operations that genuinely need a quadratic field
// reject it at their own boundary.
class FundamentalDiscriminant {
 public:
  explicit FundamentalDiscriminant(long long d);

  long long value() const { return d_; }

  bool operator==(const FundamentalDiscriminant&) const = default;

 private:
  long long d_;
};

}  // namespace spinsign
