#include <spinsign/arith.hpp>

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace spinsign {

PrimeSieve::PrimeSieve(long long limit) : limit_(limit) {
  if (limit < 2) throw std::invalid_argument("PrimeSieve: limit must be at least 2");
  composite_.assign(static_cast<std::size_t>(limit) + 1, false);
  for (long long p = 2; p * p <= limit; ++p) {
    if (composite_[static_cast<std::size_t>(p)]) continue;
    for (long long m = p * p; m <= limit; m += p) composite_[static_cast<std::size_t>(m)] = true;
  }
  for (long long n = 2; n <= limit; ++n)
    if (!composite_[static_cast<std::size_t>(n)]) primes_.push_back(n);
}

bool PrimeSieve::is_prime(long long n) const {
  if (n < 0 || n > limit_)
    throw std::out_of_range("PrimeSieve::is_prime: " + std::to_string(n) + " outside [0, " +
                            std::to_string(limit_) + "]");
  return n >= 2 && !composite_[static_cast<std::size_t>(n)];
}

long long isqrt(long long n) {
  if (n < 0) throw std::invalid_argument("isqrt: argument must be nonnegative");
  // A double sqrt is within one of the answer everywhere below 2^63; the
  // exact fix-up compares in 128 bits to survive s*s overflow near the top.
  long long s = static_cast<long long>(std::sqrt(static_cast<double>(n)));
  while (s > 0 && static_cast<__int128>(s) * s > n) --s;
  while (static_cast<__int128>(s + 1) * (s + 1) <= n) ++s;
  return s;
}

int moebius(long long n) {
  if (n < 1) throw std::invalid_argument("moebius: argument must be positive");
  int factors = 0;
  if (n % 2 == 0) {
    n /= 2;
    if (n % 2 == 0) return 0;
    ++factors;
  }
  for (long long d = 3; d * d <= n; d += 2) {
    if (n % d != 0) continue;
    n /= d;
    if (n % d == 0) return 0;
    ++factors;
  }
  if (n > 1) ++factors;
  return factors % 2 == 0 ? 1 : -1;
}

bool is_squarefree(long long n) { return moebius(n) != 0; }

int kronecker(long long a, long long n) {
  // (2/a) indexed by a mod 8; zeros are never read (a odd at lookup time).
  static const int two_table[8] = {0, 1, 0, -1, 0, -1, 0, 1};
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  if (a % 2 == 0 && n % 2 == 0) return 0;
  int k = 1;
  int twos = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++twos;
  }
  if (twos % 2 == 1) k = two_table[a & 7];
  if (n < 0) {
    n = -n;
    if (a < 0) k = -k;
  }
  // Invariant: n odd and positive; classic binary-reduction loop.
  while (a != 0) {
    twos = 0;
    while (a % 2 == 0) {
      a /= 2;
      ++twos;
    }
    if (twos % 2 == 1) k *= two_table[n & 7];
    if (a & n & 2) k = -k;  // both = 3 (mod 4): reciprocity sign
    long long r = a < 0 ? -a : a;
    a = n % r;
    n = r;
  }
  return n > 1 ? 0 : k;
}

bool is_fundamental_discriminant(long long d) {
  if (d == 0) return false;
  if (d == 1) return true;
  long long m4 = ((d % 4) + 4) % 4;
  if (m4 == 1) return is_squarefree(d < 0 ? -d : d);
  if (m4 != 0) return false;
  long long m = d / 4;
  long long mm4 = ((m % 4) + 4) % 4;
  if (mm4 != 2 && mm4 != 3) return false;
  return is_squarefree(m < 0 ? -m : m);
}

FundamentalDiscriminant::FundamentalDiscriminant(long long d) : d_(d) {
  if (!is_fundamental_discriminant(d))
    throw std::invalid_argument("FundamentalDiscriminant: " + std::to_string(d) +
                                " is not a fundamental discriminant");
}

}  // namespace spinsign
