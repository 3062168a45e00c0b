#pragma once

#include <spinsign/arith.hpp>
#include <spinsign/characters.hpp>
#include <spinsign/rational.hpp>
#include <spinsign/shimura.hpp>

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace spinsign {

// The primes p <= bound with (D/p) = epsilon, in increasing order.  Ramified
// primes (symbol 0) belong to neither branch.
struct PrimeSplitSequence {
  long long discriminant;
  int epsilon;
  std::vector<long long> primes;
};

PrimeSplitSequence split_inert_primes(const FundamentalDiscriminant& d, int epsilon,
                                      long long bound);

// Outcome of a strict sign-change scan.  Indices are the 1-based positions
// n0 with values[n0] * values[n0 + 1] < 0 (zeros never participate), so they
// are strictly increasing by construction.  `primes` is populated when the
// sequence came from a prime scan; first_change_prime is then the prime at
// which the flipped sign is first attained (position n0 + 1 of the earliest
// change).
struct SignChangeReport {
  std::vector<long long> primes;
  std::vector<Rational> values;
  std::vector<std::size_t> change_indices;
  std::vector<std::size_t> zero_indices;
  std::optional<long long> first_change_prime;

  std::size_t count() const { return change_indices.size(); }
};

// Scans a bare value list; sequences shorter than two yield an empty report.
SignChangeReport detect_sign_changes(const std::vector<Rational>& values);

// Extracts series values along the (D, epsilon) prime branch up to
// prime_bound and scans them.  With exclude_divisors_of set, primes dividing
// that modulus are skipped first -- an explicit caller choice, never implied.
// Every surviving branch prime must be populated in the series (range error
// otherwise).
SignChangeReport scan_square_class(const CoefficientSeries& series,
                                   const FundamentalDiscriminant& d, int epsilon,
                                   long long prime_bound,
                                   std::optional<long long> exclude_divisors_of = std::nullopt);

// S(x) = sum over populated branch primes p <= x of value(p) / p^(k + 1/2),
// one point per requested threshold, evaluated in binary64 over the exact
// summands in ascending prime order.  Unpopulated primes contribute nothing.
std::vector<std::pair<long long, double>> partial_sum_linear(
    const CoefficientSeries& series, const FundamentalDiscriminant& d, int epsilon,
    const std::vector<long long>& thresholds,
    std::optional<long long> exclude_divisors_of = std::nullopt);

// T(x) = sum over populated branch primes p <= x of value(p)^2 / p^(2k),
// plus the two-point slope (T(x2) - T(x1)) / (loglog x2 - loglog x1) over
// the two largest distinct thresholds >= 2 (absent when there are fewer).
struct SquareSumDiagnostic {
  std::vector<std::pair<long long, double>> points;
  std::optional<double> fitted_growth;
};

SquareSumDiagnostic partial_sum_square(
    const CoefficientSeries& series, const FundamentalDiscriminant& d, int epsilon,
    const std::vector<long long>& thresholds,
    std::optional<long long> exclude_divisors_of = std::nullopt);

// The diagnostic's fitted slope, or std::invalid_argument when the
// thresholds could not support a fit.
double require_growth_fit(const SquareSumDiagnostic& diagnostic);

// Sum of (log p)/p over primes p <= x with (D/p) = epsilon and
// psi(p) = sign * epsilon.  When psi, (D/.), and their product are all
// nonprincipal, this quarter-density prime set makes the sum track
// log(x)/4 + O(1); the raw sum is returned regardless.
double mertens_quarter_sum(const DirichletCharacter& psi, const FundamentalDiscriminant& d,
                           int epsilon, int sign, long long x);

}  // namespace spinsign
