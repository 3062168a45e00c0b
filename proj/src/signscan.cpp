#include <spinsign/signscan.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace spinsign {

namespace {

void validate_branch_sign(int value, const char* what) {
  if (value != 1 && value != -1)
    throw std::invalid_argument(std::string(what) + " must be +1 or -1");
}

bool divides(long long p, std::optional<long long> modulus) {
  return modulus.has_value() && *modulus % p == 0;
}

void validate_exclusion(std::optional<long long> modulus) {
  if (modulus.has_value() && *modulus < 1)
    throw std::invalid_argument("exclusion modulus must be positive");
}

// Branch primes p <= bound surviving the optional divisor exclusion.
std::vector<long long> branch_primes(const FundamentalDiscriminant& d, int epsilon,
                                     long long bound,
                                     std::optional<long long> exclude_divisors_of) {
  validate_exclusion(exclude_divisors_of);
  auto sequence = split_inert_primes(d, epsilon, bound);
  if (exclude_divisors_of) {
    std::erase_if(sequence.primes,
                  [&](long long p) { return divides(p, exclude_divisors_of); });
  }
  return std::move(sequence.primes);
}

}  // namespace

PrimeSplitSequence split_inert_primes(const FundamentalDiscriminant& d, int epsilon,
                                      long long bound) {
  if (d.value() == 1)
    throw std::invalid_argument("split/inert classification needs a nontrivial discriminant");
  validate_branch_sign(epsilon, "branch selector");
  if (bound < 1) throw std::invalid_argument("prime bound must be positive");
  PrimeSplitSequence sequence{d.value(), epsilon, {}};
  if (bound >= 2) {
    PrimeSieve sieve(bound);
    for (long long p : sieve.primes())
      if (kronecker(d.value(), p) == epsilon) sequence.primes.push_back(p);
  }
  return sequence;
}

SignChangeReport detect_sign_changes(const std::vector<Rational>& values) {
  SignChangeReport report;
  report.values = values;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] == 0) report.zero_indices.push_back(i + 1);
  for (std::size_t i = 0; i + 1 < values.size(); ++i)
    if (sign(values[i]) * sign(values[i + 1]) < 0) report.change_indices.push_back(i + 1);
  return report;
}

SignChangeReport scan_square_class(const CoefficientSeries& series,
                                   const FundamentalDiscriminant& d, int epsilon,
                                   long long prime_bound,
                                   std::optional<long long> exclude_divisors_of) {
  const auto primes = branch_primes(d, epsilon, prime_bound, exclude_divisors_of);
  std::vector<Rational> values;
  values.reserve(primes.size());
  for (long long p : primes) values.push_back(series.value(p));
  SignChangeReport report = detect_sign_changes(values);
  report.primes = primes;
  if (!report.change_indices.empty())
    report.first_change_prime = primes[report.change_indices.front()];
  return report;
}

std::vector<std::pair<long long, double>> partial_sum_linear(
    const CoefficientSeries& series, const FundamentalDiscriminant& d, int epsilon,
    const std::vector<long long>& thresholds,
    std::optional<long long> exclude_divisors_of) {
  long long max_x = 0;
  for (long long x : thresholds) max_x = std::max(max_x, x);
  const auto primes = branch_primes(d, epsilon, std::max(max_x, 1LL), exclude_divisors_of);
  const double exponent = series.k() + 0.5;

  std::vector<std::pair<long long, double>> points;
  points.reserve(thresholds.size());
  for (long long x : thresholds) {
    double sum = 0.0;
    for (long long p : primes) {
      if (p > x) break;
      if (!series.has(p)) continue;
      sum += series.value(p).get_d() / std::pow(static_cast<double>(p), exponent);
    }
    points.emplace_back(x, sum);
  }
  return points;
}

SquareSumDiagnostic partial_sum_square(
    const CoefficientSeries& series, const FundamentalDiscriminant& d, int epsilon,
    const std::vector<long long>& thresholds,
    std::optional<long long> exclude_divisors_of) {
  long long max_x = 0;
  for (long long x : thresholds) max_x = std::max(max_x, x);
  const auto primes = branch_primes(d, epsilon, std::max(max_x, 1LL), exclude_divisors_of);
  const double exponent = 2.0 * series.k();

  SquareSumDiagnostic diagnostic;
  diagnostic.points.reserve(thresholds.size());
  for (long long x : thresholds) {
    double sum = 0.0;
    for (long long p : primes) {
      if (p > x) break;
      if (!series.has(p)) continue;
      const Rational square = series.value(p) * series.value(p);
      sum += square.get_d() / std::pow(static_cast<double>(p), exponent);
    }
    diagnostic.points.emplace_back(x, sum);
  }

  // Two largest distinct thresholds that admit a log log value.
  std::vector<std::pair<long long, double>> usable;
  for (const auto& point : diagnostic.points)
    if (point.first >= 2) usable.push_back(point);
  std::sort(usable.begin(), usable.end());
  usable.erase(std::unique(usable.begin(), usable.end(),
                           [](const auto& a, const auto& b) { return a.first == b.first; }),
               usable.end());
  if (usable.size() >= 2) {
    const auto& [x1, t1] = usable[usable.size() - 2];
    const auto& [x2, t2] = usable[usable.size() - 1];
    const double denom = std::log(std::log(static_cast<double>(x2))) -
                         std::log(std::log(static_cast<double>(x1)));
    diagnostic.fitted_growth = (t2 - t1) / denom;
  }
  return diagnostic;
}

double require_growth_fit(const SquareSumDiagnostic& diagnostic) {
  if (!diagnostic.fitted_growth)
    throw std::invalid_argument("growth fit requires at least two distinct thresholds");
  return *diagnostic.fitted_growth;
}

double mertens_quarter_sum(const DirichletCharacter& psi, const FundamentalDiscriminant& d,
                           int epsilon, int sign, long long x) {
  if (!psi.is_real())
    throw std::invalid_argument("quarter-density sums require a real character");
  validate_branch_sign(epsilon, "branch selector");
  validate_branch_sign(sign, "character sign");
  if (x < 2) return 0.0;
  PrimeSieve sieve(x);
  double sum = 0.0;
  for (long long p : sieve.primes()) {
    if (kronecker(d.value(), p) != epsilon) continue;
    if (psi.at(p).real_sign() != sign * epsilon) continue;
    sum += std::log(static_cast<double>(p)) / static_cast<double>(p);
  }
  return sum;
}

}  // namespace spinsign
