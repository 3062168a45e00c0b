#include <spinsign/shimura.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace spinsign {

namespace {

constexpr int kMaxHalfWeight = 64;

std::vector<long long> divisors_of(long long n) {
  std::vector<long long> small, large;
  for (long long d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// chi(d) * d^(k-1) as an exact rational; chi must be real-valued.
Rational signed_power(const DirichletCharacter& chi, long long d, int k) {
  const int sgn = chi.at(d).real_sign();
  if (sgn == 0) return Rational(0);
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(d),
                static_cast<unsigned long>(k - 1));
  if (sgn < 0) power = -power;
  return Rational(power);
}

void validate_series_shape(long long t, int k, long long level) {
  if (t < 1 || !is_squarefree(t))
    throw std::invalid_argument("square class index must be a positive squarefree integer");
  if (k < 1 || k > kMaxHalfWeight)
    throw std::invalid_argument("weight parameter k must lie in [1, 64]");
  if (level < 1) throw std::invalid_argument("level must be positive");
}

void validate_index(long long n) {
  if (n < 1) throw std::invalid_argument("series indices start at 1");
}

}  // namespace

CoefficientSeries::CoefficientSeries(long long t, int k, long long level, DirichletCharacter psi)
    : t_(t), k_(k), level_(level), psi_(std::move(psi)) {
  validate_series_shape(t, k, level);
}

CoefficientSeries CoefficientSeries::from_dense(long long t, int k, long long level,
                                                DirichletCharacter psi,
                                                const std::vector<Rational>& values) {
  CoefficientSeries s(t, k, level, std::move(psi));
  for (std::size_t i = 0; i < values.size(); ++i)
    s.set(static_cast<long long>(i) + 1, values[i]);
  return s;
}

void CoefficientSeries::set(long long n, Rational value) {
  validate_index(n);
  values_[n] = std::move(value);
}

const Rational& CoefficientSeries::value(long long n) const {
  const auto it = values_.find(n);
  if (it == values_.end())
    throw std::out_of_range("series has no coefficient at index " + std::to_string(n));
  return it->second;
}

LiftSeries::LiftSeries(int k2, long long level) : k2_(k2), level_(level) {
  if (k2 < 2 || k2 % 2 != 0 || k2 > 2 * kMaxHalfWeight)
    throw std::invalid_argument("lift weight must be a positive even integer");
  if (level < 1) throw std::invalid_argument("level must be positive");
}

void LiftSeries::set(long long n, Rational value) {
  validate_index(n);
  values_[n] = std::move(value);
}

const Rational& LiftSeries::value(long long n) const {
  const auto it = values_.find(n);
  if (it == values_.end())
    throw std::out_of_range("lift has no coefficient at index " + std::to_string(n));
  return it->second;
}

double LiftSeries::lambda(long long n) const {
  return value(n).get_d() / std::pow(static_cast<double>(n), (k2_ - 1) / 2.0);
}

LiftSeries shimura_lift(const CoefficientSeries& s) {
  const DirichletCharacter chi = psi_tN(s.psi(), s.t(), s.k());
  if (!chi.is_real())
    throw std::domain_error(
        "lift requires a real derived character; complex-valued lifts are unsupported");
  if (s.level() % 2 != 0)
    throw std::invalid_argument("series level must be even so the lift level is integral");

  LiftSeries lift(2 * s.k(), s.level() / 2);
  for (const auto& [n, base] : s.values()) {
    const auto divisors = divisors_of(n);
    // The divisor sum reads the source at every n/d, i.e. at every divisor;
    // skip indices whose divisor closure is not populated.
    const bool complete = std::all_of(divisors.begin(), divisors.end(),
                                      [&](long long d) { return s.has(d); });
    if (!complete) continue;
    Rational sum = 0;
    for (long long d : divisors) {
      const Rational factor = signed_power(chi, d, s.k());
      if (factor != 0) sum += factor * s.value(n / d);
    }
    lift.set(n, std::move(sum));
  }
  return lift;
}

CoefficientSeries mobius_invert(const LiftSeries& lift, const DirichletCharacter& twisted_psi,
                                int k, long long t) {
  if (!twisted_psi.is_real())
    throw std::domain_error(
        "inversion requires a real derived character; complex-valued series are unsupported");
  if (2 * k != lift.k2())
    throw std::invalid_argument("weight parameter does not match the lift's weight");
  // Reattach the Kronecker factor: the stored Nebentypus is the induced
  // character twisted_psi * chi_m, whose own derived character coincides with
  // twisted_psi at every integer.
  const long long m = (k % 2 != 0) ? -t : t;
  const DirichletCharacter psi =
      multiply(twisted_psi, DirichletCharacter::kronecker_character(m));
  CoefficientSeries series(t, k, 2 * lift.level(), psi);
  for (const auto& [n, top] : lift.values()) {
    const auto divisors = divisors_of(n);
    const bool complete = std::all_of(divisors.begin(), divisors.end(),
                                      [&](long long d) { return lift.has(d); });
    if (!complete) continue;
    Rational sum = 0;
    for (long long d : divisors) {
      const int mu = moebius(d);
      if (mu == 0) continue;
      const Rational factor = signed_power(twisted_psi, d, k);
      if (factor == 0) continue;
      sum += mu * factor * lift.value(n / d);
    }
    series.set(n, std::move(sum));
  }
  return series;
}

LiftSeries twist_series(const LiftSeries& lift, const DirichletCharacter& chi) {
  if (!chi.is_real())
    throw std::domain_error("twisting by a complex character is unsupported");
  LiftSeries twisted(lift.k2(), lift.level());
  for (const auto& [n, v] : lift.values()) twisted.set(n, chi.at(n).real_sign() * v);
  return twisted;
}

CmVanishingReport cm_vanishing_check(const LiftSeries& lift, const FundamentalDiscriminant& d,
                                     long long bound) {
  if (bound < 1) throw std::invalid_argument("bound must be positive");
  CmVanishingReport report;
  report.discriminant = d.value();
  report.bound = bound;
  if (bound < 2) return report;
  PrimeSieve sieve(bound);
  for (long long p : sieve.primes()) {
    if (kronecker(d.value(), p) != -1) continue;
    if (!lift.has(p))
      report.unchecked.push_back(p);
    else if (lift.value(p) != 0)
      report.violations.push_back(p);
  }
  return report;
}

}  // namespace spinsign
