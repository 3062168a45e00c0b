#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <spinsign/shimura.hpp>
#include <spinsign/spinor.hpp>

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "oracles.hpp"

using spinsign::CoefficientSeries;
using spinsign::DirichletCharacter;
using spinsign::FundamentalDiscriminant;
using spinsign::Gram;
using spinsign::LiftSeries;
using spinsign::Rational;
using spinsign::SpinorClassSet;
using spinsign::TernaryForm;

namespace {

const Gram kDiagGram = {{{2, 0, 0}, {0, 96, 0}, {0, 0, 288}}};
const Gram kSkewGram = {{{8, 0, 4}, {0, 96, 48}, {4, 48, 98}}};

Rational rat(long long v) { return Rational(static_cast<long>(v)); }

SpinorClassSet fixture_pair() {
  return SpinorClassSet(spinsign::ClassSetKind::spinor_genus, 1,
                        {{"Q1", TernaryForm{kDiagGram}, {}}, {"Q2", TernaryForm{kSkewGram}, {}}});
}

// Cusp coefficients of the distinguished fixture form on the square class
// t = 1, packed as a series with the requested Nebentypus.
CoefficientSeries fixture_series(const DirichletCharacter& psi, long long n_max) {
  const SpinorClassSet s = fixture_pair();
  std::vector<long long> targets;
  for (long long n = 1; n <= n_max; ++n) targets.push_back(n * n);
  const auto cusps = spinsign::cusp_coefficients(s, targets);
  CoefficientSeries series(1, 1, 576, psi);
  for (long long n = 1; n <= n_max; ++n)
    series.set(n, cusps[static_cast<std::size_t>(n - 1)]);
  return series;
}

CoefficientSeries random_series(std::mt19937& gen, long long t, int k, long long level,
                                const DirichletCharacter& psi, long long n_max) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 9);
  CoefficientSeries s(t, k, level, psi);
  for (long long n = 1; n <= n_max; ++n) s.set(n, Rational(num(gen)) / den(gen));
  return s;
}

}  // namespace

TEST_CASE("series and lift containers validate their shape") {
  const auto psi = DirichletCharacter::principal(4);
  CHECK_THROWS_AS(CoefficientSeries(4, 1, 4, psi), std::invalid_argument);   // 4 not squarefree
  CHECK_THROWS_AS(CoefficientSeries(0, 1, 4, psi), std::invalid_argument);
  CHECK_THROWS_AS(CoefficientSeries(1, 0, 4, psi), std::invalid_argument);
  CHECK_THROWS_AS(CoefficientSeries(1, 1, 0, psi), std::invalid_argument);

  CoefficientSeries s(1, 1, 4, psi);
  CHECK_THROWS_AS(s.set(0, rat(1)), std::invalid_argument);
  CHECK_FALSE(s.has(3));
  CHECK_THROWS_AS(s.value(3), std::out_of_range);
  s.set(3, rat(7));
  CHECK(s.value(3) == 7);
  s.set(3, rat(-2));  // overwriting is allowed
  CHECK(s.value(3) == -2);

  CHECK_THROWS_AS(LiftSeries(3, 2), std::invalid_argument);  // odd weight
  CHECK_THROWS_AS(LiftSeries(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(LiftSeries(2, 0), std::invalid_argument);
  LiftSeries lift(2, 2);
  CHECK_THROWS_AS(lift.value(1), std::out_of_range);
}

TEST_CASE("lift of the fixture series matches the closed form at 5") {
  const auto series = fixture_series(DirichletCharacter::principal(576), 12);
  CHECK(series.value(1) == -1);
  CHECK(series.value(2) == 0);
  CHECK(series.value(5) == -1);

  const auto lift = spinsign::shimura_lift(series);
  CHECK(lift.k2() == 2);
  CHECK(lift.level() == 288);
  CHECK(lift.value(1) == -1);
  CHECK(lift.value(5) == -2);

  // Independent divisor-sum evaluation of every populated index.  The
  // derived character lives mod 576, so it is (-1/d) on units and zero on
  // divisors sharing a factor with the level.
  for (const auto& [n, lifted] : lift.values()) {
    Rational expected = 0;
    for (long long d = 1; d <= n; ++d) {
      if (n % d != 0) continue;
      const int chi = std::gcd(d, 576LL) > 1 ? 0 : spinsign::kronecker(-1, d);
      if (chi != 0) expected += chi * series.value(n / d);
    }
    CHECK(lifted == expected);
  }
}

TEST_CASE("lambda accessor applies the half-integral normalization") {
  const auto lift = spinsign::shimura_lift(fixture_series(DirichletCharacter::principal(576), 6));
  CHECK(lift.lambda(1) == doctest::Approx(-1.0));
  CHECK(lift.lambda(5) == doctest::Approx(-2.0 / std::sqrt(5.0)));
}

TEST_CASE("fixture lift with the field Nebentypus vanishes on the inert branch") {
  // The honest Nebentypus of the fixture is the discriminant-12 character
  // induced to the level; its derived character has conductor 3.
  const auto psi = multiply(DirichletCharacter::from_kronecker(FundamentalDiscriminant(12)),
                            DirichletCharacter::principal(576));
  const auto series = fixture_series(psi, 50);
  const auto lift = spinsign::shimura_lift(series);

  CHECK(lift.value(2) == 0);
  CHECK(lift.value(5) == 0);
  CHECK(lift.value(7) == 0);  // split prime, cancellation of +1 against -1

  const auto report = spinsign::cm_vanishing_check(lift, FundamentalDiscriminant(-3), 50);
  CHECK(report.discriminant == -3);
  CHECK(report.bound == 50);
  CHECK(report.violations.empty());
  CHECK(report.unchecked.empty());
}

TEST_CASE("cm check flags constructed violations and unpopulated primes") {
  LiftSeries lift(2, 288);
  lift.set(1, rat(-1));
  lift.set(2, rat(0));
  lift.set(5, rat(1));

  const auto report = spinsign::cm_vanishing_check(lift, FundamentalDiscriminant(-3), 5);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0] == 5);
  CHECK(report.unchecked.empty());

  // 11 is inert for discriminant -3 but the series says nothing about it.
  const auto wider = spinsign::cm_vanishing_check(lift, FundamentalDiscriminant(-3), 11);
  REQUIRE(wider.unchecked.size() == 1);
  CHECK(wider.unchecked[0] == 11);

  LiftSeries zeros(2, 288);
  for (long long n = 1; n <= 30; ++n) zeros.set(n, rat(0));
  CHECK(spinsign::cm_vanishing_check(zeros, FundamentalDiscriminant(-3), 30).violations.empty());

  CHECK_THROWS_AS(spinsign::cm_vanishing_check(lift, FundamentalDiscriminant(-3), 0),
                  std::invalid_argument);
}

TEST_CASE("lift rejects complex derived characters and odd levels") {
  using spinsign::UnitValue;
  const DirichletCharacter quartic = DirichletCharacter::from_table(
      5, {UnitValue::zero(), UnitValue::one(), UnitValue::root(4, 1), UnitValue::root(4, 3),
          UnitValue::minus_one()});
  const CoefficientSeries complex_series(1, 1, 10, quartic);
  CHECK_THROWS_AS(spinsign::shimura_lift(complex_series), std::domain_error);

  const CoefficientSeries odd_level(1, 1, 9, DirichletCharacter::principal(12));
  CHECK_THROWS_AS(spinsign::shimura_lift(odd_level), std::invalid_argument);

  LiftSeries lift(2, 2);
  lift.set(1, rat(1));
  CHECK_THROWS_AS(spinsign::twist_series(lift, quartic), std::domain_error);
  CHECK_THROWS_AS(spinsign::mobius_invert(lift, quartic, 1, 1), std::domain_error);
  CHECK_THROWS_AS(spinsign::mobius_invert(lift, DirichletCharacter::principal(4), 2, 1),
                  std::invalid_argument);  // 2k = 4 != lift weight 2
}

TEST_CASE("lift is populated exactly on divisor-closed indices") {
  CoefficientSeries s(1, 1, 4, DirichletCharacter::principal(4));
  s.set(2, rat(3));
  CHECK(spinsign::shimura_lift(s).values().empty());  // index 1 missing

  s.set(1, rat(1));
  s.set(3, rat(5));
  s.set(5, rat(7));
  s.set(6, rat(9));  // divisors 1, 2, 3 are all populated
  const auto lift = spinsign::shimura_lift(s);
  CHECK(lift.has(1));
  CHECK(lift.has(2));
  CHECK(lift.has(3));
  CHECK(lift.has(5));
  CHECK(lift.has(6));
  CHECK_FALSE(lift.has(4));
}

TEST_CASE("lift and inversion are exact mutual inverses") {
  std::mt19937 gen(20260818);
  const std::vector<std::pair<DirichletCharacter, long long>> pool = {
      {DirichletCharacter::principal(4), 4},
      {DirichletCharacter::principal(12), 12},
      {DirichletCharacter::principal(576), 576},
      {DirichletCharacter::from_kronecker(FundamentalDiscriminant(12)), 12},
      {DirichletCharacter::from_kronecker(FundamentalDiscriminant(-4)), 4},
      {DirichletCharacter::from_kronecker(FundamentalDiscriminant(-3)), 12}};
  const std::vector<long long> ts = {1, 2, 3, 5, 6, 7, 10};
  const std::vector<int> ks = {1, 2, 3};
  std::uniform_int_distribution<std::size_t> pick_psi(0, pool.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_t(0, ts.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_k(0, ks.size() - 1);

  for (int trial = 0; trial < 200; ++trial) {
    const auto& [psi, level] = pool[pick_psi(gen)];
    const long long t = ts[pick_t(gen)];
    const int k = ks[pick_k(gen)];
    const auto s = random_series(gen, t, k, level, psi, 50);
    const auto chi = spinsign::psi_tN(psi, t, k);

    const auto lift = spinsign::shimura_lift(s);
    const auto back = spinsign::mobius_invert(lift, chi, k, t);
    CHECK(back.t() == t);
    CHECK(back.k() == k);
    CHECK(back.level() == level);
    for (long long n = 1; n <= 50; ++n) CHECK(back.value(n) == s.value(n));

    // The reconstructed Nebentypus differs from psi only by an induced
    // modulus, so lifting again reproduces the lift exactly.
    const auto again = spinsign::shimura_lift(back);
    CHECK(again.k2() == lift.k2());
    CHECK(again.level() == lift.level());
    for (long long n = 1; n <= 50; ++n) CHECK(again.value(n) == lift.value(n));
  }
}

TEST_CASE("inversion applied to an arbitrary lift is a right inverse too") {
  std::mt19937 gen(977);
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 9);
  for (int trial = 0; trial < 50; ++trial) {
    LiftSeries lift(2, 288);
    for (long long n = 1; n <= 50; ++n) lift.set(n, Rational(num(gen)) / den(gen));
    const auto chi = spinsign::psi_tN(DirichletCharacter::principal(576), 1, 1);
    const auto series = spinsign::mobius_invert(lift, chi, 1, 1);
    const auto relift = spinsign::shimura_lift(series);
    for (long long n = 1; n <= 50; ++n) CHECK(relift.value(n) == lift.value(n));
  }
}

TEST_CASE("prime indices follow the two-term closed form") {
  std::mt19937 gen(4242);
  const auto psi = DirichletCharacter::principal(12);
  for (int k : {1, 2, 3}) {
    const auto s = random_series(gen, 2, k, 12, psi, 100);
    const auto chi = spinsign::psi_tN(psi, 2, k);
    const auto lift = spinsign::shimura_lift(s);
    const auto inverted = spinsign::mobius_invert(lift, chi, k, 2);
    for (long long p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
                        71, 73, 79, 83, 89, 97}) {
      long long pk = 1;
      for (int i = 1; i < k; ++i) pk *= p;
      const Rational factor = rat(chi.at(p).real_sign() * pk);
      CHECK(lift.value(p) == factor * s.value(1) + s.value(p));
      CHECK(inverted.value(p) == lift.value(p) - factor * lift.value(1));
    }
  }
}

TEST_CASE("lift is linear over rational combinations") {
  std::mt19937 gen(31337);
  const auto psi = DirichletCharacter::from_kronecker(FundamentalDiscriminant(12));
  const Rational alpha = Rational(2) / 3;
  const Rational beta = Rational(-5) / 7;
  const auto s1 = random_series(gen, 3, 2, 12, psi, 40);
  const auto s2 = random_series(gen, 3, 2, 12, psi, 40);
  CoefficientSeries combo(3, 2, 12, psi);
  for (long long n = 1; n <= 40; ++n)
    combo.set(n, alpha * s1.value(n) + beta * s2.value(n));
  const auto l1 = spinsign::shimura_lift(s1);
  const auto l2 = spinsign::shimura_lift(s2);
  const auto lc = spinsign::shimura_lift(combo);
  for (long long n = 1; n <= 40; ++n)
    CHECK(lc.value(n) == alpha * l1.value(n) + beta * l2.value(n));
}

TEST_CASE("twisting is pointwise and involutive on coprime indices") {
  const auto lift = spinsign::shimura_lift(fixture_series(DirichletCharacter::principal(576), 20));

  // Principal modulus 1 twists by the constant 1.
  const auto same = spinsign::twist_series(lift, DirichletCharacter::principal(1));
  for (const auto& [n, v] : lift.values()) CHECK(same.value(n) == v);

  // The principal character mod 144 annihilates exactly the indices sharing
  // a factor with 12 and fixes the rest.
  const auto killed = spinsign::twist_series(lift, DirichletCharacter::principal(144));
  for (const auto& [n, v] : lift.values()) {
    if (std::gcd(n, 12LL) > 1)
      CHECK(killed.value(n) == 0);
    else
      CHECK(killed.value(n) == v);
  }

  // A real character squares to the principal one on coprime indices.
  const auto chi12 = DirichletCharacter::from_kronecker(FundamentalDiscriminant(12));
  const auto twice = spinsign::twist_series(spinsign::twist_series(lift, chi12), chi12);
  for (const auto& [n, v] : lift.values()) {
    if (std::gcd(n, 12LL) > 1)
      CHECK(twice.value(n) == 0);
    else
      CHECK(twice.value(n) == v);
  }
  CHECK(twice.k2() == lift.k2());
  CHECK(twice.level() == lift.level());
}
