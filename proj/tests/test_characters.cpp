#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <spinsign/characters.hpp>

#include <numeric>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"

using spinsign::DirichletCharacter;
using spinsign::FundamentalDiscriminant;
using spinsign::UnitValue;
using spinsign::almost_equal;
using spinsign::kronecker;
using spinsign::multiply;
using spinsign::psi_tN;

namespace {

// Characters exercised by the property tests below.
std::vector<DirichletCharacter> character_pool() {
  std::vector<DirichletCharacter> pool;
  pool.push_back(DirichletCharacter::principal(1));
  pool.push_back(DirichletCharacter::principal(4));
  pool.push_back(DirichletCharacter::principal(12));
  pool.push_back(DirichletCharacter::principal(576));
  for (long long d : {-4, -3, 1, 5, 8, -8, 12, -24, 21}) {
    pool.push_back(DirichletCharacter::from_kronecker(FundamentalDiscriminant(d)));
  }
  pool.push_back(DirichletCharacter::kronecker_character(3));
  pool.push_back(DirichletCharacter::kronecker_character(-1));
  pool.push_back(DirichletCharacter::kronecker_character(6));
  return pool;
}

}  // namespace

TEST_CASE("unit values normalize and multiply exactly") {
  CHECK(UnitValue::root(4, 1) * UnitValue::root(4, 1) == UnitValue::minus_one());
  CHECK(UnitValue::root(4, 1) * UnitValue::root(4, 3) == UnitValue::one());
  CHECK(UnitValue::root(6, 2) == UnitValue::root(3, 1));
  CHECK(UnitValue::root(6, 8) == UnitValue::root(3, 1));
  CHECK(UnitValue::root(5, -1) == UnitValue::root(5, 4));
  CHECK(UnitValue::root(1, 7) == UnitValue::one());

  CHECK(UnitValue::zero().is_zero());
  CHECK(UnitValue::zero() * UnitValue::root(7, 3) == UnitValue::zero());
  CHECK(UnitValue::root(4, 1).conjugate() == UnitValue::root(4, 3));
  CHECK(UnitValue::one().conjugate() == UnitValue::one());

  CHECK(UnitValue::one().is_real());
  CHECK(UnitValue::minus_one().is_real());
  CHECK(UnitValue::zero().is_real());
  CHECK_FALSE(UnitValue::root(4, 1).is_real());

  CHECK(UnitValue::one().real_sign() == 1);
  CHECK(UnitValue::minus_one().real_sign() == -1);
  CHECK(UnitValue::zero().real_sign() == 0);
  CHECK_THROWS_AS(UnitValue::root(4, 1).real_sign(), std::domain_error);

  CHECK_THROWS_AS(UnitValue::root(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(UnitValue::root(-3, 1), std::invalid_argument);
}

TEST_CASE("kronecker characters match the symbol they tabulate") {
  for (long long d : {-8, -4, -3, 1, 5, 8, 12, -24}) {
    DirichletCharacter chi = DirichletCharacter::from_kronecker(FundamentalDiscriminant(d));
    CHECK(chi.modulus() == (d < 0 ? -d : d));
    CHECK(chi.conductor() == chi.modulus());
    for (long long n = -30; n <= 30; ++n) {
      int expected = kronecker(d, n);
      if (expected == 0) {
        CHECK(chi.at(n).is_zero());
      } else {
        CHECK(chi.at(n).real_sign() == expected);
      }
    }
  }

  // The lower-argument character of a non-discriminant: (m/.) mod 4|m|.
  // On arguments sharing a factor with the modulus the character is zero even
  // where the raw symbol is not ((3/2) = -1 but (3/14) = +1, so no periodic
  // function can follow the symbol there).
  DirichletCharacter chi3 = DirichletCharacter::kronecker_character(3);
  CHECK(chi3.modulus() == 12);
  for (long long n = 1; n <= 48; ++n) {
    if (std::gcd(n, chi3.modulus()) != 1) {
      CHECK(chi3.at(n).is_zero());
    } else {
      CHECK(chi3.at(n).real_sign() == kronecker(3, n));
    }
  }
  // (3/.) and (12/.) agree on odd arguments, so as tables mod 12 they
  // coincide.
  CHECK(chi3 == DirichletCharacter::from_kronecker(FundamentalDiscriminant(12)));
}

TEST_CASE("character tables are completely multiplicative") {
  for (const DirichletCharacter& chi : character_pool()) {
    long long n = chi.modulus();
    for (long long a = 0; a < n && a < 60; ++a) {
      for (long long b = 0; b < n && b < 60; ++b) {
        CHECK(chi.at(a) * chi.at(b) == chi.at(a * b));
      }
    }
    // Periodicity in both directions.
    CHECK(chi.at(-1) == chi.at(n - 1));
    CHECK(chi.at(n + 1) == chi.at(1));
  }
}

TEST_CASE("conductor identifies the primitive core") {
  CHECK(DirichletCharacter::principal(1).conductor() == 1);
  CHECK(DirichletCharacter::principal(12).conductor() == 1);
  CHECK(DirichletCharacter::principal(576).conductor() == 1);

  DirichletCharacter chi_m3 = DirichletCharacter::from_kronecker(FundamentalDiscriminant(-3));
  CHECK(chi_m3.conductor() == 3);

  // chi_{-3} induced up to modulus 12 keeps conductor 3, and its primitive
  // part is chi_{-3} itself.
  DirichletCharacter induced = multiply(chi_m3, DirichletCharacter::principal(12));
  CHECK(induced.modulus() == 12);
  CHECK(induced.conductor() == 3);
  CHECK(induced.primitive_part() == chi_m3);

  // A primitive character is its own primitive part.
  CHECK(chi_m3.primitive_part() == chi_m3);
}

TEST_CASE("product of coprime quadratic characters multiplies discriminants") {
  DirichletCharacter chi_m3 = DirichletCharacter::from_kronecker(FundamentalDiscriminant(-3));
  DirichletCharacter chi_m4 = DirichletCharacter::from_kronecker(FundamentalDiscriminant(-4));
  DirichletCharacter chi_12 = DirichletCharacter::from_kronecker(FundamentalDiscriminant(12));
  CHECK(multiply(chi_m3, chi_m4) == chi_12);

  // Spot values of chi_12: +1 at 1, 11; -1 at 5, 7.
  CHECK(chi_12.at(1).real_sign() == 1);
  CHECK(chi_12.at(5).real_sign() == -1);
  CHECK(chi_12.at(7).real_sign() == -1);
  CHECK(chi_12.at(11).real_sign() == 1);

  // Multiplying by a principal character only inflates the modulus.
  DirichletCharacter inflated = multiply(chi_m4, DirichletCharacter::principal(3));
  CHECK(inflated.modulus() == 12);
  CHECK(inflated.conductor() == 4);
}

TEST_CASE("a quartic character mod 5 is recognized as non-real") {
  // chi(2) = i generates the order-4 character mod 5:
  // chi(1), chi(2), chi(3), chi(4) = 1, i, -i, -1.
  std::vector<UnitValue> values = {UnitValue::zero(), UnitValue::one(), UnitValue::root(4, 1),
                                   UnitValue::root(4, 3), UnitValue::minus_one()};
  DirichletCharacter chi = DirichletCharacter::from_table(5, values);
  CHECK_FALSE(chi.is_real());
  CHECK(chi.conductor() == 5);
  CHECK(chi.at(7) == UnitValue::root(4, 1));

  for (const DirichletCharacter& real_chi : character_pool()) {
    CHECK(real_chi.is_real());
  }
}

TEST_CASE("table ingestion rejects malformed data") {
  // Wrong zero pattern: value at a non-coprime class.
  CHECK_THROWS_AS(DirichletCharacter::from_table(
                      4, {UnitValue::zero(), UnitValue::one(), UnitValue::one(), UnitValue::one()}),
                  std::invalid_argument);
  // Missing value at a coprime class.
  CHECK_THROWS_AS(DirichletCharacter::from_table(
                      4, {UnitValue::zero(), UnitValue::one(), UnitValue::zero(), UnitValue::zero()}),
                  std::invalid_argument);
  // chi(1) must be 1.
  CHECK_THROWS_AS(
      DirichletCharacter::from_table(
          4, {UnitValue::zero(), UnitValue::minus_one(), UnitValue::zero(), UnitValue::one()}),
      std::invalid_argument);
  // Not multiplicative: chi(2)chi(3) != chi(6 mod 5).
  CHECK_THROWS_AS(DirichletCharacter::from_table(
                      5, {UnitValue::zero(), UnitValue::one(), UnitValue::minus_one(),
                          UnitValue::one(), UnitValue::one()}),
                  std::invalid_argument);
  // Size mismatch.
  CHECK_THROWS_AS(DirichletCharacter::from_table(3, {UnitValue::zero(), UnitValue::one()}),
                  std::invalid_argument);

  // A valid quadratic table passes and matches its kronecker twin.
  std::vector<UnitValue> chi_m4_table = {UnitValue::zero(), UnitValue::one(), UnitValue::zero(),
                                         UnitValue::minus_one()};
  CHECK(DirichletCharacter::from_table(4, chi_m4_table) ==
        DirichletCharacter::from_kronecker(FundamentalDiscriminant(-4)));
}

TEST_CASE("half-integral weight character twist") {
  DirichletCharacter principal_576 = DirichletCharacter::principal(576);

  // Weight 3/2 (k = 1), t = 1: psi_{1,N}(d) = (-1/d), evaluated through a
  // principal character of modulus 576.
  DirichletCharacter twisted = psi_tN(principal_576, 1, 1);
  CHECK(twisted.modulus() == 576);
  CHECK(twisted.at(5).real_sign() == 1);
  CHECK(twisted.at(7).real_sign() == -1);
  CHECK(twisted.at(11).real_sign() == -1);
  CHECK(twisted.at(13).real_sign() == 1);

  // Even k with t = 1 contributes the trivial symbol (1/d).
  DirichletCharacter even_twist = psi_tN(DirichletCharacter::principal(4), 1, 2);
  CHECK(even_twist == DirichletCharacter::principal(4));

  // Only the parity of k matters.
  for (const DirichletCharacter& psi : character_pool()) {
    for (long long t : {1, 2, 3, 5, 6}) {
      CHECK(psi_tN(psi, t, 1) == psi_tN(psi, t, 3));
      CHECK(psi_tN(psi, t, 2) == psi_tN(psi, t, 4));
    }
  }

  // t must be positive and squarefree.
  CHECK_THROWS_AS(psi_tN(principal_576, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(psi_tN(principal_576, -2, 1), std::invalid_argument);
  CHECK_THROWS_AS(psi_tN(principal_576, 12, 1), std::invalid_argument);
}

TEST_CASE("twist of the chi_12 nebentypus is almost chi_{-3}") {
  DirichletCharacter chi_12 = DirichletCharacter::from_kronecker(FundamentalDiscriminant(12));
  DirichletCharacter chi_m3 = DirichletCharacter::from_kronecker(FundamentalDiscriminant(-3));

  DirichletCharacter twisted = psi_tN(chi_12, 1, 1);
  CHECK(twisted.conductor() == 3);
  CHECK(twisted.primitive_part() == chi_m3);
  CHECK(almost_equal(twisted, chi_m3));

  // Where both are nonzero they agree: chi_12(d) * (-1/d) = chi_{-3}(d).
  for (long long d = 1; d <= 48; d += 2) {
    if (d % 3 == 0) continue;
    CHECK(twisted.at(d) == chi_m3.at(d));
  }
}

TEST_CASE("almost_equal ignores the inducing modulus") {
  DirichletCharacter chi_m3 = DirichletCharacter::from_kronecker(FundamentalDiscriminant(-3));
  DirichletCharacter induced = multiply(chi_m3, DirichletCharacter::principal(576));
  CHECK(almost_equal(chi_m3, induced));
  CHECK(almost_equal(DirichletCharacter::principal(12), DirichletCharacter::principal(1)));
  CHECK_FALSE(almost_equal(chi_m3, DirichletCharacter::from_kronecker(FundamentalDiscriminant(12))));
  CHECK_FALSE(almost_equal(chi_m3, DirichletCharacter::principal(1)));

  // Equivalence relation on the pool.
  std::vector<DirichletCharacter> pool = character_pool();
  for (size_t i = 0; i < pool.size(); ++i) {
    CHECK(almost_equal(pool[i], pool[i]));
    for (size_t j = 0; j < pool.size(); ++j) {
      CHECK(almost_equal(pool[i], pool[j]) == almost_equal(pool[j], pool[i]));
      for (size_t l = 0; l < pool.size(); ++l) {
        if (almost_equal(pool[i], pool[j]) && almost_equal(pool[j], pool[l])) {
          CHECK(almost_equal(pool[i], pool[l]));
        }
      }
    }
  }
}
