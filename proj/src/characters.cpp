#include <spinsign/characters.hpp>

#include <numeric>
#include <stdexcept>
#include <utility>

namespace spinsign {

namespace {

// Dense tables keep every operation exact and O(1) per evaluation; this caps
// the memory a single character may claim.
constexpr long long kMaxModulus = 1'000'000;

// Validating an untrusted table costs a prime-indexed double loop, so
// ingestion accepts only moduli small enough for that to stay cheap.
constexpr long long kMaxTableModulus = 10'000;

long long checked_lcm(long long a, long long b) {
  long long g = std::gcd(a, b);
  long long l = (a / g) * b;
  if (l > kMaxModulus) {
    throw std::invalid_argument("character modulus exceeds supported bound");
  }
  return l;
}

}  // namespace

UnitValue UnitValue::root(long long q, long long e) {
  if (q < 1) throw std::invalid_argument("root of unity needs a positive order");
  e %= q;
  if (e < 0) e += q;
  if (e == 0) {
    q = 1;
  } else {
    long long g = std::gcd(e, q);
    q /= g;
    e /= g;
  }
  UnitValue v;
  v.q_ = q;
  v.e_ = e;
  return v;
}

int UnitValue::real_sign() const {
  if (q_ == 0) return 0;
  if (q_ == 1) return 1;
  if (q_ == 2) return -1;
  throw std::domain_error("real_sign of a non-real unit value");
}

UnitValue UnitValue::operator*(const UnitValue& other) const {
  if (is_zero() || other.is_zero()) return zero();
  long long q = q_ / std::gcd(q_, other.q_) * other.q_;
  return root(q, e_ * (q / q_) + other.e_ * (q / other.q_));
}

UnitValue UnitValue::conjugate() const {
  if (is_zero()) return zero();
  return root(q_, q_ - e_);
}

namespace {

// Smallest divisor d of n such that the table is constant on every residue
// class mod d of the units mod n; that divisor is the conductor.
long long compute_conductor(long long n, const std::vector<UnitValue>& values) {
  for (long long d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    std::vector<long long> first_in_class(d, -1);
    bool constant = true;
    for (long long a = 0; a < n && constant; ++a) {
      if (std::gcd(a, n) != 1) continue;
      long long r = a % d;
      if (first_in_class[r] < 0) {
        first_in_class[r] = a;
      } else if (!(values[a] == values[first_in_class[r]])) {
        constant = false;
      }
    }
    if (constant) return d;
  }
  return n;
}

}  // namespace

DirichletCharacter::DirichletCharacter(long long modulus, std::vector<UnitValue> values)
    : modulus_(modulus), values_(std::move(values)) {
  if (modulus_ < 1) throw std::invalid_argument("character modulus must be positive");
  if (modulus_ > kMaxModulus) {
    throw std::invalid_argument("character modulus exceeds supported bound");
  }
  if (static_cast<long long>(values_.size()) != modulus_) {
    throw std::invalid_argument("character table size must equal the modulus");
  }
  for (long long a = 0; a < modulus_; ++a) {
    bool unit = std::gcd(a, modulus_) == 1;
    if (unit == values_[a].is_zero()) {
      throw std::invalid_argument("character table must vanish exactly off the units");
    }
  }
  if (!(values_[1 % modulus_] == UnitValue::one())) {
    throw std::invalid_argument("character table must take value 1 at 1");
  }
  conductor_ = compute_conductor(modulus_, values_);
}

DirichletCharacter DirichletCharacter::principal(long long modulus) {
  if (modulus < 1) throw std::invalid_argument("character modulus must be positive");
  std::vector<UnitValue> values;
  values.reserve(modulus);
  for (long long a = 0; a < modulus; ++a) {
    values.push_back(std::gcd(a, modulus) == 1 ? UnitValue::one() : UnitValue::zero());
  }
  return DirichletCharacter(modulus, std::move(values));
}

DirichletCharacter DirichletCharacter::from_kronecker(const FundamentalDiscriminant& d) {
  long long disc = d.value();
  long long modulus = disc < 0 ? -disc : disc;
  std::vector<UnitValue> values;
  values.reserve(modulus);
  for (long long a = 0; a < modulus; ++a) {
    if (std::gcd(a, modulus) != 1) {
      values.push_back(UnitValue::zero());
    } else {
      values.push_back(kronecker(disc, a) == 1 ? UnitValue::one() : UnitValue::minus_one());
    }
  }
  return DirichletCharacter(modulus, std::move(values));
}

DirichletCharacter DirichletCharacter::kronecker_character(long long m) {
  if (m == 0) throw std::invalid_argument("kronecker character needs a nonzero argument");
  long long modulus = 4 * (m < 0 ? -m : m);
  if (modulus > kMaxModulus) {
    throw std::invalid_argument("character modulus exceeds supported bound");
  }
  std::vector<UnitValue> values;
  values.reserve(modulus);
  for (long long a = 0; a < modulus; ++a) {
    if (std::gcd(a, modulus) != 1) {
      values.push_back(UnitValue::zero());
    } else {
      values.push_back(kronecker(m, a) == 1 ? UnitValue::one() : UnitValue::minus_one());
    }
  }
  return DirichletCharacter(modulus, std::move(values));
}

DirichletCharacter DirichletCharacter::from_table(long long modulus,
                                                  std::vector<UnitValue> values) {
  if (modulus > kMaxTableModulus) {
    throw std::invalid_argument("table ingestion supports moduli up to 10000");
  }
  DirichletCharacter chi(modulus, std::move(values));
  // The constructor checked the zero pattern and chi(1).  Checking
  // chi(p*x) = chi(p)chi(x) for every prime p below the modulus extends to
  // complete multiplicativity by induction on the smallest prime factor.
  if (modulus > 2) {
    PrimeSieve sieve(modulus);
    for (long long p : sieve.primes()) {
      if (p >= modulus) break;
      for (long long x = 0; x < modulus; ++x) {
        if (!(chi.values_[p] * chi.values_[x] == chi.at(p * x))) {
          throw std::invalid_argument("character table is not completely multiplicative");
        }
      }
    }
  }
  return chi;
}

const UnitValue& DirichletCharacter::at(long long n) const {
  long long r = n % modulus_;
  if (r < 0) r += modulus_;
  return values_[r];
}

bool DirichletCharacter::is_real() const {
  for (const UnitValue& v : values_) {
    if (!v.is_real()) return false;
  }
  return true;
}

DirichletCharacter DirichletCharacter::primitive_part() const {
  if (conductor_ == modulus_) return *this;
  std::vector<UnitValue> values;
  values.reserve(conductor_);
  for (long long a = 0; a < conductor_; ++a) {
    if (std::gcd(a, conductor_) != 1) {
      values.push_back(UnitValue::zero());
      continue;
    }
    // Lift a to a class mod modulus_ coprime to modulus_; one always exists.
    long long b = a;
    while (std::gcd(b, modulus_) != 1) b += conductor_;
    values.push_back(values_[b % modulus_]);
  }
  return DirichletCharacter(conductor_, std::move(values));
}

DirichletCharacter multiply(const DirichletCharacter& a, const DirichletCharacter& b) {
  long long modulus = checked_lcm(a.modulus(), b.modulus());
  std::vector<UnitValue> values;
  values.reserve(modulus);
  for (long long x = 0; x < modulus; ++x) {
    if (std::gcd(x, modulus) != 1) {
      values.push_back(UnitValue::zero());
    } else {
      values.push_back(a.at(x) * b.at(x));
    }
  }
  return DirichletCharacter(modulus, std::move(values));
}

DirichletCharacter psi_tN(const DirichletCharacter& psi, long long t, int k) {
  if (t < 1 || !is_squarefree(t)) {
    throw std::invalid_argument("square class t must be positive and squarefree");
  }
  long long m = (k % 2 != 0) ? -t : t;
  return multiply(psi, DirichletCharacter::kronecker_character(m));
}

bool almost_equal(const DirichletCharacter& a, const DirichletCharacter& b) {
  DirichletCharacter pa = a.primitive_part();
  DirichletCharacter pb = b.primitive_part();
  long long m1 = pa.modulus();
  long long m2 = pb.modulus();
  long long l = m1 / std::gcd(m1, m2) * m2;
  for (long long x = 1; x <= l; ++x) {
    if (std::gcd(x, m1) != 1 || std::gcd(x, m2) != 1) continue;
    if (!(pa.at(x) == pb.at(x))) return false;
  }
  return true;
}

}  // namespace spinsign
