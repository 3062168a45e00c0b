#include <spinsign/spinor.hpp>

#include <spinsign/arith.hpp>
#include <spinsign/errors.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>

namespace spinsign {

namespace {

constexpr long long kMaxScanTarget = 1LL << 62;

// Weighted mean of per-class counts with weights 1/|O(K)|.
Rational mass_average(const SpinorClassSet& s, const std::vector<long long>& counts) {
  Rational numerator = 0;
  Rational total_mass = 0;
  for (std::size_t j = 0; j < s.classes().size(); ++j) {
    const long aut = static_cast<long>(s.classes()[j].aut_order);
    numerator += Rational(static_cast<long>(counts[j])) / aut;
    total_mass += Rational(1) / aut;
  }
  return numerator / total_mass;
}

// One bulk enumeration per class, sharing the targets.
std::vector<std::vector<long long>> counts_by_class(const SpinorClassSet& s,
                                                    const std::vector<long long>& targets) {
  std::vector<std::vector<long long>> per_class;
  per_class.reserve(s.classes().size());
  for (const auto& cls : s.classes())
    per_class.push_back(representation_counts(cls.form, targets));
  return per_class;
}

std::vector<long long> counts_at(const std::vector<std::vector<long long>>& per_class,
                                 std::size_t index) {
  std::vector<long long> counts;
  counts.reserve(per_class.size());
  for (const auto& column : per_class) counts.push_back(column[index]);
  return counts;
}

void require_spinor_kind(const SpinorClassSet& s) {
  if (s.kind() != ClassSetKind::spinor_genus)
    throw std::invalid_argument("operation requires a spinor-genus class set");
}

}  // namespace

SpinorClassSet::SpinorClassSet(ClassSetKind kind, std::size_t distinguished,
                               const std::vector<ClassInput>& entries)
    : kind_(kind), distinguished_(distinguished), level_(0), determinant_(0) {
  if (entries.empty())
    throw std::invalid_argument("class set must contain at least one class");
  if (distinguished >= entries.size())
    throw std::invalid_argument("distinguished class index is out of range");
  classes_.reserve(entries.size());
  for (const auto& entry : entries) {
    const long long aut = automorphism_order(entry.form);
    if (entry.claimed_aut_order && *entry.claimed_aut_order != aut)
      throw consistency_error("class '" + entry.name + "' claims automorphism order " +
                              std::to_string(*entry.claimed_aut_order) +
                              " but recomputation gives " + std::to_string(aut));
    const auto [level, det] = level_and_determinant(entry.form);
    if (classes_.empty()) {
      level_ = level;
      determinant_ = det;
    } else if (level != level_ || det != determinant_) {
      throw std::invalid_argument("class '" + entry.name + "' has level " +
                                  std::to_string(level) + " and determinant " +
                                  std::to_string(det) + ", but the set started at (" +
                                  std::to_string(level_) + ", " + std::to_string(determinant_) +
                                  ")");
    }
    classes_.push_back({entry.name, entry.form, aut});
  }
}

Rational siegel_weil_average(const SpinorClassSet& s, long long n) {
  std::vector<long long> counts;
  counts.reserve(s.classes().size());
  for (const auto& cls : s.classes()) counts.push_back(representation_count(cls.form, n));
  return mass_average(s, counts);
}

std::vector<Rational> siegel_weil_averages(const SpinorClassSet& s,
                                           const std::vector<long long>& targets) {
  const auto per_class = counts_by_class(s, targets);
  std::vector<Rational> averages;
  averages.reserve(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i)
    averages.push_back(mass_average(s, counts_at(per_class, i)));
  return averages;
}

Rational cusp_coefficient(const SpinorClassSet& s, long long n) {
  require_spinor_kind(s);
  const long long r = representation_count(s.distinguished().form, n);
  return Rational(static_cast<long>(r)) - siegel_weil_average(s, n);
}

std::vector<Rational> cusp_coefficients(const SpinorClassSet& s,
                                        const std::vector<long long>& targets) {
  require_spinor_kind(s);
  const auto per_class = counts_by_class(s, targets);
  const std::size_t dist = s.distinguished_index();
  std::vector<Rational> cusps;
  cusps.reserve(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const auto counts = counts_at(per_class, i);
    cusps.push_back(Rational(static_cast<long>(counts[dist])) - mass_average(s, counts));
  }
  return cusps;
}

ThetaDecomposition decompose_theta(const SpinorClassSet& spinor_set,
                                   const SpinorClassSet* genus_set, long long n_max) {
  if (n_max < 1) throw std::invalid_argument("decomposition range must be positive");
  require_spinor_kind(spinor_set);
  if (genus_set != nullptr) {
    if (genus_set->kind() != ClassSetKind::genus)
      throw std::invalid_argument("second class set must carry the genus kind");
    if (genus_set->level() != spinor_set.level() ||
        genus_set->determinant() != spinor_set.determinant())
      throw std::invalid_argument(
          "genus and spinor-genus sets disagree on level or determinant");
    for (const auto& cls : spinor_set.classes()) {
      const bool found = std::any_of(
          genus_set->classes().begin(), genus_set->classes().end(),
          [&](const FormClass& g) { return g.form.gram() == cls.form.gram(); });
      if (!found)
        throw std::invalid_argument("genus set is missing spinor class '" + cls.name + "'");
    }
  }

  // Dense sweeps per class, then mass averages per coefficient.
  const auto average_of = [n_max](const SpinorClassSet& s) {
    std::vector<std::vector<long long>> thetas;
    thetas.reserve(s.classes().size());
    for (const auto& cls : s.classes())
      thetas.push_back(theta_coefficients(cls.form, n_max));
    std::vector<Rational> averages;
    averages.reserve(static_cast<std::size_t>(n_max) + 1);
    for (std::size_t n = 0; n <= static_cast<std::size_t>(n_max); ++n) {
      std::vector<long long> counts;
      counts.reserve(s.classes().size());
      for (const auto& theta : thetas) counts.push_back(theta[n]);
      averages.push_back(mass_average(s, counts));
    }
    return averages;
  };

  ThetaDecomposition dec;
  dec.n_max = n_max;
  dec.theta = theta_coefficients(spinor_set.distinguished().form, n_max);
  const auto spinor_averages = average_of(spinor_set);
  dec.f_part.reserve(spinor_averages.size());
  for (std::size_t n = 0; n < spinor_averages.size(); ++n)
    dec.f_part.push_back(Rational(static_cast<long>(dec.theta[n])) - spinor_averages[n]);
  if (genus_set != nullptr) {
    auto genus_averages = average_of(*genus_set);
    std::vector<Rational> h_part;
    h_part.reserve(genus_averages.size());
    for (std::size_t n = 0; n < genus_averages.size(); ++n)
      h_part.push_back(spinor_averages[n] - genus_averages[n]);
    dec.e_part = std::move(genus_averages);
    dec.h_part = std::move(h_part);
  }
  return dec;
}

SpinorScanReport spinor_exception_scan(const SpinorClassSet& s, long long t,
                                       long long prime_bound,
                                       const std::function<bool(long long)>& residue_filter) {
  require_spinor_kind(s);
  if (t < 1 || !is_squarefree(t))
    throw std::invalid_argument("square class index must be a positive squarefree integer");

  std::vector<long long> primes;
  if (prime_bound >= 2) {
    PrimeSieve sieve(prime_bound);
    for (long long p : sieve.primes())
      if (!residue_filter || residue_filter(p)) primes.push_back(p);
  }

  // Single bulk pass per class over t and every t*p^2.
  std::vector<long long> targets = {t};
  for (long long p : primes) {
    const __int128 target = static_cast<__int128>(t) * p * p;
    if (target > kMaxScanTarget)
      throw std::domain_error("scan target t*p^2 is too large for exact search");
    targets.push_back(static_cast<long long>(target));
  }
  const auto per_class = counts_by_class(s, targets);

  SpinorScanReport report;
  report.t = t;
  report.base_counts = counts_at(per_class, 0);
  report.rows.reserve(primes.size());
  const std::size_t dist = s.distinguished_index();
  for (std::size_t i = 0; i < primes.size(); ++i) {
    SpinorScanRow row;
    row.p = primes[i];
    row.class_counts = counts_at(per_class, i + 1);
    row.spinor_average = mass_average(s, row.class_counts);
    row.cusp = Rational(static_cast<long>(row.class_counts[dist])) - row.spinor_average;
    row.stable = row.class_counts == report.base_counts;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace spinsign
