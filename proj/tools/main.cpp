// spinsign: exact computations on ternary quadratic forms — theta series,
// spinor-genus cusp coefficients, Shimura lifts, and sign-change scans over
// split/inert prime branches of quadratic fields.
//
// Exit codes: 0 success, 1 a reported assertion failed, 2 input error,
// 3 input is internally inconsistent (e.g. a wrong claimed automorphism
// order in a class-set file).

#include <CLI11.hpp>
#include <json.hpp>

#include <spinsign/arith.hpp>
#include <spinsign/characters.hpp>
#include <spinsign/errors.hpp>
#include <spinsign/io.hpp>
#include <spinsign/quadform.hpp>
#include <spinsign/rational.hpp>
#include <spinsign/shimura.hpp>
#include <spinsign/signscan.hpp>
#include <spinsign/spinor.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::ordered_json;
using spinsign::Rational;

// Built-in class set: the level-576 spinor genus {Q1, Q2} with
// Q1 = x^2 + 48y^2 + 144z^2 and Q2 = 4x^2 + 48y^2 + 49z^2 + 4xz + 48yz,
// distinguished class Q2.  t = 1 is represented by Q1 but not by Q2, which
// makes the cusp coefficients of Q2 single-signed on one prime branch.
constexpr const char* kDefaultClassSet = R"({
  "kind": "spinor-genus",
  "distinguished": 1,
  "classes": [
    {"name": "Q1", "gram": [[2, 0, 0], [0, 96, 0], [0, 0, 288]], "aut": 8},
    {"name": "Q2", "gram": [[8, 0, 4], [0, 96, 48], [4, 48, 98]], "aut": 8}
  ]
})";

struct Options {
  std::string form_path;
  std::string classes_path;
  long long disc = 0;        // 0 = use the subcommand default
  std::string eps = "+";
  long long t = 1;
  int k = 1;
  long long prime_bound = 0; // 0 = use the subcommand default
  long long n_max = -1;      // -1 = use the subcommand default
  std::vector<long long> thresholds;
  long long exclude_level = 0; // 0 = no exclusion
  std::string format;        // empty = use the subcommand default
  std::string out_path;
};

int parse_epsilon(const std::string& text) {
  if (text == "+" || text == "+1") return 1;
  if (text == "-" || text == "-1") return -1;
  throw std::invalid_argument("epsilon must be '+' or '-'");
}

std::string resolve_format(const std::string& requested, const std::string& fallback) {
  if (requested.empty()) return fallback;
  if (requested != "csv" && requested != "json")
    throw std::invalid_argument("format must be 'csv' or 'json'");
  return requested;
}

long long checked_square_target(long long t, long long p) {
  const __int128 target = static_cast<__int128>(t) * p * p;
  if (target > (static_cast<__int128>(1) << 62))
    throw std::domain_error("target t*p^2 is too large for exact search");
  return static_cast<long long>(target);
}

spinsign::SpinorClassSet load_classes(const Options& opt) {
  if (opt.classes_path.empty()) return spinsign::parse_class_set(kDefaultClassSet);
  return spinsign::load_class_set(opt.classes_path);
}

void emit(const Options& opt, const std::string& content) {
  if (opt.out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(opt.out_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + opt.out_path);
  out << content;
}

ordered_json fraction_json(const Rational& q) { return spinsign::to_fraction_string(q); }

ordered_json fraction_array(const std::vector<Rational>& values) {
  ordered_json array = ordered_json::array();
  for (const Rational& q : values) array.push_back(fraction_json(q));
  return array;
}

ordered_json curve_json(const std::vector<std::pair<long long, double>>& points) {
  ordered_json array = ordered_json::array();
  for (const auto& [x, sum] : points) array.push_back(ordered_json::array({x, sum}));
  return array;
}

// The branch primes scan_square_class will visit: kronecker(D, p) = epsilon,
// p <= bound, minus any divisors of the excluded level.
std::vector<long long> kept_branch_primes(const spinsign::FundamentalDiscriminant& d, int epsilon,
                                          long long bound, long long exclude) {
  spinsign::PrimeSplitSequence sequence = spinsign::split_inert_primes(d, epsilon, bound);
  if (exclude > 0)
    std::erase_if(sequence.primes, [exclude](long long p) { return exclude % p == 0; });
  return sequence.primes;
}

// Builds the coefficient series a(t), a(t p^2) of the distinguished class'
// cusp part, indexed at 1 and at each listed prime.
spinsign::CoefficientSeries branch_series(const spinsign::SpinorClassSet& set, long long t, int k,
                                          const std::vector<long long>& primes) {
  spinsign::CoefficientSeries series(t, k, set.level(),
                                     spinsign::DirichletCharacter::principal(set.level()));
  std::vector<long long> targets;
  targets.reserve(primes.size() + 1);
  targets.push_back(t);
  for (long long p : primes) targets.push_back(checked_square_target(t, p));
  const std::vector<Rational> values = spinsign::cusp_coefficients(set, targets);
  series.set(1, values[0]);
  for (std::size_t i = 0; i < primes.size(); ++i) series.set(primes[i], values[i + 1]);
  return series;
}

ordered_json class_set_json(const spinsign::SpinorClassSet& set) {
  ordered_json names = ordered_json::array();
  for (const spinsign::FormClass& cls : set.classes()) names.push_back(cls.name);
  ordered_json doc;
  doc["classes"] = names;
  doc["distinguished"] = set.distinguished().name;
  doc["level"] = set.level();
  doc["determinant"] = set.determinant();
  return doc;
}

int run_theta(const Options& opt) {
  if (opt.form_path.empty()) throw std::invalid_argument("theta requires --form FILE");
  const long long n_max = opt.n_max >= 0 ? opt.n_max : 100;
  const spinsign::TernaryForm form = spinsign::load_form(opt.form_path);
  const std::vector<long long> counts = spinsign::theta_coefficients(form, n_max);
  if (resolve_format(opt.format, "csv") == "json") {
    ordered_json doc;
    doc["n_max"] = n_max;
    doc["coefficients"] = counts;
    emit(opt, doc.dump(2) + "\n");
  } else {
    std::ostringstream out;
    spinsign::write_theta_csv(out, counts);
    emit(opt, out.str());
  }
  return 0;
}

int run_counterexample(const Options& opt) {
  const spinsign::SpinorClassSet set = load_classes(opt);
  const long long bound = opt.prime_bound > 0 ? opt.prime_bound : 100;
  const long long t = opt.t;
  constexpr long long kDisc = -3;

  const spinsign::SpinorScanReport inert = spinsign::spinor_exception_scan(
      set, t, bound, [](long long p) { return spinsign::kronecker(kDisc, p) == -1; });
  const spinsign::SpinorScanReport split = spinsign::spinor_exception_scan(
      set, t, bound, [](long long p) { return spinsign::kronecker(kDisc, p) == 1; });
  const Rational base = spinsign::cusp_coefficient(set, t);

  const auto cusp_values = [](const spinsign::SpinorScanReport& report) {
    std::vector<Rational> values;
    values.reserve(report.rows.size());
    for (const spinsign::SpinorScanRow& row : report.rows) values.push_back(row.cusp);
    return values;
  };
  const std::vector<Rational> inert_values = cusp_values(inert);
  const std::vector<Rational> split_values = cusp_values(split);
  const spinsign::SignChangeReport inert_changes = spinsign::detect_sign_changes(inert_values);
  const spinsign::SignChangeReport split_changes = spinsign::detect_sign_changes(split_values);

  // Constancy a(t p^2) = a(t) is asserted on odd inert primes; p = 2 is
  // reported but exempt (t is representable 2-adically, so the 2-row of the
  // scan can legitimately differ).
  const bool base_nonzero = base != 0;
  bool odd_inert_constant = true;
  for (const spinsign::SpinorScanRow& row : inert.rows)
    if (row.p % 2 != 0 && row.cusp != base) odd_inert_constant = false;
  const bool inert_changes_zero = inert_changes.change_indices.empty();
  const bool ok = base_nonzero && odd_inert_constant && inert_changes_zero;

  if (resolve_format(opt.format, "json") == "csv") {
    // The CSV view is the inert-branch scan table; the verdict is the exit
    // status.
    std::ostringstream out;
    spinsign::write_scan_table_csv(out, inert);
    emit(opt, out.str());
    return ok ? 0 : 1;
  }

  const auto row_primes = [](const spinsign::SpinorScanReport& report) {
    ordered_json primes = ordered_json::array();
    for (const spinsign::SpinorScanRow& row : report.rows) primes.push_back(row.p);
    return primes;
  };
  const auto distinguished_counts = [&set](const spinsign::SpinorScanReport& report) {
    ordered_json counts = ordered_json::array();
    for (const spinsign::SpinorScanRow& row : report.rows)
      counts.push_back(row.class_counts[set.distinguished_index()]);
    return counts;
  };

  ordered_json doc;
  doc["fixture"] = class_set_json(set);
  doc["t"] = t;
  doc["discriminant"] = kDisc;
  doc["prime_bound"] = bound;
  doc["base_cusp"] = fraction_json(base);
  doc["base_counts"] = inert.base_counts;
  doc["inert"]["primes"] = row_primes(inert);
  doc["inert"]["cusp_values"] = fraction_array(inert_values);
  doc["inert"]["distinguished_counts"] = distinguished_counts(inert);
  doc["inert"]["sign_changes"] = inert_changes.change_indices.size();
  doc["split"]["primes"] = row_primes(split);
  doc["split"]["cusp_values"] = fraction_array(split_values);
  doc["split"]["sign_changes"] = split_changes.change_indices.size();
  if (!split_changes.change_indices.empty())
    doc["split"]["first_change_prime"] = split.rows[split_changes.change_indices.front()].p;
  else
    doc["split"]["first_change_prime"] = nullptr;
  doc["assertions"]["base_nonzero"] = base_nonzero;
  doc["assertions"]["odd_inert_constant"] = odd_inert_constant;
  doc["assertions"]["inert_changes_zero"] = inert_changes_zero;
  doc["ok"] = ok;
  emit(opt, doc.dump(2) + "\n");
  return ok ? 0 : 1;
}

int run_scan(const Options& opt) {
  const spinsign::SpinorClassSet set = load_classes(opt);
  const long long bound = opt.prime_bound > 0 ? opt.prime_bound : 1000;
  const spinsign::FundamentalDiscriminant disc(opt.disc != 0 ? opt.disc : -3);
  const int epsilon = parse_epsilon(opt.eps);
  const std::optional<long long> exclude =
      opt.exclude_level > 0 ? std::optional<long long>(opt.exclude_level) : std::nullopt;

  const std::vector<long long> primes =
      kept_branch_primes(disc, epsilon, bound, opt.exclude_level);
  const spinsign::CoefficientSeries series = branch_series(set, opt.t, opt.k, primes);
  const spinsign::SignChangeReport report =
      spinsign::scan_square_class(series, disc, epsilon, bound, exclude);

  resolve_format(opt.format, "json");  // validates; the scan report is always JSON

  ordered_json doc;
  doc["fixture"] = class_set_json(set);
  doc["t"] = opt.t;
  doc["k"] = opt.k;
  doc["discriminant"] = disc.value();
  doc["epsilon"] = epsilon;
  doc["prime_bound"] = bound;
  if (exclude)
    doc["excluded_level"] = *exclude;
  else
    doc["excluded_level"] = nullptr;
  doc["primes"] = report.primes;
  doc["values"] = fraction_array(report.values);
  doc["change_indices"] = report.change_indices;
  doc["zero_indices"] = report.zero_indices;
  doc["count"] = report.count();
  if (report.first_change_prime)
    doc["first_change_prime"] = *report.first_change_prime;
  else
    doc["first_change_prime"] = nullptr;

  if (!opt.thresholds.empty()) {
    const auto linear =
        spinsign::partial_sum_linear(series, disc, epsilon, opt.thresholds, exclude);
    const auto square =
        spinsign::partial_sum_square(series, disc, epsilon, opt.thresholds, exclude);
    doc["linear_sums"] = curve_json(linear);
    doc["square_sums"] = curve_json(square.points);
    if (square.fitted_growth)
      doc["fitted_growth"] = *square.fitted_growth;
    else
      doc["fitted_growth"] = nullptr;
  }

  emit(opt, doc.dump(2) + "\n");
  return 0;
}

int run_lift(const Options& opt) {
  const spinsign::SpinorClassSet set = load_classes(opt);
  const long long n_max = opt.n_max >= 0 ? opt.n_max : 20;
  if (n_max < 1) throw std::invalid_argument("lift requires --n-max at least 1");

  spinsign::CoefficientSeries series(opt.t, opt.k, set.level(),
                                     spinsign::DirichletCharacter::principal(set.level()));
  std::vector<long long> targets;
  targets.reserve(static_cast<std::size_t>(n_max));
  for (long long n = 1; n <= n_max; ++n) targets.push_back(checked_square_target(opt.t, n));
  const std::vector<Rational> values = spinsign::cusp_coefficients(set, targets);
  for (long long n = 1; n <= n_max; ++n)
    series.set(n, values[static_cast<std::size_t>(n - 1)]);

  const spinsign::LiftSeries lift = spinsign::shimura_lift(series);

  if (resolve_format(opt.format, "csv") == "json") {
    ordered_json entries = ordered_json::array();
    for (const auto& [n, value] : lift.values())
      entries.push_back(ordered_json::array({n, fraction_json(value)}));
    ordered_json doc;
    doc["fixture"] = class_set_json(set);
    doc["t"] = opt.t;
    doc["k"] = opt.k;
    doc["lift_weight"] = lift.k2();
    doc["lift_level"] = lift.level();
    doc["values"] = entries;
    emit(opt, doc.dump(2) + "\n");
  } else {
    std::ostringstream out;
    spinsign::write_series_csv(out, lift.values());
    emit(opt, out.str());
  }
  return 0;
}

int run_diag(const Options& opt) {
  const spinsign::SpinorClassSet set = load_classes(opt);
  const spinsign::FundamentalDiscriminant disc(opt.disc != 0 ? opt.disc : 5);
  const int epsilon = parse_epsilon(opt.eps);
  const long long bound = opt.prime_bound > 0 ? opt.prime_bound : 1000;
  const std::optional<long long> exclude =
      opt.exclude_level > 0 ? std::optional<long long>(opt.exclude_level) : std::nullopt;
  if (opt.thresholds.size() < 2)
    throw std::invalid_argument("diag requires at least two --thresholds for the growth fit");

  const std::vector<long long> primes =
      kept_branch_primes(disc, epsilon, bound, opt.exclude_level);
  const spinsign::CoefficientSeries series = branch_series(set, opt.t, opt.k, primes);

  const auto linear = spinsign::partial_sum_linear(series, disc, epsilon, opt.thresholds, exclude);
  const auto square = spinsign::partial_sum_square(series, disc, epsilon, opt.thresholds, exclude);
  const double growth = spinsign::require_growth_fit(square);

  // Quarter-density prime sum: over p <= x with kronecker(D, p) = epsilon and
  // the series' sign character opposite, sum log(p)/p; expected ~ (1/4) log x.
  const long long x_max = *std::max_element(opt.thresholds.begin(), opt.thresholds.end());
  const spinsign::DirichletCharacter psi =
      spinsign::psi_tN(spinsign::DirichletCharacter::principal(set.level()), opt.t, opt.k);
  const double mertens = spinsign::mertens_quarter_sum(psi, disc, epsilon, -1, x_max);
  const double ratio = x_max >= 2 ? mertens / std::log(static_cast<double>(x_max)) : 0.0;

  if (resolve_format(opt.format, "json") == "csv") {
    std::ostringstream out;
    out << "curve,x,sum\n";
    for (const auto& [x, sum] : linear)
      out << "linear," << x << ',' << spinsign::format_double(sum) << '\n';
    for (const auto& [x, sum] : square.points)
      out << "square," << x << ',' << spinsign::format_double(sum) << '\n';
    out << "growth_fit," << x_max << ',' << spinsign::format_double(growth) << '\n';
    out << "mertens_sum," << x_max << ',' << spinsign::format_double(mertens) << '\n';
    out << "mertens_ratio," << x_max << ',' << spinsign::format_double(ratio) << '\n';
    emit(opt, out.str());
    return 0;
  }

  ordered_json doc;
  doc["fixture"] = class_set_json(set);
  doc["t"] = opt.t;
  doc["k"] = opt.k;
  doc["discriminant"] = disc.value();
  doc["epsilon"] = epsilon;
  doc["prime_bound"] = bound;
  doc["thresholds"] = opt.thresholds;
  doc["linear_sums"] = curve_json(linear);
  doc["square_sums"] = curve_json(square.points);
  doc["fitted_growth"] = growth;
  doc["mertens"]["x"] = x_max;
  doc["mertens"]["sum"] = mertens;
  doc["mertens"]["ratio"] = ratio;
  emit(opt, doc.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{
      "Exact theta series, spinor-genus cusp coefficients, Shimura lifts, and "
      "prime-branch sign-change scans for ternary quadratic forms."};
  app.require_subcommand(1);

  const auto add_classes = [&opt](CLI::App* cmd) {
    cmd->add_option("--classes", opt.classes_path,
                    "Class-set JSON file (default: built-in {Q1, Q2} fixture)");
  };
  const auto add_t_k = [&opt](CLI::App* cmd) {
    cmd->add_option("--t", opt.t, "Squarefree base index t of the square class t*p^2")
        ->capture_default_str();
    cmd->add_option("--k", opt.k, "Half-integral weight parameter (form weight k + 1/2)")
        ->capture_default_str();
  };
  const auto add_branch = [&opt](CLI::App* cmd, const char* disc_default) {
    cmd->add_option("--disc", opt.disc,
                    std::string("Fundamental discriminant D (default: ") + disc_default + ")");
    cmd->add_option("--eps", opt.eps, "Branch selector: '+' split, '-' inert")
        ->check(CLI::IsMember({"+", "-", "+1", "-1"}))
        ->capture_default_str();
    cmd->add_option("--exclude-level", opt.exclude_level,
                    "Drop branch primes dividing this level (default: keep all)");
  };
  const auto add_format = [&opt](CLI::App* cmd, const char* fallback) {
    cmd->add_option("--format", opt.format,
                    std::string("Output format: csv or json (default: ") + fallback + ")")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", opt.out_path, "Output file (default: stdout)");
  };

  CLI::App* theta = app.add_subcommand("theta", "Theta-series coefficients r(n, Q) of one form");
  theta->add_option("--form", opt.form_path, "Form JSON file ({\"gram\": 3x3 matrix})")
      ->required();
  theta->add_option("--n-max", opt.n_max, "Largest n (default: 100)");
  add_format(theta, "csv");

  CLI::App* counter = app.add_subcommand(
      "counterexample",
      "Constant-sign cusp coefficients a(t p^2) on the inert branch of Q(sqrt(-3))");
  add_classes(counter);
  counter->add_option("--t", opt.t, "Squarefree base index (default: 1)")->capture_default_str();
  counter->add_option("--prime-bound", opt.prime_bound, "Scan primes up to here (default: 100)");
  add_format(counter, "json");

  CLI::App* scan = app.add_subcommand(
      "scan", "Sign changes of a(t p^2) over one split/inert prime branch");
  add_classes(scan);
  add_t_k(scan);
  add_branch(scan, "-3");
  scan->add_option("--prime-bound", opt.prime_bound, "Scan primes up to here (default: 1000)");
  scan->add_option("--thresholds", opt.thresholds,
                   "Also report partial-sum curves at these x values")
      ->delimiter(',');
  add_format(scan, "json");

  CLI::App* lift = app.add_subcommand(
      "lift", "Shimura lift of the distinguished class' cusp coefficient series");
  add_classes(lift);
  add_t_k(lift);
  lift->add_option("--n-max", opt.n_max, "Populate lift coefficients for n up to here (default: 20)");
  add_format(lift, "csv");

  CLI::App* diag = app.add_subcommand(
      "diag",
      "Partial-sum growth diagnostics and the quarter-density Mertens sum on one branch");
  add_classes(diag);
  add_t_k(diag);
  add_branch(diag, "5");
  diag->add_option("--prime-bound", opt.prime_bound,
                   "Populate series at branch primes up to here (default: 1000); "
                   "partial sums truncate here")
      ->capture_default_str();
  diag->add_option("--thresholds", opt.thresholds, "Partial-sum evaluation points (need >= 2)")
      ->delimiter(',');
  add_format(diag, "json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (theta->parsed()) return run_theta(opt);
    if (counter->parsed()) return run_counterexample(opt);
    if (scan->parsed()) return run_scan(opt);
    if (lift->parsed()) return run_lift(opt);
    if (diag->parsed()) return run_diag(opt);
    std::cerr << "error: no subcommand selected\n";
    return 2;
  } catch (const spinsign::consistency_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
