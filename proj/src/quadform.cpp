#include <spinsign/quadform.hpp>

#include <spinsign/arith.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace spinsign {

namespace {

constexpr long long kMaxEntry = 2'000'000;
constexpr long long kMaxDet = 4'000'000'000'000'000'000LL;
// Cap on 2 * n * a11 * m2p; chosen so every derived quantity (squares,
// stride differences and their updates) stays inside signed 64 bits.
constexpr long long kMaxSearch = 1LL << 59;
constexpr long long kMaxThetaLength = 20'000'000;
// Below this many candidates per progression a plain scan beats the
// residue-class machinery.
constexpr long long kStrideThreshold = 1152;

// Data of the completed square: with A the doubled Gram matrix,
//   m2p * a11 * (x^T A x) = m2p * u^2 + v^2 + a11 * det(A) * x3^2
// where u = a11 x1 + a12 x2 + a13 x3 and v = m2p x2 + r x3.
struct Completion {
  long long a11, a12, a13;
  long long m2p;  // a11 a22 - a12^2
  long long r;    // a11 a23 - a12 a13
  long long det;  // det(A)
};

Completion completion_of(const TernaryForm& q) {
  const Gram& g = q.gram();
  Completion c;
  c.a11 = g[0][0];
  c.a12 = g[0][1];
  c.a13 = g[0][2];
  c.m2p = g[0][0] * g[1][1] - g[0][1] * g[0][1];
  c.r = g[0][0] * g[1][2] - g[0][1] * g[0][2];
  c.det = q.det_gram();
  return c;
}

long long floor_div128(__int128 a, long long b) {
  __int128 quo = a / b;
  if (a % b != 0 && (a < 0) != (b < 0)) --quo;
  return static_cast<long long>(quo);
}

long long ceil_div128(__int128 a, long long b) { return -floor_div128(-a, b); }

// Residue tables for screening "U equals m2p times a perfect square".
// Membership of U mod m in {m2p * s^2 mod m} is necessary for that, so a
// miss rejects without any division or square root.
struct SquareScreen {
  std::vector<bool> mod4095;
  std::array<bool, 64> mod64{};
  std::array<bool, 9> mod9{};

  explicit SquareScreen(long long m2p) : mod4095(4095, false) {
    long long m4095 = m2p % 4095, m64 = m2p % 64, m9 = m2p % 9;
    for (long long s = 0; s < 4095; ++s) mod4095[m4095 * (s * s % 4095) % 4095] = true;
    for (long long s = 0; s < 64; ++s) mod64[m64 * (s * s % 64) % 64] = true;
    for (long long s = 0; s < 9; ++s) mod9[m9 * (s * s % 9) % 9] = true;
  }
};

// Calls visit(x1, x2, x3, weight) once per +-x orbit of solutions of
// Q(x) = n; weight is the orbit size (1 only for the origin).  Canonical
// representatives have x3 > 0, or x3 = 0 and v > 0, or x3 = v = 0 and u > 0.
template <typename Visit>
void visit_solutions(const TernaryForm& form, long long n, const SquareScreen& screen,
                     Visit&& visit) {
  if (n < 0) throw std::invalid_argument("representation target must be nonnegative");
  if (n == 0) {
    visit(0, 0, 0, 1);
    return;
  }
  const Completion c = completion_of(form);
  __int128 wide_r = static_cast<__int128>(2) * n * c.a11 * c.m2p;
  if (wide_r > kMaxSearch) {
    throw std::domain_error("representation target too large for exact search");
  }
  const long long R = static_cast<long long>(wide_r);

  // Exact-division and congruence work for one screened candidate.
  auto try_candidate = [&](long long x3, long long v, long long U) {
    long long uu = U / c.m2p;  // exact: v's congruence class forces m2p | U
    long long uq = isqrt(uu);
    if (uq * uq != uu) return;
    long long x2 = static_cast<long long>((static_cast<__int128>(v) - static_cast<__int128>(c.r) * x3) / c.m2p);
    __int128 c2 = static_cast<__int128>(c.a12) * x2 + static_cast<__int128>(c.a13) * x3;
    for (long long u : {uq, -uq}) {
      __int128 num = u - c2;
      if (num % c.a11 != 0) {
        continue;
      }
      long long x1 = static_cast<long long>(num / c.a11);
      if (x3 > 0 || v > 0 || u > 0) visit(x1, x2, x3, 2);
      if (uq == 0) break;
    }
  };

  for (long long x3 = 0;; ++x3) {
    __int128 cone = static_cast<__int128>(c.a11) * c.det * x3 * x3;
    if (cone > R) break;
    const long long W = R - static_cast<long long>(cone);
    const long long vmax = isqrt(W);

    long long v_start;
    if (x3 == 0) {
      // Only v >= 0 is canonical here, and r * 0 = 0 fixes the class.
      v_start = 0;
    } else {
      long long cv = static_cast<long long>(static_cast<__int128>(c.r) * x3 % c.m2p);
      if (cv < 0) cv += c.m2p;
      v_start = cv + c.m2p * ceil_div128(static_cast<__int128>(-vmax) - cv, c.m2p);
    }
    if (v_start > vmax) continue;
    const long long jcount = (vmax - v_start) / c.m2p + 1;

    if (jcount <= kStrideThreshold) {
      long long v = v_start;
      long long U = W - v * v;
      if (jcount == 1) {
        if (screen.mod4095[U % 4095]) try_candidate(x3, v, U);
        continue;
      }
      long long d = -(2 * c.m2p * v + c.m2p * c.m2p);
      const long long dd = -2 * c.m2p * c.m2p;
      for (long long j = 0;;) {
        if (screen.mod4095[U % 4095]) try_candidate(x3, v, U);
        if (++j == jcount) break;
        U += d;
        d += dd;
        v += c.m2p;
      }
      continue;
    }

    // Long progressions: U(j) = W - (v_start + j m2p)^2 taken mod 64 has
    // period 32 in j, and mod 9 has period 9 (the cross term carries a
    // factor 64 resp. 9).  Keep only j-classes mod 288 where both residues
    // can be m2p times a square, then stride through each class.
    int adm32[32];
    int n32 = 0;
    {
      long long vm = ((v_start % 64) + 64) % 64;
      long long sm = c.m2p % 64;
      long long wm = ((W % 64) + 64) % 64;
      for (int jm = 0; jm < 32; ++jm) {
        long long um = (wm - vm * vm % 64 + 64) % 64;
        if (screen.mod64[um]) adm32[n32++] = jm;
        vm = (vm + sm) % 64;
      }
    }
    int adm9[9];
    int n9 = 0;
    {
      long long vm = ((v_start % 9) + 9) % 9;
      long long sm = c.m2p % 9;
      long long wm = ((W % 9) + 9) % 9;
      for (int j9 = 0; j9 < 9; ++j9) {
        long long um = (wm - vm * vm % 9 + 9) % 9;
        if (screen.mod9[um]) adm9[n9++] = j9;
        vm = (vm + sm) % 9;
      }
    }

    const long long stride_v = 288 * c.m2p;
    const long long dd = -2 * stride_v * stride_v;
    for (int a = 0; a < n32; ++a) {
      for (int b = 0; b < n9; ++b) {
        // CRT: j = adm32[a] (mod 32), j = adm9[b] (mod 9); 2 inverts 32 mod 9.
        long long j0 = adm32[a] + 32 * ((((adm9[b] - adm32[a]) % 9 + 9) * 2) % 9);
        if (j0 >= jcount) continue;
        long long v = v_start + j0 * c.m2p;
        long long U = W - v * v;
        long long d = -stride_v * (2 * v + stride_v);
        for (long long j = j0;;) {
          if (screen.mod4095[U % 4095]) try_candidate(x3, v, U);
          j += 288;
          if (j >= jcount) break;
          U += d;
          d += dd;
          v += stride_v;
        }
      }
    }
  }
}

SquareScreen screen_of(const TernaryForm& q) {
  const Gram& g = q.gram();
  return SquareScreen(g[0][0] * g[1][1] - g[0][1] * g[0][1]);
}

// ---------------------------------------------------------------------------
// Table-backed bulk counting.  2 a11 Q(x) = u^2 + B(x2, x3) with
// u = a11 x1 + a12 x2 + a13 x3 and B the positive binary section
//   B(y, z) = (a11 a22 - a12^2) y^2 + 2 (a11 a23 - a12 a13) y z
//           + (a11 a33 - a13^2) z^2,
// and u yields an integer x1 exactly when u = a12 y + a13 z (mod a11).  The
// histogram below counts (y, z) pairs per (residue class, B-value) cell, so
// r(n) is a sum of cell lookups along u^2 <= 2 a11 n.
// ---------------------------------------------------------------------------

constexpr long long kTableBudgetBytes = 1'200'000'000;
// Engage tables when the summed target mass dwarfs one full sweep of the
// largest ellipse; below this the screened per-target enumeration wins.
constexpr int kTableAdvantage = 8;

long long isqrt128(__int128 v) {
  long long root = static_cast<long long>(sqrtl(static_cast<long double>(v)));
  while (root > 0 && static_cast<__int128>(root) * root > v) --root;
  while (static_cast<__int128>(root + 1) * (root + 1) <= v) ++root;
  return root;
}

struct SectionTable {
  long long a11 = 0;
  long long g = 1;        // content of B's value set
  long long d = 1;        // realized residues of a12 y + a13 z are d Z mod a11
  long long entries = 0;  // cells per residue class
  std::vector<std::uint16_t> cells;
  bool overflow = false;  // a cell exceeded the counter range; fall back
};

// Number of histogram cells the table for this form and bound would need,
// or -1 when the table is not usable (zero cost reach or overflow risk).
__int128 section_cell_count(const TernaryForm& q, long long max_target) {
  const Gram& gm = q.gram();
  const long long a11 = gm[0][0];
  if (max_target > (kMaxSearch / (2 * a11))) return -1;
  const long long b11 = a11 * gm[1][1] - gm[0][1] * gm[0][1];
  const long long b12 = a11 * gm[1][2] - gm[0][1] * gm[0][2];
  const long long b22 = a11 * gm[2][2] - gm[0][2] * gm[0][2];
  const long long g = std::gcd(std::gcd(b11, b22), b11 + 2 * b12 + b22);
  const long long d = std::gcd(std::gcd(gm[0][1], gm[0][2]), a11);
  const long long entries = (2 * a11 * max_target) / g + 1;
  return static_cast<__int128>(a11 / d) * entries;
}

SectionTable build_section_table(const TernaryForm& q, long long max_target) {
  const Gram& gm = q.gram();
  SectionTable t;
  t.a11 = gm[0][0];
  const long long a12 = gm[0][1];
  const long long a13 = gm[0][2];
  const long long b11 = t.a11 * gm[1][1] - a12 * a12;
  const long long b12 = t.a11 * gm[1][2] - a12 * a13;
  const long long b22 = t.a11 * gm[2][2] - a13 * a13;
  t.g = std::gcd(std::gcd(b11, b22), b11 + 2 * b12 + b22);
  t.d = std::gcd(std::gcd(a12, a13), t.a11);
  const long long value_cap = 2 * t.a11 * max_target;
  t.entries = value_cap / t.g + 1;
  const long long classes = t.a11 / t.d;
  t.cells.assign(static_cast<std::size_t>(classes * t.entries), 0);

  const __int128 section_det = static_cast<__int128>(t.a11) * q.det_gram();  // b11 b22 - b12^2
  const long long a12_step = ((a12 % t.a11) + t.a11) % t.a11;
  const long long z_top = isqrt128(static_cast<__int128>(b11) * value_cap / section_det);
  for (long long z = -z_top; z <= z_top; ++z) {
    const __int128 discr =
        static_cast<__int128>(b11) * value_cap - section_det * z * z;
    if (discr < 0) continue;
    const long long spread = isqrt128(discr);  // |b11 y + b12 z| <= spread
    const __int128 center = static_cast<__int128>(-b12) * z;
    const long long y_lo = ceil_div128(center - spread, b11);
    const long long y_hi = floor_div128(center + spread, b11);
    if (y_lo > y_hi) continue;
    long long value = static_cast<long long>(
        static_cast<__int128>(b11) * y_lo * y_lo +
        static_cast<__int128>(2) * b12 * y_lo * z + static_cast<__int128>(b22) * z * z);
    long long step = 2 * (b11 * y_lo + b12 * z) + b11;
    long long key = static_cast<long long>(
        ((static_cast<__int128>(a12) * y_lo + static_cast<__int128>(a13) * z) % t.a11 +
         t.a11) %
        t.a11);
    for (long long y = y_lo;;) {
      std::uint16_t& cell =
          t.cells[static_cast<std::size_t>((key / t.d) * t.entries + value / t.g)];
      if (++cell == 0) t.overflow = true;
      if (++y > y_hi) break;
      value += step;
      step += 2 * b11;
      key += a12_step;
      if (key >= t.a11) key -= t.a11;
    }
  }
  return t;
}

long long count_from_table(const SectionTable& t, long long n) {
  const long long value_cap = 2 * t.a11 * n;
  const long long u_top = isqrt(value_cap);
  long long total = 0;
  for (long long k = 0; k < t.a11; k += t.d) {
    const std::size_t base = static_cast<std::size_t>((k / t.d) * t.entries);
    long long u = k - t.a11 * ((k + u_top) / t.a11);  // least u >= -u_top in class k
    for (; u <= u_top; u += t.a11) {
      const long long value = value_cap - u * u;
      if (value % t.g == 0) total += t.cells[base + static_cast<std::size_t>(value / t.g)];
    }
  }
  return total;
}

}  // namespace

TernaryForm::TernaryForm(const Gram& gram) : gram_(gram) {
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (gram_[i][j] < -kMaxEntry || gram_[i][j] > kMaxEntry) {
        throw std::invalid_argument("gram entry out of supported range");
      }
      if (gram_[i][j] != gram_[j][i]) {
        throw std::invalid_argument("gram matrix must be symmetric");
      }
    }
    if (gram_[i][i] % 2 != 0) {
      throw std::invalid_argument("doubled gram matrix must have even diagonal");
    }
  }
  long long minor1 = gram_[0][0];
  long long minor2 = gram_[0][0] * gram_[1][1] - gram_[0][1] * gram_[0][1];
  __int128 det = 0;
  for (int j = 0; j < 3; ++j) {
    int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
    det += static_cast<__int128>(gram_[0][j]) *
           (static_cast<__int128>(gram_[1][j1]) * gram_[2][j2] -
            static_cast<__int128>(gram_[1][j2]) * gram_[2][j1]);
  }
  if (minor1 <= 0 || minor2 <= 0 || det <= 0) {
    throw std::invalid_argument("gram matrix must be positive definite");
  }
  if (det > kMaxDet) throw std::invalid_argument("gram determinant out of supported range");
  det_ = static_cast<long long>(det);
}

long long TernaryForm::evaluate(long long x1, long long x2, long long x3) const {
  const std::array<long long, 3> x = {x1, x2, x3};
  __int128 twice = 0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      twice += static_cast<__int128>(gram_[i][j]) * x[i] * x[j];
    }
  }
  __int128 value = twice / 2;
  if (value > kMaxDet) throw std::out_of_range("form value exceeds representable range");
  return static_cast<long long>(value);
}

long long TernaryForm::evaluate(const std::array<long long, 3>& x) const {
  return evaluate(x[0], x[1], x[2]);
}

long long representation_count(const TernaryForm& q, long long n) {
  SquareScreen screen = screen_of(q);
  long long count = 0;
  visit_solutions(q, n, screen, [&](long long, long long, long long, int w) { count += w; });
  return count;
}

std::vector<long long> representation_counts(const TernaryForm& q,
                                             const std::vector<long long>& targets,
                                             BulkStrategy strategy) {
  long long max_target = 0;
  __int128 total_mass = 0;
  bool any_negative = false;
  for (long long n : targets) {
    if (n < 0) any_negative = true;
    max_target = std::max(max_target, n);
    if (n > 0) total_mass += n;
  }

  // Negative targets and out-of-reach targets must raise the same errors the
  // direct path raises, at the same element, so those batches stay direct.
  bool use_tables = false;
  if (strategy != BulkStrategy::direct && !targets.empty() && !any_negative) {
    const Completion c = completion_of(q);
    const bool in_reach =
        static_cast<__int128>(2) * max_target * c.a11 * c.m2p <= kMaxSearch;
    if (in_reach) {
      const __int128 cells = section_cell_count(q, max_target);
      const bool fits = cells >= 0 && 2 * cells <= kTableBudgetBytes;
      if (strategy == BulkStrategy::tables) {
        if (!fits) throw std::domain_error("section table exceeds the memory budget");
        use_tables = true;
      } else {
        use_tables =
            fits && total_mass > static_cast<__int128>(kTableAdvantage) * max_target;
      }
    } else if (strategy == BulkStrategy::tables) {
      throw std::domain_error("representation target too large for exact search");
    }
  }

  if (use_tables) {
    const SectionTable table = build_section_table(q, max_target);
    if (!table.overflow) {
      std::vector<long long> counts;
      counts.reserve(targets.size());
      for (long long n : targets) counts.push_back(count_from_table(table, n));
      return counts;
    }
    // A histogram counter saturated (pathological section); recount directly.
  }

  SquareScreen screen = screen_of(q);
  std::vector<long long> counts;
  counts.reserve(targets.size());
  for (long long n : targets) {
    long long count = 0;
    visit_solutions(q, n, screen, [&](long long, long long, long long, int w) { count += w; });
    counts.push_back(count);
  }
  return counts;
}

long long primitive_representation_count(const TernaryForm& q, long long n) {
  if (n < 1) throw std::invalid_argument("primitive representation target must be positive");
  SquareScreen screen = screen_of(q);
  long long count = 0;
  visit_solutions(q, n, screen, [&](long long x1, long long x2, long long x3, int w) {
    if (std::gcd(std::gcd(x1, x2), x3) == 1) count += w;
  });
  return count;
}

std::vector<std::array<long long, 3>> represent_vectors(const TernaryForm& q, long long n) {
  SquareScreen screen = screen_of(q);
  std::vector<std::array<long long, 3>> out;
  visit_solutions(q, n, screen, [&](long long x1, long long x2, long long x3, int w) {
    out.push_back({x1, x2, x3});
    if (w == 2) out.push_back({-x1, -x2, -x3});
  });
  return out;
}

long long automorphism_order(const TernaryForm& q) {
  const Gram& g = q.gram();
  std::array<std::vector<std::array<long long, 3>>, 3> candidates;
  for (int j = 0; j < 3; ++j) {
    candidates[j] = represent_vectors(q, g[j][j] / 2);
  }
  auto pairing = [&](const std::array<long long, 3>& x, const std::array<long long, 3>& y) {
    __int128 s = 0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        s += static_cast<__int128>(g[i][j]) * x[i] * y[j];
      }
    }
    return s;
  };
  long long order = 0;
  for (const auto& u1 : candidates[0]) {
    for (const auto& u2 : candidates[1]) {
      if (pairing(u1, u2) != g[0][1]) continue;
      for (const auto& u3 : candidates[2]) {
        if (pairing(u1, u3) == g[0][2] && pairing(u2, u3) == g[1][2]) ++order;
      }
    }
  }
  return order;
}

std::pair<long long, long long> level_and_determinant(const TernaryForm& q) {
  const Gram& g = q.gram();
  const long long dg = q.det_gram();
  if (dg % 8 != 0) {
    throw std::domain_error("form determinant det(G)/8 is not integral");
  }
  // level = least N with N * adj(G)/det(G) integral and even on the diagonal.
  // Each constraint makes N a multiple of denom/gcd(denom, adj); every such
  // term divides 2 det(G), so the lcm fits comfortably.
  long long level = 1;
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      int i1 = (i + 1) % 3, i2 = (i + 2) % 3, j1 = (j + 1) % 3, j2 = (j + 2) % 3;
      long long adj = g[j1][i1] * g[j2][i2] - g[j1][i2] * g[j2][i1];
      long long denom = i == j ? 2 * dg : dg;
      long long term = denom / std::gcd(denom, adj);
      level = level / std::gcd(level, term) * term;
    }
  }
  return {level, dg / 8};
}

std::vector<long long> theta_coefficients(const TernaryForm& q, long long n_max) {
  if (n_max < 0) throw std::invalid_argument("coefficient range must be nonnegative");
  if (n_max > kMaxThetaLength) {
    throw std::domain_error("coefficient range too large for a dense table");
  }
  const Completion c = completion_of(q);
  __int128 wide_r = static_cast<__int128>(2) * n_max * c.a11 * c.m2p;
  if (wide_r > kMaxSearch) {
    throw std::domain_error("coefficient range too large for exact search");
  }
  const long long R = static_cast<long long>(wide_r);
  const long long half_a11 = c.a11 / 2;

  std::vector<long long> counts(static_cast<std::size_t>(n_max) + 1, 0);
  auto sweep_slice = [&](long long x3, long long W) {
    const long long vmax = isqrt(W);
    __int128 rx3 = static_cast<__int128>(c.r) * x3;
    long long x2_lo = ceil_div128(-vmax - rx3, c.m2p);
    long long x2_hi = floor_div128(vmax - rx3, c.m2p);
    for (long long x2 = x2_lo; x2 <= x2_hi; ++x2) {
      long long v = static_cast<long long>(static_cast<__int128>(c.m2p) * x2 + rx3);
      long long U = W - v * v;
      long long uw = isqrt(U / c.m2p);
      __int128 c2 = static_cast<__int128>(c.a12) * x2 + static_cast<__int128>(c.a13) * x3;
      long long x1_lo = ceil_div128(-uw - c2, c.a11);
      long long x1_hi = floor_div128(uw - c2, c.a11);
      if (x1_lo > x1_hi) continue;
      long long u = static_cast<long long>(static_cast<__int128>(c.a11) * x1_lo + c2);
      long long value = q.evaluate(x1_lo, x2, x3);
      for (long long x1 = x1_lo;;) {
        ++counts[static_cast<std::size_t>(value)];
        if (++x1 > x1_hi) break;
        value += u + half_a11;
        u += c.a11;
      }
    }
  };

  for (long long x3 = 0;; ++x3) {
    __int128 cone = static_cast<__int128>(c.a11) * c.det * x3 * x3;
    if (cone > R) break;
    const long long W = R - static_cast<long long>(cone);
    sweep_slice(x3, W);
    if (x3 > 0) sweep_slice(-x3, W);
  }
  return counts;
}

}  // namespace spinsign
