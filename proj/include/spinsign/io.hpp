#pragma once

#include <spinsign/quadform.hpp>
#include <spinsign/rational.hpp>
#include <spinsign/spinor.hpp>

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace spinsign {

// ---------------------------------------------------------------------------
// JSON ingestion.  All parsers throw std::invalid_argument with a message
// naming the offending field; structural validity (positive definiteness,
// automorphism orders, homogeneous level/determinant) is enforced by the
// constructed objects themselves.
// ---------------------------------------------------------------------------

// {"name": optional, "gram": [[a,b,c],[b,d,e],[c,e,f]]} -- the doubled Gram
// matrix of the form.
TernaryForm parse_form(const std::string& json_text);

// {"kind": "spinor-genus"|"genus", "distinguished": index,
//  "classes": [{"name": ..., "gram": ..., "aut": optional claimed order}]}
SpinorClassSet parse_class_set(const std::string& json_text);

TernaryForm load_form(const std::string& path);
SpinorClassSet load_class_set(const std::string& path);

// ---------------------------------------------------------------------------
// Deterministic plain-text output.  Rationals are always rendered as the
// canonical numerator/denominator pair so equal configurations give
// byte-identical files.
// ---------------------------------------------------------------------------

// Fixed shortest-roundtrip-style rendering for diagnostic doubles.
std::string format_double(double value);

// `n,r` rows for a dense theta table starting at n = 0.
void write_theta_csv(std::ostream& out, const std::vector<long long>& counts);

// `n,numerator,denominator` rows for a sparse coefficient table.
void write_series_csv(std::ostream& out, const std::map<long long, Rational>& values);

// `x,sum` rows for one diagnostic curve.
void write_curve_csv(std::ostream& out, const std::vector<std::pair<long long, double>>& points);

// One row per scanned prime: the prime, each class count, the spinor average
// and cusp coefficient as numerator/denominator column pairs, and the
// stability flag.
void write_scan_table_csv(std::ostream& out, const SpinorScanReport& report);

}  // namespace spinsign
