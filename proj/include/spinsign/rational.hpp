#pragma once

#include <gmpxx.h>

#include <string>

namespace spinsign {

// All coefficient arithmetic in this library is exact.  Representation
// counts are integers, but spinor averages and cusp coefficients are
// genuine rationals (denominators divide the lcm of automorphism orders),
// so the shared value type is an arbitrary-precision rational.
using Rational = mpq_class;

inline int sign(const Rational& q) { return sgn(q); }

// Canonical "numerator/denominator" rendering with an explicit positive
// denominator, e.g. "-1/1", "3/8".  Used by every serializer so that equal
// configurations produce byte-identical output.
std::string to_fraction_string(const Rational& q);

// Parses the output of to_fraction_string; also accepts a bare integer.
Rational fraction_from_string(const std::string& text);

}  // namespace spinsign
