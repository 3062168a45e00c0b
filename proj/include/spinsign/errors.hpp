#pragma once

#include <stdexcept>
#include <string>

namespace spinsign {

// Raised when ingested data contradicts a value the library can recompute
// from first principles (e.g. a class-set fixture claiming the wrong
// automorphism order).  Distinct from std::invalid_argument so callers can
// tell "bad input shape" apart from "input is internally inconsistent".
class consistency_error : public std::runtime_error {
 public:
  explicit consistency_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spinsign
