#pragma once

#include <gmpxx.h>
#include <string>

namespace linfty {

// Exact rational scalar. All arithmetic in the library is exact; there are
// no floating point numbers anywhere.
using Rat = mpq_class;

/// Parse "p" or "p/q" with optional sign. Throws std::invalid_argument on
/// malformed input or zero denominator.
Rat parse_rational(const std::string& text);

std::string rat_str(const Rat& r);

Rat factorial(int n);

}  // namespace linfty
