#pragma once

#include <cstdint>
#include <vector>

namespace grade3 {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

// Rank over the rationals of an integer matrix (rows of equal length).
// Fraction-free Bareiss elimination; falls back to arbitrary precision
// when 128-bit intermediates would overflow.
int exact_rank(const IntMatrix& rows);

}  // namespace grade3
