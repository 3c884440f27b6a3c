#pragma once

#include <optional>

#include "badger/rational.hpp"

namespace badger {

// Exact comparisons between rational powers of positive rationals. Exponents
// are cleared to integers before comparing, so every decision is an integer
// comparison regardless of whether the powers themselves are irrational.

// sign of x - y^{p/q}; requires x > 0, y > 0, q > 0.
int cmp_rat_vs_pow(const Rat& x, const Rat& y, long p, long q);

// sign of a^{pa/qa} - b^{pb/qb}; requires a, b > 0, qa, qb > 0.
int cmp_pow_vs_pow(const Rat& a, long pa, long qa, const Rat& b, long pb, long qb);

// floor / ceil of x^{p/q} for x > 0, q > 0.
Int pow_floor(const Rat& x, long p, long q);
Int pow_ceil(const Rat& x, long p, long q);

// Enclosure of x^{p/q} with hi - lo <= tol * lo (relative); x > 0, q > 0.
RatInterval pow_enclosure(const Rat& x, long p, long q, const Rat& reltol);

// sign of y - a^{ea} * b^{eb} for positive rationals y, a, b and rational
// exponents ea, eb (cleared to a common integer power).
int cmp_rat_vs_pow_product(const Rat& y, const Rat& a, const Rat& ea, const Rat& b, const Rat& eb);

// Enclosure of log_base(x) with absolute width <= tol; base > 1, x > 0.
// Mediant walk on the exponent, so probes stay at continued-fraction-sized
// denominators instead of bisection dyadics.
RatInterval log_enclosure(const Rat& base, const Rat& x, const Rat& tol);

// If x = base^{p/q} for some p/q with 1 <= q <= max_den, returns p/q.
std::optional<Rat> exact_log(const Rat& base, const Rat& x, unsigned max_den = 64);

}  // namespace badger
