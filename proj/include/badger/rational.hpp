#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace badger {

using Int = mpz_class;
using Rat = mpq_class;

// Canonical rational with positive denominator. Throws on den == 0.
Rat make_rat(const Int& num, const Int& den);
Rat make_rat(long num, long den);

// Parses "num/den" or a bare integer "num".
Rat parse_rat(const std::string& s);

// Always "num/den", including "/1", so artifacts are uniform.
std::string rat_str(const Rat& q);

double rat_approx(const Rat& q);

Int rat_floor(const Rat& q);
Int rat_ceil(const Rat& q);

Rat rat_abs(const Rat& q);
const Rat& rat_min(const Rat& a, const Rat& b);
const Rat& rat_max(const Rat& a, const Rat& b);

// base^e with e of either sign; base must be nonzero when e < 0.
Rat pow_int(const Rat& base, long e);

// Distance from x to the nearest integer; result in [0, 1/2].
Rat nearest_int_dist(const Rat& x);

// Closed interval [lo, hi] with rational endpoints.
struct RatInterval {
    Rat lo;
    Rat hi;

    RatInterval() : lo(0), hi(0) {}
    RatInterval(Rat l, Rat h);

    static RatInterval ball(const Rat& center, const Rat& radius);
    static RatInterval point(const Rat& x) { return RatInterval(x, x); }

    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }

    bool contains(const Rat& x) const { return lo <= x && x <= hi; }
    bool contains(const RatInterval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool intersects(const RatInterval& o) const { return lo <= o.hi && o.lo <= hi; }
    bool disjoint(const RatInterval& o) const { return !intersects(o); }

    // gamma * I in the ball sense: same center, radius scaled by gamma >= 0.
    RatInterval dilate(const Rat& gamma) const;
    RatInterval inflate(const Rat& pad) const { return RatInterval(lo - pad, hi + pad); }

    // Distance between x and the interval (0 if inside).
    Rat dist(const Rat& x) const;

    bool operator==(const RatInterval& o) const { return lo == o.lo && hi == o.hi; }
};

RatInterval intersect(const RatInterval& a, const RatInterval& b);  // throws if disjoint

std::string interval_str(const RatInterval& iv);

// Deterministic 64-bit FNV-1a, used for run provenance hashes.
std::uint64_t fnv1a(const std::string& data);

// splitmix64: tiny deterministic generator for seeded policies and tests.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next();
    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n);
    // uniform rational in [0, 1) with the given granularity
    Rat unit_rat(std::uint64_t granularity = 1u << 20);
};

}  // namespace badger
