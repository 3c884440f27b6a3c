#pragma once

#include <vector>

#include "badger/rational.hpp"

namespace badger {

// Eventually periodic continued fraction a0 + 1/(a1 + 1/(a2 + ...)), i.e. a
// quadratic irrational. Partial quotients a_k (k >= 1) must all be >= 1 and
// the period must be nonempty, so the value is genuinely irrational.
struct ContinuedFraction {
    Int a0;
    std::vector<Int> preperiod;
    std::vector<Int> period;

    ContinuedFraction(Int a0_, std::vector<Int> pre, std::vector<Int> per);

    // k-th partial quotient, k >= 1
    const Int& quotient(std::size_t k) const;
    Int max_quotient() const;

    // text form "a0;[p1,p2];(q1,q2)", e.g. "0;[];(1)" for the golden ratio
    // fractional part
    static ContinuedFraction parse(const std::string& s);
    std::string str() const;

    static ContinuedFraction golden() { return ContinuedFraction(0, {}, {Int(1)}); }
    static ContinuedFraction sqrt2_minus_1() { return ContinuedFraction(0, {}, {Int(2)}); }
};

// k-th convergent p_k/q_k with p_0/q_0 = a0/1.
Rat cf_convergent(const ContinuedFraction& cf, std::size_t k);

// Interval of width <= precision containing the value, from consecutive
// convergents; nested as precision decreases.
RatInterval theta_enclosure(const ContinuedFraction& cf, const Rat& precision);

// Certified lower bound on min_{1 <= q <= Q} q * ||q theta||, verified
// exhaustively with exact interval arithmetic (rounded down, never up).
Rat theta_quality(const ContinuedFraction& cf, const Int& Q);

// Lower bound valid for every q: q * ||q theta|| > 1/(a_max + 2).
Rat theta_tail_bound(const ContinuedFraction& cf);

// A quadratic irrational together with a certified approximation constant:
// for all q >= 1, q * ||q theta|| > quality. Immutable and shareable.
class BadTheta {
public:
    BadTheta(ContinuedFraction cf, const Int& search_bound);

    const ContinuedFraction& cf() const { return cf_; }
    const Rat& quality() const { return quality_; }
    const Int& search_bound() const { return search_bound_; }

    // Enclosure of theta of width <= precision; served from a precomputed
    // convergent table where possible.
    RatInterval enclosure(const Rat& precision) const;

private:
    ContinuedFraction cf_;
    Rat quality_;
    Int search_bound_;
    std::vector<Rat> convergents_;  // fixed depth, built at construction
};

}  // namespace badger
