#pragma once

#include <functional>
#include <optional>

#include "badger/continued_fraction.hpp"
#include "badger/lines.hpp"

namespace badger {

enum class Verdict { pass, fail, inconclusive };

// An enclosure the certifier can shrink on demand. refine() must return a
// strictly narrower interval inside the current one (or nullopt when the
// coordinate cannot be pinned further).
struct RefinableEnclosure {
    RatInterval current;
    std::function<std::optional<RatInterval>(const RatInterval&)> refine;
};

RefinableEnclosure theta_refinable(const BadTheta& theta);
// shrinks toward `anchor` (which must lie inside iv) by a factor of 4 per step
RefinableEnclosure interval_refinable(RatInterval iv, Rat anchor);
RefinableEnclosure exact_point(const Rat& x);

// min / max of dist(x, Z) over a rational interval, both exact
struct DistRange {
    Rat lo, hi;
};
DistRange int_dist_range(const RatInterval& iv);

struct SimultaneousResult {
    Verdict overall = Verdict::pass;
    std::optional<Int> first_fail_q;
    std::optional<Int> blocking_q;  // the q that stayed inconclusive
    long checked = 0;
    int refinements = 0;
};

// For every q <= Qmax decides max(q ||q x||^{1/i}, q ||q y||^{1/j}) > c with
// exact cleared-exponent comparisons; refines the enclosures (up to `budget`
// rounds) whenever a q stays undecided.
SimultaneousResult check_simultaneous(RefinableEnclosure x, RefinableEnclosure y,
                                      const Weights& w, const Rat& c, const Int& qmax,
                                      int budget = 24);

struct DualResult {
    Verdict overall = Verdict::pass;
    std::optional<Line> first_fail;   // triple (A,B,C) in the dual convention
    std::optional<Line> blocking;
    long checked = 0;
    int refinements = 0;
};

// Enumerates every (A,B) != (0,0) with max(|A|^{1/i}, |B|^{1/j}) <= boundH
// (canonical sign: B > 0, or B = 0 and A > 0) and the finitely many C with
// |A x + B y + C| possibly small, and decides the dual inequality
// max(|A|^{1/i}, |B|^{1/j}) |A x + B y + C| > c for each.
DualResult check_dual(RefinableEnclosure x, RefinableEnclosure y, const Weights& w, const Rat& c,
                      const Int& boundH, int budget = 24);

struct BoxDimEstimate {
    double slope = 0;
    double residual_rms = 0;
    int points = 0;
};

// Least-squares slope of log(count) against log(1/scale); evidence only,
// never asserted by the engine.
BoxDimEstimate box_dimension_estimate(const std::vector<std::pair<Rat, long>>& scale_counts);

}  // namespace badger
