#pragma once

#include <vector>

#include "badger/continued_fraction.hpp"
#include "badger/powers.hpp"
#include "badger/rational.hpp"

namespace badger {

// Weight pair i + j = 1. The main machinery requires 0 < i, j < 1; the
// degenerate pairs are routed to shortcut paths upstream.
struct Weights {
    Rat i, j;

    Weights(Rat i_, Rat j_);
    static Weights parse(const std::string& s);  // "2/3,1/3"
    std::string str() const { return rat_str(i) + "," + rat_str(j); }

    bool degenerate() const { return i == 0 || i == 1; }

    // 1/i and 1/j as integer exponent pairs (p, q) meaning p/q
    std::pair<long, long> inv_i() const;
    std::pair<long, long> inv_j() const;
};

// Integer line A x - B y + C = 0 with gcd(A,B,C) = 1, B > 0.
struct Line {
    Int A, B, C;

    bool operator==(const Line& o) const { return A == o.A && B == o.B && C == o.C; }
    bool operator<(const Line& o) const {
        if (B != o.B) return B < o.B;
        if (A != o.A) return A < o.A;
        return C < o.C;
    }
    std::string str() const { return A.get_str() + "," + B.get_str() + "," + C.get_str(); }
    static Line parse(const std::string& s);
};

// H(A,B) = B * max(|A|^{1/i}, |B|^{1/j}) as an exactly comparable value.
class Height {
public:
    Height(Int A, Int B, const Weights& w);

    // sign of H - x for rational x > 0; exact via cleared exponents
    int cmp(const Rat& x) const;
    bool max_is_a() const { return max_is_a_; }

    // rational bracket, hi/lo <= 1 + reltol
    RatInterval enclosure(const Rat& reltol) const;
    double approx() const;

private:
    Int a_abs_, b_;
    Weights w_;
    bool max_is_a_;  // whether |A|^{1/i} attains the max
};

struct LineClass {
    int n = 0, l = 0, k = 0;
};

// Parameters the line layer needs; the construction layer builds these from
// its Params.
struct LineParams {
    Weights w;
    long R;
    Rat c;      // exact rational, c <= c(theta)
    Rat slack;  // removal inflation, > 0

    Rat lambda() const { return Rat(3) / w.j; }
    int k_count() const;  // ceil(log2 R)
};

// Removed interval around y(L) = (A theta + C) / B. The true radius c/H is
// irrational in general; the two stored radii bracket it from above with
// removal_radius > cert_radius >= c/H, so removal decisions are strictly
// more aggressive than what certification later re-checks.
struct DangerInterval {
    Line line;
    RatInterval center;  // enclosure of y(L); exact point when A == 0
    Rat removal_radius;  // (1 + slack)   * c/H, rounded up
    Rat cert_radius;     // (1 + slack/2) * c/H, rounded up
    Rat radius_lower;    // c/H rounded down (inner witness radius)

    RatInterval outer(const Rat& radius) const {
        return RatInterval(center.lo - radius, center.hi + radius);
    }
};

DangerInterval danger_interval(const Line& line, const LineParams& lp, const BadTheta& theta,
                               const Rat& slack);

// k-slab of H within [R^{n-1}, R^n), or -1 when H is outside that range.
int k_slab(const Height& h, int n, long R);

// l-slab of B for C(n, l); B must satisfy 1 <= B < R^{n j/(j+1)}.
int l_slab(const Int& B, int n, const LineParams& lp);

// Largest l with C(n, l) possibly nonempty: floor(n j / (lambda (j+1))).
int l_max(int n, const LineParams& lp);

struct TaggedLine {
    Line line;
    int l = 0, k = 0;
    DangerInterval danger;
};

// All lines of C(n) whose inflated danger interval meets the window, tagged
// with their (l, k) class, ordered by (B, A, C).
std::vector<TaggedLine> enumerate_level(int n, const RatInterval& window, const LineParams& lp,
                                        const BadTheta& theta);

// Lines of one class C(n, l, k) meeting the window, ordered by (B, A, C).
std::vector<Line> enumerate_class(const LineClass& cls, const RatInterval& window,
                                  const LineParams& lp, const BadTheta& theta);

// Independent brute-force enumeration of C(n) against the window (double
// loop, no class machinery); oracle for the partition tests.
std::vector<Line> brute_force_level(int n, const RatInterval& window, const LineParams& lp,
                                    const BadTheta& theta);

// Proves that the true danger interval of `line` misses `iv`, refining the
// center enclosure as needed. Returns false only on a proven hit.
bool line_avoids(const Line& line, const LineParams& lp, const BadTheta& theta,
                 const RatInterval& iv);

}  // namespace badger
