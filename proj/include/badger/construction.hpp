#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "badger/fractal.hpp"
#include "badger/lines.hpp"

namespace badger {

enum class Mode { theoretical, practical };

// Thresholds the theory demands of R, kept in log2 space because R0, R1, R3
// are astronomically large at any interesting parameters.
struct Thresholds {
    RatInterval log2_r0{Rat(0), Rat(0)};
    RatInterval log2_r1{Rat(0), Rat(0)};
    RatInterval log2_r2{Rat(0), Rat(0)};
    RatInterval log2_r3{Rat(0), Rat(0)};
    std::optional<Rat> r2_exact;
    // log2(R) - upper bound of the binding threshold; negative means R is
    // below the theoretical regime (recorded, not fatal, in practical mode)
    Rat log2_shortfall{0};
};

struct Params {
    Weights w{Rat(1) / 2, Rat(1) / 2};
    long R = 16;
    Mode mode = Mode::practical;
    Rat beta{0};          // exact rational exponent of the substrate measure
    Rat b1{0}, b2{0};     // power-law constants
    Rat alpha{0};         // beta i j / 4
    Rat lambda{0};        // 3 / j
    Rat epsilon{0};       // alpha beta^2 i j / 20
    Rat c_theta{0};       // certified c(theta)
    Rat c1{0};            // interval width scale, exact rational (rounded down)
    Rat c{0};             // dual-form constant, exact rational, c R^{1+alpha} <= c1
    Rat rho{0};           // rational upper bound of R^{-alpha}; I^- = (1 - rho) I
    Rat slack{0};         // removal inflation for danger radii
    std::optional<Rat> c5_exact;
    RatInterval c5_enclosure{Rat(0), Rat(0)};
    Thresholds thresholds;

    LineParams line_params() const { return LineParams{w, R, c, slack}; }
    Rat level_width(int n) const { return c1 / pow_int(Rat(R), n); }
};

// Computes every constant of the construction from the weight pair, the
// power-law certificate, theta's certified quality, and R. Theoretical mode
// throws when R is below max(R1, R2, R3) or R^{-alpha} > 1/2; practical mode
// records the shortfall and proceeds.
Params derive_constants(const Weights& w, const PowerLawCert& cert, const BadTheta& theta,
                        long R, Mode mode, const Rat& slack = make_rat(1, 16));

// 5r-covering: greedy left-to-right selection of a pairwise-disjoint
// subfamily whose 5-dilates cover every candidate. Candidates must share one
// radius.
std::vector<RatInterval> five_r_cover(const std::vector<RatInterval>& candidates);

struct LevelInterval {
    Rat center;
    RatInterval iv;
    int parent = -1;  // index into the previous level
    bool in_j = false;
};

// One line incident to one child while building J_{n+1} from I_{n+1}(J).
struct RemovalIncidence {
    Line line;
    int n = 0, l = 0, k = 0;  // class of the line (removal into level n+1)
    int child = -1;           // index into level n+1
    int direct_parent = -1;   // index into level n
    int ancestor = -1;        // index into level n - l
};

struct Level {
    int n = 0;
    std::vector<LevelInterval> intervals;  // I_n, ascending by center
    std::vector<int> j_indices;            // surviving J_n
    std::vector<RemovalIncidence> removals;
    long candidate_count = 0;   // net points offered to the 5r-cover
    bool count_bound_ok = true; // paper's count lower bound at this level
};

struct LevelFamily {
    Params params;
    std::vector<Level> levels;

    int depth() const { return static_cast<int>(levels.size()) - 1; }
    const Level& level(int n) const { return levels.at(static_cast<std::size_t>(n)); }
    std::size_t j_count(int n) const { return level(n).j_indices.size(); }
    // index of the level n-up ancestor of `idx` at level n
    int ancestor_of(int n, int idx, int up) const;
};

struct ConstructionExhausted : std::runtime_error {
    int level;
    explicit ConstructionExhausted(int n)
        : std::runtime_error("construction exhausted: J_" + std::to_string(n) + " is empty"),
          level(n) {}
};

// Level 0: 5r-cover of balls of radius c1/2 around a support net; J_0 = I_0.
LevelFamily build_level0(const Params& params, const SupportMeasure& mu);

// One refinement step: shrink each J, reseed balls of radius c1 R^{-n-1}/2 on
// the support net, 5r-cover per parent, then remove children meeting any
// inflated danger interval of C(n). Throws ConstructionExhausted if nothing
// survives.
void refine_level(LevelFamily& fam, const SupportMeasure& mu, const BadTheta& theta);

// --- diagnostics (Theorem-8-style formula evaluations; reported, and only
// --- asserted where the construction's own geometry forces them) ---

// K from the case split on R^{1-alpha} 2^{-k}.
bool k_case_high(const Params& p, int k);  // true iff R^{1-alpha} 2^{-k} > 1

// ceil((4 b2/b1) K^beta): per-line removal capacity; exact integer.
Int per_line_capacity(const Params& p, int k);

// tau and M formula evaluations (enclosures; display-grade).
RatInterval tau_value(const Params& p, int l, int k, const Rat& tol);
RatInterval m_bound(const Params& p, int l, const Rat& delta_hypothetical, const Rat& tol);
RatInterval c3_value(const Params& p, int l, const Rat& tol);
RatInterval c4_value(const Params& p, const Rat& tol);

struct ClassRemovalStat {
    int n = 0, l = 0, k = 0;
    int ancestor = -1;    // index at level n - l
    long removed = 0;     // distinct children of that ancestor hit by C(n,l,k)
    bool within_r_beta_eps = true;  // removed <= R^{beta - epsilon}
};

struct LineCapacityStat {
    Line line;
    int n = 0, l = 0, k = 0;
    int ancestor = -1;
    long count = 0;  // children of the ancestor this one line touches
    Int capacity;    // ceil((4b2/b1)K^beta) + 2
    bool ok = true;
};

struct DiagnosticsReport {
    std::vector<ClassRemovalStat> class_stats;
    std::vector<LineCapacityStat> line_stats;
    long flagged_classes = 0;   // class removal counts above R^{beta-epsilon}
    long capacity_violations = 0;
};

DiagnosticsReport removal_diagnostics(const LevelFamily& fam,
                                      const std::optional<Rat>& delta_hypothetical);

// f(n) = #(J_n intersected with a marked subfamily), with the Lemma-11 ratio
// check f(n) >= R^{beta-eps} f(n-1) evaluated per level (reported).
struct UbiquityCounter {
    std::vector<long> f;
    std::vector<bool> ratio_ok;
};

}  // namespace badger
