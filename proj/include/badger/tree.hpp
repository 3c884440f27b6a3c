#pragma once

#include "badger/construction.hpp"
#include "badger/fractal.hpp"

namespace badger {

struct TreeNode {
    RatInterval iv;
    int parent = -1;  // index into the previous level; -1 for roots
};

// Levelled interval family with parent links. Level 0 may hold several roots
// (a forest); the general-n0 measure construction handles that case.
struct TreeFamily {
    std::vector<std::vector<TreeNode>> levels;

    int depth() const { return static_cast<int>(levels.size()) - 1; }
    static TreeFamily single_root(const RatInterval& root);
};

struct TreeCheckResult {
    bool ok = true;
    int condition = 0;  // 1..4 per the tree-like definition
    int level = -1;
    long index = -1;
    std::string detail;
};

// The four tree-like conditions: positive lengths, same-level intervals share
// at most a point, every interval sits inside a previous-level interval, and
// no childless non-leaf levels.
TreeCheckResult check_tree_like(const TreeFamily& t);

// Complete r0-ary tree of fixed depth with a marked subtree T (ancestor
// closed, root marked). Node (level, index) has children r0*index + b.
class MarkedTree {
public:
    MarkedTree(int r0, int depth, bool all_marked = true);

    int r0() const { return r0_; }
    int depth() const { return depth_; }
    long width(int level) const;  // r0^level
    bool marked(int level, long index) const;
    void set_marked(int level, long index, bool v);
    // strips marks from descendants of unmarked nodes so T is a subtree
    void close_downward();
    bool t_is_subtree() const;

private:
    int r0_, depth_;
    std::vector<std::vector<char>> marks_;
};

struct UbiquityVerdict {
    bool ubiquitous = true;
    // when not: a generation where some r-regular subtree misses T entirely
    int witness_generation = -1;
};

// Decides, to the given depth, whether T meets every degree-r regular subtree
// of F at every generation, via the avoidance recursion
//   avoid(u, d) = u not in T, or d > 0 and at least r children avoid to d-1.
UbiquityVerdict check_ubiquity(const MarkedTree& mt, int r, int depth);

// Independent oracle: per-generation DP asking for an r-regular depth-d
// subtree whose generation-d nodes all miss T.
bool ubiquity_oracle_dp(const MarkedTree& mt, int r, int depth);

// True exhaustive enumeration of all degree-r regular subtrees; only feasible
// for tiny instances (choices grow like C(r0,r)^{#internal nodes}).
bool ubiquity_oracle_exhaustive(const MarkedTree& mt, int r, int depth);

// Regular subtree of the complete tree, stored as sorted global indices per
// level; every node at level l > 0 is a child of a selected level-(l-1) node.
struct IndexTree {
    int r0 = 0, degree = 0, depth = 0;
    std::vector<std::vector<long>> nodes;
};

// Theorem-13 extraction: a (r0 - r + 1)-regular subtree inside T, taking at
// each node the lexicographically first children whose subtrees keep
// r-ubiquity for the remaining depth. Precondition: check_ubiquity holds.
IndexTree extract_regular(const MarkedTree& mt, int r, int depth);

// Walker-style verification, independent of the extraction bookkeeping.
bool verify_regular_subtree(const IndexTree& it, const MarkedTree& mt);

// --- practical extraction from a construction family ---

struct ExtractedForest {
    int degree = 0;          // g children per node (1 = chains)
    TreeFamily forest;       // the selected intervals
    long root_count = 0;
};

// Largest degree from {16, 8, 4, 2, 1} (powers of two keep log_R g rational
// for R = 2^s) such that some surviving roots carry a g-regular subfamily of
// the J-family to full depth; keeps every such root.
ExtractedForest extract_practical(const LevelFamily& fam);

// Lemma-11-style counter against a degree-`degree` regular subfamily of the
// full I-tree (removed intervals included); nullopt when no such subfamily
// exists at this degree.
std::optional<UbiquityCounter> lemma11_counter(const LevelFamily& fam, int degree);

// --- the limit measure of a regular forest (Appendix-A construction) ---

class TreeMeasure : public SupportMeasure {
public:
    TreeMeasure(TreeFamily forest, long R, int n0, int degree, PowerLawCert cert);

    const TreeFamily& forest() const { return forest_; }
    int degree() const { return degree_; }
    long scale() const { return R_; }

    RatInterval hull() const override;
    const PowerLawCert& cert() const override { return cert_; }
    Rat resolution_floor() const override { return floor_; }
    std::optional<Rat> support_point_in(const RatInterval& window) const override;
    MassBounds mass_bounds(const RatInterval& window, int depth) const override;
    std::vector<Rat> support_net(const RatInterval& window, const Rat& delta) const override;

    // exact node mass at a level: (a(root)/A) * degree^{-(level - n0)}
    Rat node_mass(int level, long index) const;

private:
    TreeFamily forest_;
    long R_;
    int n0_;
    int degree_;
    PowerLawCert cert_;
    Rat floor_;
    Rat norm_a_;                  // the Appendix-A normalizer (A clashes with
                                  // the line coefficient, hence the rename)
    std::vector<int> root_of_;    // deepest-level node -> root index
};

// Builds the limit measure of a degree >= 2 regular forest, checking the
// width law |child| = |parent| / R; the power-law constants follow the
// Appendix-A formulas with R^{beta} = degree exactly.
TreeMeasure limit_measure(const TreeFamily& forest, long R, int n0, int degree);

// Degenerate practical case: a degree-1 forest is an atom field at the built
// floor; above the floor its mass distribution is the substrate's, so the
// substrate certificate is carried through (recorded by callers).
TreeMeasure limit_measure_with_substrate(const TreeFamily& forest, long R, int n0, int degree,
                                         const PowerLawCert& substrate);

struct BetaC {
    Int gamma_r;               // ceil((b1/20b2) R^beta)
    RatInterval value;         // log_R(gamma_r R ... ) per the closing formula
    RatInterval lower_bound;   // beta - log_R(20 b2/b1)
};

// Exponent of the extracted-family measure and its paper lower bound.
BetaC beta_c(const Params& p, const Rat& tol);

}  // namespace badger
