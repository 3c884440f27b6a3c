#pragma once

#include <memory>

#include "badger/construction.hpp"
#include "badger/fractal.hpp"
#include "badger/lines.hpp"

namespace badger {

// Where Bob's centers must live: the whole line (the Theta-segment case) or
// the attractor of a separated IFS.
struct PlayableSet {
    std::optional<IFS> fractal;  // nullopt = no membership constraint

    static PlayableSet real_line() { return {}; }
    static PlayableSet on(IFS ifs) { return {std::move(ifs)}; }
};

// tri-state exact membership via cylinder descent; "unknown" after the budget
enum class Membership { yes, no, unknown };
Membership ifs_member(const IFS& ifs, const Rat& x, int depth_budget = 96);

struct GameConfig {
    Rat beta;
    int N = 1;
    PlayableSet playable;
    int max_rounds = 20;
};

struct AliceMove {
    std::vector<RatInterval> blocks;  // up to N closed neighborhoods
};

struct BobMove {
    Rat center;
    Rat radius;
    RatInterval ball() const { return RatInterval::ball(center, radius); }
};

enum class GameStatus { ongoing, alice_illegal, bob_illegal, finished };

struct GameState {
    GameConfig config;
    int round = 0;  // completed rounds (opening = round 0)
    Rat center, radius;
    GameStatus status = GameStatus::ongoing;
    std::string violation;

    RatInterval ball() const { return RatInterval::ball(center, radius); }
};

GameState start_game(const GameConfig& config, const BobMove& opening);

// One full round: Alice's blocks validated first (count, radii), then Bob's
// ball (radius floor, containment, disjointness from every block, center
// membership). A violation flips the status instead of throwing.
void referee_step(GameState& state, const AliceMove& alice, const BobMove& bob);

struct Transcript {
    GameConfig config;
    BobMove opening;
    std::vector<std::pair<AliceMove, BobMove>> rounds;
    GameStatus final_status = GameStatus::finished;
    std::string violation;
    RatInterval final_ball{Rat(0), Rat(0)};
};

class AlicePolicy {
public:
    virtual ~AlicePolicy() = default;
    virtual AliceMove move(const GameState& state) = 0;
};

class BobPolicy {
public:
    virtual ~BobPolicy() = default;
    virtual BobMove opening() = 0;
    virtual BobMove move(const GameState& state, const AliceMove& pending) = 0;
};

// Runs the refereed game to `rounds` or the first illegal move.
Transcript play(const GameConfig& config, AlicePolicy& alice, BobPolicy& bob, int rounds);

// Straight-line re-validation of a finished transcript, independent of the
// live referee bookkeeping.
bool validate_transcript(const Transcript& t, std::string* reason = nullptr);

// --- stock policies ---

class EmptyAlice : public AlicePolicy {
public:
    AliceMove move(const GameState&) override { return {}; }
};

// blocks one sliver at the low end of Bob's ball each move (exercises the
// referee and the reduction adapter)
class SliverAlice : public AlicePolicy {
public:
    AliceMove move(const GameState& state) override;
};

// maximal closed sub-balls of `ball` minus the blocks, shaved by `margin`
// where a block was removed (so closed disjointness holds)
std::vector<RatInterval> remainder_pieces(const RatInterval& ball,
                                          const std::vector<RatInterval>& blocks,
                                          const Rat& margin);

class RandomBob : public BobPolicy {
public:
    RandomBob(std::uint64_t seed, const GameConfig& config, Rat opening_center,
              Rat opening_radius);
    BobMove opening() override;
    BobMove move(const GameState& state, const AliceMove& pending) override;

private:
    SplitMix64 rng_;
    GameConfig config_;
    Rat center0_, radius0_;
};

class HalvingBob : public BobPolicy {
public:
    HalvingBob(const GameConfig& config, Rat opening_center, Rat opening_radius);
    BobMove opening() override;
    BobMove move(const GameState& state, const AliceMove& pending) override;

private:
    GameConfig config_;
    Rat center0_, radius0_;
};

// steers toward the nearest dangerous line center below a height cap
class GreedyDangerBob : public BobPolicy {
public:
    GreedyDangerBob(std::uint64_t seed, const GameConfig& config, LineParams lp,
                    std::shared_ptr<const BadTheta> theta, Rat opening_center, Rat opening_radius);
    BobMove opening() override;
    BobMove move(const GameState& state, const AliceMove& pending) override;

private:
    SplitMix64 rng_;
    GameConfig config_;
    LineParams lp_;
    std::shared_ptr<const BadTheta> theta_;
    Rat center0_, radius0_;
};

class ReplayBob : public BobPolicy {
public:
    explicit ReplayBob(Transcript source) : src_(std::move(source)) {}
    BobMove opening() override { return src_.opening; }
    BobMove move(const GameState& state, const AliceMove&) override;

private:
    Transcript src_;
};

// --- the explicit winning strategy for BA(i,j) on the segment ---

struct StrategyContractError : std::runtime_error {
    RatInterval node;
    int level;
    long bad_children;
    StrategyContractError(RatInterval n, int lvl, long bad);
};

// Shared per-(weights, c, beta) tables of dangerous (A,B) pairs per level of
// the R-adic subdivision; reused across games to keep tournaments fast.
class BaSupplierCache;
std::shared_ptr<BaSupplierCache> make_supplier_cache(const Weights& w,
                                                     std::shared_ptr<const BadTheta> theta,
                                                     const Rat& c);

// Appendix-B strategy: R = 1/beta^2 (1/beta^4 once beta >= 1/24), first move
// blocks the non-selected subdivision pattern of the opening ball (<= 6
// intervals), then dummy moves except when Bob's radius first enters
// [beta r0 / R^n, r0 / R^n], where it blocks the bad children of the <= 2
// covering nodes plus their rightmost slivers (<= 12 intervals).
class BaStrategyAlice : public AlicePolicy {
public:
    BaStrategyAlice(Weights w, std::shared_ptr<const BadTheta> theta, Rat c, Rat beta,
                    std::shared_ptr<BaSupplierCache> cache = nullptr);

    AliceMove move(const GameState& state) override;

    const Rat& subdivision_ratio() const { return R_; }   // exact rational R
    long branch_count() const { return floor_r_; }        // floor(R)
    int deepest_trigger() const { return next_window_ - 1; }
    long max_bad_children() const { return max_bad_; }
    // height below which the final ball is guaranteed clear, given the
    // deepest triggered window
    Rat guaranteed_height(const Rat& r0) const;

private:
    struct Expansion {
        std::vector<RatInterval> children;
        std::vector<char> bad;
        std::optional<RatInterval> leftover;
    };
    Expansion expand(const RatInterval& node, int child_level, const Rat& r0);

    Weights w_;
    std::shared_ptr<const BadTheta> theta_;
    Rat c_;
    Rat beta_;
    Rat R_;
    long floor_r_ = 0;
    std::shared_ptr<BaSupplierCache> cache_;
    bool opened_ = false;
    Rat r0_{0};
    int next_window_ = 1;
    long max_bad_ = 0;
    std::vector<RatInterval> good_nodes_;  // good nodes at level next_window_
};

// Lemma-19 adapter: turns a strategy for the (N, beta^N)-game into a plain
// beta-game policy by querying it every N-th round and dispensing its blocks
// one per round.
class ReducedAlice : public AlicePolicy {
public:
    ReducedAlice(std::unique_ptr<AlicePolicy> inner, int N);
    AliceMove move(const GameState& state) override;

private:
    std::unique_ptr<AlicePolicy> inner_;
    int n_;
    AliceMove pending_;
};

// Extracts the inner (N, beta^N)-game transcript {B_{nN}} from an outer
// transcript played under a reduced strategy.
Transcript extract_inner_transcript(const Transcript& outer, int N);

// --- diffuseness ---

struct DiffuseResult {
    bool pass = true;
    std::optional<Rat> witness_x, witness_rho;
    std::vector<RatInterval> witness_blocks;
    long cases_checked = 0;
};

// Adversarial deterministic search for a violation of the (N, beta)-diffuse
// condition; `fractal` empty means the closed unit segment. Exact decisions
// via support queries on the remainder pieces.
DiffuseResult diffuse_check(const std::optional<IFS>& fractal, const Rat& beta, int N,
                            int trials);

// Sufficient beta for one-block diffuseness of a separated IFS: a block of
// length min_ratio * rho cannot contain both endpoint attractor points of the
// minimal cylinder around x inside B(x, rho).
Rat analytic_diffuse_beta(const IFS& ifs);

}  // namespace badger
