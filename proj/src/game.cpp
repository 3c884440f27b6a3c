#include "badger/game.hpp"

#include <algorithm>
#include <map>

namespace badger {

Membership ifs_member(const IFS& ifs, const Rat& x, int depth_budget) {
    Cylinder cur = ifs.root();
    if (x < cur.interval.lo || x > cur.interval.hi) return Membership::no;
    for (int d = 0; d < depth_budget; ++d) {
        if (x == cur.interval.lo || x == cur.interval.hi) return Membership::yes;
        bool inside = false;
        for (std::size_t b = 0; b < ifs.maps().size(); ++b) {
            Cylinder ch = ifs.child(cur, static_cast<int>(b));
            if (ch.interval.contains(x)) {
                cur = std::move(ch);
                inside = true;
                break;
            }
        }
        if (!inside) return Membership::no;  // fell into a gap
    }
    return Membership::unknown;
}

GameState start_game(const GameConfig& config, const BobMove& opening) {
    if (config.beta <= 0 || config.beta >= 1)
        throw std::invalid_argument("start_game: beta must lie in (0,1)");
    if (!config.playable.fractal && config.beta >= make_rat(1, 3))
        throw std::invalid_argument("start_game: games on the line require beta < 1/3");
    if (config.N < 1) throw std::invalid_argument("start_game: N must be >= 1");
    if (opening.radius <= 0) throw std::invalid_argument("start_game: opening radius must be positive");
    GameState s;
    s.config = config;
    s.center = opening.center;
    s.radius = opening.radius;
    if (config.playable.fractal &&
        ifs_member(*config.playable.fractal, opening.center) != Membership::yes) {
        s.status = GameStatus::bob_illegal;
        s.violation = "opening center not certified inside the playable set";
    }
    return s;
}

void referee_step(GameState& state, const AliceMove& alice, const BobMove& bob) {
    if (state.status != GameStatus::ongoing)
        throw std::logic_error("referee_step: game already decided");
    const Rat r_prev = state.radius;
    // Alice: at most N blocks, each of radius <= beta * r_{n-1}
    if (static_cast<int>(alice.blocks.size()) > state.config.N) {
        state.status = GameStatus::alice_illegal;
        state.violation = "more than N blocks";
        return;
    }
    Rat max_block = state.config.beta * r_prev;
    for (const RatInterval& b : alice.blocks) {
        if (b.width() > 2 * max_block) {
            state.status = GameStatus::alice_illegal;
            state.violation = "block radius above beta r";
            return;
        }
    }
    // Bob: radius floor, containment, disjointness, membership
    if (bob.radius < state.config.beta * r_prev) {
        state.status = GameStatus::bob_illegal;
        state.violation = "radius below beta r";
        return;
    }
    RatInterval ball = bob.ball();
    if (!state.ball().contains(ball)) {
        state.status = GameStatus::bob_illegal;
        state.violation = "ball not inside the previous ball";
        return;
    }
    for (const RatInterval& b : alice.blocks) {
        if (ball.intersects(b)) {
            state.status = GameStatus::bob_illegal;
            state.violation = "ball meets a blocked neighborhood at " + interval_str(b);
            return;
        }
    }
    if (state.config.playable.fractal &&
        ifs_member(*state.config.playable.fractal, bob.center) != Membership::yes) {
        state.status = GameStatus::bob_illegal;
        state.violation = "center not certified inside the playable set";
        return;
    }
    state.center = bob.center;
    state.radius = bob.radius;
    ++state.round;
}

Transcript play(const GameConfig& config, AlicePolicy& alice, BobPolicy& bob, int rounds) {
    Transcript t;
    t.config = config;
    t.opening = bob.opening();
    GameState s = start_game(config, t.opening);
    for (int n = 1; n <= rounds && s.status == GameStatus::ongoing; ++n) {
        AliceMove a = alice.move(s);
        BobMove b = bob.move(s, a);
        referee_step(s, a, b);
        t.rounds.emplace_back(std::move(a), std::move(b));
    }
    t.final_status = s.status == GameStatus::ongoing ? GameStatus::finished : s.status;
    t.violation = s.violation;
    t.final_ball = s.ball();
    return t;
}

bool validate_transcript(const Transcript& t, std::string* reason) {
    auto bad = [&](const std::string& why) {
        if (reason) *reason = why;
        return false;
    };
    if (t.opening.radius <= 0) return bad("opening radius");
    RatInterval ball = t.opening.ball();
    Rat r = t.opening.radius;
    for (std::size_t n = 0; n < t.rounds.size(); ++n) {
        const auto& [a, b] = t.rounds[n];
        if (static_cast<int>(a.blocks.size()) > t.config.N) return bad("blocks over N");
        for (const RatInterval& blk : a.blocks)
            if (blk.width() > 2 * t.config.beta * r) return bad("block too wide");
        if (b.radius < t.config.beta * r) return bad("radius floor");
        RatInterval nb = b.ball();
        if (!ball.contains(nb)) return bad("containment");
        for (const RatInterval& blk : a.blocks)
            if (nb.intersects(blk)) return bad("blocked region");
        ball = nb;
        r = b.radius;
    }
    if (!(ball == t.final_ball)) return bad("final ball mismatch");
    return true;
}

AliceMove SliverAlice::move(const GameState& state) {
    Rat r = state.config.beta * state.radius / 2;
    return {{RatInterval(state.ball().lo, state.ball().lo + 2 * r)}};
}

std::vector<RatInterval> remainder_pieces(const RatInterval& ball,
                                          const std::vector<RatInterval>& blocks,
                                          const Rat& margin) {
    std::vector<RatInterval> clipped;
    for (const RatInterval& b : blocks)
        if (b.intersects(ball)) clipped.push_back(b);
    std::sort(clipped.begin(), clipped.end(),
              [](const RatInterval& a, const RatInterval& b) { return a.lo < b.lo; });
    std::vector<RatInterval> out;
    Rat cursor = ball.lo;
    bool cursor_shaved = false;
    auto emit = [&](const Rat& up_to, bool shave_hi) {
        Rat lo = cursor_shaved ? cursor + margin : cursor;
        Rat hi = shave_hi ? up_to - margin : up_to;
        if (lo <= hi) out.push_back(RatInterval(lo, hi));
    };
    for (const RatInterval& b : clipped) {
        if (b.lo > cursor) emit(b.lo, true);
        if (b.hi > cursor) {
            cursor = b.hi;
            cursor_shaved = true;
        }
    }
    if (cursor < ball.hi) emit(ball.hi, false);
    return out;
}

namespace {

// largest piece index, ties to the left
std::size_t largest_piece(const std::vector<RatInterval>& pieces) {
    std::size_t best = 0;
    for (std::size_t t = 1; t < pieces.size(); ++t)
        if (pieces[t].width() > pieces[best].width()) best = t;
    return best;
}

BobMove place_in_piece(const RatInterval& piece, const Rat& radius, const Rat& toward) {
    Rat lo = piece.lo + radius, hi = piece.hi - radius;  // feasible centers
    Rat c = toward < lo ? lo : toward > hi ? hi : toward;
    return BobMove{c, radius};
}

}  // namespace

RandomBob::RandomBob(std::uint64_t seed, const GameConfig& config, Rat opening_center,
                     Rat opening_radius)
    : rng_(seed), config_(config), center0_(std::move(opening_center)),
      radius0_(std::move(opening_radius)) {}

BobMove RandomBob::opening() { return BobMove{center0_, radius0_}; }

BobMove RandomBob::move(const GameState& state, const AliceMove& pending) {
    // shrink factor in [1/3, 1/2]; keeps the reached resolution checkable
    Rat f = make_rat(1, 3) + rng_.unit_rat(1 << 10) / 6;
    Rat target = rat_max(state.radius * f, state.config.beta * state.radius);
    Rat margin = state.config.beta * state.radius / 1024;
    std::vector<RatInterval> pieces = remainder_pieces(state.ball(), pending.blocks, margin);
    // retry with smaller radii until some piece fits
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::vector<std::size_t> fits;
        for (std::size_t t = 0; t < pieces.size(); ++t)
            if (pieces[t].width() >= 2 * target) fits.push_back(t);
        if (!fits.empty()) {
            const RatInterval& piece = pieces[fits[rng_.below(fits.size())]];
            Rat u = rng_.unit_rat(1 << 12);
            Rat c = piece.lo + target + u * (piece.width() - 2 * target);
            return BobMove{c, target};
        }
        target = rat_max(Rat(target * make_rat(3, 4)), state.config.beta * state.radius);
        if (target == state.config.beta * state.radius && attempt > 4) break;
    }
    // last resort: the floor radius in the largest piece
    Rat floor_r = state.config.beta * state.radius;
    const RatInterval& piece = pieces.at(largest_piece(pieces));
    return place_in_piece(piece, floor_r, piece.mid());
}

HalvingBob::HalvingBob(const GameConfig& config, Rat opening_center, Rat opening_radius)
    : config_(config), center0_(std::move(opening_center)), radius0_(std::move(opening_radius)) {}

BobMove HalvingBob::opening() { return BobMove{center0_, radius0_}; }

BobMove HalvingBob::move(const GameState& state, const AliceMove& pending) {
    Rat target = rat_max(Rat(state.radius / 2), state.config.beta * state.radius);
    Rat margin = state.config.beta * state.radius / 1024;
    std::vector<RatInterval> pieces = remainder_pieces(state.ball(), pending.blocks, margin);
    const RatInterval& piece = pieces.at(largest_piece(pieces));
    Rat r = rat_min(target, piece.width() / 2);
    r = rat_max(r, state.config.beta * state.radius);
    return place_in_piece(piece, r, piece.mid());
}

GreedyDangerBob::GreedyDangerBob(std::uint64_t seed, const GameConfig& config, LineParams lp,
                                 std::shared_ptr<const BadTheta> theta, Rat opening_center,
                                 Rat opening_radius)
    : rng_(seed), config_(config), lp_(std::move(lp)), theta_(std::move(theta)),
      center0_(std::move(opening_center)), radius0_(std::move(opening_radius)) {}

BobMove GreedyDangerBob::opening() { return BobMove{center0_, radius0_}; }

BobMove GreedyDangerBob::move(const GameState& state, const AliceMove& pending) {
    // aim at the nearest line center y = (A theta + C)/B with small height
    Rat best_dist(10);
    Rat target = state.center;
    RatInterval t_enc = theta_->enclosure(make_rat(1, Int(1) << 40));
    for (long B = 1; B <= 8; ++B) {
        for (long A = -4; A <= 4; ++A) {
            RatInterval at(Rat(A) * (A >= 0 ? t_enc.lo : t_enc.hi) / Rat(B),
                           Rat(A) * (A >= 0 ? t_enc.hi : t_enc.lo) / Rat(B));
            Int clo = rat_floor(Rat(B) * state.ball().lo - at.hi);
            Int chi = rat_ceil(Rat(B) * state.ball().hi - at.lo);
            for (Int C = clo; C <= chi; ++C) {
                Rat y = at.mid() + make_rat(C, Int(B));
                Rat d = state.ball().dist(y);
                if (d < best_dist) {
                    best_dist = d;
                    target = y;
                }
            }
        }
    }
    Rat f = make_rat(1, 3) + rng_.unit_rat(1 << 10) / 6;
    Rat r = rat_max(Rat(state.radius * f), state.config.beta * state.radius);
    Rat margin = state.config.beta * state.radius / 1024;
    std::vector<RatInterval> pieces = remainder_pieces(state.ball(), pending.blocks, margin);
    // nearest piece to the target that can host the radius; shrink if needed
    for (int attempt = 0; attempt < 8; ++attempt) {
        const RatInterval* best = nullptr;
        Rat bd(100);
        for (const RatInterval& p : pieces) {
            if (p.width() < 2 * r) continue;
            Rat d = p.dist(target);
            if (!best || d < bd) {
                best = &p;
                bd = d;
            }
        }
        if (best) return place_in_piece(*best, r, target);
        r = rat_max(Rat(r * make_rat(3, 4)), state.config.beta * state.radius);
    }
    const RatInterval& piece = pieces.at(largest_piece(pieces));
    return place_in_piece(piece, state.config.beta * state.radius, target);
}

BobMove ReplayBob::move(const GameState& state, const AliceMove&) {
    std::size_t n = static_cast<std::size_t>(state.round);
    if (n >= src_.rounds.size()) throw std::out_of_range("ReplayBob: transcript exhausted");
    return src_.rounds[n].second;
}

StrategyContractError::StrategyContractError(RatInterval n, int lvl, long bad)
    : std::runtime_error("tree supplier contract failure: " + std::to_string(bad) +
                         " bad children at level " + std::to_string(lvl) + " in " +
                         interval_str(n)),
      node(std::move(n)), level(lvl), bad_children(bad) {}

// Per-level table of (A,B) pairs whose danger radius is at least half a
// child width at that level, with cached radii and theta-terms.
class BaSupplierCache {
public:
    struct PairEntry {
        Int A, B;
        Rat rad_outer;   // (1+slack) c / H, rounded up
        RatInterval at_over_b;  // enclosure of A theta / B
    };

    BaSupplierCache(LineParams lp, std::shared_ptr<const BadTheta> theta)
        : lp_(std::move(lp)), theta_(std::move(theta)) {}

    const LineParams& lp() const { return lp_; }
    const BadTheta& theta() const { return *theta_; }

    // pairs with rad_outer >= threshold
    const std::vector<PairEntry>& pairs_at(const Rat& threshold) {
        auto it = tables_.find(threshold);
        if (it != tables_.end()) return it->second;
        std::vector<PairEntry> out;
        // rad_outer >= threshold  =>  H <= c(1+slack)/threshold =: hmax
        Rat hmax = lp_.c * (Rat(1) + lp_.slack) / threshold;
        for (Int B = 1;; ++B) {
            Height hb(Int(0), B, lp_.w);
            if (hb.cmp(hmax) > 0) break;  // B-part alone beyond the cap
            // |A| <= (hmax/B)^i
            Int a_cap = pow_floor(hmax / Rat(B), lp_.w.i.get_num().get_si(),
                                  lp_.w.i.get_den().get_si());
            for (Int A = -a_cap; A <= a_cap; ++A) {
                Height h(A, B, lp_.w);
                RatInterval henc = h.enclosure(make_rat(1, 1u << 16));
                Rat rad = lp_.c * (Rat(1) + lp_.slack) / henc.lo;
                if (rad < threshold) continue;
                PairEntry e;
                e.A = A;
                e.B = B;
                e.rad_outer = rad;
                if (A == 0) {
                    e.at_over_b = RatInterval::point(Rat(0));
                } else {
                    RatInterval t = theta_->enclosure(rad / 64 * Rat(B) / Rat(abs(A)));
                    e.at_over_b = RatInterval(Rat(A) * (A > 0 ? t.lo : t.hi) / Rat(B),
                                              Rat(A) * (A > 0 ? t.hi : t.lo) / Rat(B));
                }
                out.push_back(std::move(e));
            }
        }
        return tables_.emplace(threshold, std::move(out)).first->second;
    }

    // does some line with rad_outer >= threshold possibly meet iv?
    bool zone_hits(const Rat& threshold, const RatInterval& iv) {
        for (const PairEntry& e : pairs_at(threshold)) {
            Int clo = rat_floor(Rat(e.B) * (iv.lo - e.rad_outer) - e.at_over_b.hi * Rat(e.B));
            Int chi = rat_ceil(Rat(e.B) * (iv.hi + e.rad_outer) - e.at_over_b.lo * Rat(e.B));
            for (Int C = clo; C <= chi; ++C) {
                if (gcd(gcd(e.A, e.B), C) != 1) continue;
                Rat shift = make_rat(C, e.B);
                RatInterval zone(e.at_over_b.lo + shift - e.rad_outer,
                                 e.at_over_b.hi + shift + e.rad_outer);
                if (zone.intersects(iv)) return true;
            }
        }
        return false;
    }

private:
    LineParams lp_;
    std::shared_ptr<const BadTheta> theta_;
    std::map<Rat, std::vector<PairEntry>> tables_;
};

std::shared_ptr<BaSupplierCache> make_supplier_cache(const Weights& w,
                                                     std::shared_ptr<const BadTheta> theta,
                                                     const Rat& c) {
    return std::make_shared<BaSupplierCache>(LineParams{w, 0, c, make_rat(1, 16)},
                                             std::move(theta));
}

BaStrategyAlice::BaStrategyAlice(Weights w, std::shared_ptr<const BadTheta> theta, Rat c,
                                 Rat beta, std::shared_ptr<BaSupplierCache> cache)
    : w_(std::move(w)), theta_(std::move(theta)), c_(std::move(c)), beta_(std::move(beta)),
      cache_(std::move(cache)) {
    if (beta_ <= 0 || beta_ >= make_rat(1, 3))
        throw std::invalid_argument("BaStrategyAlice: beta must lie in (0, 1/3)");
    if (c_ <= 0 || c_ > theta_->quality())
        throw std::invalid_argument("BaStrategyAlice: need 0 < c <= c(theta)");
    // R = 1/beta^2, falling back to 1/beta^4 when beta >= 1/24 (the remainder
    // estimate needs 1/beta > 24 at R = 1/beta^2)
    R_ = beta_ >= make_rat(1, 24) ? Rat(1) / (beta_ * beta_ * beta_ * beta_)
                                  : Rat(1) / (beta_ * beta_);
    if (R_ <= 8) throw std::logic_error("BaStrategyAlice: R must exceed 8");
    floor_r_ = rat_floor(R_).get_si();
    if (!cache_)
        cache_ = std::make_shared<BaSupplierCache>(LineParams{w_, 0, c_, make_rat(1, 16)},
                                                   theta_);
}

BaStrategyAlice::Expansion BaStrategyAlice::expand(const RatInterval& node, int child_level,
                                                   const Rat& r0) {
    Expansion out;
    Rat w_child = node.width() / R_;
    // dangerous below the next level's width: these cannot be dodged later
    Rat threshold = r0 / pow_int(R_, child_level + 1);  // w_{level+1} / 2 with w = 2 r0 R^{-m}
    Rat lo = node.lo;
    for (long t = 0; t < floor_r_; ++t) {
        RatInterval child(lo, lo + w_child);
        out.children.push_back(child);
        out.bad.push_back(cache_->zone_hits(threshold, child) ? 1 : 0);
        lo = lo + w_child;
    }
    if (lo < node.hi) out.leftover = RatInterval(lo, node.hi);
    long bad_count = std::count(out.bad.begin(), out.bad.end(), char(1));
    max_bad_ = std::max(max_bad_, bad_count);
    if (bad_count > 5) throw StrategyContractError(node, child_level, bad_count);
    return out;
}

AliceMove BaStrategyAlice::move(const GameState& state) {
    if (!opened_) {
        opened_ = true;
        r0_ = state.radius;
        Expansion ex = expand(state.ball(), 1, r0_);
        AliceMove mv;
        good_nodes_.clear();
        for (std::size_t t = 0; t < ex.children.size(); ++t) {
            if (ex.bad[t]) mv.blocks.push_back(ex.children[t]);
            else good_nodes_.push_back(ex.children[t]);
        }
        if (ex.leftover) mv.blocks.push_back(*ex.leftover);
        // first move blocks at most 6 intervals
        if (mv.blocks.size() > 6) throw std::logic_error("BaStrategyAlice: opening budget");
        for (const RatInterval& b : mv.blocks)
            if (b.width() > 2 * beta_ * state.radius)
                throw std::logic_error("BaStrategyAlice: opening block too wide");
        return mv;
    }
    // trigger: Bob's radius first enters [beta r0 / R^n, r0 / R^n]
    int n = next_window_;
    Rat win_hi = r0_ / pow_int(R_, n);
    Rat win_lo = beta_ * win_hi;
    if (state.radius > win_hi || state.radius < win_lo) return {};  // dummy move

    // covering good nodes at level n
    std::vector<RatInterval> covers;
    for (const RatInterval& g : good_nodes_)
        if (g.intersects(state.ball())) covers.push_back(g);
    if (covers.empty() || covers.size() > 2)
        throw std::logic_error("BaStrategyAlice: ball not covered by <= 2 good nodes");

    AliceMove mv;
    std::vector<RatInterval> next_good;
    for (const RatInterval& node : covers) {
        Expansion ex = expand(node, n + 1, r0_);
        for (std::size_t t = 0; t < ex.children.size(); ++t) {
            if (ex.bad[t]) mv.blocks.push_back(ex.children[t]);
            else next_good.push_back(ex.children[t]);
        }
        if (ex.leftover) mv.blocks.push_back(*ex.leftover);
    }
    if (mv.blocks.size() > 12) throw std::logic_error("BaStrategyAlice: block budget exceeded");
    for (const RatInterval& b : mv.blocks)
        if (b.width() > 2 * beta_ * state.radius)
            throw std::logic_error("BaStrategyAlice: block too wide");
    good_nodes_ = std::move(next_good);
    ++next_window_;
    return mv;
}

Rat BaStrategyAlice::guaranteed_height(const Rat& r0) const {
    // the deepest fully handled level is n* = next_window_ - 1; every line
    // with c/H >= w_{n*+1}/2 = r0 R^{-(n*+1)} stays clear of the good nodes
    return c_ * pow_int(R_, next_window_) / r0;
}

ReducedAlice::ReducedAlice(std::unique_ptr<AlicePolicy> inner, int N)
    : inner_(std::move(inner)), n_(N) {
    if (n_ < 1) throw std::invalid_argument("ReducedAlice: N must be >= 1");
}

AliceMove ReducedAlice::move(const GameState& state) {
    int r = state.round % n_;
    if (r == 0) {
        // the inner game sees every N-th ball with parameter beta^N
        GameState inner_state = state;
        inner_state.config.beta = pow_int(state.config.beta, n_);
        inner_state.config.N = n_;
        inner_state.round = state.round / n_;
        pending_ = inner_->move(inner_state);
        if (static_cast<int>(pending_.blocks.size()) > n_)
            throw std::logic_error("ReducedAlice: inner strategy emitted more than N blocks");
    }
    AliceMove mv;
    if (r < static_cast<int>(pending_.blocks.size())) mv.blocks = {pending_.blocks[static_cast<std::size_t>(r)]};
    return mv;
}

Transcript extract_inner_transcript(const Transcript& outer, int N) {
    if (N < 1) throw std::invalid_argument("extract_inner_transcript: N must be >= 1");
    Transcript inner;
    inner.config = outer.config;
    inner.config.beta = pow_int(outer.config.beta, N);
    inner.config.N = N;
    inner.opening = outer.opening;
    AliceMove batch;
    for (std::size_t n = 0; n < outer.rounds.size(); ++n) {
        for (const RatInterval& b : outer.rounds[n].first.blocks) batch.blocks.push_back(b);
        if ((n + 1) % static_cast<std::size_t>(N) == 0) {
            inner.rounds.emplace_back(std::move(batch), outer.rounds[n].second);
            batch = {};
        }
    }
    inner.final_status = GameStatus::finished;
    inner.final_ball = inner.rounds.empty() ? outer.opening.ball()
                                            : inner.rounds.back().second.ball();
    return inner;
}

namespace {

bool segment_piece_nonempty(const RatInterval& piece) {
    return piece.lo <= piece.hi && piece.hi >= 0 && piece.lo <= 1;
}

// does K cap B(x,rho) survive the blocks? exact via support queries
bool survives(const std::optional<IFS>& fractal, const Rat& x, const Rat& rho,
              const std::vector<RatInterval>& blocks) {
    RatInterval ball = RatInterval::ball(x, rho);
    // complement pieces of the blocks inside the ball (closed; block edges
    // themselves are excluded, harmless for the nonemptiness question since
    // the condition asks for a point outside every block)
    std::vector<RatInterval> sorted = blocks;
    std::sort(sorted.begin(), sorted.end(),
              [](const RatInterval& a, const RatInterval& b) { return a.lo < b.lo; });
    std::vector<RatInterval> pieces;
    Rat cursor = ball.lo;
    for (const RatInterval& b : sorted) {
        if (b.lo > cursor) pieces.push_back(RatInterval(cursor, b.lo));
        cursor = rat_max(cursor, b.hi);
    }
    if (cursor <= ball.hi) pieces.push_back(RatInterval(cursor, ball.hi));
    for (const RatInterval& p : pieces) {
        // survivors must avoid the closed blocks: shrink ends that abut one
        Rat lo = p.lo, hi = p.hi;
        bool lo_abuts = false, hi_abuts = false;
        for (const RatInterval& b : sorted) {
            if (b.hi == lo) lo_abuts = true;
            if (b.lo == hi) hi_abuts = true;
        }
        if ((lo_abuts || hi_abuts) && hi == lo) continue;  // pinched between blocks
        Rat shave = (hi - lo) / 1024;
        if (lo_abuts) lo += shave;
        if (hi_abuts) hi -= shave;
        if (lo > hi) continue;
        RatInterval probe(lo, hi);
        if (!fractal) {
            if (segment_piece_nonempty(RatInterval(rat_max(probe.lo, Rat(0)),
                                                   rat_min(probe.hi, Rat(1)))))
                return true;
            continue;
        }
        if (probe.width() == 0) continue;
        if (support_point_in(*fractal, probe)) return true;
    }
    return false;
}

}  // namespace

DiffuseResult diffuse_check(const std::optional<IFS>& fractal, const Rat& beta, int N,
                            int trials) {
    DiffuseResult res;
    std::vector<Rat> xs;
    std::vector<Rat> rhos;
    if (fractal) {
        for (int d = 0; d <= 4; ++d)
            for (const Cylinder& c : fractal->cylinders_in(RatInterval(Rat(0), Rat(1)), d)) {
                xs.push_back(c.interval.lo);
                xs.push_back(c.interval.hi);
            }
        Rat rho = Rat(1);
        for (int t = 0; t < 10; ++t) {
            rhos.push_back(rho);
            rhos.push_back(rho * make_rat(3, 2));
            rho *= fractal->max_ratio();
        }
    } else {
        for (int t = 0; t <= 8; ++t) xs.push_back(make_rat(t, 8));
        for (int t = 1; t <= 8; ++t) rhos.push_back(pow_int(make_rat(1, 2), t));
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    for (const Rat& x : xs) {
        for (const Rat& rho : rhos) {
            if (rho > 1) continue;
            if (res.cases_checked >= trials) return res;
            ++res.cases_checked;
            // adversarial placements: center, the support mid, and the ends
            std::vector<Rat> anchors{x, x - rho * (Rat(1) - beta), x + rho * (Rat(1) - beta)};
            if (fractal) {
                MassBounds mb = mass_bounds(*fractal, RatInterval::ball(x, rho), 8);
                if (mb.upper == 0) continue;
                auto lopt = support_point_in(*fractal, RatInterval::ball(x, rho));
                if (lopt) anchors.push_back(*lopt + ((x - *lopt) / 2));
            }
            // N blocks: greedy around each anchor combination (single anchor
            // repeated or spread across the hot spots)
            std::vector<std::vector<RatInterval>> placements;
            for (const Rat& a : anchors)
                placements.push_back({RatInterval::ball(a, beta * rho)});
            if (N > 1) {
                std::vector<RatInterval> spread;
                for (int k = 0; k < N; ++k) {
                    Rat a = x - rho + (2 * rho * (2 * k + 1)) / (2 * N);
                    spread.push_back(RatInterval::ball(a, beta * rho));
                }
                placements.push_back(std::move(spread));
                // stacked around the densest end
                std::vector<RatInterval> stacked;
                for (int k = 0; k < N; ++k)
                    stacked.push_back(RatInterval::ball(
                        x + Rat(2 * k) * beta * rho - beta * rho * (N - 1), beta * rho));
                placements.push_back(std::move(stacked));
            }
            for (auto& blocks : placements) {
                if (static_cast<int>(blocks.size()) > N) continue;
                if (!survives(fractal, x, rho, blocks)) {
                    res.pass = false;
                    res.witness_x = x;
                    res.witness_rho = rho;
                    res.witness_blocks = blocks;
                    return res;
                }
            }
        }
    }
    return res;
}

Rat analytic_diffuse_beta(const IFS& ifs) { return ifs.min_ratio() / 2; }

}  // namespace badger
