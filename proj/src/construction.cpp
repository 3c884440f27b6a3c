#include "badger/construction.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace badger {

namespace {

// enclosure of R^{e} for rational e, relative tolerance
RatInterval r_pow_enc(long R, const Rat& e, const Rat& reltol) {
    return pow_enclosure(Rat(R), e.get_num().get_si(), e.get_den().get_si(), reltol);
}

RatInterval log2_of(const Rat& x, const Rat& tol) { return log_enclosure(Rat(2), x, tol); }

// solve eps * t = log2 t for t > 1 (t = log2 R0), enclosure of width <= tol
RatInterval solve_log2_r0(const Rat& eps, const Rat& tol) {
    Rat lo(2), hi(4);
    auto sign_at = [&](const Rat& t) {
        RatInterval l2 = log2_of(t, tol / 16);
        if (eps * t > l2.hi) return 1;
        if (eps * t < l2.lo) return -1;
        return 0;
    };
    if (sign_at(lo) > 0) return RatInterval(Rat(1), Rat(2));  // huge eps: tiny root
    while (sign_at(hi) <= 0) {
        hi *= 2;
        if (hi > Rat(Int(1) << 62)) break;
    }
    for (int it = 0; it < 400 && hi - lo > tol; ++it) {
        Rat mid = (lo + hi) / 2;
        int s = sign_at(mid);
        if (s == 0) return RatInterval(mid - tol, mid + tol);
        if (s < 0) lo = mid; else hi = mid;
    }
    return RatInterval(lo, hi);
}

}  // namespace

Params derive_constants(const Weights& w, const PowerLawCert& cert, const BadTheta& theta,
                        long R, Mode mode, const Rat& slack) {
    if (w.degenerate())
        throw std::domain_error(
            "derive_constants: degenerate weights; use the single-coordinate shortcut paths");
    if (R < 2) throw std::domain_error("derive_constants: R must be >= 2");
    if (!cert.beta.is_exact())
        throw std::domain_error("derive_constants: construction requires an exact rational beta");
    if (slack <= 0) throw std::domain_error("derive_constants: slack must be positive");

    Params p;
    p.w = w;
    p.R = R;
    p.mode = mode;
    p.beta = *cert.beta.exact;
    p.b1 = cert.b1;
    p.b2 = cert.b2;
    p.alpha = p.beta * w.i * w.j / 4;
    p.lambda = Rat(3) / w.j;
    p.epsilon = p.alpha * p.beta * p.beta * w.i * w.j / 20;
    p.c_theta = theta.quality();
    p.slack = slack;

    Rat reltol = make_rat(1, Int(1) << 32);
    // c1 = min(c(theta) R^{1+alpha}, (1/4) R^{-3i/j}), rounded down to rational.
    // Rounding down is the safe direction: it keeps c <= c(theta) and shrinks
    // every removed interval's budget, never the certificates.
    RatInterval r1a = r_pow_enc(R, Rat(1) + p.alpha, reltol);  // R^{1+alpha}
    RatInterval r3ij = r_pow_enc(R, Rat(-3) * w.i / w.j, reltol);
    Rat t1_lo = p.c_theta * r1a.lo, t1_hi = p.c_theta * r1a.hi;
    Rat t2_lo = r3ij.lo / 4, t2_hi = r3ij.hi / 4;
    p.c1 = (t2_hi <= t1_lo) ? t2_lo : (t1_hi <= t2_lo) ? t1_lo : rat_min(t1_lo, t2_lo);
    // c = c1 R^{-(1+alpha)} rounded down: c R^{1+alpha} <= c1 and c <= c(theta)
    p.c = p.c1 / r1a.hi;
    // rho >= R^{-alpha}; the working window (1 - rho) I sits inside the paper's I^-
    p.rho = r_pow_enc(R, -p.alpha, reltol).hi;

    // c5 = 4^{2/(ij) + 2} * b2/b1
    Rat e5 = Rat(2) / (w.i * w.j) + 2;
    RatInterval f5 = pow_enclosure(Rat(4), e5.get_num().get_si(), e5.get_den().get_si(),
                                   make_rat(1, 1u << 24));
    p.c5_enclosure = RatInterval(f5.lo * p.b2 / p.b1, f5.hi * p.b2 / p.b1);
    if (f5.lo == f5.hi) p.c5_exact = p.c5_enclosure.lo;

    // thresholds, log2 space
    Rat tol = make_rat(1, 1024);
    Thresholds th;
    th.log2_r0 = solve_log2_r0(p.epsilon, tol);
    Rat two_over_beta = Rat(2) / p.beta;  // log2 R2
    th.log2_r2 = RatInterval::point(two_over_beta);
    if (two_over_beta.get_den() == 1 && two_over_beta.get_num().fits_ulong_p()) {
        Int r2;
        mpz_ui_pow_ui(r2.get_mpz_t(), 2, two_over_beta.get_num().get_ui());
        th.r2_exact = Rat(r2);
    }
    RatInterval l60 = log2_of(Rat(60) * p.b2 / p.b1, tol * p.epsilon);
    th.log2_r3 = RatInterval(l60.lo / p.epsilon, l60.hi / p.epsilon);
    Rat denom = p.alpha * p.beta * p.beta * w.i * w.j;
    RatInterval l64 = log2_of(Rat(64) * p.b2 * p.b2 / (p.b1 * p.b1), tol * denom / 20);
    RatInterval mid_term(Rat(10) * l64.lo / denom, Rat(10) * l64.hi / denom);
    RatInterval lc5(log2_of(p.c5_enclosure.lo, tol * p.alpha * p.beta / 4).lo,
                    log2_of(p.c5_enclosure.hi, tol * p.alpha * p.beta / 4).hi);
    RatInterval last_term(Rat(2) * lc5.lo / (p.alpha * p.beta),
                          Rat(2) * lc5.hi / (p.alpha * p.beta));
    th.log2_r1 = RatInterval(rat_max(th.log2_r0.lo, rat_max(mid_term.lo, last_term.lo)),
                             rat_max(th.log2_r0.hi, rat_max(mid_term.hi, last_term.hi)));
    Rat binding_hi = rat_max(th.log2_r1.hi, rat_max(th.log2_r2.hi, th.log2_r3.hi));
    th.log2_shortfall = log2_of(Rat(R), tol).lo - binding_hi;
    p.thresholds = th;

    if (mode == Mode::theoretical) {
        if (p.thresholds.log2_shortfall < 0)
            throw std::domain_error(
                "derive_constants: theoretical mode requires R >= max(R1,R2,R3); log2 shortfall " +
                rat_str(p.thresholds.log2_shortfall));
        if (p.rho > make_rat(1, 2))
            throw std::domain_error("derive_constants: theoretical mode requires R^{-alpha} <= 1/2");
    }
    return p;
}

std::vector<RatInterval> five_r_cover(const std::vector<RatInterval>& candidates) {
    if (candidates.empty()) return {};
    std::vector<RatInterval> sorted = candidates;
    std::sort(sorted.begin(), sorted.end(),
              [](const RatInterval& a, const RatInterval& b) { return a.mid() < b.mid(); });
    const Rat w = sorted.front().width();
    for (const auto& c : sorted)
        if (c.width() != w) throw std::invalid_argument("five_r_cover: radii must be equal");
    std::vector<RatInterval> out;
    for (const auto& c : sorted) {
        if (out.empty() || c.lo > out.back().hi) out.push_back(c);
        // a skipped candidate overlaps the last selected equal-radius ball,
        // so it lies inside its 3-dilate, a fortiori the 5-dilate
    }
    return out;
}

int LevelFamily::ancestor_of(int n, int idx, int up) const {
    int cur = idx;
    for (int t = 0; t < up; ++t)
        cur = level(n - t).intervals.at(static_cast<std::size_t>(cur)).parent;
    return cur;
}

namespace {

// count >= b2^{-1} x^{-beta}, exact via cleared exponents
bool count_bound_holds(long count, const Rat& b2, const Rat& x, const Rat& beta) {
    return cmp_rat_vs_pow(Rat(count) * b2, x, -beta.get_num().get_si(),
                          beta.get_den().get_si()) >= 0;
}

std::vector<RatInterval> balls_at(const std::vector<Rat>& centers, const Rat& radius) {
    std::vector<RatInterval> out;
    out.reserve(centers.size());
    for (const Rat& c : centers) out.push_back(RatInterval::ball(c, radius));
    return out;
}

}  // namespace

LevelFamily build_level0(const Params& params, const SupportMeasure& mu) {
    LevelFamily fam;
    fam.params = params;
    Level lvl;
    lvl.n = 0;
    std::vector<Rat> net = mu.support_net(mu.hull(), params.c1 / 10);
    if (net.empty()) throw std::logic_error("build_level0: empty support net");
    lvl.candidate_count = static_cast<long>(net.size());
    for (const RatInterval& iv : five_r_cover(balls_at(net, params.c1 / 2))) {
        LevelInterval li;
        li.center = iv.mid();
        li.iv = iv;
        li.in_j = true;
        lvl.intervals.push_back(std::move(li));
    }
    for (int i = 0; i < static_cast<int>(lvl.intervals.size()); ++i) lvl.j_indices.push_back(i);
    lvl.count_bound_ok = count_bound_holds(static_cast<long>(lvl.intervals.size()), params.b2,
                                           Rat(5) * params.c1 / 2, params.beta);
    if (params.mode == Mode::theoretical && !lvl.count_bound_ok)
        throw std::logic_error("build_level0: count bound violated in theoretical mode");
    fam.levels.push_back(std::move(lvl));
    return fam;
}

void refine_level(LevelFamily& fam, const SupportMeasure& mu, const BadTheta& theta) {
    const Params& p = fam.params;
    const int n = fam.depth();
    const Level& cur = fam.level(n);
    if (cur.j_indices.empty()) throw ConstructionExhausted(n);

    Level next;
    next.n = n + 1;
    const Rat child_width = p.level_width(n + 1);
    const Rat child_radius = child_width / 2;
    const Rat net_delta = child_width / 10;
    // per-parent lower bound (b1 / 10 b2) R^beta, rounded up for the check
    const Rat child_bound =
        p.b1 *
        pow_enclosure(Rat(p.R), p.beta.get_num().get_si(), p.beta.get_den().get_si(),
                      make_rat(1, 1u << 20))
            .hi /
        (Rat(10) * p.b2);

    for (int pi : cur.j_indices) {
        const LevelInterval& parent = cur.intervals[static_cast<std::size_t>(pi)];
        RatInterval window = parent.iv.dilate(Rat(1) - p.rho);
        std::vector<Rat> net = mu.support_net(window, net_delta);
        next.candidate_count += static_cast<long>(net.size());
        std::vector<RatInterval> cover = five_r_cover(balls_at(net, child_radius));
        if (Rat(static_cast<long>(cover.size())) < child_bound) {
            next.count_bound_ok = false;
            if (p.mode == Mode::theoretical)
                throw std::logic_error("refine_level: child count bound violated");
        }
        for (const RatInterval& iv : cover) {
            if (!parent.iv.contains(iv))
                throw std::logic_error("refine_level: child escapes its parent");
            LevelInterval li;
            li.center = iv.mid();
            li.iv = iv;
            li.parent = pi;
            li.in_j = true;
            next.intervals.push_back(std::move(li));
        }
    }
    if (next.intervals.empty()) throw ConstructionExhausted(n + 1);
    for (std::size_t t = 0; t + 1 < next.intervals.size(); ++t)
        if (!(next.intervals[t].iv.hi < next.intervals[t + 1].iv.lo))
            throw std::logic_error("refine_level: children not strictly ordered");

    // removal against C(n): mark children whose interval meets the inflated
    // danger interval of some line; record every (line, child) incidence
    RatInterval hull(next.intervals.front().iv.lo, next.intervals.back().iv.hi);
    for (const TaggedLine& tl : enumerate_level(n, hull, p.line_params(), theta)) {
        RatInterval zone = tl.danger.outer(tl.danger.removal_radius);
        // children are disjoint and sorted; walk the overlap range
        auto it = std::lower_bound(next.intervals.begin(), next.intervals.end(), zone.lo,
                                   [](const LevelInterval& li, const Rat& v) { return li.iv.hi < v; });
        for (; it != next.intervals.end() && it->iv.lo <= zone.hi; ++it) {
            int child = static_cast<int>(it - next.intervals.begin());
            it->in_j = false;
            RemovalIncidence inc;
            inc.line = tl.line;
            inc.n = n;
            inc.l = tl.l;
            inc.k = tl.k;
            inc.child = child;
            inc.direct_parent = it->parent;
            inc.ancestor = tl.l == 0 ? it->parent : -2;  // resolved below
            next.removals.push_back(std::move(inc));
        }
    }
    // resolve l-generation ancestors now that parents are final
    for (RemovalIncidence& inc : next.removals) {
        if (inc.ancestor == -2) {
            int cur_idx = inc.direct_parent;
            for (int t = 0; t < inc.l; ++t)
                cur_idx = fam.level(n - t).intervals[static_cast<std::size_t>(cur_idx)].parent;
            inc.ancestor = cur_idx;
        }
    }
    for (int i = 0; i < static_cast<int>(next.intervals.size()); ++i)
        if (next.intervals[static_cast<std::size_t>(i)].in_j) next.j_indices.push_back(i);

    fam.levels.push_back(std::move(next));
    if (fam.levels.back().j_indices.empty()) throw ConstructionExhausted(n + 1);
}

bool k_case_high(const Params& p, int k) {
    // R^{1-alpha} 2^{-k} > 1  <=>  R^{1-alpha} > 2^k
    Rat e = Rat(1) - p.alpha;
    return cmp_rat_vs_pow(Rat(Int(1) << k), Rat(p.R), e.get_num().get_si(),
                          e.get_den().get_si()) < 0;
}

Int per_line_capacity(const Params& p, int k) {
    Rat base = Rat(4) * p.b2 / p.b1;
    if (!k_case_high(p, k)) return rat_ceil(base);  // K = 1
    // X = base * R^{beta(1-alpha)} * 2^{-k beta}; smallest integer >= X
    Rat e1 = p.beta * (Rat(1) - p.alpha);
    Rat e2 = -p.beta * k;
    RatInterval enc = r_pow_enc(p.R, e1, make_rat(1, 1u << 20));
    RatInterval enc2 = pow_enclosure(Rat(2), e2.get_num().get_si(), e2.get_den().get_si(),
                                     make_rat(1, 1u << 20));
    Int t = rat_ceil(base * enc.hi * enc2.hi);
    while (t > 1 && cmp_rat_vs_pow_product(Rat(t - 1) / base, Rat(p.R), e1, Rat(2), e2) >= 0) --t;
    while (cmp_rat_vs_pow_product(Rat(t) / base, Rat(p.R), e1, Rat(2), e2) < 0) ++t;
    return t;
}

RatInterval tau_value(const Params& p, int l, int k, const Rat& tol) {
    Rat e = k_case_high(p, k) ? Rat(Rat(l) - p.alpha + 2 * p.epsilon / p.beta)
                              : Rat(Rat(l) - 1 + 2 * p.epsilon / p.beta);
    RatInterval r = r_pow_enc(p.R, e, tol);
    Rat f = k_case_high(p, k) ? p.c1 / Rat(Int(1) << k) : p.c1;
    return RatInterval(r.lo * f, r.hi * f);
}

RatInterval m_bound(const Params& p, int l, const Rat& delta_hypothetical, const Rat& tol) {
    if (delta_hypothetical <= 0 || delta_hypothetical >= 1)
        throw std::domain_error("m_bound: delta must lie in (0,1)");
    auto [pi, qi] = p.w.inv_i();
    RatInterval d = pow_enclosure(delta_hypothetical, -pi, qi, tol);
    Rat e = Rat(-5) * l / (p.w.i * p.w.j);
    RatInterval r = r_pow_enc(p.R, e, tol);
    return RatInterval(Rat(2) * d.lo * r.lo + 2, Rat(2) * d.hi * r.hi + 2);
}

RatInterval c3_value(const Params& p, int l, const Rat& tol) {
    Rat e = (p.w.j - p.lambda * l * (p.w.j + 1)) / p.w.i;
    return r_pow_enc(p.R, e, tol);
}

RatInterval c4_value(const Params& p, const Rat& tol) {
    Rat e1 = Rat(-2) / p.w.j;
    RatInterval a = pow_enclosure(Rat(4), e1.get_num().get_si(), e1.get_den().get_si(), tol);
    RatInterval b = pow_enclosure(Rat(2), -p.w.i.get_num().get_si(), p.w.i.get_den().get_si(), tol);
    return RatInterval(a.lo * b.lo, a.hi * b.hi);
}

DiagnosticsReport removal_diagnostics(const LevelFamily& fam,
                                      const std::optional<Rat>& delta_hypothetical) {
    (void)delta_hypothetical;  // consumed by callers via m_bound; kept for the report surface
    DiagnosticsReport rep;
    const Params& p = fam.params;
    Rat beta_eps = p.beta - p.epsilon;

    // group class removals per (n, l, k, ancestor)
    std::map<std::tuple<int, int, int, int>, std::set<int>> class_children;
    std::map<std::tuple<std::string, int, int, int, int>, long> line_counts;
    for (const Level& lvl : fam.levels) {
        for (const RemovalIncidence& inc : lvl.removals) {
            class_children[{inc.n, inc.l, inc.k, inc.ancestor}].insert(inc.child);
            ++line_counts[{inc.line.str(), inc.n, inc.l, inc.k, inc.ancestor}];
        }
    }
    for (const auto& [key, children] : class_children) {
        ClassRemovalStat s;
        std::tie(s.n, s.l, s.k, s.ancestor) = key;
        s.removed = static_cast<long>(children.size());
        // removed <= R^{beta - epsilon}?
        s.within_r_beta_eps =
            cmp_rat_vs_pow(Rat(s.removed), Rat(p.R), beta_eps.get_num().get_si(),
                           beta_eps.get_den().get_si()) <= 0;
        if (!s.within_r_beta_eps) ++rep.flagged_classes;
        rep.class_stats.push_back(std::move(s));
    }
    for (const auto& [key, count] : line_counts) {
        LineCapacityStat s;
        s.line = Line::parse(std::get<0>(key));
        s.n = std::get<1>(key);
        s.l = std::get<2>(key);
        s.k = std::get<3>(key);
        s.ancestor = std::get<4>(key);
        s.count = count;
        s.capacity = per_line_capacity(p, s.k) + 2;
        s.ok = Int(count) <= s.capacity;
        if (!s.ok) ++rep.capacity_violations;
        rep.line_stats.push_back(std::move(s));
    }
    return rep;
}

}  // namespace badger
