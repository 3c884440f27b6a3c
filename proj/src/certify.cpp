#include "badger/certify.hpp"

#include <cmath>

namespace badger {

RefinableEnclosure theta_refinable(const BadTheta& theta) {
    RefinableEnclosure e;
    e.current = theta.enclosure(make_rat(1, 1024));
    e.refine = [theta](const RatInterval& cur) -> std::optional<RatInterval> {
        return theta.enclosure(cur.width() / 256);
    };
    return e;
}

RefinableEnclosure interval_refinable(RatInterval iv, Rat anchor) {
    if (!iv.contains(anchor))
        throw std::invalid_argument("interval_refinable: anchor outside the interval");
    RefinableEnclosure e;
    e.current = std::move(iv);
    e.refine = [anchor](const RatInterval& cur) -> std::optional<RatInterval> {
        if (cur.width() == 0) return std::nullopt;
        Rat r = cur.width() / 8;  // new half-width: shrink by 4
        Rat lo = rat_max(cur.lo, anchor - r);
        Rat hi = rat_min(cur.hi, anchor + r);
        return RatInterval(lo, hi);
    };
    return e;
}

RefinableEnclosure exact_point(const Rat& x) {
    RefinableEnclosure e;
    e.current = RatInterval::point(x);
    e.refine = [](const RatInterval&) -> std::optional<RatInterval> { return std::nullopt; };
    return e;
}

DistRange int_dist_range(const RatInterval& iv) {
    if (iv.width() >= 1) return {Rat(0), make_rat(1, 2)};
    Int fa = rat_floor(iv.lo);
    Rat a = iv.lo - Rat(fa);   // in [0,1)
    Rat b = iv.hi - Rat(fa);   // in [a, a+1)
    auto d = [](const Rat& x) {  // dist to Z for x in [0, 2)
        Rat f = x >= 1 ? Rat(x - 1) : x;
        return rat_min(f, Rat(1) - f);
    };
    DistRange out{Rat(0), Rat(0)};
    // minimum: zero iff an integer lies inside
    if (b >= 1 || a == 0) out.lo = 0;
    else out.lo = rat_min(d(a), d(b));
    // maximum: 1/2 iff a half-integer lies inside
    Rat half = make_rat(1, 2), three_half = make_rat(3, 2);
    if ((a <= half && half <= b) || (a <= three_half && three_half <= b)) out.hi = half;
    else out.hi = rat_max(d(a), d(b));
    return out;
}

namespace {

// sign predicates for q d^{1/i} vs c:  d > (c/q)^i  <=>  pass side
// (c = 0 passes as soon as d > 0, matching the strict inequality)
bool term_passes(const Rat& d_lo, const Int& q, const Rat& c, const Rat& i) {
    if (d_lo <= 0) return false;
    if (c == 0) return true;
    return cmp_rat_vs_pow(d_lo, c / Rat(q), i.get_num().get_si(), i.get_den().get_si()) > 0;
}

bool term_fails(const Rat& d_hi, const Int& q, const Rat& c, const Rat& i) {
    if (c == 0) return d_hi == 0;
    if (d_hi == 0) return true;
    return cmp_rat_vs_pow(d_hi, c / Rat(q), i.get_num().get_si(), i.get_den().get_si()) <= 0;
}

RatInterval scaled(const RatInterval& iv, const Int& q) {
    return RatInterval(Rat(q) * iv.lo, Rat(q) * iv.hi);
}

}  // namespace

SimultaneousResult check_simultaneous(RefinableEnclosure x, RefinableEnclosure y,
                                      const Weights& w, const Rat& c, const Int& qmax,
                                      int budget) {
    if (qmax < 1) throw std::domain_error("check_simultaneous: Qmax must be >= 1");
    if (c < 0) throw std::domain_error("check_simultaneous: c must be >= 0");
    if (w.degenerate()) throw std::domain_error("check_simultaneous: degenerate weights");
    SimultaneousResult res;
    for (Int q = 1; q <= qmax; ++q) {
        ++res.checked;
        while (true) {
            DistRange dx = int_dist_range(scaled(x.current, q));
            DistRange dy = int_dist_range(scaled(y.current, q));
            if (term_passes(dx.lo, q, c, w.i) || term_passes(dy.lo, q, c, w.j)) break;
            if (term_fails(dx.hi, q, c, w.i) && term_fails(dy.hi, q, c, w.j)) {
                res.overall = Verdict::fail;
                res.first_fail_q = q;
                return res;
            }
            if (res.refinements >= budget) {
                res.overall = Verdict::inconclusive;
                res.blocking_q = q;
                return res;
            }
            // refine the coordinate with the wider scaled enclosure first
            bool x_wider = x.current.width() >= y.current.width();
            auto& first = x_wider ? x : y;
            auto& second = x_wider ? y : x;
            auto n1 = first.refine(first.current);
            ++res.refinements;
            if (n1 && n1->width() < first.current.width()) {
                first.current = *n1;
                continue;
            }
            auto n2 = second.refine(second.current);
            if (n2 && n2->width() < second.current.width()) {
                second.current = *n2;
                continue;
            }
            res.overall = Verdict::inconclusive;
            res.blocking_q = q;
            return res;
        }
    }
    return res;
}

namespace {

// |v| range over an interval value
std::pair<Rat, Rat> abs_range(const RatInterval& v) {
    if (v.lo >= 0) return {v.lo, v.hi};
    if (v.hi <= 0) return {-v.hi, -v.lo};
    return {Rat(0), rat_max(-v.lo, v.hi)};
}

}  // namespace

DualResult check_dual(RefinableEnclosure x, RefinableEnclosure y, const Weights& w, const Rat& c,
                      const Int& boundH, int budget) {
    if (boundH < 1) throw std::domain_error("check_dual: boundH must be >= 1");
    if (c < 0) throw std::domain_error("check_dual: c must be >= 0");
    if (w.degenerate()) throw std::domain_error("check_dual: degenerate weights");
    if (c >= make_rat(1, 2))
        throw std::domain_error("check_dual: c must be < 1/2 so only nearby C matter");
    DualResult res;
    auto [pi, qi] = w.inv_i();
    auto [pj, qj] = w.inv_j();
    Int a_max = pow_floor(Rat(boundH), w.i.get_num().get_si(), w.i.get_den().get_si());
    Int b_max = pow_floor(Rat(boundH), w.j.get_num().get_si(), w.j.get_den().get_si());

    for (Int B = 0; B <= b_max; ++B) {
        for (Int A = (B == 0 ? Int(1) : Int(-a_max)); A <= a_max; ++A) {
            if (B == 0 && A == 0) continue;
            // max part and its exponent pair, exactly
            bool max_is_a;
            if (A == 0) max_is_a = false;
            else if (B == 0) max_is_a = true;
            else max_is_a = cmp_pow_vs_pow(Rat(abs(A)), pi, qi, Rat(B), pj, qj) >= 0;
            const Int base_i = abs(A);
            const Rat base = max_is_a ? Rat(base_i) : Rat(B);
            const long ep = max_is_a ? pi : pj;
            const long eq = max_is_a ? qi : qj;
            // skip pairs whose max part exceeds boundH
            if (cmp_rat_vs_pow(Rat(boundH), base, ep, eq) < 0) continue;

            while (true) {
                // S = A x + B y; candidates C make S + C near 0
                Rat slo = Rat(A) * (A >= 0 ? x.current.lo : x.current.hi) +
                          Rat(B) * y.current.lo;
                Rat shi = Rat(A) * (A >= 0 ? x.current.hi : x.current.lo) +
                          Rat(B) * y.current.hi;
                Int clo = rat_floor(-shi) - 1, chi = rat_ceil(-slo) + 1;
                bool undecided = false, failed = false;
                Line culprit;
                for (Int C = clo; C <= chi && !failed; ++C) {
                    ++res.checked;
                    RatInterval v(slo + Rat(C), shi + Rat(C));
                    auto [mlo, mhi] = abs_range(v);
                    // pass: mlo * max > c  <=>  max > c/mlo
                    bool pass = mlo > 0 && (c == 0 || cmp_rat_vs_pow(c / mlo, base, ep, eq) < 0);
                    if (pass) continue;
                    bool fail = c > 0 && (mhi == 0 || cmp_rat_vs_pow(c / mhi, base, ep, eq) >= 0);
                    if (fail) {
                        failed = true;
                        culprit = Line{A, B, C};
                        break;
                    }
                    undecided = true;
                    culprit = Line{A, B, C};
                }
                if (failed) {
                    res.overall = Verdict::fail;
                    res.first_fail = culprit;
                    return res;
                }
                if (!undecided) break;
                if (res.refinements >= budget) {
                    res.overall = Verdict::inconclusive;
                    res.blocking = culprit;
                    return res;
                }
                bool x_wider = x.current.width() >= y.current.width();
                auto& first = x_wider ? x : y;
                auto& second = x_wider ? y : x;
                auto n1 = first.refine(first.current);
                ++res.refinements;
                if (n1 && n1->width() < first.current.width()) {
                    first.current = *n1;
                    continue;
                }
                auto n2 = second.refine(second.current);
                if (n2 && n2->width() < second.current.width()) {
                    second.current = *n2;
                    continue;
                }
                res.overall = Verdict::inconclusive;
                res.blocking = culprit;
                return res;
            }
        }
    }
    return res;
}

BoxDimEstimate box_dimension_estimate(const std::vector<std::pair<Rat, long>>& scale_counts) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& [scale, count] : scale_counts) {
        if (count <= 0 || scale <= 0) continue;
        pts.emplace_back(std::log(1.0 / rat_approx(scale)), std::log(static_cast<double>(count)));
    }
    if (pts.size() < 3) throw std::domain_error("box_dimension_estimate: need >= 3 scales");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto& [u, v] : pts) {
        sx += u; sy += v; sxx += u * u; sxy += u * v;
    }
    double n = static_cast<double>(pts.size());
    double denom = n * sxx - sx * sx;
    if (denom == 0) throw std::domain_error("box_dimension_estimate: need >= 2 distinct scales");
    BoxDimEstimate est;
    est.slope = (n * sxy - sx * sy) / denom;
    double icept = (sy - est.slope * sx) / n;
    double ss = 0;
    for (auto& [u, v] : pts) {
        double rres = v - (est.slope * u + icept);
        ss += rres * rres;
    }
    est.residual_rms = std::sqrt(ss / n);
    est.points = static_cast<int>(pts.size());
    return est;
}

}  // namespace badger
