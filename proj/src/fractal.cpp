#include "badger/fractal.hpp"

#include <algorithm>
#include <sstream>

namespace badger {

Exponent Exponent::rational(Rat v) {
    Exponent e;
    e.exact = std::move(v);
    return e;
}

Exponent Exponent::log_of(Rat base, Rat arg) {
    if (base <= 1) throw std::domain_error("Exponent::log_of: base must be > 1");
    if (arg <= 0) throw std::domain_error("Exponent::log_of: arg must be positive");
    if (auto ex = exact_log(base, arg)) return rational(*ex);
    Exponent e;
    e.lbase = std::move(base);
    e.larg = std::move(arg);
    return e;
}

RatInterval Exponent::enclosure(const Rat& tol) const {
    if (exact) return RatInterval::point(*exact);
    return log_enclosure(lbase, larg, tol);
}

double Exponent::approx() const {
    if (exact) return rat_approx(*exact);
    RatInterval e = enclosure(make_rat(1, 1u << 30));
    return rat_approx(e.mid());
}

std::string Exponent::str() const {
    if (exact) return rat_str(*exact);
    return "log_" + rat_str(lbase) + "(" + rat_str(larg) + ")";
}

PowerLawCert::PowerLawCert(Exponent b, Rat b1_, Rat b2_)
    : beta(std::move(b)), b1(std::move(b1_)), b2(std::move(b2_)) {
    if (!(0 < b1 && b1 <= b2)) throw std::invalid_argument("PowerLawCert: need 0 < b1 <= b2");
    RatInterval be = beta.enclosure(make_rat(1, 1024));
    if (be.lo <= 0 || be.hi > 1) throw std::invalid_argument("PowerLawCert: need 0 < beta <= 1");
}

IFS::IFS(std::vector<AffineMap> maps) : maps_(std::move(maps)) {
    if (maps_.size() < 2)
        throw std::invalid_argument("IFS: need at least two maps (single-branch measure is degenerate)");
    for (const auto& m : maps_) {
        if (m.ratio <= 0 || m.ratio >= 1)
            throw std::invalid_argument("IFS: ratios must lie in (0,1)");
    }
    min_ratio_ = maps_[0].ratio;
    max_ratio_ = maps_[0].ratio;
    for (const auto& m : maps_) {
        min_ratio_ = rat_min(min_ratio_, m.ratio);
        max_ratio_ = rat_max(max_ratio_, m.ratio);
    }
    // attractor extremes: the unique fixed points of min/max image envelopes
    auto pick_extreme = [&](bool want_min) -> Rat {
        for (const auto& m : maps_) {
            Rat t = m.offset / (Rat(1) - m.ratio);
            bool ok = true;
            for (const auto& k : maps_) {
                Rat v = k.apply(t);
                if (want_min ? v < t : v > t) { ok = false; break; }
            }
            if (ok) return t;
        }
        throw std::logic_error("IFS: no extreme fixed point found");
    };
    attr_min_ = pick_extreme(true);
    attr_max_ = pick_extreme(false);
    if (attr_min_ < 0 || attr_max_ > 1)
        throw std::invalid_argument("IFS: attractor must lie inside [0,1]");

    // canonical branch order: left-to-right by image position
    std::sort(maps_.begin(), maps_.end(), [&](const AffineMap& a, const AffineMap& b) {
        return a.apply(attr_min_) < b.apply(attr_min_);
    });

    // images of the hull must be pairwise disjoint with a positive gap
    RatInterval hull(attr_min_, attr_max_);
    separation_ = Rat(-1);
    for (std::size_t a = 0; a + 1 < maps_.size(); ++a) {
        RatInterval ia = maps_[a].apply(hull);
        RatInterval ib = maps_[a + 1].apply(hull);
        Rat gap = ib.lo - ia.hi;
        if (gap <= 0) throw std::invalid_argument("IFS: overlapping images");
        if (separation_ < 0 || gap < separation_) separation_ = gap;
    }
}

IFS IFS::parse(const std::string& s) {
    std::vector<AffineMap> maps;
    std::stringstream ss(s);
    std::string entry;
    while (std::getline(ss, entry, ';')) {
        auto comma = entry.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("IFS::parse: entries are 'ratio,offset'");
        maps.push_back({parse_rat(entry.substr(0, comma)), parse_rat(entry.substr(comma + 1))});
    }
    return IFS(std::move(maps));
}

std::string IFS::str() const {
    std::string s;
    for (std::size_t i = 0; i < maps_.size(); ++i) {
        if (i) s += ";";
        s += rat_str(maps_[i].ratio) + "," + rat_str(maps_[i].offset);
    }
    return s;
}

Cylinder IFS::root() const {
    return Cylinder{{}, RatInterval(attr_min_, attr_max_), Rat(1), attr_min_};
}

Cylinder IFS::child(const Cylinder& c, int branch) const {
    const AffineMap& m = maps_.at(static_cast<std::size_t>(branch));
    Cylinder out;
    out.word = c.word;
    out.word.push_back(branch);
    // compose: previous word applied after the new branch at the inside
    RatInterval img = m.apply(RatInterval(attr_min_, attr_max_));
    // cylinder map is f_{w} o f_branch; apply the existing word's affine form
    // by mapping the branch image through the parent's normalized coordinates
    Rat scale = c.interval.width() / (attr_max_ - attr_min_);
    out.interval = RatInterval(c.interval.lo + (img.lo - attr_min_) * scale,
                               c.interval.lo + (img.hi - attr_min_) * scale);
    out.mass = c.mass / Rat(static_cast<unsigned long>(maps_.size()));
    out.rep = out.interval.lo;  // = f_w(attractor_min): the hull is [min,max]
    return out;
}

std::vector<Cylinder> IFS::cylinders_in(const RatInterval& window, int depth) const {
    std::vector<Cylinder> out;
    std::vector<Cylinder> stack;
    Cylinder r = root();
    if (!r.interval.intersects(window)) return out;
    stack.push_back(std::move(r));
    while (!stack.empty()) {
        Cylinder c = std::move(stack.back());
        stack.pop_back();
        if (static_cast<int>(c.word.size()) == depth) {
            out.push_back(std::move(c));
            continue;
        }
        // push children right-to-left so the scan emits left-to-right
        for (int b = static_cast<int>(maps_.size()) - 1; b >= 0; --b) {
            Cylinder ch = child(c, b);
            if (ch.interval.intersects(window)) stack.push_back(std::move(ch));
        }
    }
    return out;
}

std::optional<Rat> support_point_in(const IFS& ifs, const RatInterval& window) {
    Cylinder r = ifs.root();
    if (!r.interval.intersects(window)) return std::nullopt;
    std::vector<Cylinder> frontier{std::move(r)};
    for (int depth = 0; depth <= 512; ++depth) {
        std::vector<Cylinder> next;
        for (const Cylinder& c : frontier) {
            // endpoints of a cylinder are attractor points (images of the
            // attractor extremes)
            if (window.contains(c.interval.lo)) return c.interval.lo;
            if (window.contains(c.interval.hi)) return c.interval.hi;
            for (std::size_t b = 0; b < ifs.maps().size(); ++b) {
                Cylinder ch = ifs.child(c, static_cast<int>(b));
                if (ch.interval.intersects(window)) next.push_back(std::move(ch));
            }
        }
        if (next.empty()) return std::nullopt;
        frontier = std::move(next);
    }
    throw std::runtime_error("support_point_in: descent budget exceeded (degenerate window?)");
}

MassBounds mass_bounds(const IFS& ifs, const RatInterval& window, int depth) {
    if (depth < 0) throw std::domain_error("mass_bounds: depth must be >= 0");
    MassBounds out{Rat(0), Rat(0)};
    for (const Cylinder& c : ifs.cylinders_in(window, depth)) {
        out.upper += c.mass;
        if (window.contains(c.interval)) out.lower += c.mass;
    }
    return out;
}

MoranExponent moran_exponent(const IFS& ifs, const Rat& tol) {
    if (tol <= 0) throw std::domain_error("moran_exponent: tolerance must be positive");
    const auto& maps = ifs.maps();
    bool equal = std::all_of(maps.begin(), maps.end(),
                             [&](const AffineMap& m) { return m.ratio == maps[0].ratio; });
    Rat m_count(static_cast<unsigned long>(maps.size()));
    if (equal) {
        // m * rho^beta = 1  =>  beta = log_{1/rho}(m)
        Rat base = Rat(1) / maps[0].ratio;
        MoranExponent out;
        out.exact = exact_log(base, m_count);
        out.enclosure = out.exact ? RatInterval::point(*out.exact)
                                  : log_enclosure(base, m_count, tol);
        return out;
    }
    // common-base case: every ratio = b^{e_i} for the largest ratio b
    Rat b = ifs.max_ratio();
    std::vector<long> exps;
    for (const auto& m : maps) {
        Rat v = m.ratio;
        long e = 0;
        while (v < 1) { v /= b; ++e; }
        if (v != 1) throw std::domain_error("moran_exponent: ratios are not powers of a common base");
        exps.push_back(e);
    }
    // sum t^{e_i} = 1 with t = b^beta in (0,1); the polynomial is exact, so
    // bisect t rationally and push the enclosure through the log at the end.
    auto poly_cmp = [&](const Rat& t) {
        Rat s(0);
        for (long e : exps) s += pow_int(t, e);
        return cmp(s, Rat(1));
    };
    Rat lo(0), hi(1);
    // target width on t so the log enclosure lands within tol
    Rat t_tol = tol / 8;
    while (hi - lo > t_tol) {
        Rat mid = (lo + hi) / 2;
        int s = poly_cmp(mid);
        if (s == 0) { lo = mid; hi = mid; break; }
        if (s < 0) lo = mid; else hi = mid;  // sum increasing in t
    }
    Rat inv_b = Rat(1) / b;
    RatInterval lo_log = log_enclosure(inv_b, Rat(1) / (hi == 0 ? t_tol : hi), tol / 4);
    RatInterval hi_log = log_enclosure(inv_b, Rat(1) / (lo == 0 ? t_tol : lo), tol / 4);
    MoranExponent out;
    out.enclosure = RatInterval(lo_log.lo, hi_log.hi);
    return out;
}

namespace {

// sign of mass - bound * r^beta, with the conservative endpoint of the beta
// enclosure chosen by the caller (beta = p/q exact here).
int cmp_mass_vs_power(const Rat& mass, const Rat& bound, const Rat& r, const Rat& beta) {
    // mass vs bound * r^{p/q}  <=>  (mass/bound)^q vs r^p   (all positive)
    if (bound == 0) return mass > 0 ? 1 : 0;
    long p = beta.get_num().get_si();
    long q = beta.get_den().get_si();
    return cmp_rat_vs_pow(mass / bound, r, p, q);
}

}  // namespace

PowerLawReport verify_power_law(const IFS& ifs, const PowerLawCert& cert, int samples, int depth) {
    if (samples < 1) throw std::domain_error("verify_power_law: samples must be >= 1");
    PowerLawReport rep;
    RatInterval beta_enc = cert.beta.enclosure(make_rat(1, 1000000000));
    bool beta_exact = cert.beta.is_exact();
    int radius_levels = std::max(1, depth - 2);

    // deterministic sample stream: radii cycle over max_ratio^n, points cycle
    // over the depth-n cylinder representatives
    for (int s = 0; s < samples; ++s) {
        int n = 1 + s % radius_levels;
        auto cyls = ifs.cylinders_in(RatInterval(Rat(0), Rat(1)), std::min(n, 12));
        const Cylinder& c = cyls[static_cast<std::size_t>(s / radius_levels) % cyls.size()];
        Rat x = c.rep;
        Rat r = pow_int(ifs.max_ratio(), n);
        MassBounds mb = mass_bounds(ifs, RatInterval::ball(x, r), depth);

        int verdict;
        if (cert.b2 == 0) {
            verdict = mb.lower > 0 ? -1 : 0;
        } else if (beta_exact) {
            Rat beta = *cert.beta.exact;
            bool low_ok = cmp_mass_vs_power(mb.lower, cert.b1, r, beta) >= 0;
            bool high_ok = cmp_mass_vs_power(mb.upper, cert.b2, r, beta) <= 0;
            bool low_bad = cmp_mass_vs_power(mb.upper, cert.b1, r, beta) < 0;
            bool high_bad = cmp_mass_vs_power(mb.lower, cert.b2, r, beta) > 0;
            verdict = (low_ok && high_ok) ? 1 : (low_bad || high_bad) ? -1 : 0;
        } else {
            // r < 1: r^beta_hi <= r^beta <= r^beta_lo; compare against the
            // conservative side so a pass is sound
            bool low_ok = cmp_mass_vs_power(mb.lower, cert.b1, r,
                                            r < 1 ? beta_enc.lo : beta_enc.hi) >= 0;
            bool high_ok = cmp_mass_vs_power(mb.upper, cert.b2, r,
                                             r < 1 ? beta_enc.hi : beta_enc.lo) <= 0;
            verdict = (low_ok && high_ok) ? 1 : 0;
        }
        if (verdict > 0) ++rep.passed;
        else if (verdict < 0) {
            ++rep.failed;
            if (!rep.first_failure) rep.first_failure = PowerLawSample{x, r, mb, verdict};
        } else ++rep.inconclusive;
    }
    return rep;
}

std::vector<Rat> IFSMeasure::support_net(const RatInterval& window, const Rat& delta) const {
    if (delta <= 0) throw std::domain_error("support_net: delta must be positive");
    // least depth d with hull_width * max_ratio^d < delta
    Rat w = hull().width();
    int d = 0;
    while (w >= delta) {
        w *= ifs_.max_ratio();
        ++d;
        if (d > 4096) throw std::runtime_error("support_net: depth blow-up");
    }
    std::vector<Rat> net;
    for (const Cylinder& c : ifs_.cylinders_in(window, d)) {
        if (window.contains(c.rep)) {
            net.push_back(c.rep);
        } else if (window.contains(c.interval.hi)) {
            net.push_back(c.interval.hi);
        } else {
            // straddling cylinder whose endpoint reps fall outside: descend
            // for an interior support point so edge regions stay covered
            auto p = badger::support_point_in(ifs_, intersect(c.interval, window));
            if (p) net.push_back(*p);
        }
    }
    std::sort(net.begin(), net.end());
    return net;
}

PowerLawCert quarter_cert() {
    return PowerLawCert(Exponent::rational(make_rat(1, 2)), make_rat(1, 2), Rat(4));
}

PowerLawCert cantor_cert() {
    return PowerLawCert(Exponent::log_of(Rat(3), Rat(2)), make_rat(1, 2), Rat(4));
}

}  // namespace badger
