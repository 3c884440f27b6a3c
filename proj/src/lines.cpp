#include "badger/lines.hpp"

#include <algorithm>

namespace badger {

Weights::Weights(Rat i_, Rat j_) : i(std::move(i_)), j(std::move(j_)) {
    if (i + j != 1) throw std::invalid_argument("Weights: i + j must equal 1");
    if (i < 0 || i > 1) throw std::invalid_argument("Weights: i must lie in [0,1]");
}

Weights Weights::parse(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("Weights::parse: expected 'i,j'");
    return Weights(parse_rat(s.substr(0, comma)), parse_rat(s.substr(comma + 1)));
}

std::pair<long, long> Weights::inv_i() const {
    if (i == 0) throw std::domain_error("Weights: 1/i undefined for i = 0");
    return {i.get_den().get_si(), i.get_num().get_si()};
}

std::pair<long, long> Weights::inv_j() const {
    if (j == 0) throw std::domain_error("Weights: 1/j undefined for j = 0");
    return {j.get_den().get_si(), j.get_num().get_si()};
}

Line Line::parse(const std::string& s) {
    auto c1 = s.find(',');
    auto c2 = s.find(',', c1 == std::string::npos ? 0 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw std::invalid_argument("Line::parse: expected 'A,B,C'");
    return Line{Int(s.substr(0, c1)), Int(s.substr(c1 + 1, c2 - c1 - 1)), Int(s.substr(c2 + 1))};
}

Height::Height(Int A, Int B, const Weights& w) : a_abs_(abs(A)), b_(std::move(B)), w_(w) {
    if (b_ < 1) throw std::domain_error("Height: B must be >= 1");
    if (w.degenerate()) throw std::domain_error("Height: degenerate weights");
    if (a_abs_ == 0) {
        max_is_a_ = false;
    } else {
        auto [pi, qi] = w.inv_i();
        auto [pj, qj] = w.inv_j();
        max_is_a_ = cmp_pow_vs_pow(Rat(a_abs_), pi, qi, Rat(b_), pj, qj) >= 0;
    }
}

int Height::cmp(const Rat& x) const {
    if (x <= 0) return 1;  // H >= 1 > 0
    auto [p, q] = max_is_a_ ? w_.inv_i() : w_.inv_j();
    const Int& base = max_is_a_ ? a_abs_ : b_;
    // H = B * base^{p/q} vs x  <=>  base^{p/q} vs x/B
    return -cmp_rat_vs_pow(Rat(x) / Rat(b_), Rat(base), p, q);
}

RatInterval Height::enclosure(const Rat& reltol) const {
    auto [p, q] = max_is_a_ ? w_.inv_i() : w_.inv_j();
    const Int& base = max_is_a_ ? a_abs_ : b_;
    RatInterval e = pow_enclosure(Rat(base), p, q, reltol);
    return RatInterval(e.lo * Rat(b_), e.hi * Rat(b_));
}

double Height::approx() const { return rat_approx(enclosure(make_rat(1, 1 << 20)).mid()); }

int LineParams::k_count() const {
    int k = 0;
    long v = 1;
    while (v < R) { v *= 2; ++k; }
    return k;  // ceil(log2 R)
}

namespace {

// y(L) = (A theta + C)/B enclosure of width <= target.
RatInterval center_enclosure(const Line& line, const BadTheta& theta, const Rat& target) {
    if (line.A == 0) return RatInterval::point(make_rat(line.C, line.B));
    RatInterval t = theta.enclosure(target * Rat(line.B) / Rat(abs(line.A)));
    Rat lo = (Rat(line.A) * (line.A > 0 ? t.lo : t.hi) + Rat(line.C)) / Rat(line.B);
    Rat hi = (Rat(line.A) * (line.A > 0 ? t.hi : t.lo) + Rat(line.C)) / Rat(line.B);
    return RatInterval(lo, hi);
}

struct RadiusSet {
    Rat removal, cert, lower;
};

RadiusSet radii_for(const Height& h, const LineParams& lp, const Rat& slack) {
    RatInterval henc = h.enclosure(make_rat(1, 1u << 16));
    return {lp.c * (Rat(1) + slack) / henc.lo, lp.c * (Rat(1) + slack / 2) / henc.lo,
            lp.c / henc.hi};
}

Int gcd3(const Int& a, const Int& b, const Int& c) {
    Int g = gcd(a, b);
    return gcd(g, c);
}

}  // namespace

DangerInterval danger_interval(const Line& line, const LineParams& lp, const BadTheta& theta,
                               const Rat& slack) {
    if (slack < 0) throw std::domain_error("danger_interval: slack must be >= 0");
    if (line.B < 1) throw std::domain_error("danger_interval: B must be >= 1");
    DangerInterval d;
    d.line = line;
    Height h(line.A, line.B, lp.w);
    RadiusSet rs = radii_for(h, lp, slack);
    d.removal_radius = rs.removal;
    d.cert_radius = rs.cert;
    d.radius_lower = rs.lower;
    d.center = center_enclosure(line, theta, d.removal_radius / 8);
    return d;
}

int k_slab(const Height& h, int n, long R) {
    Rat Rn1 = pow_int(Rat(R), n - 1);
    if (h.cmp(Rn1) < 0) return -1;
    if (h.cmp(pow_int(Rat(R), n)) >= 0) return -1;
    int kmax = 0;
    for (long v = 1; v < R; v *= 2) ++kmax;
    Rat bound = Rn1 * 2;
    for (int k = 0; k + 1 < kmax; ++k) {
        if (h.cmp(bound) < 0) return k;
        bound *= 2;
    }
    return kmax - 1;
}

int l_max(int n, const LineParams& lp) {
    Rat v = Rat(n) * lp.w.j * lp.w.j / (Rat(3) * (lp.w.j + 1));
    return static_cast<int>(rat_floor(v).get_si());
}

int l_slab(const Int& B, int n, const LineParams& lp) {
    Rat e = Rat(n) * lp.w.j / (lp.w.j + 1);
    Rat lam = lp.lambda();
    for (int l = 0;; ++l) {
        Rat expo = e - lam * Rat(l + 1);
        if (cmp_rat_vs_pow(Rat(B), Rat(lp.R), expo.get_num().get_si(),
                           expo.get_den().get_si()) >= 0)
            return l;
        if (l > 4 * n + 64) throw std::logic_error("l_slab: no slab found");
    }
}

std::vector<TaggedLine> enumerate_level(int n, const RatInterval& window, const LineParams& lp,
                                        const BadTheta& theta) {
    std::vector<TaggedLine> out;
    if (n < 1) return out;  // C(0) is empty: H >= 1 always
    Rat Rr(lp.R);
    Rat e_b = Rat(n) * lp.w.j / (lp.w.j + 1);  // B < R^{e_b}
    Rat rn = pow_int(Rr, n);

    for (Int B = 1;
         cmp_rat_vs_pow(Rat(B), Rr, e_b.get_num().get_si(), e_b.get_den().get_si()) < 0; ++B) {
        int l = l_slab(B, n, lp);
        Int a_max = pow_floor(rn / Rat(B), lp.w.i.get_num().get_si(), lp.w.i.get_den().get_si());
        for (Int A = -a_max; A <= a_max; ++A) {
            Height h(A, B, lp.w);
            int k = k_slab(h, n, lp.R);
            if (k < 0) continue;
            RadiusSet rs = radii_for(h, lp, lp.slack);
            // theta term once per (A,B); C just shifts the center by C/B
            RatInterval at = [&] {
                if (A == 0) return RatInterval::point(Rat(0));
                Rat prec = rs.removal / 8 * Rat(B) / Rat(abs(A));
                RatInterval t = theta.enclosure(prec);
                Rat lo = Rat(A) * (A > 0 ? t.lo : t.hi) / Rat(B);
                Rat hi = Rat(A) * (A > 0 ? t.hi : t.lo) / Rat(B);
                return RatInterval(lo, hi);
            }();
            // C range: y = at + C/B must meet window +- removal radius
            Rat clo_r = Rat(B) * (window.lo - rs.removal - at.hi);
            Rat chi_r = Rat(B) * (window.hi + rs.removal - at.lo);
            for (Int C = rat_ceil(clo_r); C <= rat_floor(chi_r); ++C) {
                if (gcd3(A, B, C) != 1) continue;
                Rat shift = make_rat(C, B);
                RatInterval center(at.lo + shift, at.hi + shift);
                if (!RatInterval(center.lo - rs.removal, center.hi + rs.removal)
                         .intersects(window))
                    continue;
                out.push_back(TaggedLine{Line{A, B, C}, l, k,
                                         DangerInterval{Line{A, B, C}, center, rs.removal,
                                                        rs.cert, rs.lower}});
            }
        }
    }
    return out;  // loops emit (B, A, C) ascending already
}

std::vector<Line> enumerate_class(const LineClass& cls, const RatInterval& window,
                                  const LineParams& lp, const BadTheta& theta) {
    if (window.lo < 0 || window.hi > 1)
        throw std::domain_error("enumerate_class: window must lie inside [0,1]");
    std::vector<Line> out;
    if (cls.l > l_max(cls.n, lp)) return out;  // C(n,l) empty beyond the j-bound
    for (const TaggedLine& t : enumerate_level(cls.n, window, lp, theta))
        if (t.l == cls.l && t.k == cls.k) out.push_back(t.line);
    return out;
}

std::vector<Line> brute_force_level(int n, const RatInterval& window, const LineParams& lp,
                                    const BadTheta& theta) {
    // Independent of the class machinery: plain double loop over (A, B) with
    // per-pair exact H checks, then the same hit predicate.
    std::vector<Line> out;
    if (n < 1) return out;
    Rat rn = pow_int(Rat(lp.R), n);
    Rat rn1 = pow_int(Rat(lp.R), n - 1);
    for (Int B = 1;; ++B) {
        Height hb(Int(0), B, lp.w);
        if (hb.cmp(rn) >= 0) break;  // B-part alone already too high
        for (Int Aa = 0;; ++Aa) {
            Height h(Aa, B, lp.w);
            if (h.cmp(rn) >= 0) break;  // H nondecreasing in |A|
            if (h.cmp(rn1) < 0) continue;
            for (int sgn = 0; sgn < 2; ++sgn) {
                if (Aa == 0 && sgn == 1) continue;
                Int A = sgn == 0 ? Aa : Int(-Aa);
                RadiusSet rs = radii_for(h, lp, lp.slack);
                RatInterval at = [&] {
                    if (A == 0) return RatInterval::point(Rat(0));
                    Rat prec = rs.removal / 8 * Rat(B) / Rat(abs(A));
                    RatInterval t = theta.enclosure(prec);
                    Rat lo = Rat(A) * (A > 0 ? t.lo : t.hi) / Rat(B);
                    Rat hi = Rat(A) * (A > 0 ? t.hi : t.lo) / Rat(B);
                    return RatInterval(lo, hi);
                }();
                Rat clo_r = Rat(B) * (window.lo - rs.removal - at.hi);
                Rat chi_r = Rat(B) * (window.hi + rs.removal - at.lo);
                for (Int C = rat_ceil(clo_r); C <= rat_floor(chi_r); ++C) {
                    if (gcd3(A, B, C) != 1) continue;
                    Rat shift = make_rat(C, B);
                    if (RatInterval(at.lo + shift - rs.removal, at.hi + shift + rs.removal)
                            .intersects(window))
                        out.push_back(Line{A, B, C});
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool line_avoids(const Line& line, const LineParams& lp, const BadTheta& theta,
                 const RatInterval& iv) {
    Height h(line.A, line.B, lp.w);
    Rat reltol = make_rat(1, 1u << 16);
    Rat width_div(16);
    for (int attempt = 0; attempt < 40; ++attempt) {
        RatInterval henc = h.enclosure(reltol);
        Rat rad_hi = lp.c / henc.lo;
        Rat rad_lo = lp.c / henc.hi;
        RatInterval y = center_enclosure(line, theta, rad_hi / width_div);
        // certified avoid: even the outer interval misses iv
        if (!RatInterval(y.lo - rad_hi, y.hi + rad_hi).intersects(iv)) return true;
        // certified hit: the inner interval (inside Delta for sure) meets iv
        Rat in_lo = y.hi - rad_lo, in_hi = y.lo + rad_lo;
        if (in_lo <= in_hi && RatInterval(in_lo, in_hi).intersects(iv)) return false;
        reltol /= 256;
        width_div *= 16;
    }
    throw std::runtime_error("line_avoids: refinement budget exhausted (boundary tie?)");
}

}  // namespace badger
