#include "badger/powers.hpp"

#include <cassert>

namespace badger {

namespace {

void require_positive(const Rat& x, const char* who) {
    if (x <= 0) throw std::domain_error(std::string(who) + ": base must be positive");
}

// floor of the q-th root of a nonnegative integer
Int root_floor(const Int& x, unsigned long q) {
    Int r;
    mpz_root(r.get_mpz_t(), x.get_mpz_t(), q);
    return r;
}

}  // namespace

int cmp_rat_vs_pow(const Rat& x, const Rat& y, long p, long q) {
    require_positive(x, "cmp_rat_vs_pow");
    require_positive(y, "cmp_rat_vs_pow");
    if (q <= 0) throw std::domain_error("cmp_rat_vs_pow: q must be positive");
    // x vs y^{p/q}  <=>  x^q vs y^p
    Rat lhs = pow_int(x, q);
    Rat rhs = pow_int(y, p);
    return cmp(lhs, rhs);
}

int cmp_pow_vs_pow(const Rat& a, long pa, long qa, const Rat& b, long pb, long qb) {
    require_positive(a, "cmp_pow_vs_pow");
    require_positive(b, "cmp_pow_vs_pow");
    if (qa <= 0 || qb <= 0) throw std::domain_error("cmp_pow_vs_pow: denominators must be positive");
    // a^{pa/qa} vs b^{pb/qb}  <=>  a^{pa*qb} vs b^{pb*qa}
    Rat lhs = pow_int(a, pa * qb);
    Rat rhs = pow_int(b, pb * qa);
    return cmp(lhs, rhs);
}

Int pow_floor(const Rat& x, long p, long q) {
    require_positive(x, "pow_floor");
    if (q <= 0) throw std::domain_error("pow_floor: q must be positive");
    Rat t = pow_int(x, p);  // x^{p/q} = t^{1/q}
    // initial guess from integer roots, then correct by exact comparison
    Int lo = root_floor(t.get_num() / t.get_den(), static_cast<unsigned long>(q));
    while (cmp_rat_vs_pow(Rat(lo + 1), t, 1, q) <= 0) ++lo;
    while (lo > 0 && cmp_rat_vs_pow(Rat(lo), t, 1, q) > 0) --lo;
    return lo;
}

Int pow_ceil(const Rat& x, long p, long q) {
    Int f = pow_floor(x, p, q);
    Rat t = pow_int(x, p);
    if (cmp_rat_vs_pow(Rat(f), t, 1, q) == 0) return f;  // exact power
    return f + 1;
}

RatInterval pow_enclosure(const Rat& x, long p, long q, const Rat& reltol) {
    require_positive(x, "pow_enclosure");
    if (q <= 0) throw std::domain_error("pow_enclosure: q must be positive");
    if (reltol <= 0) throw std::domain_error("pow_enclosure: tolerance must be positive");
    Rat t = pow_int(x, p);  // target is t^{1/q}
    if (q == 1 || t == 1) return RatInterval::point(q == 1 ? t : Rat(1));

    // Bracket t^{1/q} by scaling to an integer root: (t*s^q)^{1/q} / s with s
    // the denominator, then bisect with exact midpoint comparisons.
    Int num_root = root_floor(t.get_num(), static_cast<unsigned long>(q));
    Int den_root = root_floor(t.get_den(), static_cast<unsigned long>(q));
    Rat lo = make_rat(num_root, den_root + 1);
    Rat hi = make_rat(num_root + 1, den_root == 0 ? Int(1) : den_root);
    if (lo <= 0) lo = 0;
    // ensure bracket
    while (cmp_rat_vs_pow(hi, t, 1, q) < 0) hi *= 2;
    while (lo > 0 && cmp_rat_vs_pow(lo, t, 1, q) > 0) lo /= 2;

    while (hi - lo > reltol * lo || lo == 0) {
        Rat mid = (lo + hi) / 2;
        int s = cmp_rat_vs_pow(mid, t, 1, q);
        if (s == 0) return RatInterval::point(mid);
        if (s < 0) lo = mid; else hi = mid;
    }
    return RatInterval(lo, hi);
}

int cmp_rat_vs_pow_product(const Rat& y, const Rat& a, const Rat& ea, const Rat& b,
                           const Rat& eb) {
    require_positive(y, "cmp_rat_vs_pow_product");
    require_positive(a, "cmp_rat_vs_pow_product");
    require_positive(b, "cmp_rat_vs_pow_product");
    Int d = lcm(ea.get_den(), eb.get_den());
    long D = d.get_si();
    long pa = Int(ea.get_num() * (d / ea.get_den())).get_si();
    long pb = Int(eb.get_num() * (d / eb.get_den())).get_si();
    // y^D vs a^{pa} b^{pb}
    return cmp(pow_int(y, D), pow_int(a, pa) * pow_int(b, pb));
}

namespace {

// sign of log_base(y) - p/q on [1, base): compares y^q vs base^p exactly.
int cmp_log_vs(const Rat& base, const Rat& y, const Int& p, const Int& q) {
    Rat lhs = pow_int(y, q.get_si());
    Rat rhs = pow_int(base, p.get_si());
    return cmp(lhs, rhs);
}

}  // namespace

RatInterval log_enclosure(const Rat& base, const Rat& x, const Rat& tol) {
    if (base <= 1) throw std::domain_error("log_enclosure: base must be > 1");
    require_positive(x, "log_enclosure");
    if (tol <= 0) throw std::domain_error("log_enclosure: tolerance must be positive");
    if (x == 1) return RatInterval::point(Rat(0));
    if (x < 1) {
        RatInterval r = log_enclosure(base, Rat(1) / x, tol);
        return RatInterval(-r.hi, -r.lo);
    }
    // integer part
    Int n = 0;
    Rat y = x;
    while (y >= base) { y /= base; ++n; }
    if (y == 1) return RatInterval::point(Rat(n));

    // mediant walk for log_base(y) in (0, 1); lo is always a certified lower
    // bound and hi an upper bound. Galloping keeps runs of one-sided steps
    // cheap (this is continued-fraction term extraction in disguise).
    Int pl = 0, ql = 1, ph = 1, qh = 1;
    auto width_ok = [&]() {
        // ph/qh - pl/ql <= tol  <=>  ph*ql - pl*qh <= tol * ql * qh
        return Rat(ph * ql - pl * qh) <= tol * Rat(ql * qh);
    };
    while (!width_ok()) {
        // gallop from the low side: lo + k*(hi direction)
        Int k = 1;
        while (true) {
            Int pm = pl + k * ph, qm = ql + k * qh;
            int s = cmp_log_vs(base, y, pm, qm);
            if (s == 0) {
                Rat v = Rat(n) + make_rat(pm, qm);
                return RatInterval::point(v);
            }
            if (s < 0) { ph = pm; qh = qm; break; }  // overshot: tighten hi
            pl = pm; ql = qm;                        // still below: advance lo
            if (width_ok()) break;
            k *= 2;
        }
        if (width_ok()) break;
        k = 1;
        while (true) {
            Int pm = ph + k * pl, qm = qh + k * ql;
            int s = cmp_log_vs(base, y, pm, qm);
            if (s == 0) {
                Rat v = Rat(n) + make_rat(pm, qm);
                return RatInterval::point(v);
            }
            if (s > 0) { pl = pm; ql = qm; break; }
            ph = pm; qh = qm;
            if (width_ok()) break;
            k *= 2;
        }
    }
    return RatInterval(Rat(n) + make_rat(pl, ql), Rat(n) + make_rat(ph, qh));
}

std::optional<Rat> exact_log(const Rat& base, const Rat& x, unsigned max_den) {
    if (base <= 1) throw std::domain_error("exact_log: base must be > 1");
    require_positive(x, "exact_log");
    if (x == 1) return Rat(0);
    bool neg = x < 1;
    Rat y = neg ? Rat(Rat(1) / x) : x;
    Int n = 0;
    while (y >= base) { y /= base; ++n; }
    for (unsigned q = 1; q <= max_den; ++q) {
        // base^{p/q} = y  <=>  y^q = base^p; p < q since y in [1, base)
        Rat yq = pow_int(y, q);
        for (unsigned p = 0; p < q || (p == 0 && q == 1); ++p) {
            if (yq == pow_int(base, p)) {
                Rat v = Rat(n) + make_rat(Int(p), Int(q));
                return neg ? Rat(-v) : v;
            }
        }
    }
    return std::nullopt;
}

}  // namespace badger
