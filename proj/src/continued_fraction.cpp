#include "badger/continued_fraction.hpp"

#include <sstream>

namespace badger {

namespace {

std::vector<Int> parse_int_list(const std::string& body) {
    std::vector<Int> out;
    std::string cur;
    for (char c : body) {
        if (c == ',') {
            if (!cur.empty()) out.emplace_back(cur);
            cur.clear();
        } else if (!isspace(static_cast<unsigned char>(c))) {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.emplace_back(cur);
    return out;
}

std::string int_list_str(const std::vector<Int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].get_str();
    }
    return s;
}

}  // namespace

ContinuedFraction::ContinuedFraction(Int a0_, std::vector<Int> pre, std::vector<Int> per)
    : a0(std::move(a0_)), preperiod(std::move(pre)), period(std::move(per)) {
    if (period.empty()) throw std::invalid_argument("ContinuedFraction: empty period");
    for (const Int& a : preperiod)
        if (a < 1) throw std::invalid_argument("ContinuedFraction: partial quotient < 1");
    for (const Int& a : period)
        if (a < 1) throw std::invalid_argument("ContinuedFraction: partial quotient < 1");
}

const Int& ContinuedFraction::quotient(std::size_t k) const {
    if (k == 0) throw std::out_of_range("quotient: k must be >= 1");
    if (k <= preperiod.size()) return preperiod[k - 1];
    return period[(k - 1 - preperiod.size()) % period.size()];
}

Int ContinuedFraction::max_quotient() const {
    Int m = 1;
    for (const Int& a : preperiod) m = std::max(m, a);
    for (const Int& a : period) m = std::max(m, a);
    return m;
}

ContinuedFraction ContinuedFraction::parse(const std::string& s) {
    auto semi1 = s.find(';');
    auto semi2 = s.find(';', semi1 == std::string::npos ? 0 : semi1 + 1);
    if (semi1 == std::string::npos || semi2 == std::string::npos)
        throw std::invalid_argument("ContinuedFraction::parse: expected 'a0;[pre];(period)'");
    std::string a0s = s.substr(0, semi1);
    std::string pres = s.substr(semi1 + 1, semi2 - semi1 - 1);
    std::string pers = s.substr(semi2 + 1);
    if (pres.size() < 2 || pres.front() != '[' || pres.back() != ']')
        throw std::invalid_argument("ContinuedFraction::parse: bad preperiod block");
    if (pers.size() < 2 || pers.front() != '(' || pers.back() != ')')
        throw std::invalid_argument("ContinuedFraction::parse: bad period block");
    return ContinuedFraction(Int(a0s), parse_int_list(pres.substr(1, pres.size() - 2)),
                             parse_int_list(pers.substr(1, pers.size() - 2)));
}

std::string ContinuedFraction::str() const {
    return a0.get_str() + ";[" + int_list_str(preperiod) + "];(" + int_list_str(period) + ")";
}

Rat cf_convergent(const ContinuedFraction& cf, std::size_t k) {
    Int p_prev = 1, q_prev = 0;  // p_{-1}/q_{-1}
    Int p = cf.a0, q = 1;        // p_0/q_0
    for (std::size_t t = 1; t <= k; ++t) {
        const Int& a = cf.quotient(t);
        Int p_next = a * p + p_prev;
        Int q_next = a * q + q_prev;
        p_prev = p; q_prev = q;
        p = p_next; q = q_next;
    }
    return make_rat(p, q);
}

RatInterval theta_enclosure(const ContinuedFraction& cf, const Rat& precision) {
    if (precision <= 0) throw std::domain_error("theta_enclosure: precision must be positive");
    Int p_prev = 1, q_prev = 0;
    Int p = cf.a0, q = 1;
    for (std::size_t t = 1;; ++t) {
        const Int& a = cf.quotient(t);
        Int p_next = a * p + p_prev;
        Int q_next = a * q + q_prev;
        // |p/q - p_next/q_next| = 1/(q q_next)
        if (q > 0 && Rat(1) <= precision * Rat(q * q_next)) {
            Rat c1 = make_rat(p, q), c2 = make_rat(p_next, q_next);
            return c1 <= c2 ? RatInterval(c1, c2) : RatInterval(c2, c1);
        }
        p_prev = p; q_prev = q;
        p = p_next; q = q_next;
        if (t > 100000) throw std::runtime_error("theta_enclosure: no convergence");
    }
}

Rat theta_tail_bound(const ContinuedFraction& cf) {
    return make_rat(Int(1), cf.max_quotient() + 2);
}

Rat theta_quality(const ContinuedFraction& cf, const Int& Q) {
    if (Q < 1) throw std::domain_error("theta_quality: Q must be >= 1");
    // Exact sweep over q with enclosure precision fixed per dyadic q-range, so
    // the per-q lower bound is independent of Q and the reported minimum is
    // monotone nonincreasing in Q. Widths stay far below the true distances
    // (>= tail/q), which keeps every bound positive and near the truth.
    Rat tail = theta_tail_bound(cf);
    Rat best(-1);
    Int q = 1;
    while (q <= Q) {
        Int range_hi = q * 2 - 1;
        if (range_hi > Q) range_hi = Q;
        Int block_hi = q * 2 - 1;  // precision anchor: the full dyadic block
        Rat width = tail / (Rat(block_hi * block_hi) * Rat(1 << 22));
        RatInterval enc = theta_enclosure(cf, width);
        for (; q <= range_hi; ++q) {
            Rat a = Rat(q) * enc.lo;
            Rat b = Rat(q) * enc.hi;
            Int fa = rat_floor(a);
            if (fa != rat_floor(b) || a == Rat(fa) || b == Rat(fa + 1))
                throw std::logic_error("theta_quality: enclosure touches an integer");
            Rat d = rat_min(a - Rat(fa), Rat(fa + 1) - b);
            Rat v = Rat(q) * d;
            if (best < 0 || v < best) best = v;
        }
    }
    return best;
}

BadTheta::BadTheta(ContinuedFraction cf, const Int& search_bound)
    : cf_(std::move(cf)), search_bound_(search_bound) {
    quality_ = rat_min(theta_quality(cf_, search_bound), theta_tail_bound(cf_));
    if (quality_ <= 0) throw std::logic_error("BadTheta: nonpositive quality");
    // Precompute a deep convergent table; widths decay at least like the
    // Fibonacci squares, so 256 terms is far below any working precision.
    Int p_prev = 1, q_prev = 0;
    Int p = cf_.a0, q = 1;
    convergents_.push_back(make_rat(p, q));
    for (std::size_t t = 1; t <= 256; ++t) {
        const Int& a = cf_.quotient(t);
        Int p_next = a * p + p_prev;
        Int q_next = a * q + q_prev;
        p_prev = p; q_prev = q;
        p = p_next; q = q_next;
        convergents_.push_back(make_rat(p, q));
    }
}

RatInterval BadTheta::enclosure(const Rat& precision) const {
    if (precision <= 0) throw std::domain_error("BadTheta::enclosure: precision must be positive");
    for (std::size_t k = 0; k + 1 < convergents_.size(); ++k) {
        const Rat& c1 = convergents_[k];
        const Rat& c2 = convergents_[k + 1];
        Rat w = rat_abs(c2 - c1);
        if (w <= precision)
            return c1 <= c2 ? RatInterval(c1, c2) : RatInterval(c2, c1);
    }
    return theta_enclosure(cf_, precision);  // beyond the table; recompute
}

}  // namespace badger
