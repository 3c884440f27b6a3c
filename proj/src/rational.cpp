#include "badger/rational.hpp"

namespace badger {

Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::domain_error("make_rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

Rat make_rat(long num, long den) { return make_rat(Int(num), Int(den)); }

Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return make_rat(Int(s), Int(1));
    return make_rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

std::string rat_str(const Rat& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double rat_approx(const Rat& q) { return q.get_d(); }

Int rat_floor(const Rat& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

Int rat_ceil(const Rat& q) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

const Rat& rat_min(const Rat& a, const Rat& b) { return a <= b ? a : b; }
const Rat& rat_max(const Rat& a, const Rat& b) { return a >= b ? a : b; }

Rat pow_int(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    bool inv = e < 0;
    unsigned long ue = inv ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    if (inv && base == 0) throw std::domain_error("pow_int: 0 to a negative power");
    Int num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), ue);
    mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), ue);
    return inv ? make_rat(den, num) : make_rat(num, den);
}

Rat nearest_int_dist(const Rat& x) {
    Rat frac = x - Rat(rat_floor(x));
    return rat_min(frac, Rat(1) - frac);
}

RatInterval::RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw std::invalid_argument("RatInterval: lo > hi");
}

RatInterval RatInterval::ball(const Rat& center, const Rat& radius) {
    if (radius < 0) throw std::invalid_argument("RatInterval::ball: negative radius");
    return RatInterval(center - radius, center + radius);
}

RatInterval RatInterval::dilate(const Rat& gamma) const {
    Rat c = mid();
    Rat r = width() / 2 * gamma;
    return RatInterval(c - r, c + r);
}

Rat RatInterval::dist(const Rat& x) const {
    if (x < lo) return lo - x;
    if (x > hi) return x - hi;
    return Rat(0);
}

RatInterval intersect(const RatInterval& a, const RatInterval& b) {
    if (a.disjoint(b)) throw std::domain_error("intersect: disjoint intervals");
    return RatInterval(rat_max(a.lo, b.lo), rat_min(a.hi, b.hi));
}

std::string interval_str(const RatInterval& iv) {
    return "[" + rat_str(iv.lo) + ", " + rat_str(iv.hi) + "]";
}

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t SplitMix64::next() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

Rat SplitMix64::unit_rat(std::uint64_t granularity) {
    return make_rat(Int(static_cast<unsigned long>(below(granularity))),
                    Int(static_cast<unsigned long>(granularity)));
}

}  // namespace badger
