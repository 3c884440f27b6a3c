#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "badger/continued_fraction.hpp"
#include "badger/powers.hpp"
#include "badger/rational.hpp"

using namespace badger;

TEST_CASE("rational basics") {
    CHECK(make_rat(2, 4) == make_rat(1, 2));
    CHECK(make_rat(-2, -4) == make_rat(1, 2));
    CHECK(make_rat(2, -4) == make_rat(-1, 2));
    CHECK_THROWS(make_rat(1, 0));
    CHECK(parse_rat("7/3") == make_rat(7, 3));
    CHECK(parse_rat("-5") == Rat(-5));
    CHECK(rat_str(make_rat(3, 1)) == "3/1");
    CHECK(rat_floor(make_rat(7, 3)) == 2);
    CHECK(rat_floor(make_rat(-7, 3)) == -3);
    CHECK(rat_ceil(make_rat(7, 3)) == 3);
    CHECK(pow_int(make_rat(2, 3), 3) == make_rat(8, 27));
    CHECK(pow_int(make_rat(2, 3), -2) == make_rat(9, 4));
    CHECK(pow_int(make_rat(5, 7), 0) == 1);
}

TEST_CASE("nearest integer distance") {
    CHECK(nearest_int_dist(make_rat(7, 3)) == make_rat(1, 3));
    CHECK(nearest_int_dist(make_rat(5, 2)) == make_rat(1, 2));  // half-integer tie
    CHECK(nearest_int_dist(make_rat(-13, 8)) == make_rat(3, 8));

    // periodicity and symmetry on a seeded sample
    SplitMix64 rng(7);
    for (int t = 0; t < 200; ++t) {
        Rat x = rng.unit_rat() * 7 - 3;
        long n = static_cast<long>(rng.below(13)) - 6;
        CHECK(nearest_int_dist(x) == nearest_int_dist(x + Rat(n)));
        CHECK(nearest_int_dist(x) == nearest_int_dist(Rat(-x)));
        CHECK(nearest_int_dist(x) >= 0);
        CHECK(nearest_int_dist(x) <= make_rat(1, 2));
    }
}

TEST_CASE("interval operations") {
    RatInterval a(Rat(0), Rat(1));
    RatInterval b(make_rat(1, 2), Rat(2));
    CHECK(a.intersects(b));
    CHECK(intersect(a, b) == RatInterval(make_rat(1, 2), Rat(1)));
    CHECK(a.dilate(Rat(5)) == RatInterval(Rat(-2), Rat(3)));
    CHECK(RatInterval::ball(Rat(1), make_rat(1, 4)) == RatInterval(make_rat(3, 4), make_rat(5, 4)));
    CHECK(a.dist(Rat(3)) == 2);
    CHECK(a.dist(make_rat(1, 2)) == 0);
    CHECK_THROWS(RatInterval(Rat(1), Rat(0)));
}

TEST_CASE("exact power comparisons") {
    // 3 vs 2^{3/2}: 9 vs 8 after squaring
    CHECK(cmp_rat_vs_pow(Rat(3), Rat(2), 3, 2) > 0);
    CHECK(cmp_rat_vs_pow(Rat(2), Rat(4), 1, 2) == 0);
    CHECK(cmp_pow_vs_pow(Rat(2), 3, 2, Rat(3), 6, 3) < 0);  // 2^{3/2} < 3^2
    CHECK(pow_floor(Rat(10), 1, 2) == 3);
    CHECK(pow_ceil(Rat(10), 1, 2) == 4);
    CHECK(pow_floor(Rat(16), 1, 2) == 4);
    CHECK(pow_ceil(Rat(16), 1, 2) == 4);
    CHECK(pow_floor(make_rat(1, 10), 1, 2) == 0);

    RatInterval e = pow_enclosure(Rat(2), 1, 2, make_rat(1, 1000000));
    CHECK(e.lo <= e.hi);
    CHECK(cmp_rat_vs_pow(e.lo, Rat(2), 1, 2) <= 0);
    CHECK(cmp_rat_vs_pow(e.hi, Rat(2), 1, 2) >= 0);
    CHECK(e.hi - e.lo <= e.lo / 1000000);

    // exact hit collapses to a point
    RatInterval x = pow_enclosure(Rat(16), 1, 4, make_rat(1, 1024));
    CHECK(x.lo == 2);
    CHECK(x.hi == 2);
}

TEST_CASE("power products") {
    CHECK(cmp_rat_vs_pow_product(Rat(6), Rat(2), Rat(1), Rat(3), Rat(1)) == 0);
    // 4 sqrt2 = 5.656...
    CHECK(cmp_rat_vs_pow_product(Rat(5), Rat(16), make_rat(1, 2), Rat(2), make_rat(1, 2)) < 0);
    CHECK(cmp_rat_vs_pow_product(Rat(6), Rat(16), make_rat(1, 2), Rat(2), make_rat(1, 2)) > 0);
}

TEST_CASE("log enclosures") {
    RatInterval l = log_enclosure(Rat(3), Rat(2), make_rat(1, 1000000000));
    CHECK(l.hi - l.lo <= make_rat(1, 1000000000));
    // log_3 2 = 0.63092975...
    CHECK(l.lo <= make_rat(63092976, 100000000));
    CHECK(l.hi >= make_rat(63092975, 100000000));

    CHECK(log_enclosure(Rat(2), Rat(8), make_rat(1, 4)).lo == 3);
    CHECK(log_enclosure(Rat(2), make_rat(1, 8), make_rat(1, 4)).hi == -3);

    CHECK(*exact_log(Rat(9), Rat(3)) == make_rat(1, 2));
    CHECK(*exact_log(Rat(2), Rat(16)) == 4);
    CHECK(!exact_log(Rat(3), Rat(2)).has_value());
}

TEST_CASE("continued fraction parsing and convergents") {
    ContinuedFraction golden = ContinuedFraction::parse("0;[];(1)");
    CHECK(golden.str() == "0;[];(1)");
    CHECK(golden.a0 == 0);
    CHECK(golden.period.size() == 1);

    // standard indexing: p_0/q_0 = a0/1
    CHECK(cf_convergent(golden, 0) == 0);
    CHECK(cf_convergent(golden, 1) == 1);
    CHECK(cf_convergent(golden, 2) == make_rat(1, 2));
    CHECK(cf_convergent(golden, 4) == make_rat(3, 5));
    CHECK(cf_convergent(golden, 5) == make_rat(5, 8));  // Fibonacci ladder

    ContinuedFraction r2 = ContinuedFraction::sqrt2_minus_1();
    CHECK(cf_convergent(r2, 0) == 0);
    CHECK(cf_convergent(r2, 3) == make_rat(5, 12));
    CHECK(cf_convergent(r2, 4) == make_rat(12, 29));  // hand recursion p_k = a_k p_{k-1} + p_{k-2}

    CHECK_THROWS(ContinuedFraction::parse("0;[];()"));
    CHECK_THROWS(ContinuedFraction(0, {Int(0)}, {Int(1)}));
}

TEST_CASE("convergent alternation brackets the value") {
    ContinuedFraction golden = ContinuedFraction::golden();
    for (std::size_t k = 0; k + 2 <= 50; k += 2) {
        Rat even = cf_convergent(golden, k);
        Rat odd = cf_convergent(golden, k + 1);
        Rat even2 = cf_convergent(golden, k + 2);
        CHECK(even < even2);
        CHECK(even2 < odd);
    }
}

TEST_CASE("theta enclosure nesting and width") {
    ContinuedFraction golden = ContinuedFraction::golden();
    RatInterval coarse = theta_enclosure(golden, make_rat(1, 10));
    CHECK(coarse.width() <= make_rat(1, 10));
    // contains (sqrt5 - 1)/2 ~ 0.6180339887
    CHECK(coarse.lo <= make_rat(6181, 10000));
    CHECK(coarse.hi >= make_rat(6180, 10000));

    RatInterval fine = theta_enclosure(golden, make_rat(1, 1000000));
    CHECK(fine.width() <= make_rat(1, 1000000));
    CHECK(coarse.contains(fine));  // monotone refinement nests

    RatInterval whole = theta_enclosure(golden, Rat(1));
    CHECK(whole.width() <= 1);

    RatInterval r2 = theta_enclosure(ContinuedFraction::sqrt2_minus_1(), make_rat(1, 1000));
    CHECK(r2.width() <= make_rat(1, 1000));
    CHECK(r2.lo <= make_rat(41422, 100000));
    CHECK(r2.hi >= make_rat(41421, 100000));
}

TEST_CASE("theta quality certificates") {
    ContinuedFraction golden = ContinuedFraction::golden();

    // q = 1 alone: ||theta|| = 1 - theta = (3 - sqrt5)/2 = 0.38196601...
    Rat q1 = theta_quality(golden, 1);
    CHECK(q1 > make_rat(381965, 1000000));
    CHECK(q1 < make_rat(381967, 1000000));

    // the minimum over q <= 2 is still attained at q = 1
    Rat q2 = theta_quality(golden, 2);
    CHECK(q2 > make_rat(381965, 1000000));
    CHECK(q2 <= q1);

    // exhaustive to 10^5: the infimum stays near q = 1 for the golden ratio
    Rat q5 = theta_quality(golden, 100000);
    CHECK(q5 > make_rat(381966, 1000000));
    CHECK(q5 < make_rat(381967, 1000000));

    // monotone nonincreasing in Q
    Rat prev = theta_quality(golden, 1);
    for (long Q : {2L, 5L, 13L, 34L, 100L}) {
        Rat cur = theta_quality(golden, Q);
        CHECK(cur <= prev);
        CHECK(cur > 0);
        prev = cur;
    }

    // sqrt2 - 1 at Q = 1: the enclosure of ||theta|| = 0.41421...
    Rat r2q = theta_quality(ContinuedFraction::sqrt2_minus_1(), 1);
    CHECK(r2q > make_rat(41420, 100000));
    CHECK(r2q < make_rat(41422, 100000));

    CHECK_THROWS(theta_quality(golden, 0));
}

TEST_CASE("bad theta combines search and tail bound") {
    BadTheta golden(ContinuedFraction::golden(), 1000);
    // tail bound 1/(a_max + 2) = 1/3 binds for the golden ratio
    CHECK(golden.quality() == make_rat(1, 3));
    CHECK(theta_tail_bound(golden.cf()) == make_rat(1, 3));

    BadTheta r2(ContinuedFraction::sqrt2_minus_1(), 1000);
    CHECK(r2.quality() == make_rat(1, 4));  // tail 1/(2+2)

    // strictness: q ||q theta|| > quality for all searched q
    RatInterval enc = golden.enclosure(make_rat(1, Int(1) << 80));
    for (long q = 1; q <= 50; ++q) {
        Rat lo = Rat(q) * enc.lo, hi = Rat(q) * enc.hi;
        Int f = rat_floor(lo);
        REQUIRE(rat_floor(hi) == f);
        Rat d = rat_min(lo - Rat(f), Rat(f + 1) - hi);
        CHECK(Rat(q) * d > golden.quality());
    }

    RatInterval e1 = golden.enclosure(make_rat(1, 100));
    RatInterval e2 = golden.enclosure(make_rat(1, 100000));
    CHECK(e1.contains(e2));
    CHECK(e2.width() <= make_rat(1, 100000));
}

TEST_CASE("serialization round trips") {
    SplitMix64 rng(99);
    for (int t = 0; t < 50; ++t) {
        Rat x = rng.unit_rat() * 20 - 10;
        CHECK(parse_rat(rat_str(x)) == x);
    }
    ContinuedFraction cf(1, {Int(2), Int(7)}, {Int(1), Int(4)});
    CHECK(ContinuedFraction::parse(cf.str()).str() == cf.str());
}
