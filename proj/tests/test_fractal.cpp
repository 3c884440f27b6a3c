#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "badger/fractal.hpp"

using namespace badger;

TEST_CASE("ifs validation and geometry") {
    IFS cantor = IFS::middle_thirds();
    CHECK(cantor.attractor_min() == 0);
    CHECK(cantor.attractor_max() == 1);
    CHECK(cantor.separation() == make_rat(1, 3));

    IFS quarter = IFS::quarter();
    CHECK(quarter.separation() == make_rat(1, 2));

    CHECK_THROWS(IFS({{make_rat(1, 2), Rat(0)}}));  // single branch is degenerate
    CHECK_THROWS(IFS({{make_rat(1, 2), Rat(0)}, {make_rat(1, 2), make_rat(1, 2)}}));  // overlap
    CHECK_THROWS(IFS::parse("1/2,0;1/2,1/2"));
    CHECK(IFS::parse(quarter.str()).str() == quarter.str());
}

TEST_CASE("cylinders partition mass at every depth") {
    IFS quarter = IFS::quarter();
    for (int d = 0; d <= 6; ++d) {
        auto cyls = quarter.cylinders_in(RatInterval(Rat(0), Rat(1)), d);
        CHECK(cyls.size() == (1u << d));
        Rat total(0);
        for (std::size_t t = 0; t < cyls.size(); ++t) {
            total += cyls[t].mass;
            if (t + 1 < cyls.size()) CHECK(cyls[t].interval.hi < cyls[t + 1].interval.lo);
            CHECK(cyls[t].interval.contains(cyls[t].rep));
        }
        CHECK(total == 1);
    }
}

TEST_CASE("support point queries") {
    IFS cantor = IFS::middle_thirds();
    auto p = support_point_in(cantor, RatInterval(Rat(0), make_rat(1, 9)));
    REQUIRE(p.has_value());
    CHECK(*p == 0);

    // interior of the removed middle gap
    CHECK(!support_point_in(cantor, RatInterval(make_rat(34, 100), make_rat(66, 100))));

    IFS quarter = IFS::quarter();
    auto q = support_point_in(quarter, RatInterval(make_rat(7, 10), make_rat(8, 10)));
    REQUIRE(q.has_value());
    CHECK(*q >= make_rat(3, 4));  // lands in the right branch's left cylinder
    CHECK(*q <= make_rat(8, 10));

    // gap endpoints are attractor points, found exactly
    auto e = support_point_in(cantor, RatInterval(make_rat(1, 4), make_rat(1, 3)));
    REQUIRE(e.has_value());
    CHECK(*e == make_rat(1, 3));
}

TEST_CASE("mass bounds from cylinder decomposition") {
    IFS cantor = IFS::middle_thirds();
    for (int d = 1; d <= 5; ++d) {
        MassBounds mb = mass_bounds(cantor, RatInterval(Rat(0), make_rat(1, 3)), d);
        CHECK(mb.lower == make_rat(1, 2));
        CHECK(mb.upper == make_rat(1, 2));
    }
    MassBounds whole = mass_bounds(cantor, RatInterval(Rat(0), Rat(1)), 0);
    CHECK(whole.lower == 1);
    CHECK(whole.upper == 1);

    MassBounds half = mass_bounds(cantor, RatInterval(Rat(0), make_rat(1, 2)), 3);
    CHECK(half.lower == make_rat(1, 2));
    CHECK(half.upper == make_rat(1, 2));

    // bounds tighten monotonically in depth
    RatInterval w(make_rat(1, 5), make_rat(4, 5));
    Rat prev_lo(-1), prev_hi(2);
    for (int d = 0; d <= 10; ++d) {
        MassBounds mb = mass_bounds(cantor, w, d);
        CHECK(mb.lower >= prev_lo);
        CHECK(mb.upper <= prev_hi);
        CHECK(mb.lower <= mb.upper);
        prev_lo = mb.lower;
        prev_hi = mb.upper;
    }
}

TEST_CASE("support point exists iff upper mass positive") {
    IFS quarter = IFS::quarter();
    SplitMix64 rng(12345);
    for (int t = 0; t < 500; ++t) {
        Rat a = rng.unit_rat(1u << 12);
        Rat w = rng.unit_rat(1u << 12) / 4 + make_rat(1, 1u << 14);
        RatInterval window(a, rat_min(Rat(1), a + w));
        bool has_point = support_point_in(quarter, window).has_value();
        bool has_mass = mass_bounds(quarter, window, 12).upper > 0;
        CHECK(has_point == has_mass);
    }
}

TEST_CASE("moran exponents") {
    MoranExponent q = moran_exponent(IFS::quarter(), make_rat(1, 1000000000));
    REQUIRE(q.exact.has_value());
    CHECK(*q.exact == make_rat(1, 2));  // 2 (1/4)^{1/2} = 1

    MoranExponent c = moran_exponent(IFS::middle_thirds(), make_rat(1, 1000000000));
    CHECK(!c.exact.has_value());
    CHECK(c.enclosure.width() <= make_rat(1, 1000000000));
    // log 2 / log 3 = 0.6309297535...
    CHECK(c.enclosure.lo <= make_rat(63092976, 100000000));
    CHECK(c.enclosure.hi >= make_rat(63092975, 100000000));

    // powers of a common base: {1/4, 1/16}: t + t^2 = 1, beta = log_4 (1/t)
    IFS mixed({{make_rat(1, 4), Rat(0)}, {make_rat(1, 16), make_rat(9, 16)}});
    MoranExponent m = moran_exponent(mixed, make_rat(1, 1000000));
    CHECK(m.enclosure.width() <= make_rat(1, 1000000));
    // golden-ratio root: beta = log_4((1+sqrt5)/2) = 0.34712...
    CHECK(m.enclosure.lo <= make_rat(34713, 100000));
    CHECK(m.enclosure.hi >= make_rat(34712, 100000));
}

// Exhaustive oracle for the quarter-IFS ball-mass law: exact masses over a
// ladder of support points and radii, confirming the frozen certificate
// (beta, b1, b2) = (1/2, 1/2, 4) before the tests below assert it.
TEST_CASE("oracle confirms the quarter certificate") {
    IFS quarter = IFS::quarter();
    PowerLawCert cert = quarter_cert();
    REQUIRE(*cert.beta.exact == make_rat(1, 2));
    int depth = 12;
    for (int n = 1; n <= 8; ++n) {
        Rat r = pow_int(make_rat(1, 4), n);
        auto cyls = quarter.cylinders_in(RatInterval(Rat(0), Rat(1)), std::min(n + 1, 9));
        for (const Cylinder& c : cyls) {
            for (const Rat& x : {c.rep, c.interval.hi}) {
                MassBounds mb = mass_bounds(quarter, RatInterval::ball(x, r), depth);
                // b1 r^beta <= mass and mass <= b2 r^beta, via squared compares
                CHECK(cmp_rat_vs_pow(mb.lower / cert.b1, r, 1, 2) >= 0);
                CHECK(cmp_rat_vs_pow(mb.upper / cert.b2, r, 1, 2) <= 0);
            }
        }
    }
}

TEST_CASE("verify_power_law on the stock fractals") {
    PowerLawReport q = verify_power_law(IFS::quarter(), quarter_cert(), 100, 10);
    CHECK(q.passed == 100);
    CHECK(q.failed == 0);
    CHECK(q.inconclusive == 0);

    PowerLawReport c = verify_power_law(IFS::middle_thirds(), cantor_cert(), 100, 12);
    CHECK(c.failed == 0);
    CHECK(c.inconclusive == 0);
    CHECK(c.passed == 100);

    // zero-headroom constants fail immediately with a witness
    PowerLawCert broken(Exponent::rational(make_rat(1, 2)), make_rat(1, 1000000),
                        make_rat(1, 1000000));
    PowerLawReport f = verify_power_law(IFS::quarter(), broken, 10, 10);
    CHECK(f.failed > 0);
    CHECK(f.first_failure.has_value());
}

TEST_CASE("ifs measure support net") {
    IFSMeasure mu(IFS::quarter(), quarter_cert());
    RatInterval window(Rat(0), Rat(1));
    Rat delta = make_rat(1, 100);
    std::vector<Rat> net = mu.support_net(window, delta);
    REQUIRE(!net.empty());
    for (std::size_t t = 0; t + 1 < net.size(); ++t) CHECK(net[t] < net[t + 1]);
    // every support point is within delta of a net point: check on cylinder reps
    auto cyls = mu.ifs().cylinders_in(window, 6);
    for (const Cylinder& c : cyls) {
        Rat best(10);
        for (const Rat& p : net) best = rat_min(best, rat_abs(p - c.rep));
        CHECK(best <= delta);
    }
    // net points are genuine support points
    for (const Rat& p : net)
        CHECK(support_point_in(mu.ifs(), RatInterval::point(p)).has_value());

    // narrow window over a cylinder edge still yields a point
    std::vector<Rat> edge = mu.support_net(RatInterval(make_rat(187, 256), make_rat(195, 256)),
                                           make_rat(1, 64));
    CHECK(!edge.empty());
}
