#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "badger/lines.hpp"

using namespace badger;

namespace {

Weights half() { return Weights(make_rat(1, 2), make_rat(1, 2)); }

LineParams params_for(const Weights& w, long R, Rat c) {
    return LineParams{w, R, std::move(c), make_rat(1, 16)};
}

BadTheta golden_theta() { return BadTheta(ContinuedFraction::golden(), 1000); }

}  // namespace

TEST_CASE("height formula") {
    // i = j = 1/2: H(1,2) = 2 max(1, 4) = 8
    Height h12(1, 2, half());
    CHECK(h12.cmp(Rat(8)) == 0);
    CHECK(h12.cmp(Rat(7)) > 0);
    CHECK(h12.cmp(Rat(9)) < 0);
    CHECK(!h12.max_is_a());

    Height h01(0, 1, half());
    CHECK(h01.cmp(Rat(1)) == 0);  // A = 0 horizontal line

    // i = 2/3, j = 1/3: H(2,3) = 3 max(2^{3/2}, 27) = 81; 2^3 = 8 < 3^6 = 729
    Weights w23(make_rat(2, 3), make_rat(1, 3));
    Height h23(2, 3, w23);
    CHECK(h23.cmp(Rat(81)) == 0);
    CHECK(!h23.max_is_a());

    Height neg(-3, 2, half());  // |A| = 3: H = 2 max(9, 4) = 18
    CHECK(neg.cmp(Rat(18)) == 0);
    CHECK(neg.max_is_a());

    RatInterval enc = h12.enclosure(make_rat(1, 1 << 20));
    CHECK(enc.lo <= 8);
    CHECK(enc.hi >= 8);

    CHECK_THROWS(Height(1, 0, half()));
}

TEST_CASE("twelve pairs below height ten") {
    // i = j = 1/2: B=1 gives A in {-3..3}, B=2 gives A in {-2..2}
    long count = 0;
    for (long B = 1; B <= 10; ++B)
        for (long A = -10; A <= 10; ++A) {
            Height h(A, B, half());
            if (h.cmp(Rat(10)) < 0) ++count;
        }
    CHECK(count == 12);
}

TEST_CASE("danger interval radii and centers") {
    BadTheta theta = golden_theta();
    LineParams lp = params_for(half(), 16, make_rat(1, 100));

    // c = 1/100, H(1,2) = 8: radius 1/800, |Delta| = 1/400
    DangerInterval d = danger_interval(Line{1, 2, 0}, lp, theta, Rat(0));
    CHECK(d.cert_radius >= make_rat(1, 800));
    CHECK(d.radius_lower <= make_rat(1, 800));
    CHECK(d.cert_radius - d.radius_lower < make_rat(1, 800) / 1000);

    // horizontal line y = 0: center exact
    DangerInterval h = danger_interval(Line{0, 1, 0}, lp, theta, lp.slack);
    CHECK(h.center.lo == 0);
    CHECK(h.center.hi == 0);
    CHECK(h.removal_radius > h.cert_radius);
    CHECK(h.cert_radius > h.radius_lower);

    // (1,2,0): center encloses theta/2 = 0.3090169... at the working precision
    CHECK(d.center.width() <= d.removal_radius / 8);
    CHECK(d.center.lo <= make_rat(3090170, 10000000));
    CHECK(d.center.hi >= make_rat(3090169, 10000000));

    // convergent oracle: width 1e-6 needs few convergents (q_16 q_17 > 10^6)
    RatInterval tight = theta_enclosure(ContinuedFraction::golden(), make_rat(1, 2000000));
    RatInterval y_tight(tight.lo / 2, tight.hi / 2);
    CHECK(y_tight.width() <= make_rat(1, 1000000));
    CHECK(y_tight.lo <= make_rat(3090170, 10000000));
    CHECK(y_tight.hi >= make_rat(3090169, 10000000));
    CHECK(tight.lo.get_den() <= 10946);  // within the first 20 convergents
    CHECK(tight.hi.get_den() <= 10946);
}

TEST_CASE("class slabs") {
    LineParams lp = params_for(half(), 16, make_rat(1, 1000));
    CHECK(lp.k_count() == 4);
    CHECK(lp.lambda() == 6);

    // at i=j=1/2 the l-range collapses to {0} for n <= 17
    CHECK(l_max(5, lp) == 0);
    CHECK(l_max(17, lp) == 0);
    CHECK(l_max(18, lp) == 1);

    for (long B = 1; B < 16; ++B) CHECK(l_slab(Int(B), 3, lp) >= 0);

    // k slabs within C(2): H in [16, 256)
    CHECK(k_slab(Height(0, 4, half()), 2, 16) == 2);   // H = 64 in [64, 128)
    CHECK(k_slab(Height(1, 4, half()), 2, 16) == 2);   // H = 64
    CHECK(k_slab(Height(0, 2, half()), 2, 16) == -1);  // H = 8 < 16
    CHECK(k_slab(Height(4, 1, half()), 2, 16) == 0);   // H = 16
    CHECK(k_slab(Height(15, 1, half()), 2, 16) == 3);  // H = 225 in [128, 256)
}

TEST_CASE("enumeration empty cases") {
    BadTheta theta = golden_theta();
    LineParams lp = params_for(half(), 16, make_rat(1, 10000));

    CHECK(enumerate_level(0, RatInterval(Rat(0), Rat(1)), lp, theta).empty());

    // l beyond the j-bound is empty by fiat
    CHECK(enumerate_class(LineClass{3, 5, 0}, RatInterval(Rat(0), Rat(1)), lp, theta).empty());

    // a zero-width window away from every dangerous line of C(1)
    RatInterval point = RatInterval::point(make_rat(1, 7) + make_rat(1, 1000000));
    auto lines = enumerate_level(1, point, lp, theta);
    for (const TaggedLine& t : lines)
        CHECK(t.danger.outer(t.danger.removal_radius).intersects(point));

    CHECK_THROWS(enumerate_class(LineClass{1, 0, 0}, RatInterval(Rat(-1), Rat(2)), lp, theta));
}

TEST_CASE("class partition matches brute force and classes are disjoint") {
    BadTheta theta = golden_theta();
    RatInterval window(Rat(0), Rat(1));
    for (long R : {4L, 16L, 32L}) {
        for (const Weights& w : {half(), Weights(make_rat(2, 3), make_rat(1, 3))}) {
            LineParams lp = params_for(w, R, make_rat(1, 997));  // generic c
            for (int n = 1; n <= 3; ++n) {
                auto tagged = enumerate_level(n, window, lp, theta);
                auto brute = brute_force_level(n, window, lp, theta);
                REQUIRE(tagged.size() == brute.size());
                std::set<std::string> seen;
                std::vector<Line> from_classes;
                for (std::size_t t = 0; t < tagged.size(); ++t) {
                    CHECK(tagged[t].line == brute[t]);
                    // class tags are a partition: (l,k) valid and unique per line
                    CHECK(tagged[t].l <= l_max(n, lp));
                    CHECK(tagged[t].k >= 0);
                    CHECK(tagged[t].k < lp.k_count());
                    CHECK(seen.insert(tagged[t].line.str()).second);
                }
                // per-class enumeration reassembles the level exactly
                for (int l = 0; l <= l_max(n, lp); ++l)
                    for (int k = 0; k < lp.k_count(); ++k)
                        for (const Line& L : enumerate_class(LineClass{n, l, k}, window, lp, theta))
                            from_classes.push_back(L);
                std::sort(from_classes.begin(), from_classes.end());
                REQUIRE(from_classes.size() == brute.size());
                for (std::size_t t = 0; t < brute.size(); ++t)
                    CHECK(from_classes[t] == brute[t]);
            }
        }
    }
}

TEST_CASE("enumeration is deterministic and ordered") {
    BadTheta theta = golden_theta();
    LineParams lp = params_for(half(), 16, make_rat(1, 503));
    RatInterval window(make_rat(1, 10), make_rat(9, 10));
    auto a = enumerate_level(2, window, lp, theta);
    auto b = enumerate_level(2, window, lp, theta);
    REQUIRE(a.size() == b.size());
    for (std::size_t t = 0; t < a.size(); ++t) {
        CHECK(a[t].line == b[t].line);
        if (t + 1 < a.size()) CHECK(a[t].line < a[t + 1].line);
    }
}

TEST_CASE("line invariants on an enumerated level") {
    BadTheta theta = golden_theta();
    LineParams lp = params_for(half(), 16, make_rat(1, 777));
    Rat bound = 2 * lp.c * pow_int(Rat(16), -2 + 1);  // 2c R^{-n+1} at n = 2
    for (const TaggedLine& t : enumerate_level(2, RatInterval(Rat(0), Rat(1)), lp, theta)) {
        // primitive, B >= 1
        Int g = gcd(gcd(t.line.A, t.line.B), t.line.C);
        CHECK(g == 1);
        CHECK(t.line.B >= 1);
        // |Delta| = 2c/H <= 2c R^{-n+1}
        CHECK(2 * t.danger.radius_lower <= bound);
        // B-bound: B^{(1+j)/j} <= H < R^n, so B < R^{nj/(j+1)}
        CHECK(cmp_rat_vs_pow(Rat(t.line.B), Rat(16), 2, 3) < 0);
    }
}

TEST_CASE("line avoidance decisions are exact") {
    BadTheta theta = golden_theta();
    LineParams lp = params_for(half(), 16, make_rat(1, 256));

    // horizontal line y = 1/2 with H = 8: radius c/8 = 1/2048
    Line l{0, 2, 1};
    CHECK(line_avoids(l, lp, theta, RatInterval(make_rat(1, 4), make_rat(49, 100))));
    CHECK(!line_avoids(l, lp, theta, RatInterval(make_rat(499, 1000), make_rat(501, 1000))));
    // interval ending exactly at the danger edge 1/2 - 1/2048 is a hit (closed sets)
    CHECK(!line_avoids(l, lp, theta, RatInterval(make_rat(1, 4), make_rat(1, 2) - make_rat(1, 2048))));
    CHECK(line_avoids(l, lp, theta,
                      RatInterval(make_rat(1, 4), make_rat(1, 2) - make_rat(1, 2047))));

    // irrational center: theta/2 with H = 8
    Line m{1, 2, 0};
    CHECK(line_avoids(m, lp, theta, RatInterval(Rat(0), make_rat(3, 10))));
    CHECK(!line_avoids(m, lp, theta, RatInterval(make_rat(3, 10), make_rat(32, 100))));
}

TEST_CASE("line serialization") {
    Line l{-3, 7, 11};
    CHECK(Line::parse(l.str()) == l);
}
