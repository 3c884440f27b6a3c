#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "badger/powers.hpp"
#include "badger/rational.hpp"

namespace badger {

// A power-law exponent: either an exact rational or log_lbase(larg) for
// rationals lbase > 1, larg > 0 (covers log 2 / log 3 style dimensions
// without committing to a finite enclosure up front).
struct Exponent {
    std::optional<Rat> exact;
    Rat lbase{0}, larg{0};

    static Exponent rational(Rat v);
    static Exponent log_of(Rat base, Rat arg);  // collapses to exact when it is

    bool is_exact() const { return exact.has_value(); }
    RatInterval enclosure(const Rat& tol) const;
    double approx() const;
    std::string str() const;
};

// Definition of a power law: b1 r^beta <= mu(B(x, r)) <= b2 r^beta on supp(mu).
struct PowerLawCert {
    Exponent beta;
    Rat b1, b2;

    PowerLawCert(Exponent b, Rat b1_, Rat b2_);
};

struct AffineMap {
    Rat ratio;   // in (0, 1)
    Rat offset;  // x -> ratio * x + offset
    Rat apply(const Rat& x) const { return ratio * x + offset; }
    RatInterval apply(const RatInterval& iv) const {
        return RatInterval(apply(iv.lo), apply(iv.hi));
    }
};

struct Cylinder {
    std::vector<int> word;
    RatInterval interval;  // image of the hull under the composed maps
    Rat mass;              // m^{-|word|} for the m-map natural measure
    Rat rep;               // a point of the attractor inside the interval
};

struct MassBounds {
    Rat lower, upper;
};

// Self-similar IFS on [0,1] with pairwise disjoint images (positive
// separation).  Equal branch weights; masses are exact rationals.
class IFS {
public:
    explicit IFS(std::vector<AffineMap> maps);

    static IFS middle_thirds() { return IFS({{make_rat(1, 3), Rat(0)}, {make_rat(1, 3), make_rat(2, 3)}}); }
    static IFS quarter() { return IFS({{make_rat(1, 4), Rat(0)}, {make_rat(1, 4), make_rat(3, 4)}}); }

    // "ratio,offset;ratio,offset" with rational entries
    static IFS parse(const std::string& s);
    std::string str() const;

    const std::vector<AffineMap>& maps() const { return maps_; }
    const Rat& separation() const { return separation_; }
    const Rat& min_ratio() const { return min_ratio_; }
    const Rat& max_ratio() const { return max_ratio_; }
    const Rat& attractor_min() const { return attr_min_; }
    const Rat& attractor_max() const { return attr_max_; }

    Cylinder root() const;
    Cylinder child(const Cylinder& c, int branch) const;

    // Depth-d cylinders whose intervals intersect the window, in left-to-right
    // order.
    std::vector<Cylinder> cylinders_in(const RatInterval& window, int depth) const;

private:
    std::vector<AffineMap> maps_;
    Rat separation_;
    Rat min_ratio_, max_ratio_;
    Rat attr_min_, attr_max_;
};

// Point of the attractor inside the closed window, if any. Exact via cylinder
// descent; a degenerate window at a non-endpoint attractor point exceeds the
// descent budget and throws.
std::optional<Rat> support_point_in(const IFS& ifs, const RatInterval& window);

// lower <= mu(window) <= upper from the depth-d cylinder decomposition.
MassBounds mass_bounds(const IFS& ifs, const RatInterval& window, int depth);

struct MoranExponent {
    std::optional<Rat> exact;
    RatInterval enclosure;
};

// Solves sum ratio_i^beta = 1. Exact when the ratios force a rational beta;
// enclosure of width <= tol otherwise. Ratios must be powers of a common base.
MoranExponent moran_exponent(const IFS& ifs, const Rat& tol);

struct PowerLawSample {
    Rat x, r;
    MassBounds mass;
    int verdict;  // +1 pass, 0 inconclusive at this depth, -1 fail
};

struct PowerLawReport {
    int passed = 0, failed = 0, inconclusive = 0;
    std::optional<PowerLawSample> first_failure;
    bool ok() const { return failed == 0 && inconclusive == 0; }
};

// Checks the power law on deterministic samples: support points x and radii
// r = max_ratio^n. Comparisons are exact (cleared exponents); enclosure betas
// use the conservative endpoint and may report inconclusive.
PowerLawReport verify_power_law(const IFS& ifs, const PowerLawCert& cert, int samples, int depth);

// Query interface shared by IFS natural measures and tree limit measures, so
// the iterated construction can consume either.
class SupportMeasure {
public:
    virtual ~SupportMeasure() = default;
    virtual RatInterval hull() const = 0;
    virtual const PowerLawCert& cert() const = 0;
    // Finest scale at which support queries are certified; 0 when unlimited.
    virtual Rat resolution_floor() const = 0;
    virtual std::optional<Rat> support_point_in(const RatInterval& window) const = 0;
    virtual MassBounds mass_bounds(const RatInterval& window, int depth) const = 0;
    // Deterministic net: support points at spacing <= delta covering
    // supp cap window (every support point in the window is within delta of
    // some net point).
    virtual std::vector<Rat> support_net(const RatInterval& window, const Rat& delta) const = 0;
};

class IFSMeasure : public SupportMeasure {
public:
    IFSMeasure(IFS ifs, PowerLawCert cert) : ifs_(std::move(ifs)), cert_(std::move(cert)) {}

    const IFS& ifs() const { return ifs_; }
    RatInterval hull() const override { return RatInterval(ifs_.attractor_min(), ifs_.attractor_max()); }
    const PowerLawCert& cert() const override { return cert_; }
    Rat resolution_floor() const override { return Rat(0); }
    std::optional<Rat> support_point_in(const RatInterval& window) const override {
        return badger::support_point_in(ifs_, window);
    }
    MassBounds mass_bounds(const RatInterval& window, int depth) const override {
        return badger::mass_bounds(ifs_, window, depth);
    }
    std::vector<Rat> support_net(const RatInterval& window, const Rat& delta) const override;

private:
    IFS ifs_;
    PowerLawCert cert_;
};

// Oracle-confirmed certificates for the stock fractals (see tests).
PowerLawCert quarter_cert();
PowerLawCert cantor_cert();

}  // namespace badger
