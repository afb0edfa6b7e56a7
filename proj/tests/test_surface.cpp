#include <gtest/gtest.h>

#include <cmath>

#include "grafting_lab/broken_arc.hpp"
#include "grafting_lab/surface.hpp"

using namespace grafting_lab;

namespace {

PantsSurface theta(double t0 = 0.25, double t1 = -0.5, double t2 = 0.1) {
    return PantsSurface(genus_two_theta(), {{1.0, 0.7, 1.3}, {t0, t1, t2}});
}

}  // namespace

TEST(Surface, HolonomyRoundTrip) {
    for (const PantsDecomposition& d : {genus_two_theta(), genus_two_dumbbell()}) {
        FNSampler sampler(3, 0.01, 4.0, 3.0, 17);
        for (int k = 0; k < 200; ++k) {
            const FNCoords c = sampler.next();
            const PantsSurface s(d, c);
            for (int j = 0; j < 3; ++j) {
                EXPECT_NEAR(pants_curve_length(s, j), c.lengths[j], 1e-6);  // trace near 2 costs digits
                EXPECT_NEAR(twist_parameter_readback(s, j), c.twists[j], 1e-6);
            }
        }
    }
}

TEST(Surface, PantRelationHolds) {
    const PantsSurface s = theta();
    const Holonomy& h = s.holonomy();
    for (int p = 0; p < 2; ++p) {
        Mat2 prod = Mat2::identity();
        for (int k = 2; k >= 0; --k) {
            const Mat2& f = h.frames[p][k];
            prod = prod * f * advance(s.length(s.topology().curve_at(p, k))) * f.inverse();
        }
        EXPECT_NEAR(prod.trace(), -2.0, 1e-9);
    }
}

TEST(Surface, DualLengthIsMinimalAtZeroTwist) {
    const PantsDecomposition d = genus_two_theta();
    for (int j = 0; j < 3; ++j) {
        const auto length_at = [&](double t) {
            FNCoords c{{1.0, 0.7, 1.3}, {0.3, -0.2, 0.4}};
            c.twists[j] = t;
            return geodesic_length(PantsSurface(d, c), dual_curve(d, j));
        };
        const double l0 = length_at(0.0);
        EXPECT_LT(l0, length_at(0.05));
        EXPECT_LT(l0, length_at(-0.05));
    }
}

TEST(Surface, TwistingNumberFollowsTheTwistParameter) {
    const PantsDecomposition d = genus_two_theta();
    for (double t : {-2.0, -0.5, 0.0, 0.7, 2.5}) {
        const PantsSurface s = theta(t);
        EXPECT_LE(std::abs(twisting_number(s, dual_curve(d, 0), 0) - t), 1.0);
    }
    // a full Dehn twist shifts the twisting number by about one
    const PantsSurface s = theta();
    const double before = twisting_number(s, dual_curve(d, 2), 2);
    const double after = twisting_number(s, dehn_twist(d, dual_curve(d, 2), 2, 1), 2);
    EXPECT_NEAR(after - before, 1.0, 0.05);
}

TEST(Surface, FullDehnTwistOfTheSurfaceIsAnIsometry) {
    const PantsDecomposition d = genus_two_theta();
    const PantsSurface a = theta(0.25), b = theta(1.25);
    const CurveClass c = dual_curve(d, 0);
    EXPECT_NEAR(geodesic_length(b, c), geodesic_length(a, dehn_twist(d, c, 0, 1)), 1e-9);
}

TEST(Surface, RejectsInvalidCoordinates) {
    const PantsDecomposition d = genus_two_theta();
    EXPECT_THROW(PantsSurface(d, {{1.0, -0.7, 1.3}, {0, 0, 0}}), GeometryError);
    EXPECT_THROW(PantsSurface(d, {{1.0, 0.7}, {0, 0, 0}}), GeometryError);
    EXPECT_THROW(PantsSurface(d, {{1.0, 0.7, NAN}, {0, 0, 0}}), GeometryError);
}
