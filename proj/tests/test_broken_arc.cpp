#include <gtest/gtest.h>

#include <cmath>

#include "grafting_lab/broken_arc.hpp"

using namespace grafting_lab;

namespace {

CurveClass s12() { return CurveClass{"s12", {Arc{0, 0, 1, 1}, Arc{1, 1, 0, 1}}, {0, 0}}; }

}  // namespace

TEST(BrokenArc, CentralValueOfADual) {
    // one crossing term per intersection: 2 log(1/l) + |tw| l
    const PantsDecomposition d = genus_two_theta();
    const PantsSurface s(d, {{0.01, 0.02, 0.03}, {0.4, -0.3, 0.2}});
    const CurveClass c = dual_curve(d, 1);
    const std::vector<double> tw = absolute_twists(s, c);
    const double expected = 2.0 * (2.0 * std::log(1.0 / 0.02) + tw[1] * 0.02);
    EXPECT_NEAR(broken_arc_central(s, c), expected, 1e-12);
}

TEST(BrokenArc, CalibrationIsReproducible) {
    const PantsDecomposition d = genus_two_theta();
    const BrokenArcCalibration a = calibrate_broken_arc(d, s12()), b = calibrate_broken_arc(d, s12());
    EXPECT_EQ(a.band_lo, b.band_lo);
    EXPECT_EQ(a.band_hi, b.band_hi);
    EXPECT_LE(a.band_lo, a.error_lo);
    EXPECT_GE(a.band_hi, a.error_hi);
    EXPECT_LE(a.band_hi, a.constant);
}

TEST(BrokenArc, EstimateContainsTheExactLength) {
    const PantsDecomposition d = genus_two_theta();
    for (const CurveClass& c : {s12(), dual_curve(d, 0), dual_curve(d, 2)}) {
        const BrokenArcCalibration cal = calibrate_broken_arc(d, c);
        FNSampler grid(3, 0.005, 0.5, 2.0, 99);
        for (int k = 0; k < 200; ++k) {
            const PantsSurface s(d, grid.next());
            const BrokenArcEstimate e = broken_arc_estimate(s, c, cal);
            const double exact = geodesic_length(s, c);
            EXPECT_TRUE(e.interval.contains(exact)) << c.id << " exact " << exact;
            EXPECT_TRUE(e.symmetric.contains(exact));
        }
    }
}

TEST(BrokenArc, ErrorStaysBoundedAsCurvesPinch) {
    const PantsDecomposition d = genus_two_theta();
    const CurveClass c = dual_curve(d, 0);
    double prev = 0.0;
    for (int m = 0; m < 8; ++m) {
        const double l = 0.1 * std::pow(2.0, -m);
        const PantsSurface s(d, {{l, l, l}, {0.3, -0.7, 1.2}});
        const double err = std::abs(geodesic_length(s, c) - broken_arc_central(s, c));
        EXPECT_LT(err, 20.0);
        if (m > 0) {
            EXPECT_NEAR(err, prev, 0.5);
        }
        prev = err;
    }
}

TEST(BrokenArc, PantsCurveGetsTheTrivialBound) {
    const PantsDecomposition d = genus_two_theta();
    // there and back between slots 1 and 2 of one pant: peripheral around slot 0
    const CurveClass core{"g1core", {Arc{0, 1, 2, 1}, Arc{0, 2, 1, 1}}, {0, 0}};
    ASSERT_TRUE(is_pants_curve_class(d, core));
    const BrokenArcCalibration cal = calibrate_broken_arc(d, core);
    const PantsSurface s(d, {{0.5, 0.5, 0.5}, {0, 0, 0}});
    const BrokenArcEstimate e = broken_arc_estimate(s, core, cal);
    EXPECT_TRUE(e.pants_curve);
    EXPECT_EQ(e.interval.lo(), 0.0);
}

TEST(BrokenArc, ThickSurfaceViolatesThePrecondition) {
    const PantsDecomposition d = genus_two_theta();
    const BrokenArcCalibration cal = calibrate_broken_arc(d, s12());
    const PantsSurface s(d, {{5.0, 0.5, 0.5}, {0, 0, 0}});
    EXPECT_THROW(broken_arc_estimate(s, s12(), cal), GeometryError);
}
