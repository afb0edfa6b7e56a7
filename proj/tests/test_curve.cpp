#include <gtest/gtest.h>

#include "grafting_lab/curve.hpp"

using namespace grafting_lab;

TEST(Curve, DualCurvesCrossOnlyTheirOwnCurve) {
    for (const PantsDecomposition& d : {genus_two_theta(), genus_two_dumbbell()})
        for (int j = 0; j < 3; ++j) {
            const CurveClass c = dual_curve(d, j);
            EXPECT_NO_THROW(validate(d, c));
            const std::vector<int> iv = intersection_vector(d, c);
            for (int k = 0; k < 3; ++k) {
                if (k == j) EXPECT_GT(iv[k], 0);
                else EXPECT_EQ(iv[k], 0);
            }
        }
}

TEST(Curve, DehnTwistKeepsIntersections) {
    const PantsDecomposition d = genus_two_theta();
    const CurveClass c = dual_curve(d, 0);
    const CurveClass t = dehn_twist(d, c, 0, 2);
    EXPECT_EQ(intersection_vector(d, c), intersection_vector(d, t));
    EXPECT_NE(t.windings, c.windings);
}

TEST(Curve, ItineraryOfTwoSeams) {
    const PantsDecomposition d = genus_two_theta();
    RawStep a;
    a.kind = RawStep::Kind::Seam;
    a.first = 0;
    a.second = 1;
    a.pant = 0;
    RawStep b = a;
    b.first = 1;
    b.second = 0;
    b.pant = 1;
    const CurveClass c = curve_from_itinerary(d, "s12", {a, b});
    EXPECT_EQ(intersection_vector(d, c), (std::vector<int>{1, 1, 0}));
}

TEST(Curve, RejectsMismatchedJunction) {
    const PantsDecomposition d = genus_two_theta();
    // the first arc ends on g2 in pant 0; the next arc starts on g3
    const CurveClass bad{"bad", {Arc{0, 0, 1, 1}, Arc{1, 2, 0, 1}}, {0, 0}};
    EXPECT_THROW(validate(d, bad), CurveError);
}

TEST(Curve, RejectsEmptyAndMalformedCurves) {
    const PantsDecomposition d = genus_two_theta();
    EXPECT_THROW(validate(d, CurveClass{"e", {}, {}}), CurveError);
    EXPECT_THROW(validate(d, CurveClass{"w", {Arc{0, 0, 1, 1}}, {}}), CurveError);
    EXPECT_THROW(validate(d, CurveClass{"d", {Arc{0, 0, 1, 2}, Arc{1, 1, 0, 1}}, {0, 0}}), CurveError);
    EXPECT_THROW(dual_curve(d, 7), CurveError);
}

TEST(Curve, QuarterReductionIsBalanced) {
    for (int q = -20; q <= 20; ++q) {
        const int r = reduce_quarters(q);
        EXPECT_EQ((q - r) % 4, 0);
        EXPECT_LE(std::abs(r), 2);
    }
}
