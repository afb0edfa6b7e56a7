#include <gtest/gtest.h>

#include <cmath>

#include "grafting_lab/boundary.hpp"

using namespace grafting_lab;

namespace {

PantsSurface base() { return PantsSurface(genus_two_theta(), {{1.0, 1.0, 1.0}, {0.25, -0.5, 0.1}}); }

WeightedMulticurve lam() { return WeightedMulticurve({0, 1}, {1.0, 1.0}); }

}  // namespace

TEST(Boundary, HalfDistanceRangeEnclosesSampledDistances) {
    const HalfPlaneBox p{{-0.5, 0.5}, {1.0, 3.0}}, q{{2.0, 2.5}, {0.5, 4.0}};
    const CertifiedInterval r = half_distance_range(p, q);
    for (double x1 : {-0.5, 0.0, 0.5})
        for (double y1 : {1.0, 2.0, 3.0})
            for (double x2 : {2.0, 2.5})
                for (double y2 : {0.5, 1.0, 4.0}) EXPECT_TRUE(r.contains(0.5 * upper_half_plane_distance(x1, y1, x2, y2)));
}

TEST(Boundary, HalfDistanceOfOverlappingBoxesStartsAtZero) {
    const HalfPlaneBox p{{0.0, 1.0}, {1.0, 2.0}};
    EXPECT_EQ(half_distance_range(p, p).lo(), 0.0);
}

TEST(Boundary, ThinSetFollowsEpsilon) {
    const GraftRay g(base(), lam());
    const ProductRegionImage img = product_region_image(g.snapshot(1e4), 0.1);
    EXPECT_EQ(img.thin_set, (std::vector<int>{0, 1}));
    EXPECT_EQ(img.pi0_curves, (std::vector<int>{2}));
}

TEST(Boundary, DifferentThinSetsAreIncomparable) {
    const GraftRay g(base(), lam());
    const ProductRegionImage a = product_region_image(g.snapshot(1e4), 0.1);
    const ProductRegionImage b = product_region_image(g.snapshot(2.0), 0.1);
    EXPECT_THROW(minsky_distance(a, b), GeometryError);
}

TEST(Boundary, CertificateIsStableUnderRefinement) {
    const GraftRay g(base(), lam());
    TeichOptions o;
    o.k0 = matched_k0(g, 1.0);
    const TeichRay m(base(), lam(), o);
    const auto coarse = quasi_geodesic_certificate(g, m, log_grid(1e2, 1e6, 20));
    const auto fine = quasi_geodesic_certificate(g, m, log_grid(1e2, 1e6, 200));
    EXPECT_TRUE(coarse.pass);
    EXPECT_NEAR(coarse.sup_distance.hi(), fine.sup_distance.hi(), 0.05 * fine.sup_distance.hi());
}

TEST(Boundary, CertificateNeedsThinLambda) {
    const GraftRay g(base(), lam());
    const TeichRay m(base(), lam());
    EXPECT_THROW(quasi_geodesic_certificate(g, m, {2.0, 3.0}), GeometryError);
}

TEST(Boundary, CoreLogRatioApproachesThePrediction) {
    const GraftRay g(base(), lam());
    TeichOptions o;
    o.k0 = matched_k0(g, 1.0);
    const TeichRay m(base(), lam(), o);
    const CertifiedInterval p = predicted_core_log_ratio(g, m, 0);
    EXPECT_NEAR(p.lo(), -p.hi(), 1e-12);
    const CertifiedInterval r = core_log_ratio(g, m, 1e8, 0);
    EXPECT_NEAR(r.lo(), p.lo(), 1e-6);
    EXPECT_NEAR(r.hi(), p.hi(), 1e-6);
}

TEST(Boundary, CompactnessDetectsTwistDrift) {
    const GraftRay g(base(), lam());
    std::vector<ProductRegionImage> ok, drift;
    for (int k = 0; k < 20; ++k) {
        FamilySnapshot s = g.snapshot(100.0 * (k + 1));
        ok.push_back(product_region_image(s));
        s.twist_params[2] = CertifiedInterval(3.0 * k);
        drift.push_back(product_region_image(s));
    }
    EXPECT_TRUE(pi0_compactness_check(ok).pass);
    const CompactnessResult bad = pi0_compactness_check(drift);
    EXPECT_FALSE(bad.pass);
    EXPECT_EQ(bad.witness_curve, 2);
}

TEST(Boundary, ProjectiveLimitOfDisjointCurvesVanishes) {
    const PantsSurface x = base();
    const GraftRay g(x, lam());
    const PantsDecomposition& d = x.topology();
    std::vector<CatalogCurve> cat;
    for (int j = 0; j < 3; ++j) cat.push_back(prepare_catalog_curve(x, dual_curve(d, j)));
    const double t = std::exp(20.0);
    const ProjectiveLimit p = thurston_limit(t, catalog_lengths(g, t, cat), cat, 3);
    // the dual of g3 misses lambda; its length stays bounded
    EXPECT_LT(p.normalized[2].hi(), 0.25);
    EXPECT_GT(p.normalized[0].lo(), 0.5);
}

TEST(Boundary, LogGrid) {
    const std::vector<double> g = log_grid(1e2, 1e6, 5);
    ASSERT_EQ(g.size(), 5u);
    EXPECT_EQ(g.front(), 1e2);
    EXPECT_EQ(g.back(), 1e6);
    EXPECT_NEAR(g[2], 1e4, 1e-8);
    EXPECT_THROW(log_grid(0.0, 1.0, 3), std::invalid_argument);
}
