// Acceptance run: one PASS/FAIL line per criterion, followed by the numbers
// behind the verdict. Exits non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "grafting_lab/boundary.hpp"
#include "grafting_lab/io.hpp"

using namespace grafting_lab;

namespace {

const std::string kData = GRAFTING_LAB_DATA_DIR;
const std::string kCli = GRAFTING_LAB_CLI;

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

PantsSurface bundled_surface() { return surface_from_json(read_json_file(kData + "/genus2_theta.json")); }

std::vector<CurveClass> bundled_catalog(const PantsDecomposition& d) {
    return catalog_from_json(d, read_json_file(kData + "/catalog_theta.json"));
}

WeightedMulticurve g1_plus_g2() { return WeightedMulticurve({0, 1}, {1.0, 1.0}); }

// 1 ------------------------------------------------------------------------
Verdict fn_round_trip() {
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (const PantsDecomposition& d : {genus_two_theta(), genus_two_dumbbell()}) {
        FNSampler sampler(3, 0.01, 4.0, 3.0, 0x726f756e64ull);
        for (int k = 0; k < 1000; ++k) {
            const FNCoords c = sampler.next();
            const PantsSurface s(d, c);
            for (int j = 0; j < 3; ++j) {
                worst = std::max(worst, std::abs(pants_curve_length(s, j) - c.lengths[j]));
                worst = std::max(worst, std::abs(twist_parameter_readback(s, j) - c.twists[j]));
            }
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {worst <= 1e-6 && secs < 10.0,
            fmt("2 x 1000 surfaces, max coordinate error %.3g, %.2f s", worst, secs)};
}

// 2 ------------------------------------------------------------------------
Verdict broken_arc_containment() {
    const PantsSurface x = bundled_surface();
    const PantsDecomposition& d = x.topology();
    const std::vector<CurveClass> cat = bundled_catalog(d);
    int misses = 0, checks = 0;
    double worst_slope = -1e300, worst_sup = 0.0;
    for (const CurveClass& c : cat) {
        const BrokenArcCalibration cal = calibrate_broken_arc(d, c);
        FNSampler grid(3, 0.005, 0.5, 2.0, 0x67726964ull);
        for (int k = 0; k < 500; ++k) {
            const PantsSurface s(d, grid.next());
            ++checks;
            if (!broken_arc_estimate(s, c, cal).interval.contains(geodesic_length(s, c))) ++misses;
        }
        // error along l = 0.1 2^-m, least-squares slope in m
        double sm = 0, se = 0, smm = 0, sme = 0;
        for (int m = 0; m <= 7; ++m) {
            const double l = 0.1 * std::pow(2.0, -m);
            const PantsSurface s(d, {{l, l, l}, x.coords().twists});
            const double e = std::abs(geodesic_length(s, c) - broken_arc_central(s, c));
            worst_sup = std::max(worst_sup, e);
            sm += m, se += e, smm += m * m, sme += m * e;
        }
        const double slope = (8 * sme - sm * se) / (8 * smm - sm * sm);
        worst_slope = std::max(worst_slope, slope);
    }
    return {misses == 0 && cat.size() >= 10 && std::isfinite(worst_sup) && worst_slope <= 0.05,
            fmt("%zu curves, %d/%d contained, sup error %.4f, max slope %.4f per halving", cat.size(), checks - misses,
                checks, worst_sup, worst_slope)};
}

// 3 ------------------------------------------------------------------------
Verdict twist_vs_twisting_number() {
    const PantsDecomposition d = genus_two_theta();
    FNSampler grid(3, 0.005, 0.5, 2.0, 0x67726964ull);
    double worst = 0.0;
    for (int k = 0; k < 500; ++k) {
        const FNCoords c = grid.next();
        const PantsSurface s(d, c);
        for (int j = 0; j < 3; ++j) worst = std::max(worst, std::abs(c.twists[j] - twisting_number(s, dual_curve(d, j), j)));
    }
    return {worst <= 1.0 + 1e-6, fmt("max |t_j - tw| = %.6f over 500 surfaces", worst)};
}

// 4 ------------------------------------------------------------------------
Verdict grafting_bounds() {
    const PantsDecomposition d = genus_two_theta();
    double collapse = 0.0, annulus = 0.0;
    std::mt19937_64 rng(0x6772616674ull);
    std::uniform_real_distribution<double> ul(0.05, 3.0), uc(0.1, 5.0), ulogt(-3.0, 12.0);
    for (int k = 0; k < 10000; ++k) {
        const double l = ul(rng), c = uc(rng), t = std::pow(10.0, ulogt(rng));
        const PantsSurface s(d, {{l, 1.0, 1.0}, {0.0, 0.0, 0.0}});
        // the length bounds do not use the broken-arc calibration; keep it cheap
        GraftOptions opt;
        opt.calibration.samples = 16;
        const GraftRay g(s, WeightedMulticurve({0}, {c}), opt);
        if (k < 100) {
            const CertifiedInterval z = g.grafted_length_bounds(0.0, 0);
            collapse = std::max({collapse, std::abs(z.lo() - l), std::abs(z.hi() - l)});
        }
        const double up = g.grafted_length_bounds(t, 0).hi(), cover = g.annular_cover_upper_bound(t, 0);
        annulus = std::max(annulus, std::abs(up - cover) / cover);
    }
    // limits of t times the bounds, on the bundled surface with weights 1 and 0.5
    const PantsSurface x = bundled_surface();
    const GraftRay g(x, WeightedMulticurve({0, 1}, {1.0, 0.5}));
    double lim = 0.0;
    const double t = 1e8;
    for (int a = 0; a < 2; ++a) {
        const double l = x.length(a), c = g.lambda().weights[a];
        const CertifiedInterval b = g.grafted_length_bounds(t, a);
        const double up = std::numbers::pi * l / c, lo = 2.0 * g.theta0() * l / g.c_max();
        lim = std::max({lim, std::abs(t * b.hi() - up) / up, std::abs(t * b.lo() - lo) / lo});
    }
    return {collapse <= 1e-15 && annulus <= 1e-12 && lim <= 1e-6,
            fmt("t=0 error %.3g, annulus rel error %.3g, t*bounds rel error %.3g at t=1e8", collapse, annulus, lim)};
}

// 5 ------------------------------------------------------------------------
Verdict dilatation() {
    double worst = 0.0, beltrami = 0.0;
    for (double t : log_grid(1e-6, 1e6, 241)) {
        worst = std::max(worst, std::abs(dilatation_of_t(t) - (t + 1.0)));
        beltrami = std::max(beltrami, std::abs(dilatation_from_k(teichmuller_k(t)) / (t + 1.0) - 1.0));
    }
    worst = std::max(worst, std::abs(dilatation_of_t(0.0) - 1.0));
    return {worst <= 1e-12, fmt("max |K - (t+1)| = %.3g; Beltrami quotient relative error %.3g", worst, beltrami)};
}

// 6 ------------------------------------------------------------------------
Verdict twist_budget() {
    const GraftRay g(bundled_surface(), g1_plus_g2());
    const double t = 1e6, t0 = g.options().t0;
    double asym = 0.0;
    for (double c : {0.5, 1.0, 2.0}) {
        const double lhs = 2.0 * GraftRay::log_cot_term(t, c, t0).mid() - 2.0 * std::log(t);
        asym = std::max(asym, std::abs(lhs - 2.0 * std::log(2.0 * c / (t0 * std::numbers::pi))));
    }
    const auto sup = [&](int steps) {
        double b = 0.0;
        for (double s : log_grid(10.0, 1e6, steps))
            for (int j : g.lambda().curves) b = std::max(b, g.twist_budget(s, j).hi());
        return b;
    };
    const double coarse = sup(100), fine = sup(1000);
    const double change = std::abs(fine - coarse) / fine;
    return {asym <= 1e-4 && std::isfinite(fine) && change < 0.01,
            fmt("asymptotic error %.3g; sup B = %.6f (100 pts), %.6f (1000 pts), change %.3g", asym, coarse, fine,
                change)};
}

// 7 ------------------------------------------------------------------------
Verdict convergence() {
    const PantsSurface x = bundled_surface();
    const PantsDecomposition& d = x.topology();
    const WeightedMulticurve lam = g1_plus_g2();
    const GraftRay g(x, lam);
    std::vector<CatalogCurve> cat;
    for (const CurveClass& c : bundled_catalog(d)) cat.push_back(prepare_catalog_curve(x, c));
    const FamilySnapshot s10 = g.snapshot(std::exp(10.0)), s20 = g.snapshot(std::exp(20.0));
    int pairs = 0, missing = 0, wide = 0, grown = 0;
    double worst_rel = 0.0;
    std::string worst_pair;
    for (std::size_t a = 0; a < cat.size(); ++a)
        for (std::size_t b = 0; b < cat.size(); ++b) {
            const double ia = lam.intersection(d, cat[a].curve), ib = lam.intersection(d, cat[b].curve);
            if (a == b || ia == 0.0 || ib == 0.0) continue;
            const double target = ia / ib;
            const CertifiedInterval r10 = estimate_length_ratio(s10, cat[a], cat[b]);
            const CertifiedInterval r20 = estimate_length_ratio(s20, cat[a], cat[b]);
            ++pairs;
            if (!r20.contains(target)) ++missing;
            const double rel = r20.width() / target;
            if (rel > 0.25) ++wide;
            if (!(r20.width() < r10.width())) ++grown;
            if (rel > worst_rel) {
                worst_rel = rel;
                worst_pair = cat[a].curve.id + "/" + cat[b].curve.id;
            }
        }
    return {pairs > 0 && missing == 0 && wide == 0 && grown == 0,
            fmt("%d pairs: %d miss the target, %d wider than 25%%, %d not shrinking; widest %s at %.3f of target",
                pairs, missing, wide, grown, worst_pair.c_str(), worst_rel)};
}

// 8 ------------------------------------------------------------------------
Verdict certificate() {
    const PantsSurface x = bundled_surface();
    const WeightedMulticurve lam = g1_plus_g2();
    const GraftRay g(x, lam);
    TeichOptions to;
    to.k0 = matched_k0(g, g.c_max());
    const TeichRay m(x, lam, to);
    const QuasiGeodesicCertificate c60 = quasi_geodesic_certificate(g, m, log_grid(1e2, 1e6, 60));
    const QuasiGeodesicCertificate c600 = quasi_geodesic_certificate(g, m, log_grid(1e2, 1e6, 600));
    const double sup = c60.sup_distance.hi(), change = std::abs(c600.sup_distance.hi() - sup) / sup;
    bool matches = true;
    double worst = 0.0;
    for (int j : lam.curves) {
        const CertifiedInterval r = core_log_ratio(g, m, 1e6, j);
        const CertifiedInterval p = predicted_core_log_ratio(g, m, j).widened(CertificateOptions{}.slack);
        matches = matches && p.contains(r.lo()) && p.contains(r.hi());
        worst = std::max({worst, std::abs(r.lo()), std::abs(r.hi())});
    }
    return {std::isfinite(sup) && c60.pass && change < 0.05 && matches,
            fmt("K0 = %.5f, sup distance %.5f (60 pts) vs %.5f (600 pts), change %.3g; max |log ratio| %.5f %s", to.k0,
                sup, c600.sup_distance.hi(), change, worst, matches ? "within prediction" : "outside prediction")};
}

// 9 ------------------------------------------------------------------------
Verdict compactness() {
    const PantsSurface x = bundled_surface();
    const GraftRay g(x, g1_plus_g2());
    std::vector<ProductRegionImage> graft;
    for (double t : log_grid(1e2, 1e6, 60)) graft.push_back(product_region_image(g.snapshot(t), 0.1));
    // violation: g1, g2 pinch as on the ray while g3 is Dehn twisted without bound
    std::vector<ProductRegionImage> drift;
    for (int k = 0; k < 60; ++k) {
        FamilySnapshot s = g.snapshot(std::exp(5.0 + 0.15 * k));
        s.twist_params[2] = CertifiedInterval(x.twist(2) + k);
        drift.push_back(product_region_image(s, 0.1));
    }
    const CompactnessResult ok = pi0_compactness_check(graft), bad = pi0_compactness_check(drift);
    return {ok.pass && !bad.pass,
            fmt("grafting family %s (lengths [%.4f, %.4f], |tw| <= %.3f); violation family %s (%s at t = %.4g)",
                ok.pass ? "passes" : "fails", ok.min_length, ok.max_length, ok.max_abs_twist,
                bad.pass ? "passes" : "fails", bad.witness.c_str(), bad.witness_t)};
}

// 10 -----------------------------------------------------------------------
std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Verdict cli_determinism() {
    const std::string surf = " --surface " + kData + "/genus2_theta.json";
    const std::string cat = " --catalog " + kData + "/catalog_theta.json";
    const std::string lam = " --lam g1:1,g2:1";
    const std::vector<std::string> runs = {
        "length" + surf + cat,
        "length" + surf + cat + " --format json",
        "graft-ray" + surf + lam + " --steps 20",
        "graft-ray" + surf + lam + " --steps 20 --format json",
        "teich-ray" + surf + lam + " --steps 20 --calib-M 5",
        "converge" + surf + cat + lam + " --t-min 22026.465794806718 --t-max 485165195.40979028 --steps 6",
        "converge" + surf + cat + lam + " --t-min 22026.465794806718 --t-max 485165195.40979028 --steps 6 --format json",
        "distance" + surf + lam + " --k0 matched --steps 20",
        "certify" + surf + lam + " --k0 matched",
    };
    int differing = 0, failed = 0;
    for (std::size_t k = 0; k < runs.size(); ++k) {
        std::string out[2];
        for (int r = 0; r < 2; ++r) {
            const std::string path = "acceptance_cli_" + std::to_string(k) + "_" + std::to_string(r) + ".out";
            const int rc = std::system((kCli + " " + runs[k] + " --out " + path).c_str());
            if (rc != 0) ++failed;
            out[r] = slurp(path);
            std::remove(path.c_str());
        }
        if (out[0] != out[1] || out[0].empty()) ++differing;
    }
    return {differing == 0 && failed == 0,
            fmt("%zu invocations run twice: %d differ, %d non-zero exits", runs.size(), differing, failed)};
}

}  // namespace

// With no arguments every criterion runs; otherwise only the listed numbers.
int main(int argc, char** argv) {
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
        {"FN round-trip", fn_round_trip},
        {"broken-arc containment", broken_arc_containment},
        {"twist parameter vs twisting number", twist_vs_twisting_number},
        {"grafting length bounds", grafting_bounds},
        {"dilatation identity", dilatation},
        {"twist budget", twist_budget},
        {"Thurston boundary convergence", convergence},
        {"bounded-distance certificate", certificate},
        {"compactness of the non-thin part", compactness},
        {"CLI determinism", cli_determinism},
    };
    std::vector<std::size_t> selected;
    for (int a = 1; a < argc; ++a) {
        const int n = std::atoi(argv[a]);
        if (n < 1 || n > static_cast<int>(criteria.size())) {
            std::fprintf(stderr, "unknown criterion '%s'\n", argv[a]);
            return 2;
        }
        selected.push_back(static_cast<std::size_t>(n - 1));
    }
    if (selected.empty())
        for (std::size_t k = 0; k < criteria.size(); ++k) selected.push_back(k);
    int failures = 0;
    for (std::size_t k : selected) {
        Verdict v;
        const auto start = std::chrono::steady_clock::now();
        try {
            v = criteria[k].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        if (!v.pass) ++failures;
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %zu %s: %s -- %s [%.1f s]\n", k + 1, v.pass ? "PASS" : "FAIL", criteria[k].first,
                    v.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
