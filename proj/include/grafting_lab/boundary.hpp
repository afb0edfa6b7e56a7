#pragma once

// Thurston-boundary detection, product-region distances and the bounded
// distance certificate between a grafting ray and a Teichmueller ray.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "grafting_lab/family.hpp"
#include "grafting_lab/graft_ray.hpp"
#include "grafting_lab/hyperbolic.hpp"
#include "grafting_lab/interval.hpp"
#include "grafting_lab/teich_ray.hpp"

namespace grafting_lab {

// ---------------------------------------------------------------------------
// Upper half-plane boxes

/// A box of points x + i y in the upper half-plane.
struct HalfPlaneBox {
    CertifiedInterval x;
    CertifiedInterval y;
};

/// Range of half the hyperbolic distance between points of two boxes.
///
/// With u = log y1, v = log y2, cosh d - 1 = A e^{-(u+v)} + cosh(u - v) - 1
/// where A = dx^2 / 2. This is convex in (u, v) and increasing in |dx|, so the
/// maximum sits at a corner and the minimum is a one-dimensional convex
/// problem along u - v with u + v pushed as high as the box allows.
inline CertifiedInterval half_distance_range(const HalfPlaneBox& p, const HalfPlaneBox& q) {
    if (!(p.y.lo() > 0.0) || !(q.y.lo() > 0.0)) throw GeometryError("half-plane box leaves the upper half-plane");
    const CertifiedInterval dx = abs(p.x - q.x);
    const auto half_d = [](double dxv, double y1, double y2) {
        return 0.5 * upper_half_plane_distance(0.0, y1, dxv, y2);
    };
    double hi = 0.0;
    for (double y1 : {p.y.lo(), p.y.hi()})
        for (double y2 : {q.y.lo(), q.y.hi()}) hi = std::max(hi, half_d(dx.hi(), y1, y2));

    const double u_lo = std::log(p.y.lo()), u_hi = std::log(p.y.hi());
    const double v_lo = std::log(q.y.lo()), v_hi = std::log(q.y.hi());
    const double a = 0.5 * dx.lo() * dx.lo();
    const auto g = [&](double w) {
        const double s = std::min(2.0 * u_hi - w, 2.0 * v_hi + w);
        return a * std::exp(-s) + (std::cosh(w) - 1.0);
    };
    double w0 = u_lo - v_hi, w1 = u_hi - v_lo;
    for (int it = 0; it < 200 && w1 - w0 > 1e-15 * (1.0 + std::abs(w0) + std::abs(w1)); ++it) {
        const double m1 = w0 + (w1 - w0) / 3.0, m2 = w1 - (w1 - w0) / 3.0;
        if (g(m1) <= g(m2)) w1 = m2;
        else w0 = m1;
    }
    const double w = 0.5 * (w0 + w1);
    const double s = std::min(2.0 * u_hi - w, 2.0 * v_hi + w);
    double lo = half_d(dx.lo(), std::exp(0.5 * (s + w)), std::exp(0.5 * (s - w)));
    // The minimizer is only located to rounding; stay below every evaluation.
    lo = std::max(0.0, CertifiedInterval::down(lo) - 1e-12 * (1.0 + lo));
    return {std::min(lo, hi), CertifiedInterval::up(hi)};
}

// ---------------------------------------------------------------------------
// Product regions

struct ProductRegionImage {
    double t = 0.0;
    double epsilon0 = 0.1;
    std::vector<int> thin_set;
    /// Fenchel-Nielsen data off the thin set, as half-plane boxes t_j + i / l_j.
    std::vector<int> pi0_curves;
    std::vector<HalfPlaneBox> pi0;
    /// t_gamma + i / l_gamma for gamma in the thin set.
    std::vector<HalfPlaneBox> half_planes;
};

inline HalfPlaneBox fn_box(const FamilySnapshot& s, int j) {
    const CertifiedInterval inv = CertifiedInterval(1.0) / s.lengths.at(j);
    return {s.twist_params.at(j), inv};
}

/// Curves certified shorter than eps0 form the thin set.
inline ProductRegionImage product_region_image(const FamilySnapshot& s, double eps0 = 0.1) {
    if (!(eps0 > 0.0)) throw std::invalid_argument("product region: eps0 must be positive");
    ProductRegionImage img;
    img.t = s.t;
    img.epsilon0 = eps0;
    for (int j = 0; j < static_cast<int>(s.lengths.size()); ++j) {
        if (s.lengths[j].hi() <= eps0) {
            img.thin_set.push_back(j);
            img.half_planes.push_back(fn_box(s, j));
        } else {
            img.pi0_curves.push_back(j);
            img.pi0.push_back(fn_box(s, j));
        }
    }
    return img;
}

struct MinskyDistance {
    CertifiedInterval distance;  // widened by the slack
    CertifiedInterval raw;       // max over components before widening
    CertifiedInterval pi0;
    std::vector<CertifiedInterval> per_curve;  // aligned with the thin set
};

inline MinskyDistance minsky_distance_detail(const ProductRegionImage& p, const ProductRegionImage& q,
                                             double slack = 1.0) {
    if (p.thin_set != q.thin_set) throw GeometryError("incomparable thin regimes");
    if (!(slack >= 0.0)) throw std::invalid_argument("minsky distance: slack must be >= 0");
    MinskyDistance r;
    double lo = 0.0, hi = 0.0, plo = 0.0, phi = 0.0;
    for (std::size_t k = 0; k < p.pi0.size(); ++k) {
        const CertifiedInterval d = half_distance_range(p.pi0[k], q.pi0[k]);
        plo = std::max(plo, d.lo());
        phi = std::max(phi, d.hi());
    }
    r.pi0 = {plo, phi};
    lo = plo;
    hi = phi;
    for (std::size_t k = 0; k < p.half_planes.size(); ++k) {
        const CertifiedInterval d = half_distance_range(p.half_planes[k], q.half_planes[k]);
        r.per_curve.push_back(d);
        lo = std::max(lo, d.lo());
        hi = std::max(hi, d.hi());
    }
    r.raw = {lo, hi};
    r.distance = {std::max(0.0, CertifiedInterval::down(lo - slack)), CertifiedInterval::up(hi + slack)};
    return r;
}

inline CertifiedInterval minsky_distance(const ProductRegionImage& p, const ProductRegionImage& q, double slack = 1.0) {
    return minsky_distance_detail(p, q, slack).distance;
}

/// Heuristic slack for the product-region estimate when twist products are
/// bounded by b_t.
inline double slack_for_twist_bound(double b_t) { return 0.5 * b_t + 1.0; }

// ---------------------------------------------------------------------------
// Compactness of the non-thin part

struct CompactnessResult {
    bool pass = true;
    std::string witness;
    double witness_t = 0.0;
    int witness_curve = -1;
    double min_length = std::numeric_limits<double>::infinity();
    double max_length = 0.0;
    double max_abs_twist = 0.0;
};

/// Checks that every non-thin length stays in [1/M, M] and every non-thin
/// twist parameter in [-T, T] along the family.
inline CompactnessResult pi0_compactness_check(const std::vector<ProductRegionImage>& family, double m = 10.0,
                                               double tw_bound = 10.0) {
    CompactnessResult r;
    const auto fail = [&](const ProductRegionImage& img, int j, const std::string& why) {
        if (!r.pass) return;
        r.pass = false;
        r.witness_t = img.t;
        r.witness_curve = j;
        r.witness = why;
    };
    for (const ProductRegionImage& img : family) {
        for (std::size_t k = 0; k < img.pi0.size(); ++k) {
            const int j = img.pi0_curves[k];
            const HalfPlaneBox& b = img.pi0[k];
            const double len_lo = 1.0 / b.y.hi(), len_hi = 1.0 / b.y.lo();
            const double tw = std::max(std::abs(b.x.lo()), std::abs(b.x.hi()));
            r.min_length = std::min(r.min_length, len_lo);
            r.max_length = std::max(r.max_length, len_hi);
            r.max_abs_twist = std::max(r.max_abs_twist, tw);
            if (len_lo < 1.0 / m) fail(img, j, "length below 1/M");
            if (len_hi > m) fail(img, j, "length above M");
            if (tw > tw_bound) fail(img, j, "twist parameter outside [-T, T]");
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Thurston boundary

struct ProjectiveLimit {
    double t = 0.0;
    std::vector<std::string> curve_ids;
    std::vector<CertifiedInterval> per_log_t;   // l / log t
    std::vector<CertifiedInterval> normalized;  // divided by the largest entry's upper end
    bool detected = false;
    int consistent_candidates = 0;
    std::vector<double> weights;                // detected class, max weight 1
};

/// Compares normalized lengths with 2 i(beta, sum of gamma_j over S) for
/// every nonempty set S of pants curves. A candidate is consistent when one
/// scale fits every curve it crosses and the curves it misses stay below a
/// quarter of that scale. The limit is detected when exactly one candidate
/// survives.
inline ProjectiveLimit thurston_limit(double t, const std::vector<CertifiedInterval>& lengths,
                                      const std::vector<CatalogCurve>& catalog, int num_curves) {
    if (!(t > 1.0)) throw std::invalid_argument("thurston limit: t must exceed 1");
    if (lengths.size() != catalog.size()) throw std::invalid_argument("thurston limit: catalog size mismatch");
    ProjectiveLimit r;
    r.t = t;
    const CertifiedInterval lt = log(CertifiedInterval(t));
    double top = 0.0;
    for (std::size_t k = 0; k < catalog.size(); ++k) {
        r.curve_ids.push_back(catalog[k].curve.id);
        r.per_log_t.push_back(lengths[k].clamp_below(0.0) / lt);
        top = std::max(top, r.per_log_t.back().hi());
    }
    for (const CertifiedInterval& v : r.per_log_t)
        r.normalized.push_back(top > 0.0 ? v / CertifiedInterval(top) : v);

    std::vector<double> found;
    for (unsigned mask = 1; mask < (1u << num_curves); ++mask) {
        double s_lo = 0.0, s_hi = std::numeric_limits<double>::infinity();
        std::vector<std::size_t> zeros;
        for (std::size_t k = 0; k < catalog.size(); ++k) {
            int pred = 0;
            for (int j = 0; j < num_curves; ++j)
                if (mask & (1u << j)) pred += 2 * catalog[k].crossings[j];
            if (pred == 0) {
                zeros.push_back(k);
                continue;
            }
            const CertifiedInterval sc = r.per_log_t[k] / CertifiedInterval(pred);
            s_lo = std::max(s_lo, sc.lo());
            s_hi = std::min(s_hi, sc.hi());
        }
        bool ok = s_lo <= s_hi && std::isfinite(s_hi);
        for (std::size_t k : zeros)
            if (ok && !(r.per_log_t[k].lo() <= 0.25 * s_lo)) ok = false;
        if (!ok) continue;
        ++r.consistent_candidates;
        found.assign(num_curves, 0.0);
        for (int j = 0; j < num_curves; ++j) found[j] = (mask & (1u << j)) ? 1.0 : 0.0;
    }
    r.detected = r.consistent_candidates == 1;
    if (r.detected) r.weights = found;
    return r;
}

inline std::vector<CertifiedInterval> catalog_lengths(const GraftRay& g, double t,
                                                      const std::vector<CatalogCurve>& catalog) {
    std::vector<CertifiedInterval> out;
    for (const CatalogCurve& c : catalog) out.push_back(g.catalog_length(t, c));
    return out;
}

inline std::vector<CertifiedInterval> catalog_lengths(const TeichRay& m, double t,
                                                      const std::vector<CatalogCurve>& catalog) {
    const FamilySnapshot s = m.snapshot(t);
    std::vector<CertifiedInterval> out;
    for (const CatalogCurve& c : catalog) out.push_back(estimate_length(s, c));
    return out;
}

// ---------------------------------------------------------------------------
// Bounded-distance certificate

struct CertificatePoint {
    double t = 0.0;
    MinskyDistance distance;
};

struct QuasiGeodesicCertificate {
    CertifiedInterval sup_distance;
    double bound = 10.0;
    bool pass = false;
    std::vector<CertificatePoint> per_t;
};

struct CertificateOptions {
    double epsilon0 = 0.1;
    double slack = 1.0;
    double bound = 10.0;
};

inline QuasiGeodesicCertificate quasi_geodesic_certificate(const GraftRay& g, const TeichRay& m,
                                                           const std::vector<double>& t_grid,
                                                           const CertificateOptions& opt = {}) {
    if (t_grid.empty()) throw std::invalid_argument("certificate: empty t grid");
    QuasiGeodesicCertificate c;
    c.bound = opt.bound;
    double lo = 0.0, hi = 0.0;
    for (double t : t_grid) {
        const ProductRegionImage pg = product_region_image(g.snapshot(t), opt.epsilon0);
        const ProductRegionImage pm = product_region_image(m.snapshot(t), opt.epsilon0);
        for (int j : g.lambda().curves) {
            const bool thin_g = std::find(pg.thin_set.begin(), pg.thin_set.end(), j) != pg.thin_set.end();
            const bool thin_m = std::find(pm.thin_set.begin(), pm.thin_set.end(), j) != pm.thin_set.end();
            if (!thin_g || !thin_m) {
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.17g", t);
                throw GeometryError(std::string("thin-regime precondition fails at t = ") + buf);
            }
        }
        CertificatePoint p{t, minsky_distance_detail(pg, pm, opt.slack)};
        lo = std::max(lo, p.distance.distance.lo());
        hi = std::max(hi, p.distance.distance.hi());
        c.per_t.push_back(std::move(p));
    }
    c.sup_distance = {lo, hi};
    c.pass = hi <= opt.bound;
    return c;
}

/// Interval for log(l_model / l_graft) of a component of lambda at time t.
inline CertifiedInterval core_log_ratio(const GraftRay& g, const TeichRay& m, double t, int j) {
    const CertifiedInterval graft = g.grafted_length_bounds(t, j);
    const CertifiedInterval model = CertifiedInterval::around(m.model_core_length(t, j));
    return log(model / graft);
}

/// Limit of core_log_ratio as t grows, from the closed forms of both models.
inline CertifiedInterval predicted_core_log_ratio(const GraftRay& g, const TeichRay& m, int j) {
    const double c = g.lambda().weight_of(j);
    const double k0 = m.options().k0;
    const double lo = std::log(1.0 / k0);
    const double hi = std::log(std::numbers::pi * g.c_max() / (2.0 * g.theta0() * c * k0));
    return {CertifiedInterval::down(lo), CertifiedInterval::up(hi)};
}

/// K0 that centres the predicted log-ratio window on zero for weight c.
inline double matched_k0(const GraftRay& g, double c) {
    return std::sqrt(std::numbers::pi * g.c_max() / (2.0 * g.theta0() * c));
}

/// Log-spaced grid from t_min to t_max inclusive.
inline std::vector<double> log_grid(double t_min, double t_max, int steps) {
    if (!(t_min > 0.0) || !(t_max >= t_min)) throw std::invalid_argument("grid: need 0 < t_min <= t_max");
    if (steps < 2) throw std::invalid_argument("grid: need at least 2 steps");
    std::vector<double> g(steps);
    const double a = std::log(t_min), b = std::log(t_max);
    for (int k = 0; k < steps; ++k) g[k] = std::exp(a + (b - a) * k / (steps - 1));
    g.front() = t_min;
    g.back() = t_max;
    return g;
}

}  // namespace grafting_lab
