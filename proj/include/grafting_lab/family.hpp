#pragma once

// Certified snapshots of a one-parameter family of surfaces.
//
// Neither the grafted surfaces nor the Teichmueller ray are uniformized;
// each point of a family is known only through intervals for the pants
// curve lengths, the twist products Tw(delta_j, gamma_j) l_j and the twist
// parameters. Lengths of other curves are recovered from the broken-arc
// estimate, with the log(1/l_j) terms shared between curves so that ratios
// do not double count them.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "grafting_lab/broken_arc.hpp"
#include "grafting_lab/curve.hpp"
#include "grafting_lab/interval.hpp"
#include "grafting_lab/surface.hpp"

namespace grafting_lab {

struct WeightedMulticurve {
    std::vector<int> curves;
    std::vector<double> weights;

    WeightedMulticurve() = default;
    WeightedMulticurve(std::vector<int> c, std::vector<double> w) : curves(std::move(c)), weights(std::move(w)) {
        if (curves.empty()) throw std::invalid_argument("multicurve: no components");
        if (curves.size() != weights.size()) throw std::invalid_argument("multicurve: weight count mismatch");
        for (std::size_t a = 0; a < curves.size(); ++a) {
            if (!(weights[a] > 0.0) || !std::isfinite(weights[a]))
                throw std::invalid_argument("multicurve: weights must be positive");
            for (std::size_t b = 0; b < a; ++b)
                if (curves[a] == curves[b]) throw std::invalid_argument("multicurve: repeated component");
        }
    }

    double max_weight() const { return *std::max_element(weights.begin(), weights.end()); }
    /// Weight of pants curve j, zero when it is not a component.
    double weight_of(int j) const {
        for (std::size_t a = 0; a < curves.size(); ++a)
            if (curves[a] == j) return weights[a];
        return 0.0;
    }
    bool contains(int j) const { return weight_of(j) > 0.0; }
    /// i(alpha, lambda) for a broken arc alpha.
    double intersection(const PantsDecomposition& d, const CurveClass& alpha) const {
        const std::vector<int> iv = intersection_vector(d, alpha);
        double s = 0.0;
        for (std::size_t a = 0; a < curves.size(); ++a) s += weights[a] * iv.at(curves[a]);
        return s;
    }
};

/// Parses "g1:1.0,g2:0.5" against the decomposition's curve ids.
inline WeightedMulticurve parse_multicurve(const PantsDecomposition& d, const std::string& text) {
    std::vector<int> curves;
    std::vector<double> weights;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string item = text.substr(pos, comma - pos);
        const std::size_t colon = item.find(':');
        const std::string id = item.substr(0, colon);
        const auto j = d.find_curve(id);
        if (!j) throw std::invalid_argument("multicurve: unknown curve '" + id + "'");
        double w = 1.0;
        if (colon != std::string::npos) {
            std::size_t used = 0;
            const std::string num = item.substr(colon + 1);
            try {
                w = std::stod(num, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != num.size()) throw std::invalid_argument("multicurve: bad weight '" + num + "'");
        }
        curves.push_back(*j);
        weights.push_back(w);
        pos = comma + 1;
    }
    return WeightedMulticurve(std::move(curves), std::move(weights));
}

struct FamilySnapshot {
    double t = 0.0;
    std::vector<CertifiedInterval> lengths;         // l(gamma_j)
    std::vector<CertifiedInterval> twist_products;  // Tw(delta_j, gamma_j) l(gamma_j)
    std::vector<CertifiedInterval> twist_params;    // t_j
    CertifiedInterval dist_to_base;
};

/// Twist parameter bound from a twist product: t_j and the twisting number
/// of a dual differ by at most one turn.
inline CertifiedInterval twist_param_from_product(const CertifiedInterval& product, const CertifiedInterval& length) {
    const CertifiedInterval bound = CertifiedInterval(std::max(0.0, product.hi())) / CertifiedInterval(length.lo()) + 1.0;
    return {-bound.hi(), bound.hi()};
}

/// What a catalog curve needs from the base surface to be estimated on any
/// member of a family with the same pants decomposition.
struct CatalogCurve {
    CurveClass curve;
    std::vector<int> crossings;
    BrokenArcCalibration calibration;
    /// |tw(beta, gamma_j) - tw(delta_j, gamma_j)| on the base plus one turn
    /// for the change of surface; zero off the crossed curves.
    std::vector<double> twist_offsets;
    double base_length = 0.0;
};

inline CatalogCurve prepare_catalog_curve(const PantsSurface& base, const CurveClass& c,
                                          const CalibrationOptions& opt = {}) {
    const PantsDecomposition& d = base.topology();
    CatalogCurve cc;
    cc.curve = c;
    cc.crossings = intersection_vector(d, c);
    cc.calibration = calibrate_broken_arc(d, c, opt);
    cc.twist_offsets.assign(d.num_curves(), 0.0);
    for (int j = 0; j < d.num_curves(); ++j) {
        if (cc.crossings[j] == 0) continue;
        const double diff = twisting_number(base, c, j) - twisting_number(base, dual_curve(d, j), j);
        cc.twist_offsets[j] = std::abs(diff) + 1.0;
    }
    cc.base_length = geodesic_length(base, c);
    return cc;
}

/// Shared per-pants-curve term 2 log(1/l_j) + Tw(delta_j, gamma_j) l_j.
inline CertifiedInterval crossing_term(const FamilySnapshot& s, int j) {
    const CertifiedInterval& len = s.lengths.at(j);
    const CertifiedInterval two(2.0);
    const double lo = (two * log(CertifiedInterval(1.0) / CertifiedInterval(len.hi()))).lo();
    const double hi = (two * log(CertifiedInterval(1.0) / CertifiedInterval(len.lo())) +
                       CertifiedInterval(std::max(0.0, s.twist_products.at(j).hi())))
                          .hi();
    return {lo, hi};
}

/// Curve-specific part of the estimate: calibrated band plus the twist
/// difference to the duals, which is at most twist_offset * l_j per crossing.
inline CertifiedInterval curve_offset(const FamilySnapshot& s, const CatalogCurve& c) {
    CertifiedInterval e = c.calibration.band();
    for (std::size_t j = 0; j < c.crossings.size(); ++j) {
        if (c.crossings[j] == 0) continue;
        const double w = (CertifiedInterval(c.crossings[j] * c.twist_offsets[j]) *
                          CertifiedInterval(s.lengths[j].hi()))
                             .hi();
        e = e + CertifiedInterval(-w, w);
    }
    return e;
}

inline void require_estimate_applies(const FamilySnapshot& s, const CatalogCurve& c) {
    for (const CertifiedInterval& len : s.lengths)
        if (!(len.hi() < c.calibration.max_length) || !(len.lo() > 0.0))
            throw GeometryError("thin-regime precondition violated");
}

/// Certified length of a catalog curve on a family member.
inline CertifiedInterval estimate_length(const FamilySnapshot& s, const CatalogCurve& c) {
    require_estimate_applies(s, c);
    CertifiedInterval sum(0.0);
    for (std::size_t j = 0; j < c.crossings.size(); ++j)
        if (c.crossings[j] != 0) sum = sum + CertifiedInterval(c.crossings[j]) * crossing_term(s, static_cast<int>(j));
    return (sum + curve_offset(s, c)).clamp_below(0.0);
}

/// Certified interval for l(a) / l(b) keeping the shared crossing terms
/// correlated. The ratio is linear-fractional in the box of crossing terms
/// and offsets, so its extremes sit at the box's vertices.
inline CertifiedInterval estimate_length_ratio(const FamilySnapshot& s, const CatalogCurve& a, const CatalogCurve& b) {
    require_estimate_applies(s, a);
    require_estimate_applies(s, b);
    std::vector<int> used;
    for (std::size_t j = 0; j < a.crossings.size(); ++j)
        if (a.crossings[j] != 0 || b.crossings[j] != 0) used.push_back(static_cast<int>(j));
    std::vector<CertifiedInterval> x;
    for (int j : used) x.push_back(crossing_term(s, j));
    const CertifiedInterval ea = curve_offset(s, a);
    const CertifiedInterval eb = curve_offset(s, b);
    const std::size_t dims = used.size() + 2;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t mask = 0; mask < (std::size_t{1} << dims); ++mask) {
        CertifiedInterval num = CertifiedInterval((mask >> used.size()) & 1 ? ea.hi() : ea.lo());
        CertifiedInterval den = CertifiedInterval((mask >> (used.size() + 1)) & 1 ? eb.hi() : eb.lo());
        for (std::size_t k = 0; k < used.size(); ++k) {
            const CertifiedInterval v((mask >> k) & 1 ? x[k].hi() : x[k].lo());
            num = num + CertifiedInterval(a.crossings[used[k]]) * v;
            den = den + CertifiedInterval(b.crossings[used[k]]) * v;
        }
        if (!(den.lo() > 0.0)) throw GeometryError("length ratio: denominator not certified positive");
        const CertifiedInterval r = num.clamp_below(0.0) / den;
        lo = std::min(lo, r.lo());
        hi = std::max(hi, r.hi());
    }
    return {lo, hi};
}

}  // namespace grafting_lab
