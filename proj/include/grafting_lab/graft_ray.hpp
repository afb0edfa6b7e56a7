#pragma once

// Interval surrogate for the grafting ray t -> gr_{t lambda}(X).
//
// Grafting cuts X along each component gamma_i of lambda and inserts a flat
// cylinder of height c_i t. The projective (Thurston) metric is explicit; the
// hyperbolic metric is bracketed: from above by the modulus of the grafted
// annular cover, from below through a quasiconformal map that stretches an
// embedded sector of half-angle theta0 around gamma_i over the cylinder.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "grafting_lab/broken_arc.hpp"
#include "grafting_lab/family.hpp"
#include "grafting_lab/hyperbolic.hpp"
#include "grafting_lab/interval.hpp"
#include "grafting_lab/surface.hpp"

namespace grafting_lab {

/// Half the collar width of the longest curve in `lengths`.
inline double collar_epsilon0(const std::vector<double>& lengths) {
    const double lmax = *std::max_element(lengths.begin(), lengths.end());
    return 0.5 * std::asinh(1.0 / std::sinh(0.5 * lmax));
}

/// Angle between a geodesic and its equidistant curve at distance eps.
inline double sector_angle(double eps) { return std::acos(1.0 / std::cosh(eps)); }

/// Lower length bound from the collar lemma: a curve of length L that crosses
/// gamma i times forces l(gamma) >= 2 asinh(1 / sinh(L / (2 i))).
inline double collar_length_lower_bound(double crossing_length, int crossings) {
    return 2.0 * std::asinh(1.0 / std::sinh(crossing_length / (2.0 * crossings)));
}

inline CertifiedInterval wolpert_transfer(double len, double c) {
    if (!(len > 0.0) || !(c >= 0.0)) throw std::invalid_argument("wolpert_transfer: need len > 0 and C >= 0");
    if (c == 0.0) return CertifiedInterval(len);
    const CertifiedInterval f = exp(CertifiedInterval(2.0) * CertifiedInterval(c));
    const CertifiedInterval l(len);
    return {(l / f).lo(), (l * f).hi()};
}

struct GraftOptions {
    std::optional<double> theta0;  // derived from the collar when unset
    double t0 = 1.0;               // flat segment length in the twist budget
    CalibrationOptions calibration{};
};

class GraftRay {
public:
    GraftRay(PantsSurface base, WeightedMulticurve lam, GraftOptions opt = {})
        : base_(std::move(base)), lam_(std::move(lam)), opt_(std::move(opt)) {
        const PantsDecomposition& d = base_.topology();
        for (int j : lam_.curves)
            if (j < 0 || j >= d.num_curves()) throw std::invalid_argument("graft ray: lambda component out of range");
        std::vector<double> lam_lengths;
        for (int j : lam_.curves) lam_lengths.push_back(base_.length(j));
        epsilon0_ = collar_epsilon0(lam_lengths);
        theta0_ = opt_.theta0 ? *opt_.theta0 : sector_angle(epsilon0_);
        if (!(theta0_ > 0.0 && theta0_ < 0.5 * std::numbers::pi))
            throw std::invalid_argument("graft ray: theta0 must lie in (0, pi/2)");
        if (!(opt_.t0 > 0.0)) throw std::invalid_argument("graft ray: t0 must be positive");
        for (int j = 0; j < d.num_curves(); ++j)
            if (!(base_.length(j) < opt_.calibration.max_length))
                throw GeometryError("thin-regime precondition violated");
        duals_.reserve(d.num_curves());
        for (int j = 0; j < d.num_curves(); ++j) {
            const CurveClass dual = dual_curve(d, j);
            DualData dd;
            dd.crossings = intersection_number(d, dual, j);
            dd.base_length = geodesic_length(base_, dual);
            dd.base_twist = twisting_number(base_, dual, j);
            dd.calibration = calibrate_broken_arc(d, dual, opt_.calibration);
            duals_.push_back(dd);
        }
    }

    const PantsSurface& base() const { return base_; }
    const WeightedMulticurve& lambda() const { return lam_; }
    double theta0() const { return theta0_; }
    double epsilon0() const { return epsilon0_; }
    double c_max() const { return lam_.max_weight(); }
    const GraftOptions& options() const { return opt_; }

    /// Projective length l_X(alpha) + t i(alpha, lambda), an upper bound for
    /// the hyperbolic length on the grafted surface.
    double thurston_length(double t, const CurveClass& alpha) const {
        return geodesic_length(base_, alpha) + t * lam_.intersection(base_.topology(), alpha);
    }

    CertifiedInterval grafted_length_bounds(double t, int j) const {
        require_t(t);
        const double c = require_component(j);
        const double len = base_.length(j);
        if (t == 0.0) return CertifiedInterval(len);
        const CertifiedInterval l(len), tt(t);
        const CertifiedInterval two_theta = CertifiedInterval(2.0) * CertifiedInterval(theta0_);
        const CertifiedInterval pi(std::numbers::pi);
        const CertifiedInterval lower = two_theta / (two_theta + CertifiedInterval(c_max()) * tt) * l;
        const CertifiedInterval upper = pi / (pi + CertifiedInterval(c) * tt) * l;
        return {lower.lo(), upper.hi()};
    }

    /// Core length of the grafted annular cover, which contains the cover of
    /// X (modulus pi / l) and the inserted cylinder (modulus c t / l).
    double annular_cover_upper_bound(double t, int j) const {
        require_t(t);
        const double c = require_component(j);
        const double len = base_.length(j);
        const AnnulusModel cover = AnnulusModel::round_with_modulus(std::numbers::pi / len);
        if (t == 0.0) return annulus_core_length(cover);
        const AnnulusModel cylinder = AnnulusModel::cylinder(c * t, len);
        return annulus_core_length(AnnulusModel::round_with_modulus(cover.modulus() + cylinder.modulus()));
    }

    /// Upper bound for the Teichmueller distance from X: log of the dilatation
    /// of the sector-stretching map, halved.
    double qc_distance_bound(double t) const {
        require_t(t);
        return 0.5 * std::log1p(c_max() * t / (2.0 * theta0_));
    }

    CertifiedInterval dist_to_base(double t) const {
        require_t(t);
        if (t == 0.0) return CertifiedInterval(0.0);
        // Wolpert: d >= (1/2) log(l_X / l_t) for every shrinking gamma_j.
        double lo = 0.0;
        for (std::size_t a = 0; a < lam_.curves.size(); ++a)
            lo = std::max(lo, CertifiedInterval::down(0.5 * std::log1p(lam_.weights[a] * t / std::numbers::pi)));
        const double hi = CertifiedInterval::up(qc_distance_bound(t));
        return {std::min(lo, hi), hi};
    }

    /// The grafted-side length bound of a pants curve: the two-sided bounds
    /// for components of lambda, and for the other pants curves the collar
    /// bound from their (unchanged) dual together with the projective length.
    CertifiedInterval pants_length(double t, int j) const {
        if (lam_.contains(j)) return grafted_length_bounds(t, j);
        require_t(t);
        const DualData& dd = duals_.at(j);
        const double len = base_.length(j);
        const double lo = std::min(len, collar_length_lower_bound(dd.base_length, dd.crossings));
        return {CertifiedInterval::down(lo), len};
    }

    /// Interval for Tw(delta_j, gamma_j) l(gamma_j) on the grafted surface.
    ///
    /// For a component of lambda the dual is cut by the cylinder into arcs of
    /// X plus one horizontal crossing per intersection; each crossing is two
    /// flat end segments of length t0 and a middle part bounded through the
    /// round annulus of the same modulus. The broken-arc lower bound for the
    /// dual's length then caps the twist product.
    CertifiedInterval twist_budget(double t, int j) const { return twist_budget(t, j, opt_.t0); }

    CertifiedInterval twist_budget(double t, int j, double t0) const {
        require_t(t);
        const DualData& dd = duals_.at(j);
        const double len = base_.length(j);
        const double base_product = std::abs(dd.base_twist) * len;
        if (t == 0.0) return CertifiedInterval::around(base_product).clamp_below(0.0);
        const CertifiedInterval i(dd.crossings);
        CertifiedInterval dual_upper(dd.base_length);
        if (lam_.contains(j)) {
            const double c = lam_.weight_of(j);
            if (!(t0 < c * t)) throw GeometryError("segment decomposition invalid");
            dual_upper = dual_upper + i * (CertifiedInterval(2.0 * t0) + CertifiedInterval(2.0) * log_cot_term(t, c, t0));
        }
        const CertifiedInterval upper_len(pants_length(t, j).hi());
        const CertifiedInterval bound =
            (dual_upper - CertifiedInterval(2.0) * i * log(CertifiedInterval(1.0) / upper_len) -
             CertifiedInterval(dd.calibration.band_lo)) /
            i;
        return {0.0, std::max({0.0, bound.hi(), CertifiedInterval::up(base_product)})};
    }

    /// log cot(t0 pi / (2 c t)): length bound for the middle of one crossing.
    static CertifiedInterval log_cot_term(double t, double c, double t0) {
        const double x = t0 * std::numbers::pi / (2.0 * c * t);
        // log(cos x / sin x), evaluated without forming cot for tiny x.
        const double v = std::log(std::cos(x)) - std::log(std::sin(x));
        return CertifiedInterval::around(v).widened(4.0 * std::numeric_limits<double>::epsilon() * std::abs(v));
    }

    FamilySnapshot snapshot(double t) const {
        const int n = base_.topology().num_curves();
        FamilySnapshot s;
        s.t = t;
        for (int j = 0; j < n; ++j) {
            s.lengths.push_back(pants_length(t, j));
            s.twist_products.push_back(twist_budget(t, j));
            s.twist_params.push_back(t == 0.0 ? CertifiedInterval(base_.twist(j))
                                              : twist_param_from_product(s.twist_products[j], s.lengths[j]));
        }
        s.dist_to_base = dist_to_base(t);
        return s;
    }

    /// Broken-arc estimate on the grafted surface, capped by the projective length.
    CertifiedInterval catalog_length(double t, const CatalogCurve& c) const {
        const CertifiedInterval est = estimate_length(snapshot(t), c);
        const double cap = CertifiedInterval::up(c.base_length + t * lam_.intersection(base_.topology(), c.curve));
        if (est.lo() > cap) throw GeometryError("curve " + c.curve.id + ": estimate exceeds the projective length");
        return {est.lo(), std::min(est.hi(), cap)};
    }

private:
    struct DualData {
        int crossings = 0;
        double base_length = 0.0;
        double base_twist = 0.0;
        BrokenArcCalibration calibration;
    };

    static void require_t(double t) {
        if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("graft ray: t must be finite and >= 0");
    }
    double require_component(int j) const {
        const double c = lam_.weight_of(j);
        if (c == 0.0) throw std::invalid_argument("graft ray: curve is not a component of lambda");
        return c;
    }

    PantsSurface base_;
    WeightedMulticurve lam_;
    GraftOptions opt_;
    double epsilon0_ = 0.0;
    double theta0_ = 0.0;
    std::vector<DualData> duals_;
};

}  // namespace grafting_lab
