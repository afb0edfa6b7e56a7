#pragma once

// Order-level model of the Teichmueller geodesic ray determined by a
// Jenkins-Strebel differential whose cylinders have core curves gamma_i.
//
// Stretching by K = t + 1 multiplies every cylinder modulus M_i by t + 1, so
// the core of the i-th cylinder has hyperbolic length about pi / ((t+1) M_i).
// The rest of the surface converges to the surface with the gamma_i pinched.
// Statements that hold only up to bounded factors carry an order constant
// kappa and are returned as intervals.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "grafting_lab/broken_arc.hpp"
#include "grafting_lab/family.hpp"
#include "grafting_lab/interval.hpp"
#include "grafting_lab/surface.hpp"

namespace grafting_lab {

/// Beltrami norm k of the ray at time t.
inline double teichmuller_k(double t) { return t / (t + 2.0); }

/// Dilatation (1 + k) / (1 - k) of a Beltrami norm k < 1.
inline double dilatation_from_k(double k) {
    if (!(k >= 0.0 && k < 1.0)) throw std::invalid_argument("dilatation: k must lie in [0, 1)");
    return (1.0 + k) / (1.0 - k);
}

/// Dilatation at time t. With k = t / (t + 2) the quotient simplifies to
/// t + 1, which is returned directly: forming 1 - k loses all precision for
/// large t.
inline double dilatation_of_t(double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("dilatation: t must be >= 0");
    return t + 1.0;
}

inline double teichmuller_distance_of_t(double t) { return 0.5 * std::log1p(t); }

struct TeichOptions {
    double k0 = 1.0;               // modulus normalization M_i = c_i k0 / l_X(gamma_i)
    double kappa = 4.0;            // order constant
    double pinch_length = 1e-6;    // stands in for the cusps of the limit surface
};

struct ThickReport {
    bool twist_products_bounded = true;
    CertifiedInterval twist_product_bound;          // [0, B_T]
    std::vector<CertifiedInterval> thick_lengths;   // per catalog curve; entire() when it crosses lambda
    std::vector<bool> disjoint;
};

class TeichRay {
public:
    TeichRay(PantsSurface base, WeightedMulticurve lam, TeichOptions opt = {})
        : base_(std::move(base)), lam_(std::move(lam)), opt_(opt) {
        if (!(opt_.k0 > 0.0)) throw std::invalid_argument("teich ray: K0 must be positive");
        if (!(opt_.kappa >= 1.0)) throw std::invalid_argument("teich ray: kappa must be >= 1");
        if (!(opt_.pinch_length > 0.0)) throw std::invalid_argument("teich ray: pinch length must be positive");
        const PantsDecomposition& d = base_.topology();
        for (int j : lam_.curves)
            if (j < 0 || j >= d.num_curves()) throw std::invalid_argument("teich ray: lambda component out of range");
        FNCoords pinched = base_.coords();
        for (int j : lam_.curves) pinched.lengths[j] = opt_.pinch_length;
        limit_ = PantsSurface(d, pinched);
        double bt = 0.0;
        for (int j = 0; j < d.num_curves(); ++j) {
            const double tw = std::abs(twisting_number(base_, dual_curve(d, j), j));
            bt = std::max(bt, (tw + 1.0) * base_.length(j));
        }
        b_t_ = opt_.kappa * bt;
    }

    const PantsSurface& base() const { return base_; }
    const WeightedMulticurve& lambda() const { return lam_; }
    const TeichOptions& options() const { return opt_; }
    double twist_product_bound() const { return b_t_; }

    /// Length bound M under which broken-arc estimates on the model's thick
    /// part apply: the order constant widens thick lengths past the base ones.
    double calibration_length(double minimum = 4.0) const {
        double m = minimum;
        for (int j = 0; j < base_.topology().num_curves(); ++j)
            if (!lam_.contains(j))
                m = std::max(m, 1.25 * thick_interval(limit_.length(j), base_.length(j)).hi());
        return m;
    }

    double base_modulus(int j) const {
        const double c = lam_.weight_of(j);
        if (c == 0.0) throw std::invalid_argument("teich ray: curve is not a component of lambda");
        return c * opt_.k0 / base_.length(j);
    }
    double modulus(double t, int j) const { return dilatation_of_t(t) * base_modulus(j); }
    double model_core_length(double t, int j) const {
        return annulus_core_length(AnnulusModel::round_with_modulus(modulus(t, j)));
    }

    /// Length in the pinched limit surface.
    double limit_length(const CurveClass& c) const { return geodesic_length(limit_, c); }
    double limit_pants_length(int j) const { return limit_.length(j); }

    CertifiedInterval thick_interval(double limit_len, double base_len) const {
        const CertifiedInterval k(opt_.kappa), l(limit_len);
        return CertifiedInterval((l / k).lo(), (l * k).hi()).hull_with(CertifiedInterval(base_len));
    }

    ThickReport model_twist_and_thick(double t, const std::vector<CurveClass>& catalog) const {
        require_t(t);
        ThickReport r;
        r.twist_product_bound = {0.0, b_t_};
        for (const CurveClass& c : catalog) {
            const bool disjoint = lam_.intersection(base_.topology(), c) == 0.0;
            r.disjoint.push_back(disjoint);
            r.thick_lengths.push_back(disjoint ? thick_interval(limit_length(c), geodesic_length(base_, c))
                                               : CertifiedInterval::entire());
        }
        return r;
    }

    FamilySnapshot snapshot(double t) const {
        require_t(t);
        const int n = base_.topology().num_curves();
        FamilySnapshot s;
        s.t = t;
        for (int j = 0; j < n; ++j) {
            if (lam_.contains(j)) {
                const CertifiedInterval core = CertifiedInterval::around(model_core_length(t, j));
                const CertifiedInterval k(opt_.kappa);
                s.lengths.push_back({(core / k).lo(), (core * k).hi()});
            } else {
                s.lengths.push_back(thick_interval(limit_.length(j), base_.length(j)));
            }
            s.twist_products.push_back({0.0, b_t_});
            s.twist_params.push_back(twist_param_from_product(s.twist_products[j], s.lengths[j]));
        }
        s.dist_to_base = CertifiedInterval::around(teichmuller_distance_of_t(t)).clamp_below(0.0);
        return s;
    }

private:
    static void require_t(double t) {
        if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("teich ray: t must be finite and >= 0");
    }

    PantsSurface base_;
    WeightedMulticurve lam_;
    TeichOptions opt_;
    PantsSurface limit_{base_};
    double b_t_ = 0.0;
};

}  // namespace grafting_lab
