#pragma once

// Length of a curve from its broken arc: every crossing of a short pants
// curve gamma_j costs about 2 log(1/l_j) for the two seams leaving it, plus
// the stretch Tw * l_j spent running along gamma_j. The additive error is a
// constant depending on the curve and on the upper length bound M; it is
// measured here by sampling Fenchel-Nielsen coordinates.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "grafting_lab/curve.hpp"
#include "grafting_lab/interval.hpp"
#include "grafting_lab/surface.hpp"

namespace grafting_lab {

struct CalibrationOptions {
    double max_length = 4.0;   // M: every pants curve must be shorter
    double min_length = 1e-7;  // smallest sampled length (log-uniform)
    double max_twist = 3.0;
    int samples = 1000;
    std::uint64_t seed = 0x6272616b656e;
    double safety = 1.5;
};

/// The sampled errors exact - central lie in [error_lo, error_hi]. The band
/// used for estimates is that range with its half-width scaled by the safety
/// factor; `constant` is the symmetric bound safety * sup |exact - central|.
struct BrokenArcCalibration {
    double constant = 0.0;
    double error_lo = 0.0;
    double error_hi = 0.0;
    double band_lo = 0.0;
    double band_hi = 0.0;
    double max_length = 4.0;

    CertifiedInterval band() const { return {band_lo, band_hi}; }
};

struct BrokenArcEstimate {
    CertifiedInterval interval;   // central + calibrated band
    CertifiedInterval symmetric;  // central +- constant
    double central = 0.0;
    bool pants_curve = false;
};

/// Absolute twisting numbers Tw(alpha, gamma_j), zero where alpha misses gamma_j.
inline std::vector<double> absolute_twists(const PantsSurface& s, const CurveClass& alpha) {
    const std::vector<int> iv = intersection_vector(s.topology(), alpha);
    std::vector<double> tw(iv.size(), 0.0);
    for (std::size_t j = 0; j < iv.size(); ++j)
        if (iv[j] > 0) tw[j] = std::abs(twisting_number(s, alpha, static_cast<int>(j)));
    return tw;
}

/// Sum over pants curves of i(alpha, gamma_j) [2 log(1/l_j) + Tw_j l_j].
inline double broken_arc_central(const PantsSurface& s, const CurveClass& alpha) {
    const std::vector<int> iv = intersection_vector(s.topology(), alpha);
    const std::vector<double> tw = absolute_twists(s, alpha);
    double sum = 0.0;
    for (std::size_t j = 0; j < iv.size(); ++j) {
        if (iv[j] == 0) continue;
        const double l = s.length(static_cast<int>(j));
        sum += iv[j] * (2.0 * std::log(1.0 / l) + tw[j] * l);
    }
    return sum;
}

inline bool is_pants_curve_class(const PantsDecomposition& d, const CurveClass& alpha) {
    for (int v : intersection_vector(d, alpha))
        if (v != 0) return false;
    return true;
}

/// Random Fenchel-Nielsen coordinates: log-uniform lengths, uniform twists.
class FNSampler {
public:
    FNSampler(int curves, double min_length, double max_length, double max_twist, std::uint64_t seed)
        : n_(curves), rng_(seed), log_len_(std::log(min_length), std::log(max_length)),
          twist_(-max_twist, max_twist) {}

    FNCoords next() {
        FNCoords f;
        f.lengths.resize(n_);
        f.twists.resize(n_);
        for (int j = 0; j < n_; ++j) f.lengths[j] = std::exp(log_len_(rng_));
        for (int j = 0; j < n_; ++j) f.twists[j] = twist_(rng_);
        return f;
    }

private:
    int n_;
    std::mt19937_64 rng_;
    std::uniform_real_distribution<double> log_len_;
    std::uniform_real_distribution<double> twist_;
};

/// Measures the additive constant for alpha over sampled surfaces of the
/// given topology with all pants curves shorter than M.
inline BrokenArcCalibration calibrate_broken_arc(const PantsDecomposition& d, const CurveClass& alpha,
                                                 const CalibrationOptions& opt = {}) {
    if (!(opt.min_length > 0.0 && opt.min_length < opt.max_length))
        throw std::invalid_argument("calibration: need 0 < min_length < max_length");
    BrokenArcCalibration cal;
    cal.max_length = opt.max_length;
    if (is_pants_curve_class(d, alpha)) {
        // Only the length of the pants curve itself is left; it is below M.
        cal.error_hi = cal.band_hi = cal.constant = opt.max_length;
        return cal;
    }
    // Keep the largest sample strictly below M.
    FNSampler sampler(d.num_curves(), opt.min_length, std::nextafter(opt.max_length, 0.0), opt.max_twist, opt.seed);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int k = 0; k < opt.samples; ++k) {
        const PantsSurface s(d, sampler.next());
        const double err = geodesic_length(s, alpha) - broken_arc_central(s, alpha);
        lo = std::min(lo, err);
        hi = std::max(hi, err);
    }
    cal.error_lo = lo;
    cal.error_hi = hi;
    cal.constant = opt.safety * std::max(std::abs(lo), std::abs(hi));
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * opt.safety * (hi - lo);
    cal.band_lo = std::max(mid - half, -cal.constant);
    cal.band_hi = std::min(mid + half, cal.constant);
    return cal;
}

inline BrokenArcEstimate broken_arc_estimate(const PantsSurface& s, const CurveClass& alpha,
                                             const BrokenArcCalibration& cal) {
    for (int j = 0; j < s.topology().num_curves(); ++j)
        if (!(s.length(j) < cal.max_length)) throw GeometryError("thin-regime precondition violated");
    BrokenArcEstimate e;
    if (is_pants_curve_class(s.topology(), alpha)) {
        e.pants_curve = true;
        e.interval = e.symmetric = CertifiedInterval(0.0, cal.constant);
        return e;
    }
    e.central = broken_arc_central(s, alpha);
    e.interval = CertifiedInterval(e.central) + cal.band();
    e.symmetric = CertifiedInterval(e.central).widened(cal.constant);
    return e;
}

}  // namespace grafting_lab
