#pragma once

// Hyperbolic-plane primitives in the upper half-plane model.
//
// Isometries are unit-determinant 2x2 real matrices acting by Moebius
// transformations. A "frame" (point plus unit tangent) is represented by the
// isometry carrying the reference frame (the point i, tangent pointing up the
// imaginary axis) onto it; moving and turning inside a frame multiplies on the
// right by `advance(d)` and `turn(theta)`.

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace grafting_lab {

class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Mat2 {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    static constexpr Mat2 identity() { return {}; }

    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }

    /// Inverse of a unit-determinant matrix.
    Mat2 inverse() const { return {d, -b, -c, a}; }

    /// Rounding error of det(): the products ad and bc cancel, so their size
    /// and not the result sets the scale.
    double det_noise() const { return 8.0 * 2.220446049250313e-16 * (std::abs(a * d) + std::abs(b * c)); }

    /// Rescaled by 1/sqrt(det); keeps long products on SL(2,R). A drift that
    /// is within the rounding noise of det() itself carries no information and
    /// is left alone.
    Mat2 renormalized() const {
        const double dt = det();
        if (std::abs(dt - 1.0) <= det_noise()) return *this;
        if (!(dt > 0.0)) throw GeometryError("Mat2: non-positive determinant");
        const double s = 1.0 / std::sqrt(dt);
        return {a * s, b * s, c * s, d * s};
    }

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    Mat2& operator*=(const Mat2& y) { return *this = *this * y; }

    /// Image of a finite point of the real line; nullopt when it goes to infinity.
    std::optional<double> apply(double x) const {
        const double den = c * x + d;
        if (den == 0.0) return std::nullopt;
        return (a * x + b) / den;
    }
    /// Image of the ideal point at infinity; nullopt when it stays at infinity.
    std::optional<double> apply_infinity() const {
        if (c == 0.0) return std::nullopt;
        return a / c;
    }
};

/// Multiplies a chain of matrices, renormalizing whenever the determinant drifts.
class Mat2Accumulator {
public:
    void push(const Mat2& m) {
        acc_ = acc_ * m;
        if (std::abs(acc_.det() - 1.0) > 1e-12) acc_ = acc_.renormalized();
    }
    const Mat2& value() const { return acc_; }

private:
    Mat2 acc_{};
};

/// Move forward a signed distance `d` along the current heading.
inline Mat2 advance(double dist) {
    const double e = std::exp(0.5 * dist);
    return {e, 0.0, 0.0, 1.0 / e};
}

/// Rotate the heading counter-clockwise (to the left) by `theta`.
inline Mat2 turn(double theta) {
    const double cs = std::cos(0.5 * theta);
    const double sn = std::sin(0.5 * theta);
    return {cs, sn, -sn, cs};
}

inline Mat2 turn_left() {
    constexpr double h = std::numbers::sqrt2 / 2.0;
    return {h, h, -h, h};
}

inline Mat2 turn_around() { return {0.0, 1.0, -1.0, 0.0}; }

/// Translation length 2*acosh(|tr|/2) of a hyperbolic (or parabolic) element.
inline double trace_length(const Mat2& m) {
    const double t = std::abs(m.trace());
    // Parabolic elements produced by rounding land a few ulps below 2.
    if (t < 2.0) {
        if (t > 2.0 - 1e-12) return 0.0;
        throw GeometryError("non-hyperbolic holonomy (|tr| = " + std::to_string(t) + ")");
    }
    return 2.0 * std::acosh(0.5 * t);
}

/// Length of the seam between boundaries of half-lengths a and b in a pair of
/// pants whose third boundary has half-length c.
inline double hexagon_side(double a, double b, double c) {
    if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0))
        throw GeometryError("hexagon_side: half-lengths must be positive");
    return std::acosh((std::cosh(a) * std::cosh(b) + std::cosh(c)) / (std::sinh(a) * std::sinh(b)));
}

/// Common perpendicular from one hexagon side to its opposite side.
///
/// The right-angled hexagon has alternating half-boundary sides (h_self, h_next,
/// h_prev) and seams; the perpendicular leaves the `h_self` side and meets the
/// seam joining the other two boundaries. Returns the perpendicular's length
/// and the distance of its foot from the corner shared with the seam towards
/// the `h_prev` boundary.
struct HexagonPerpendicular {
    double length;
    double foot;
};

inline HexagonPerpendicular hexagon_perpendicular(double h_self, double h_next, double h_prev) {
    if (!(h_self > 0.0) || !(h_next > 0.0) || !(h_prev > 0.0))
        throw GeometryError("hexagon_perpendicular: half-lengths must be positive");
    // Right-angled pentagon on the h_next side: cosh(w) = sinh(seam) sinh(h_next).
    const double seam_next = hexagon_side(h_self, h_next, h_prev);
    const double w = std::acosh(std::sinh(seam_next) * std::sinh(h_next));
    // Pentagon on the h_prev side: sinh(foot) sinh(w) = cosh(h_prev).
    const double foot = std::asinh(std::cosh(h_prev) / std::sinh(w));
    return {w, foot};
}

// ---------------------------------------------------------------------------
// Annuli

enum class AnnulusKind { Round, Cylinder };

/// Either a round annulus {r < |z| < 1} or a flat right cylinder.
///
/// The round annulus keeps log(1/r) rather than r so that very thick annuli
/// (modulus in the hundreds) do not underflow.
class AnnulusModel {
public:
    static AnnulusModel round(double r) {
        if (!(r > 0.0 && r < 1.0)) throw GeometryError("AnnulusModel: inner radius must lie in (0,1)");
        return round_from_log_inverse_radius(-std::log(r));
    }
    static AnnulusModel round_from_log_inverse_radius(double log_inv_r) {
        if (!(log_inv_r > 0.0)) throw GeometryError("AnnulusModel: log(1/r) must be positive");
        AnnulusModel m;
        m.kind_ = AnnulusKind::Round;
        m.log_inv_r_ = log_inv_r;
        return m;
    }
    /// Round annulus with a prescribed modulus.
    static AnnulusModel round_with_modulus(double modulus) {
        return round_from_log_inverse_radius(2.0 * std::numbers::pi * modulus);
    }
    static AnnulusModel cylinder(double height, double circumference) {
        if (!(height > 0.0) || !(circumference > 0.0))
            throw GeometryError("AnnulusModel: cylinder height and circumference must be positive");
        AnnulusModel m;
        m.kind_ = AnnulusKind::Cylinder;
        m.height_ = height;
        m.circumference_ = circumference;
        return m;
    }

    AnnulusKind kind() const { return kind_; }
    double inner_radius() const { return std::exp(-log_inv_r_); }

    double modulus() const {
        if (kind_ == AnnulusKind::Round) return log_inv_r_ / (2.0 * std::numbers::pi);
        return height_ / circumference_;
    }

private:
    AnnulusKind kind_ = AnnulusKind::Round;
    double log_inv_r_ = 1.0;
    double height_ = 0.0;
    double circumference_ = 0.0;
};

/// Hyperbolic length of the core geodesic: pi / modulus.
inline double annulus_core_length(const AnnulusModel& a) { return std::numbers::pi / a.modulus(); }

// ---------------------------------------------------------------------------
// Ideal points and projections

/// An ideal point of the upper half-plane: a real number or infinity.
struct IdealPoint {
    double x = 0.0;
    bool at_infinity = false;

    static IdealPoint infinity() { return {0.0, true}; }
    friend bool operator==(const IdealPoint&, const IdealPoint&) = default;
};

/// Signed arclength coordinate of the orthogonal projection of the ideal point
/// `xi` onto the oriented geodesic from `p` to `q`. The origin is the summit
/// of a semicircular axis, or height 1 on a vertical one.
inline double boundary_projection(IdealPoint p, IdealPoint q, IdealPoint xi) {
    if (p == q) throw GeometryError("boundary_projection: degenerate axis");
    if (xi == p || xi == q) throw GeometryError("projection undefined");
    if (xi.at_infinity) {
        if (p.at_infinity || q.at_infinity) throw GeometryError("projection undefined");
        // Limit of log|(x-p)/(q-x)| as x -> infinity.
        return 0.0;
    }
    if (p.at_infinity) return -std::log(std::abs(q.x - xi.x));
    if (q.at_infinity) return std::log(std::abs(xi.x - p.x));
    return std::log(std::abs((xi.x - p.x) / (q.x - xi.x)));
}

inline double boundary_projection(double p, double q, double xi) {
    return boundary_projection(IdealPoint{p}, IdealPoint{q}, IdealPoint{xi});
}

/// Attracting and repelling fixed points of a hyperbolic element.
struct Axis {
    IdealPoint repelling;
    IdealPoint attracting;
};

inline Axis axis_of(const Mat2& m) {
    const double tr = m.trace();
    if (std::abs(tr) <= 2.0) throw GeometryError("axis_of: element is not hyperbolic");
    // Work with the representative of positive trace so that the larger
    // eigenvalue belongs to the attracting direction.
    const double s = tr > 0.0 ? 1.0 : -1.0;
    const double a = s * m.a, b = s * m.b, c = s * m.c, d = s * m.d;
    if (c == 0.0) {
        // Fixes infinity; the other fixed point solves (a-d) x = -b.
        const IdealPoint finite{b / (d - a)};
        if (a > d) return {finite, IdealPoint::infinity()};
        return {IdealPoint::infinity(), finite};
    }
    // c x^2 + (d - a) x - b = 0, solved without cancellation.
    const double disc = std::sqrt((a + d) * (a + d) - 4.0);
    const double bq = d - a;
    const double q = -0.5 * (bq + std::copysign(disc, bq));
    double x1 = q / c;
    double x2 = q != 0.0 ? -b / q : (a - d) / (2.0 * c);
    // The derivative at a fixed point x is 1/(cx+d)^2; attracting when < 1.
    const auto derivative = [&](double x) { const double t = c * x + d; return 1.0 / (t * t); };
    if (derivative(x1) < derivative(x2)) return {IdealPoint{x2}, IdealPoint{x1}};
    return {IdealPoint{x1}, IdealPoint{x2}};
}

/// Hyperbolic distance between two points of the upper half-plane.
inline double upper_half_plane_distance(double x1, double y1, double x2, double y2) {
    const double dx = x1 - x2;
    const double dy = y1 - y2;
    return std::acosh(1.0 + (dx * dx + dy * dy) / (2.0 * y1 * y2));
}

}  // namespace grafting_lab
