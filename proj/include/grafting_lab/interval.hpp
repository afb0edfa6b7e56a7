#pragma once

// Outward-rounded interval arithmetic on doubles.
//
// Every operation evaluates the endpoints in round-to-nearest and then steps
// the lower endpoint one ulp down and the upper endpoint one ulp up. libm's
// exp/log/cosh/... are accurate to within one ulp on glibc, so one step of
// widening is enough to keep the true value enclosed.

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace grafting_lab {

class CertifiedInterval {
public:
    constexpr CertifiedInterval() = default;
    constexpr CertifiedInterval(double point) : lo_(point), hi_(point) {}
    CertifiedInterval(double lo, double hi) : lo_(lo), hi_(hi) {
        if (!(lo <= hi)) throw std::invalid_argument("CertifiedInterval: lo > hi");
    }

    /// Smallest representable interval that contains `x` after a rounded op.
    static CertifiedInterval around(double x) { return {down(x), up(x)}; }
    static CertifiedInterval hull(double a, double b) {
        return {std::min(a, b), std::max(a, b)};
    }
    static CertifiedInterval entire() {
        return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    }

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double width() const { return hi_ - lo_; }
    double mid() const { return 0.5 * lo_ + 0.5 * hi_; }
    bool contains(double x) const { return lo_ <= x && x <= hi_; }
    bool contains(const CertifiedInterval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    bool overlaps(const CertifiedInterval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }
    bool is_point() const { return lo_ == hi_; }

    /// Symmetric widening by a non-negative amount.
    CertifiedInterval widened(double amount) const {
        return {down(lo_ - amount), up(hi_ + amount)};
    }
    CertifiedInterval hull_with(const CertifiedInterval& o) const {
        return {std::min(lo_, o.lo_), std::max(hi_, o.hi_)};
    }
    CertifiedInterval intersect(const CertifiedInterval& o) const {
        return {std::max(lo_, o.lo_), std::min(hi_, o.hi_)};
    }
    CertifiedInterval clamp_below(double floor) const {
        return {std::max(lo_, floor), std::max(hi_, floor)};
    }

    static double down(double x) {
        if (std::isinf(x) || std::isnan(x)) return x;
        return std::nextafter(x, -std::numeric_limits<double>::infinity());
    }
    static double up(double x) {
        if (std::isinf(x) || std::isnan(x)) return x;
        return std::nextafter(x, std::numeric_limits<double>::infinity());
    }

    friend CertifiedInterval operator+(const CertifiedInterval& a, const CertifiedInterval& b) {
        return {down(a.lo_ + b.lo_), up(a.hi_ + b.hi_)};
    }
    friend CertifiedInterval operator-(const CertifiedInterval& a, const CertifiedInterval& b) {
        return {down(a.lo_ - b.hi_), up(a.hi_ - b.lo_)};
    }
    friend CertifiedInterval operator-(const CertifiedInterval& a) { return {-a.hi_, -a.lo_}; }
    friend CertifiedInterval operator*(const CertifiedInterval& a, const CertifiedInterval& b) {
        const double p[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
        return {down(*std::min_element(p, p + 4)), up(*std::max_element(p, p + 4))};
    }
    friend CertifiedInterval operator/(const CertifiedInterval& a, const CertifiedInterval& b) {
        if (b.lo_ <= 0.0 && b.hi_ >= 0.0) throw std::domain_error("CertifiedInterval: division by interval containing 0");
        const double p[4] = {a.lo_ / b.lo_, a.lo_ / b.hi_, a.hi_ / b.lo_, a.hi_ / b.hi_};
        return {down(*std::min_element(p, p + 4)), up(*std::max_element(p, p + 4))};
    }
    CertifiedInterval& operator+=(const CertifiedInterval& o) { return *this = *this + o; }
    CertifiedInterval& operator-=(const CertifiedInterval& o) { return *this = *this - o; }
    CertifiedInterval& operator*=(const CertifiedInterval& o) { return *this = *this * o; }

    friend bool operator==(const CertifiedInterval&, const CertifiedInterval&) = default;

    friend std::ostream& operator<<(std::ostream& os, const CertifiedInterval& x) {
        return os << '[' << x.lo_ << ", " << x.hi_ << ']';
    }

private:
    double lo_ = 0.0;
    double hi_ = 0.0;
};

// Monotone elementary functions. Increasing ones map endpoints directly.

inline CertifiedInterval exp(const CertifiedInterval& x) {
    return {std::max(0.0, CertifiedInterval::down(std::exp(x.lo()))), CertifiedInterval::up(std::exp(x.hi()))};
}

inline CertifiedInterval log(const CertifiedInterval& x) {
    if (x.lo() <= 0.0) throw std::domain_error("CertifiedInterval: log of non-positive interval");
    return {CertifiedInterval::down(std::log(x.lo())), CertifiedInterval::up(std::log(x.hi()))};
}

inline CertifiedInterval sqrt(const CertifiedInterval& x) {
    if (x.lo() < 0.0) throw std::domain_error("CertifiedInterval: sqrt of negative interval");
    return {std::max(0.0, CertifiedInterval::down(std::sqrt(x.lo()))), CertifiedInterval::up(std::sqrt(x.hi()))};
}

inline CertifiedInterval sqr(const CertifiedInterval& x) {
    const double a = x.lo() * x.lo();
    const double b = x.hi() * x.hi();
    if (x.lo() <= 0.0 && x.hi() >= 0.0) return {0.0, CertifiedInterval::up(std::max(a, b))};
    return {CertifiedInterval::down(std::min(a, b)), CertifiedInterval::up(std::max(a, b))};
}

inline CertifiedInterval acosh(const CertifiedInterval& x) {
    if (x.lo() < 1.0) throw std::domain_error("CertifiedInterval: acosh below 1");
    return {std::max(0.0, CertifiedInterval::down(std::acosh(x.lo()))), CertifiedInterval::up(std::acosh(x.hi()))};
}

inline CertifiedInterval abs(const CertifiedInterval& x) {
    if (x.lo() >= 0.0) return x;
    if (x.hi() <= 0.0) return -x;
    return {0.0, std::max(-x.lo(), x.hi())};
}

inline CertifiedInterval max(const CertifiedInterval& a, const CertifiedInterval& b) {
    return {std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

}  // namespace grafting_lab
