#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "klab/mat2.hpp"

namespace klab {
namespace arch {

struct Interval {
    double lo = 0, hi = 0;
    bool is_empty() const { return !(lo < hi); }
    double width() const { return is_empty() ? 0.0 : hi - lo; }
    Interval intersect(const Interval& o) const { return {std::max(lo, o.lo), std::min(hi, o.hi)}; }
};

inline Interval interval_product(const Interval& a, const Interval& b) {
    double c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    double lo = c[0], hi = c[0];
    for (double v : c) { lo = std::min(lo, v); hi = std::max(hi, v); }
    return {lo, hi};
}

inline Interval interval_minus(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
inline Interval interval_plus(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

// One-dimensional test profile: the standard smooth bump template
// exp(-1/(1-u^2)) rescaled, a Gaussian window, or the constant 1.
// Bumps are exactly compactly supported; Gaussians carry an effective
// support used for quadrature windows.
struct Profile1D {
    enum class Kind { Bump, Gaussian, Flat };

    Kind kind = Kind::Bump;
    double center = 0;
    double radius = 1; // bump half-width, or the Gaussian width parameter
    double scale = 1;

    static Profile1D bump(double center, double radius, double scale = 1) {
        if (radius <= 0) throw std::invalid_argument("Profile1D: radius must be positive");
        return {Kind::Bump, center, radius, scale};
    }
    static Profile1D gaussian(double center, double width, double scale = 1) {
        if (width <= 0) throw std::invalid_argument("Profile1D: width must be positive");
        return {Kind::Gaussian, center, width, scale};
    }
    static Profile1D flat() { return {Kind::Flat, 0, 1, 1}; }

    bool compact() const { return kind == Kind::Bump; }
    bool is_flat() const { return kind == Kind::Flat; }

    // Quadrature window; exact support for bumps, 9-sigma window for Gaussians.
    Interval support() const {
        switch (kind) {
            case Kind::Bump: return {center - radius, center + radius};
            case Kind::Gaussian: return {center - 9 * radius, center + 9 * radius};
            default: return {-1e300, 1e300};
        }
    }

    double operator()(double x) const {
        switch (kind) {
            case Kind::Bump: {
                double u = (x - center) / radius;
                double w = 1.0 - u * u;
                return w <= 0 ? 0.0 : scale * std::exp(-1.0 / w);
            }
            case Kind::Gaussian: {
                double u = (x - center) / radius;
                return scale * std::exp(-M_PI * u * u);
            }
            default: return scale;
        }
    }

    double d1(double x) const {
        switch (kind) {
            case Kind::Bump: {
                double u = (x - center) / radius;
                double w = 1.0 - u * u;
                if (w <= 0) return 0.0;
                return scale * std::exp(-1.0 / w) * (-2.0 * u / (w * w)) / radius;
            }
            case Kind::Gaussian: {
                double u = (x - center) / radius;
                return scale * std::exp(-M_PI * u * u) * (-2.0 * M_PI * u) / radius;
            }
            default: return 0.0;
        }
    }

    double d2(double x) const {
        switch (kind) {
            case Kind::Bump: {
                double u = (x - center) / radius;
                double w = 1.0 - u * u;
                if (w <= 0) return 0.0;
                double g = -2.0 * u / (w * w);
                double gp = -2.0 * (1.0 + 3.0 * u * u) / (w * w * w);
                return scale * std::exp(-1.0 / w) * (g * g + gp) / (radius * radius);
            }
            case Kind::Gaussian: {
                double u = (x - center) / radius;
                double e = std::exp(-M_PI * u * u);
                return scale * e * (4.0 * M_PI * M_PI * u * u - 2.0 * M_PI) / (radius * radius);
            }
            default: return 0.0;
        }
    }
};

// Entry-wise matrix test function with an optional determinant window and an
// optional central-invariance flag (radial averaging over positive scalars).
struct MatrixTestFn {
    Profile1D e11, e12, e21, e22;
    std::optional<Profile1D> det_window;
    bool central_invariant = false;
    int radial_nodes = 32;

    double entry_product(double a11, double a12, double a21, double a22) const {
        double v = e11(a11) * e12(a12) * e21(a21) * e22(a22);
        return v;
    }

    // Full evaluation, including det window and central averaging when set.
    double operator()(const Mat2<double>& g) const;
};

} // namespace arch
} // namespace klab
