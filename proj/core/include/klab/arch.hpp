#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "klab/bump.hpp"
#include "klab/residue.hpp"

namespace klab {
namespace arch {

// Real dual data alpha = (B, y1, y2); the oscillation psi(<alpha, v>/t) uses
// psi_oo(x) = e^{-2 pi i x}.
struct ArchAlpha {
    Mat2<double> B{};
    double y1 = 0, y2 = 0;

    ArchAlpha scaled(double lambda) const {
        return {Mat2<double>{lambda * B.e11, lambda * B.e12, lambda * B.e21, lambda * B.e22},
                lambda * y1, lambda * y2};
    }
    double max_coef() const {
        double m = 0;
        for (double v : {B.e11, B.e12, B.e21, B.e22, y1, y2}) m = std::max(m, std::abs(v));
        return m;
    }
};

struct QuadratureSpec {
    int base_nodes = 16;      // per-axis floor
    int max_nodes = 96;       // refusal cap per axis
    int t_nodes = 16;
    int d_grid = 160;         // determinant-coupling grid
    int fourier_modes = 48;   // determinant-coupling mode cap
    double points_per_period = 8.0;
    double eps0 = 0.0;        // |t| < eps0 excision
    double refine = 1.4;      // second-pass node multiplier
    std::int64_t work_budget = -1; // optional cap on integrand evaluations

    QuadratureSpec refined() const {
        QuadratureSpec q = *this;
        q.base_nodes = static_cast<int>(q.base_nodes * refine) + 1;
        q.max_nodes = static_cast<int>(q.max_nodes * refine) + 1;
        q.t_nodes = q.t_nodes + 7;
        q.d_grid = static_cast<int>(q.d_grid * 1.5);
        return q;
    }
};

struct TransformResult {
    cplx value{0.0, 0.0};
    double error = 0;     // refinement delta + mode tails + excision estimate
    bool refused = false;
    std::string refusal_reason;
    bool support_vanishes = false;
    std::int64_t evals = 0;
};

// One weighted product-form term; transforms are linear in these.
struct TestFnTerm {
    double weight = 1.0;
    Profile1D e11, e12, e21, e22;
    std::optional<Profile1D> det_window;
};

// Expansion of a MatrixTestFn into product-form terms (radial averaging turns
// into a weighted sum over scaled profiles).
std::vector<TestFnTerm> expand_terms(const MatrixTestFn& f);

// The inner 6-fold integral at fixed t:
//   J(t) = int_{V(R)} V(|det T|)/det T^2 f1(T)
//          f2(-t1, (b det T - t1 t2)/t; t, t2) e^{-2 pi i <alpha,v>/t} dv.
TransformResult inner_integral(const MatrixTestFn& f1, const MatrixTestFn& f2,
                               const Profile1D& V, double b, const ArchAlpha& alpha,
                               double t, const QuadratureSpec& quad);

// Same value through plain nested tensor quadrature, no determinant-coupling
// factorization.  Slow; used as an independent cross-check.
cplx inner_integral_direct(const MatrixTestFn& f1, const MatrixTestFn& f2,
                           const Profile1D& V, double b, const ArchAlpha& alpha,
                           double t, int nodes_v, int nodes_w);

// I(f, (b, alpha)) = (1/zeta_norm) int J(t) dt/|t|^3, with two quadrature
// levels feeding the error estimate.
TransformResult transform_is(const MatrixTestFn& f1, const MatrixTestFn& f2,
                             const Profile1D& V, double b, const ArchAlpha& alpha,
                             const QuadratureSpec& quad, double zeta_norm = 1.0);

// Character insertion sign(t)^eps |t|^{i tau} |t|^s dt/|t| in the outer
// integral; (eps, tau, s) = (0, 0, -2) reproduces transform_is.
TransformResult transform_is_general(const MatrixTestFn& f1, const MatrixTestFn& f2,
                                     const Profile1D& V, double b, const ArchAlpha& alpha,
                                     int eps, double tau, cplx s,
                                     const QuadratureSpec& quad, double zeta_norm = 1.0);

struct DecayReport {
    std::vector<double> lambdas;
    std::vector<double> values;  // |inner integral| per rung
    std::vector<double> errors;
    std::vector<double> slopes;  // log2 ratios between consecutive rungs
    bool resolved = true;        // no rung refused
};

// Evaluates the inner integral at alpha = lambda alpha0 along the ladder and
// reports the successive log-log slopes.
DecayReport decay_probe(const MatrixTestFn& f1, const MatrixTestFn& f2, const Profile1D& V,
                        double b, const ArchAlpha& alpha0, const std::vector<double>& ladder,
                        double t0, const QuadratureSpec& quad);

// Interval of b for which the integrand can meet every support window; outside
// it the transform vanishes identically.
Interval b_support_window(const MatrixTestFn& f1, const MatrixTestFn& f2, const Profile1D& V);

// ---------------------------------------------------------------------------
// Partial Fourier transform in the (1,2)-entry.
// ---------------------------------------------------------------------------

// hat f(omega) = int f(x) e^{-2 pi i omega x} dx by panel quadrature.
cplx profile_fourier(const Profile1D& f, double omega, int nodes = 256);

struct PartialFourier {
    Profile1D e11, e12, e21, e22;
    int nodes = 256;

    // f3(a11, x3, a21, a22) = e11(a11) e21(a21) e22(a22) * hat e12(x3)
    cplx eval(double a11, double x3, double a21, double a22) const;
    cplx entry_hat(double omega) const { return profile_fourier(e12, omega, nodes); }
    // Inversion in the transformed slot, recovering e12(u).
    cplx invert_entry(double u, double omega_max, int omega_nodes = 512) const;
};

PartialFourier partial_fourier_f3(const MatrixTestFn& f2, int nodes = 256);

} // namespace arch
} // namespace klab
