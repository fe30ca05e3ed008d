#pragma once

#include <array>
#include <cstdint>

#include "klab/mat2.hpp"
#include "klab/residue.hpp"

namespace klab {
namespace assembly {

using Vec4 = std::array<double, 4>;

// Gaussian Psi(A) = exp(-pi A^T Q A) on gl2(R) in coordinates
// (a11, a12, a21, a22), Q symmetric positive definite.  The Fourier transform
// against psi(tr(XY)) swaps the middle coordinates:
//   hat Psi(X) = det(Q)^{-1/2} exp(-pi (JX)^T Q^{-1} (JX)),  J = (0<->0, 1<->2).
class LatticeGaussian {
public:
    explicit LatticeGaussian(const std::array<std::array<double, 4>, 4>& q);

    double operator()(const Vec4& a) const;
    double fourier(const Vec4& x) const;

    double quadratic_form(const Vec4& a) const;
    double det_q() const { return det_; }
    double lambda_min() const { return lambda_min_; }
    double lambda_min_dual() const { return lambda_min_dual_; }
    const std::array<std::array<double, 4>, 4>& q() const { return q_; }
    const std::array<std::array<double, 4>, 4>& q_inv() const { return qinv_; }

private:
    std::array<std::array<double, 4>, 4> q_{}, qinv_{};
    double det_ = 1;
    double lambda_min_ = 1, lambda_min_dual_ = 1;
};

struct PoissonReport {
    double lhs = 0, rhs = 0;
    double diff = 0;
    double tail_bound = 0; // truncation bound covering both lattice sums
    int radius = 0;
    double first_term_lhs = 0, first_term_rhs = 0; // A = 0 values
};

// Both sides of sum_{B in gl2(Z)} Psi(B) = sum hat Psi(B), truncated with a
// Gaussian tail bound.
PoissonReport poisson_check(const LatticeGaussian& psi, double target_tail = 1e-12);

// Fourier transform rule for x |-> Psi(a g1 x g2): the transform must equal
// |a|^{-4} |det g1 g2|^{-2} hat Psi(a^{-1} g2^{-1} x g1^{-1}).  Returns the
// largest deviation over sample points, comparing the closed Gaussian form of
// the twisted function against the rule.
double twisted_rule_deviation(const LatticeGaussian& psi, double a, const Mat2<double>& g1,
                              const Mat2<double>& g2, int samples, std::uint64_t seed);

// Direct numerical Fourier integral of the twisted function at one point; an
// independent quadrature oracle for the rule above.
double twisted_fourier_numeric_vs_rule(const LatticeGaussian& psi, double a,
                                       const Mat2<double>& g1, const Mat2<double>& g2,
                                       const Vec4& x, int nodes = 72);

} // namespace assembly
} // namespace klab
