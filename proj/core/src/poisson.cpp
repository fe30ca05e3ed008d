#include "klab/poisson.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "klab/quadrature.hpp"

namespace klab {
namespace assembly {

namespace {

using Mat4 = std::array<std::array<double, 4>, 4>;

Vec4 apply(const Mat4& m, const Vec4& v) {
    Vec4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[static_cast<std::size_t>(i)] += m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * v[static_cast<std::size_t>(j)];
    return r;
}

Vec4 swap_mid(const Vec4& v) { return {v[0], v[2], v[1], v[3]}; }

// Determinant and inverse by Gaussian elimination with partial pivoting.
double invert(const Mat4& m, Mat4& inv) {
    double a[4][8];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            a[i][j] = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            a[i][j + 4] = i == j ? 1.0 : 0.0;
        }
    double det = 1.0;
    for (int c = 0; c < 4; ++c) {
        int piv = c;
        for (int r = c + 1; r < 4; ++r)
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        if (a[piv][c] == 0) throw std::invalid_argument("LatticeGaussian: singular form");
        if (piv != c) {
            for (int j = 0; j < 8; ++j) std::swap(a[piv][j], a[c][j]);
            det = -det;
        }
        det *= a[c][c];
        double d = a[c][c];
        for (int j = 0; j < 8; ++j) a[c][j] /= d;
        for (int r = 0; r < 4; ++r) {
            if (r == c) continue;
            double f = a[r][c];
            for (int j = 0; j < 8; ++j) a[r][j] -= f * a[c][j];
        }
    }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = a[i][j + 4];
    return det;
}

double row_norm(const Mat4& m) {
    double best = 0;
    for (int i = 0; i < 4; ++i) {
        double s = 0;
        for (int j = 0; j < 4; ++j) s += std::abs(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        best = std::max(best, s);
    }
    return best;
}

// Matrix of x |-> g1 x g2 on coordinates (x11, x12, x21, x22).
Mat4 kron_action(const Mat2<double>& g1, const Mat2<double>& g2) {
    auto idx = [](int i, int j) { return i * 2 + j; };
    Mat4 m{};
    double G1[2][2] = {{g1.e11, g1.e12}, {g1.e21, g1.e22}};
    double G2[2][2] = {{g2.e11, g2.e12}, {g2.e21, g2.e22}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    m[static_cast<std::size_t>(idx(i, j))][static_cast<std::size_t>(idx(k, l))] = G1[i][k] * G2[l][j];
    return m;
}

} // namespace

LatticeGaussian::LatticeGaussian(const Mat4& q) : q_(q) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (std::abs(q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                         q[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]) > 1e-12)
                throw std::invalid_argument("LatticeGaussian: form must be symmetric");
    det_ = invert(q_, qinv_);
    if (det_ <= 0) throw std::invalid_argument("LatticeGaussian: form must be positive definite");
    // Cholesky check for positivity, and crude eigen bounds for the tails.
    Mat4 l{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = q_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            for (int k = 0; k < j; ++k) s -= l[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] * l[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
            if (i == j) {
                if (s <= 0) throw std::invalid_argument("LatticeGaussian: form must be positive definite");
                l[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::sqrt(s);
            } else {
                l[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s / l[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)];
            }
        }
    }
    lambda_min_ = 1.0 / row_norm(qinv_);
    lambda_min_dual_ = 1.0 / row_norm(q_); // lambda_min(Q^{-1}) >= 1/||Q||
}

double LatticeGaussian::quadratic_form(const Vec4& a) const {
    Vec4 qa = apply(q_, a);
    double s = 0;
    for (int i = 0; i < 4; ++i) s += a[static_cast<std::size_t>(i)] * qa[static_cast<std::size_t>(i)];
    return s;
}

double LatticeGaussian::operator()(const Vec4& a) const {
    return std::exp(-M_PI * quadratic_form(a));
}

double LatticeGaussian::fourier(const Vec4& x) const {
    Vec4 jx = swap_mid(x);
    Vec4 qijx = apply(qinv_, jx);
    double s = 0;
    for (int i = 0; i < 4; ++i) s += jx[static_cast<std::size_t>(i)] * qijx[static_cast<std::size_t>(i)];
    return std::exp(-M_PI * s) / std::sqrt(det_);
}

namespace {

double lattice_tail(double lambda, int radius) {
    // sum over max-norm shells r > radius of shell size times exp(-pi lambda r^2)
    double tail = 0;
    for (int r = radius + 1; r < radius + 400; ++r) {
        double shell = std::pow(2.0 * r + 1.0, 4) - std::pow(2.0 * r - 1.0, 4);
        double term = shell * std::exp(-M_PI * lambda * static_cast<double>(r) * r);
        tail += term;
        if (term < 1e-300) break;
    }
    return tail;
}

double lattice_sum(const LatticeGaussian& psi, bool dual, int radius) {
    double s = 0;
    for (int a = -radius; a <= radius; ++a)
        for (int b = -radius; b <= radius; ++b)
            for (int c = -radius; c <= radius; ++c)
                for (int d = -radius; d <= radius; ++d) {
                    Vec4 v{static_cast<double>(a), static_cast<double>(b), static_cast<double>(c),
                           static_cast<double>(d)};
                    s += dual ? psi.fourier(v) : psi(v);
                }
    return s;
}

} // namespace

PoissonReport poisson_check(const LatticeGaussian& psi, double target_tail) {
    PoissonReport rep;
    int radius = 3;
    double lam = std::min(psi.lambda_min(), psi.lambda_min_dual());
    while (radius < 60 && lattice_tail(lam, radius) * (1.0 + 1.0 / std::sqrt(psi.det_q())) > target_tail)
        ++radius;
    rep.radius = radius;
    rep.tail_bound = lattice_tail(psi.lambda_min(), radius) +
                     lattice_tail(psi.lambda_min_dual(), radius) / std::sqrt(psi.det_q());
    rep.lhs = lattice_sum(psi, false, radius);
    rep.rhs = lattice_sum(psi, true, radius);
    rep.diff = std::abs(rep.lhs - rep.rhs);
    rep.first_term_lhs = psi(Vec4{0, 0, 0, 0});
    rep.first_term_rhs = psi.fourier(Vec4{0, 0, 0, 0});
    return rep;
}

double twisted_rule_deviation(const LatticeGaussian& psi, double a, const Mat2<double>& g1,
                              const Mat2<double>& g2, int samples, std::uint64_t seed) {
    if (a == 0 || g1.det() == 0 || g2.det() == 0)
        throw std::invalid_argument("twisted_rule_deviation: twist must be invertible");
    Mat4 m = kron_action(g1, g2);
    // Phi(x) = Psi(a g1 x g2) is the Gaussian with form a^2 M^T Q M.
    Mat4 qp{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0;
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    s += m[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] *
                         psi.q()[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] *
                         m[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)];
            qp[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = a * a * s;
        }
    LatticeGaussian phi(qp);

    Mat2<double> g1i = g1.inverse(), g2i = g2.inverse();
    double constant = std::pow(std::abs(a), -4.0) *
                      std::pow(std::abs(g1.det() * g2.det()), -2.0);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.5, 1.5);
    double worst = 0;
    for (int i = 0; i < samples; ++i) {
        Vec4 x{uni(rng), uni(rng), uni(rng), uni(rng)};
        // a^{-1} g2^{-1} X g1^{-1}
        Mat2<double> xm{x[0], x[1], x[2], x[3]};
        Mat2<double> y = g2i * xm * g1i;
        Vec4 yv{y.e11 / a, y.e12 / a, y.e21 / a, y.e22 / a};
        double lhs = phi.fourier(x);
        double rhs = constant * psi.fourier(yv);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

double twisted_fourier_numeric_vs_rule(const LatticeGaussian& psi, double a,
                                       const Mat2<double>& g1, const Mat2<double>& g2,
                                       const Vec4& x, int nodes) {
    Mat4 m = kron_action(g1, g2);
    // crude support radius for the twisted Gaussian
    Mat4 qp{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0;
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    s += m[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] *
                         psi.q()[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] *
                         m[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)];
            qp[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = a * a * s;
        }
    LatticeGaussian phi(qp);
    double radius = 1.0 / std::sqrt(phi.lambda_min()) * 3.2;

    std::vector<double> xs, ws;
    arch::gauss_legendre_on(-radius, radius, nodes, xs, ws);
    cplx acc{0.0, 0.0};
    for (std::size_t i0 = 0; i0 < xs.size(); ++i0)
        for (std::size_t i1 = 0; i1 < xs.size(); ++i1)
            for (std::size_t i2 = 0; i2 < xs.size(); ++i2)
                for (std::size_t i3 = 0; i3 < xs.size(); ++i3) {
                    Vec4 y{xs[i0], xs[i1], xs[i2], xs[i3]};
                    double val = phi(y);
                    if (val < 1e-18) continue;
                    // tr(XY) with Y in matrix coordinates
                    double tr = x[0] * y[0] + x[1] * y[2] + x[2] * y[1] + x[3] * y[3];
                    double arg = -kTau * tr;
                    acc += val * ws[i0] * ws[i1] * ws[i2] * ws[i3] * cplx{std::cos(arg), std::sin(arg)};
                }
    Mat2<double> xm{x[0], x[1], x[2], x[3]};
    Mat2<double> y = g2.inverse() * xm * g1.inverse();
    double rhs = std::pow(std::abs(a), -4.0) * std::pow(std::abs(g1.det() * g2.det()), -2.0) *
                 psi.fourier(Vec4{y.e11 / a, y.e12 / a, y.e21 / a, y.e22 / a});
    return std::abs(acc - cplx{rhs, 0.0});
}

} // namespace assembly
} // namespace klab
