#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "klab/poisson.hpp"
#include "klab/rat.hpp"

using namespace klab;
using namespace klab::assembly;

namespace {

std::array<std::array<double, 4>, 4> identity4(double c = 1.0) {
    std::array<std::array<double, 4>, 4> q{};
    for (int i = 0; i < 4; ++i) q[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = c;
    return q;
}

// rational SPD form with eigenvalues in [1/4, 4]: c (I + A^T A) for small A
std::array<std::array<double, 4>, 4> random_spd(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-4, 4);
    Rat a[4][4];
    for (auto& row : a)
        for (auto& v : row) v = Rat(num(rng), 8);
    Rat q[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            q[i][j] = i == j ? Rat(1) : Rat(0);
            for (int k = 0; k < 4; ++k) q[i][j] += a[k][i] * a[k][j];
        }
    Rat scale(1 + static_cast<int>(rng() % 3), 2); // 1/2, 1, 3/2
    std::array<std::array<double, 4>, 4> out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = to_double(scale * q[i][j]);
    return out;
}

} // namespace

TEST_CASE("standard Gaussian reproduces the theta value") {
    LatticeGaussian psi(identity4());
    auto rep = poisson_check(psi);
    double theta = 0;
    for (int n = -40; n <= 40; ++n) theta += std::exp(-M_PI * n * n);
    double expected = std::pow(theta, 4.0);
    CHECK(std::abs(rep.lhs - expected) < 1e-10);
    CHECK(std::abs(rep.rhs - expected) < 1e-10);
    CHECK(rep.diff <= 1e-10);
}

TEST_CASE("scaled Gaussian: sides agree while terms differ") {
    LatticeGaussian psi(identity4(4.0));
    auto rep = poisson_check(psi);
    CHECK(rep.diff <= 1e-10 + rep.tail_bound);
    CHECK(std::abs(rep.first_term_lhs - 1.0) < 1e-15);
    CHECK(std::abs(rep.first_term_rhs - 1.0 / 16.0) < 1e-15);
    CHECK(std::abs(rep.first_term_lhs - rep.first_term_rhs) > 0.5);
}

TEST_CASE("ten random rational forms") {
    std::mt19937_64 rng(211);
    for (int i = 0; i < 10; ++i) {
        LatticeGaussian psi(random_spd(rng));
        auto rep = poisson_check(psi);
        CHECK(rep.diff <= 1e-10 + rep.tail_bound);
    }
}

TEST_CASE("rejects indefinite or asymmetric forms") {
    auto q = identity4();
    q[0][0] = -1.0;
    CHECK_THROWS(LatticeGaussian(q));
    auto q2 = identity4();
    q2[0][1] = 0.3;
    CHECK_THROWS(LatticeGaussian(q2)); // asymmetric without the mirror entry
}

TEST_CASE("twisted transform rule") {
    LatticeGaussian psi(identity4());
    double dev = twisted_rule_deviation(psi, 1.0, Mat2<double>::diagonal(2.0, 1.0),
                                        Mat2<double>::identity(), 25, 5);
    CHECK(dev <= 1e-10);
    std::mt19937_64 rng(223);
    LatticeGaussian psi2(random_spd(rng));
    Mat2<double> g1{1.0, 0.5, 0.0, 1.0}, g2{1.0, 0.0, -0.5, 2.0};
    CHECK(twisted_rule_deviation(psi2, 2.0, g1, g2, 25, 7) <= 1e-10);
}

TEST_CASE("twisted transform against the quadrature oracle") {
    LatticeGaussian psi(identity4());
    Vec4 x{0.3, -0.2, 0.1, 0.4};
    double dev = twisted_fourier_numeric_vs_rule(psi, 1.0, Mat2<double>::diagonal(2.0, 1.0),
                                                 Mat2<double>::identity(), x, 64);
    CHECK(dev < 1e-8);
}
