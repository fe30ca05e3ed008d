#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "klab/geometry.hpp"
#include "test_util.hpp"

using namespace klab;
using namespace klab_test;

namespace {

// Exact central difference; agrees with the true partial for quadratics.
Rat central_diff(const Rat& b, PhasePoint<Rat> v, int axis, const Rat& h) {
    auto bump = [&](PhasePoint<Rat> w, const Rat& dh) {
        switch (axis) {
            case 0: w.mat.e11 += dh; break;
            case 1: w.mat.e12 += dh; break;
            case 2: w.mat.e21 += dh; break;
            case 3: w.mat.e22 += dh; break;
            case 4: w.s1 += dh; break;
            default: w.s2 += dh; break;
        }
        return w;
    };
    return (phase_P(b, bump(v, h)) - phase_P(b, bump(v, -h))) / (2 * h);
}

Rat det6(const std::array<std::array<Rat, 6>, 6>& m) {
    // permutation expansion is fine at this size
    std::array<int, 6> idx{0, 1, 2, 3, 4, 5};
    Rat det = 0;
    do {
        int sign = 1;
        for (int i = 0; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j)
                if (idx[static_cast<std::size_t>(i)] > idx[static_cast<std::size_t>(j)]) sign = -sign;
        Rat term = sign;
        for (int i = 0; i < 6; ++i) term *= m[static_cast<std::size_t>(i)][static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
        det += term;
    } while (std::next_permutation(idx.begin(), idx.end()));
    return det;
}

} // namespace

TEST_CASE("pairing on identity data") {
    PhasePoint<Rat> delta{Mat2<Rat>::identity(), Rat(0), Rat(0)};
    PhasePoint<Rat> v{Mat2<Rat>::identity(), Rat(0), Rat(0)};
    CHECK(pairing(delta, v) == 2);
}

TEST_CASE("pairing is bilinear") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 40; ++i) {
        auto u = rand_point(rng), v = rand_point(rng), w = rand_point(rng);
        CHECK(pairing(u, v + w) == pairing(u, v) + pairing(u, w));
        Rat k = rand_rat(rng);
        CHECK(pairing(u, k * v) == k * pairing(u, v));
    }
}

TEST_CASE("polarization identity links the pairing, P, and the dual map") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 50; ++i) {
        Rat b = rand_rat(rng, true);
        auto v = rand_point(rng), vp = rand_point(rng);
        CHECK(pairing(dual_map_f(b, vp), v) ==
              phase_P(b, v + vp) - phase_P(b, v) - phase_P(b, vp));
    }
}

TEST_CASE("phase polynomial values") {
    PhasePoint<Rat> w{Mat2<Rat>::identity(), Rat(1), Rat(1)};
    CHECK(phase_P(Rat(1), w) == 0);
    PhasePoint<Rat> v{Mat2<Rat>::identity(), Rat(2), Rat(1)};
    CHECK(phase_P(Rat(1), v) == -1);
}

TEST_CASE("dual phase consistency") {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 20; ++i) {
        auto alpha = rand_point(rng);
        // 2 P(1/2, alpha) computed through the dual wrapper and directly
        Rat direct = alpha.mat.det() - 2 * alpha.s1 * alpha.s2;
        CHECK(2 * phase_P_dual(Rat(2), alpha) == direct);
    }
}

TEST_CASE("dual map on sample points") {
    CHECK(dual_map_f(Rat(1), PhasePoint<Rat>{}) == PhasePoint<Rat>{});
    PhasePoint<Rat> v{Mat2<Rat>::identity(), Rat(1), Rat(2)};
    PhasePoint<Rat> img = dual_map_f(Rat(1), v);
    CHECK(img.mat == Mat2<Rat>::identity());
    CHECK(img.s1 == -2);
    CHECK(img.s2 == -1);
    // linearity
    std::mt19937_64 rng(31);
    for (int i = 0; i < 20; ++i) {
        Rat b = rand_rat(rng, true);
        auto u = rand_point(rng), w = rand_point(rng);
        CHECK(dual_map_f(b, u + w) == dual_map_f(b, u) + dual_map_f(b, w));
    }
}

TEST_CASE("action: identity, group law, quadric preservation") {
    std::mt19937_64 rng(37);
    auto id = GroupElem<Rat>::identity();
    for (int i = 0; i < 10; ++i) {
        auto w = rand_quadric_point(rng);
        auto img = act(id, w);
        CHECK(img.b == w.b);
        CHECK(img.v == w.v);
    }
    for (int i = 0; i < 50; ++i) {
        auto g = rand_group(rng), h = rand_group(rng);
        Rat b = rand_rat(rng, true);
        auto v = rand_point(rng);
        auto one = act(g * h, b, v);
        auto two = act(g, act(h, b, v).first, act(h, b, v).second);
        CHECK(one.first == two.first);
        CHECK(one.second == two.second);
    }
    for (int i = 0; i < 100; ++i) {
        auto w = rand_quadric_point(rng);
        auto g = rand_group(rng);
        CHECK(act(g, w).satisfies_constraint());
    }
}

TEST_CASE("gradient and Hessian from exact differences") {
    std::mt19937_64 rng(41);
    CHECK(grad_P(Rat(3), PhasePoint<Rat>{}) == std::array<Rat, 6>{});
    Rat h(1, 7);
    for (int i = 0; i < 20; ++i) {
        Rat b = rand_rat(rng, true);
        auto v = rand_point(rng);
        auto g = grad_P(b, v);
        for (int axis = 0; axis < 6; ++axis)
            CHECK(g[static_cast<std::size_t>(axis)] == central_diff(b, v, axis, h));
    }
    // Hessian = Jacobian of the gradient, via exact differences of grad entries
    for (int i = 0; i < 5; ++i) {
        Rat b = rand_rat(rng, true);
        auto v = rand_point(rng);
        auto H = hessian_P(b);
        for (int axis = 0; axis < 6; ++axis) {
            PhasePoint<Rat> vp = v, vm = v;
            auto bump = [&](PhasePoint<Rat>& w, const Rat& dh) {
                switch (axis) {
                    case 0: w.mat.e11 += dh; break;
                    case 1: w.mat.e12 += dh; break;
                    case 2: w.mat.e21 += dh; break;
                    case 3: w.mat.e22 += dh; break;
                    case 4: w.s1 += dh; break;
                    default: w.s2 += dh; break;
                }
            };
            bump(vp, h);
            bump(vm, -h);
            auto gp = grad_P(b, vp), gm = grad_P(b, vm);
            for (int row = 0; row < 6; ++row)
                CHECK(H[static_cast<std::size_t>(row)][static_cast<std::size_t>(axis)] ==
                      (gp[static_cast<std::size_t>(row)] - gm[static_cast<std::size_t>(row)]) / (2 * h));
        }
    }
}

TEST_CASE("Hessian determinant is -b^4") {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 10; ++i) {
        Rat b = rand_rat(rng, true);
        std::array<std::array<Rat, 6>, 6> H = hessian_P(b);
        CHECK(det6(H) == -(b * b * b * b));
    }
    // p-adic invertibility tracks v_p(b)
    CHECK(valuation(det6(hessian_P(Rat(3))), 3) == 4);
    CHECK(valuation(det6(hessian_P(Rat(2))), 3) == 0);
}

TEST_CASE("det H is independent of the base point") {
    // constant Hessian: the entries do not reference v at all; recompute from
    // the polarization identity at two points and compare
    std::mt19937_64 rng(47);
    Rat b = rand_rat(rng, true);
    auto H = hessian_P(b);
    auto v = rand_point(rng);
    // H e_i . e_j = <f(e_j), e_i> by bilinearity of the polarization form
    for (int i = 0; i < 6; ++i) {
        PhasePoint<Rat> ei{}, ej{};
        auto set_axis = [](PhasePoint<Rat>& w, int axis) {
            switch (axis) {
                case 0: w.mat.e11 = 1; break;
                case 1: w.mat.e12 = 1; break;
                case 2: w.mat.e21 = 1; break;
                case 3: w.mat.e22 = 1; break;
                case 4: w.s1 = 1; break;
                default: w.s2 = 1; break;
            }
        };
        set_axis(ei, i);
        for (int j = 0; j < 6; ++j) {
            PhasePoint<Rat> e2{};
            set_axis(e2, j);
            CHECK(H[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == pairing(dual_map_f(b, e2), ei));
        }
    }
    (void)v;
}

TEST_CASE("Bruhat decomposition") {
    Mat2<Rat> upper{Rat(1), Rat(5), Rat(0), Rat(2)};
    CHECK(std::holds_alternative<BruhatCell1>(bruhat_decompose(upper)));

    Mat2<Rat> w0{Rat(0), Rat(1), Rat(1), Rat(0)};
    auto cell = bruhat_decompose(w0);
    REQUIRE(std::holds_alternative<BruhatCell2>(cell));
    auto c2 = std::get<BruhatCell2>(cell);
    CHECK(c2.bp == 1);
    CHECK(c2.c == 1);
    CHECK(c2.u == 0);
    CHECK(c2.w == 0);
    CHECK(c2.reconstruct() == w0);

    CHECK_THROWS(bruhat_decompose(Mat2<Rat>{Rat(1), Rat(1), Rat(1), Rat(1)}));

    std::mt19937_64 rng(53);
    for (int i = 0; i < 200; ++i) {
        auto m = rand_mat(rng, true);
        auto r = bruhat_decompose(m);
        if (std::holds_alternative<BruhatCell1>(r)) {
            CHECK(m.e21 == 0);
            CHECK(std::get<BruhatCell1>(r).upper == m);
        } else {
            CHECK(std::get<BruhatCell2>(r).reconstruct() == m);
        }
    }
}

TEST_CASE("big cell has full measure") {
    std::mt19937_64 rng(59);
    int cell2 = 0;
    for (int i = 0; i < 10000; ++i) {
        Mat2<Rat> m;
        do { m = rand_mat(rng, true); } while (m.e21 == 0);
        if (std::holds_alternative<BruhatCell2>(bruhat_decompose(m))) ++cell2;
    }
    CHECK(cell2 == 10000);
}

TEST_CASE("relevance line") {
    CHECK(is_relevant(Rat(1), Rat(1), Rat(1), Rat(-1)));
    CHECK_FALSE(is_relevant(Rat(1), Rat(1), Rat(1), Rat(1)));
    std::mt19937_64 rng(61);
    for (int i = 0; i < 50; ++i) {
        Rat b = rand_rat(rng, true), c = rand_rat(rng, true);
        Rat y1 = rand_rat(rng, true), lam = rand_rat(rng, true);
        Rat y2 = -b / c * y1;
        CHECK(is_relevant(b, c, y1, y2));
        CHECK(is_relevant(lam * b, lam * c, y1, y2));
    }
}

TEST_CASE("Hecke indicators") {
    auto idm = Mat2<Rat>::identity();
    CHECK(hecke_indicator(1, idm) == 1);
    CHECK(hecke_indicator_central(1, idm) == 1);
    for (std::int64_t p : {2, 3, 5}) {
        auto d1 = Mat2<Rat>::diagonal(Rat(p), Rat(1));
        CHECK(hecke_indicator(p, d1) == 1);
        CHECK(hecke_indicator_central(p, d1) == 0);
        auto dp = Mat2<Rat>::diagonal(Rat(p), Rat(p));
        CHECK(hecke_indicator_central(p, dp) == 1);
        CHECK(hecke_indicator(p, dp) == 0); // det = p^2
    }
    Mat2<Rat> frac{Rat(1, 2), Rat(0), Rat(0), Rat(2)};
    CHECK(hecke_indicator(1, frac) == 0);
    CHECK_THROWS(hecke_indicator(0, idm));
}

TEST_CASE("pairing is perfect over Z/p^n") {
    // Gram matrix of the pairing in coordinates has unit determinant.
    std::array<std::array<Rat, 6>, 6> gram{};
    auto basis = [](int axis) {
        PhasePoint<Rat> w{};
        switch (axis) {
            case 0: w.mat.e11 = 1; break;
            case 1: w.mat.e12 = 1; break;
            case 2: w.mat.e21 = 1; break;
            case 3: w.mat.e22 = 1; break;
            case 4: w.s1 = 1; break;
            default: w.s2 = 1; break;
        }
        return w;
    };
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = pairing(basis(i), basis(j));
    Rat d = det6(gram);
    CHECK((d == 1 || d == -1)); // a unit in every Z/p^n
}
