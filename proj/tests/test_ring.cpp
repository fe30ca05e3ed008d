#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "klab/cyclo.hpp"
#include "klab/residue.hpp"
#include "klab/unit_char.hpp"

using namespace klab;

namespace {

// Legendre symbol by Euler's criterion; the oracle for quadratic characters.
int legendre(std::int64_t a, std::int64_t p) {
    std::int64_t r = pow_mod(a, (p - 1) / 2, p);
    return r == p - 1 ? -1 : static_cast<int>(r);
}

} // namespace

TEST_CASE("residue ring basics") {
    ResidueCtx ctx(3, 2);
    CHECK(ctx.modulus == 9);
    CHECK_THROWS(ResidueCtx(4, 1));
    ResidueElem a(ctx, 7), b(ctx, 5);
    CHECK((a * b).value() == 35 % 9);
    CHECK((a + b).value() == 3);
    CHECK(a.is_unit());
    CHECK((a * a.inverse()).value() == 1);
    CHECK_FALSE(ResidueElem(ctx, 6).is_unit());
    CHECK_THROWS(ResidueElem(ctx, 6).inverse());
}

TEST_CASE("psi at simple phases") {
    CHECK(psi(PadicPhase(5, 0, 0)) == cplx{1.0, 0.0});
    CHECK(std::abs(psi(PadicPhase(2, 1, 1)) - cplx{-1.0, 0.0}) < 1e-15);
    // e^{2 pi i / 3} computed from the defining exponential
    cplx expected = std::polar(1.0, kTau / 3.0);
    CHECK(std::abs(psi(PadicPhase(3, 1, 1)) - expected) < 1e-15);
}

TEST_CASE("phase normalization and arithmetic") {
    PadicPhase x(3, 3, 2); // 3/9 = 1/3
    CHECK(x.num == 1);
    CHECK(x.m == 1);
    CHECK(PadicPhase(3, 9, 2).is_zero());
    CHECK(PadicPhase::from_fraction(3, 2, 15) == PadicPhase(3, 2 * 2, 1)); // 2/15 = 2*inv(5)/3 mod 1
    PadicPhase a(3, 1, 2), b(3, 2, 2);
    CHECK((a + b) == PadicPhase(3, 1, 1)); // 1/9 + 2/9 = 3/9 = 1/3
    CHECK((a - a).is_zero());
}

TEST_CASE("psi_exact basis vectors and floating agreement") {
    ResidueCtx ctx(3, 2);
    CHECK(psi_exact(PadicPhase(3, 0, 0), ctx).equals(CycloSum::integer(3, 2, 1)));
    ResidueCtx c1(5, 1);
    CHECK(psi_exact(PadicPhase(5, 1, 1), c1).equals(CycloSum::basis(5, 1, 1)));
    CHECK_THROWS(psi_exact(PadicPhase(3, 1, 2), ResidueCtx(3, 1)));

    std::mt19937_64 rng(7);
    for (int i = 0; i < 100; ++i) {
        std::int64_t p = (i % 2) ? 3 : 2;
        int m = static_cast<int>(rng() % 4);
        std::int64_t a = static_cast<std::int64_t>(rng() % 100);
        PadicPhase x(p, a, m);
        ResidueCtx ctx2(p, 4);
        CHECK(std::abs(psi_exact(x, ctx2).to_complex() - psi(x)) < 1e-12);
    }
}

TEST_CASE("psi is additive, exactly in the cyclotomic backend") {
    std::mt19937_64 rng(11);
    ResidueCtx ctx(3, 3);
    for (int i = 0; i < 50; ++i) {
        PadicPhase x(3, static_cast<std::int64_t>(rng() % 27), static_cast<int>(rng() % 4));
        PadicPhase y(3, static_cast<std::int64_t>(rng() % 27), static_cast<int>(rng() % 4));
        CycloSum lhs = psi_exact(x + y, ctx);
        CycloSum rhs = psi_exact(x, ctx) * psi_exact(y, ctx);
        CHECK(lhs.equals(rhs));
    }
}

TEST_CASE("psi equals one exactly on integral phases") {
    for (int m = 0; m < 4; ++m)
        for (std::int64_t a = 0; a < 9; ++a) {
            PadicPhase x(3, a, m);
            bool is_one = std::abs(psi(x) - cplx{1.0, 0.0}) < 1e-12;
            CHECK(is_one == (x.m == 0));
        }
}

TEST_CASE("full character sums vanish") {
    for (std::int64_t p : {2, 3, 5}) {
        for (int n = 1; n <= 3; ++n) {
            if (ipow(p, n) > 200) continue;
            CycloSum s(p, n);
            ResidueCtx ctx(p, n);
            for (std::int64_t a = 0; a < ctx.modulus; ++a)
                s += psi_exact(PadicPhase(p, a, n), ctx);
            CHECK(s.is_zero());
            // trivial phase: the same sum collapses to p^n
            CycloSum t(p, n);
            for (std::int64_t a = 0; a < ctx.modulus; ++a)
                t += psi_exact(PadicPhase(p, 0, 0), ctx);
            CHECK(t.equals(CycloSum::integer(p, n, ctx.modulus)));
        }
    }
}

TEST_CASE("cyclotomic canonical forms") {
    // zeta_4^2 = -1
    CycloSum i2 = CycloSum::basis(2, 2, 1) * CycloSum::basis(2, 2, 1);
    CHECK(i2.equals(CycloSum::integer(2, 2, -1)));
    // 1 + zeta_3 + zeta_3^2 = 0
    CycloSum s(3, 1);
    s.add_basis(0);
    s.add_basis(1);
    s.add_basis(2);
    CHECK(s.is_zero());
    // lifting preserves the complex value
    CycloSum b = CycloSum::basis(3, 1, 1);
    CHECK(std::abs(b.lifted_to_level(3).to_complex() - b.to_complex()) < 1e-12);
}

TEST_CASE("unramified characters") {
    auto chi1 = UnitChar::unramified(5, {1.0, 0.0});
    CHECK(std::abs(chi1.eval(3, 2) - cplx{1.0, 0.0}) < 1e-15);
    auto chii = UnitChar::unramified(5, {0.0, 1.0});
    CHECK(std::abs(chii.eval(2) - cplx{-1.0, 0.0}) < 1e-15); // chi(p^2) = i^2
    CHECK(std::abs(chii.eval(-1) - cplx{0.0, -1.0}) < 1e-15);
    CHECK_THROWS(UnitChar::unramified(5, {2.0, 0.0}));
}

TEST_CASE("ramified quadratic character matches the Legendre symbol") {
    auto chi = UnitChar::quadratic(3);
    CHECK(chi.is_ramified());
    CHECK(chi.conductor_exponent() == 1);
    CHECK(std::abs(chi.eval_unit(2) - cplx{-1.0, 0.0}) < 1e-12);
    for (std::int64_t p : {3, 5, 7}) {
        auto q = UnitChar::quadratic(p);
        for (std::int64_t u = 1; u < p; ++u)
            CHECK(std::abs(q.eval_unit(u) - cplx{static_cast<double>(legendre(u, p)), 0.0}) < 1e-12);
    }
}

TEST_CASE("characters are multiplicative") {
    std::mt19937_64 rng(23);
    auto chi = UnitChar::ramified(3, 2, 1); // order-6 character mod 9
    auto chi2 = UnitChar::ramified(2, 3, 1, 1);
    for (int i = 0; i < 100; ++i) {
        std::int64_t u1 = 1 + static_cast<std::int64_t>(rng() % 8);
        std::int64_t u2 = 1 + static_cast<std::int64_t>(rng() % 8);
        if (u1 % 3 && u2 % 3)
            CHECK(std::abs(chi.eval_unit(u1 * u2) - chi.eval_unit(u1) * chi.eval_unit(u2)) < 1e-12);
        if (u1 % 2 && u2 % 2)
            CHECK(std::abs(chi2.eval_unit(u1 * u2) - chi2.eval_unit(u1) * chi2.eval_unit(u2)) < 1e-12);
    }
    // mixed valuation-unit multiplicativity
    auto chz = UnitChar::unramified(3, {0.0, 1.0});
    for (int i = 0; i < 100; ++i) {
        std::int64_t v1 = static_cast<std::int64_t>(rng() % 5), v2 = static_cast<std::int64_t>(rng() % 5);
        CHECK(std::abs(chz.eval(v1 + v2) - chz.eval(v1) * chz.eval(v2)) < 1e-12);
    }
}

TEST_CASE("exact conductor is enforced") {
    // r = 3 mod 9 factors through conductor 3, so it is rejected at k = 2
    CHECK_THROWS(UnitChar::ramified(3, 2, 3));
    CHECK_NOTHROW(UnitChar::ramified(3, 2, 1));
    CHECK_NOTHROW(UnitChar::ramified(2, 2, 1, 1));
    CHECK_THROWS(UnitChar::ramified(2, 2, 0, 0)); // trivial on units
}
