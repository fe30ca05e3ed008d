#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "klab/localzeta.hpp"

using namespace klab;
using namespace klab::zeta;

namespace {

AlphaPoint<Rat> random_alpha(std::mt19937_64& rng, std::int64_t p) {
    // entries p^e * unit with small mixed valuations, all integral
    auto entry = [&]() {
        std::int64_t u = 1 + static_cast<std::int64_t>(rng() % 12);
        if (u % p == 0) ++u;
        int e = static_cast<int>(rng() % 3);
        std::int64_t sign = (rng() & 1) ? 1 : -1;
        return Rat(sign * u * ipow(p, e));
    };
    return {Mat2<Rat>{entry(), entry(), entry(), entry()}, entry(), entry()};
}

LocalZetaSpec base_spec(std::int64_t p) {
    LocalZetaSpec s;
    s.p = p;
    s.b = p == 2 ? 3 : 2;
    s.chi = UnitChar::unramified(p, {1.0, 0.0});
    s.s = {2.0, 0.0};
    s.M = 3;
    return s;
}

} // namespace

TEST_CASE("trivial data: brute equals closed") {
    for (std::int64_t p : {2, 3}) {
        LocalZetaSpec s = base_spec(p);
        s.alpha = AlphaPoint<Rat>{}; // alpha = 0
        s.M = p == 2 ? 6 : 4;
        auto brute = local_zeta_brute(s);
        cplx closed = local_zeta_closed(s);
        CHECK(std::abs(brute.value - closed) <= brute.tail + 1e-9);
    }
}

TEST_CASE("brute equals closed across characters and s") {
    std::mt19937_64 rng(113);
    for (std::int64_t p : {2, 3}) {
        for (cplx zp : {cplx{1, 0}, cplx{0, 1}, cplx{-1, 0}}) {
            for (cplx sv : {cplx{2.0, 0.0}, cplx{1.5, 0.0}, cplx{1.0, 0.7}}) {
                for (int rep = 0; rep < 3; ++rep) {
                    LocalZetaSpec s = base_spec(p);
                    s.chi = UnitChar::unramified(p, zp);
                    s.s = sv;
                    s.alpha = random_alpha(rng, p);
                    auto brute = local_zeta_brute(s);
                    cplx closed = local_zeta_closed(s);
                    CHECK(std::abs(brute.value - closed) <= brute.tail + 1e-9);
                }
            }
        }
    }
}

TEST_CASE("non-integral alpha kills every shell") {
    LocalZetaSpec s = base_spec(3);
    s.alpha = AlphaPoint<Rat>{Mat2<Rat>{Rat(1), Rat(2), Rat(1), Rat(1)}, Rat(1, 9), Rat(1)};
    auto brute = local_zeta_brute(s);
    for (const auto& sh : brute.shells) {
        CHECK(sh.exact_zero);
        CHECK(sh.value == cplx{0.0, 0.0});
    }
    CHECK(std::abs(local_zeta_closed(s)) == 0.0);
}

TEST_CASE("ramified character: exact shell-by-shell zeros") {
    std::mt19937_64 rng(127);
    for (std::int64_t p : {2, 3}) {
        LocalZetaSpec s = base_spec(p);
        s.chi = UnitChar::quadratic(p);
        s.alpha = random_alpha(rng, p);
        auto brute = local_zeta_brute(s);
        for (const auto& sh : brute.shells) {
            CHECK(sh.exact_zero);
            CHECK(sh.value == cplx{0.0, 0.0});
        }
        CHECK(local_zeta_closed(s) == cplx{0.0, 0.0});
    }
}

TEST_CASE("closed form k-support stops at the minimum valuation") {
    LocalZetaSpec s = base_spec(3);
    // min valuation 1: k = 0, 1 contribute; dividing once more must change nothing
    s.alpha = AlphaPoint<Rat>{Mat2<Rat>{Rat(3), Rat(9), Rat(3), Rat(9)}, Rat(3), Rat(27)};
    cplx full = local_zeta_closed(s);
    // recompute shifting alpha out of integrality: scaling by 1/3 drops one k-level
    LocalZetaSpec s2 = s;
    s2.alpha = AlphaPoint<Rat>{Rat(1, 3) * s.alpha.mat, s.alpha.s1 / 3, s.alpha.s2 / 3};
    cplx smaller = local_zeta_closed(s2);
    // consistency: the k-sum of s is term_0(s) + q^{-(1+s)} * k-sum of s2
    // with the same t-masses, since P(b^{-1}, 3^{-k} alpha) shifts k by one.
    cplx q1s = std::pow(3.0, -(2.0 + 1.0));
    LocalZetaSpec s0 = s;
    s0.M = 1;
    // term at k = 0 alone: alpha has emin = 1 so truncate by brute reconstruction
    // via the defining difference:
    cplx lfac = 1.0 - std::pow(3.0, -(2.0 + 4.0));
    cplx diff = full / lfac - q1s * (smaller / lfac);
    // diff must equal the k = 0 t-mass: (1-1/p) sum_{j<=d0} p^{-j(s+3)}
    Rat pv = phase_P(Rat(1) / s.b, s.alpha);
    long d0 = valuation(pv, 3);
    cplx mass{0.0, 0.0};
    for (long j = 0; j <= d0; ++j) mass += std::pow(3.0, -5.0 * j);
    mass *= (1.0 - 1.0 / 3.0);
    CHECK(std::abs(diff - mass) < 1e-12);
}

TEST_CASE("dirichlet series off the quadric: finite product") {
    DirichletSpec d;
    d.b = 1;
    d.alpha = AlphaPoint<Rat>{Mat2<Rat>{Rat(2), Rat(1), Rat(1), Rat(1)}, Rat(1), Rat(3)};
    // P^v = det - y1 y2 = 1 - 3 = -2
    d.s = {1.0, 0.0};
    d.pmax = 1000;
    auto val = dirichlet_series(d);
    CHECK_FALSE(val.on_quadric);
    // independent product: L-inverse truncated times the p = 2 factor
    cplx linv{1.0, 0.0};
    for (std::int64_t p : primes_up_to(1000)) linv *= 1.0 - std::pow(static_cast<double>(p), -5.0);
    cplx jfac = 1.0 + std::pow(2.0, -4.0);
    CHECK(std::abs(val.value - linv * jfac) < 1e-12);
    // negative valuation anywhere: the indicator empties out
    DirichletSpec d2 = d;
    d2.alpha.s2 = Rat(1, 2) + Rat(1); // P^v = 1 - 3/2 = -1/2
    CHECK(std::abs(dirichlet_series(d2).value) == 0.0);
}

TEST_CASE("dirichlet series on the quadric is the zeta ratio") {
    DirichletSpec d;
    d.b = 1;
    d.alpha = AlphaPoint<Rat>{Mat2<Rat>{Rat(2), Rat(1), Rat(1), Rat(2)}, Rat(1), Rat(3)};
    REQUIRE(phase_P_dual(d.b, d.alpha) == 0);
    d.s = {0.5, 0.0};
    auto val = dirichlet_series(d);
    CHECK(val.on_quadric);
    CHECK(std::abs(val.value - zeta_em(3.5) / zeta_em(4.5)) < 1e-10);
    // pole guard
    DirichletSpec dp = d;
    dp.s = {-2.0, 0.0};
    CHECK_THROWS_AS(dirichlet_series(dp), std::domain_error);
}

TEST_CASE("pole residue at s = -2") {
    DirichletSpec d;
    d.b = 1;
    d.alpha = AlphaPoint<Rat>{Mat2<Rat>{Rat(2), Rat(1), Rat(1), Rat(2)}, Rat(1), Rat(3)};
    double eps = 1e-3;
    d.s = {-2.0 + eps, 0.0};
    auto val = dirichlet_series(d);
    auto res = dirichlet_residue_constant({}, 10000);
    double lhs = ((d.s + 2.0) * val.value).real();
    CHECK(std::abs(lhs - res.value) / res.value < 0.02);
}

TEST_CASE("dirichlet series obeys the zeta-product bound") {
    std::mt19937_64 rng(131);
    for (int i = 0; i < 10; ++i) {
        DirichletSpec d;
        d.b = Rat(1 + static_cast<std::int64_t>(rng() % 3));
        d.alpha = AlphaPoint<Rat>{Mat2<Rat>{Rat(static_cast<std::int64_t>(rng() % 5) + 1, 1),
                                            Rat(static_cast<std::int64_t>(rng() % 5)),
                                            Rat(static_cast<std::int64_t>(rng() % 5)),
                                            Rat(static_cast<std::int64_t>(rng() % 5) + 1)},
                                  Rat(static_cast<std::int64_t>(rng() % 4) + 1),
                                  Rat(static_cast<std::int64_t>(rng() % 4) + 1)};
        double sigma = -1.0 + static_cast<double>(rng() % 30) / 10.0; // [-1, 2)
        d.s = {sigma, 0.0};
        d.pmax = 2000;
        DirichletValue val;
        try {
            val = dirichlet_series(d);
        } catch (const std::domain_error&) {
            continue; // too close to the pole for a certified value
        }
        double bound = zeta_S(sigma + 4.0, {}) * zeta_S(sigma + 3.0, {});
        CHECK(std::abs(val.value) <= bound + val.tail + 1e-9);
    }
}

TEST_CASE("ramified vanishing through unit averaging") {
    RamifiedCheckSpec spec;
    spec.p = 3;
    spec.gamma = Mat2<std::int64_t>{1, 0, 0, 1};
    // beta21 = 0 puts the t-support on positive valuations, and
    // b + beta11 beta22 = 0 mod 3 keeps the (1,2)-condition satisfiable
    spec.beta = Mat2<std::int64_t>{1, 1, 0, 2};
    spec.m = 0;
    spec.k = 1;
    spec.b = 1;
    spec.alpha_mat = Mat2<std::int64_t>{1, 2, 0, 1};
    spec.alpha_y1 = 1;
    spec.alpha_y2 = 2;
    spec.shell_lo = 1;
    spec.shell_hi = 2;

    // stability level K = k + m = 1; a conductor-9 character is annihilated
    spec.chi = UnitChar::ramified(3, 2, 1);
    auto rep = ramified_vanishing_check(spec);
    CHECK(rep.stability_level == 1);
    CHECK(rep.annihilated);
    for (const auto& sh : rep.shells) {
        if (sh.terms == 0) continue;
        CHECK(sh.unit_invariant);
        CHECK(sh.exact_zero);
    }
    CHECK(rep.all_shells_zero);

    // unramified: the same data leaves a generically nonzero shell
    spec.chi = UnitChar::unramified(3, {1.0, 0.0});
    auto rep2 = ramified_vanishing_check(spec);
    CHECK_FALSE(rep2.annihilated);
    bool some_nonzero = false;
    for (const auto& sh : rep2.shells) some_nonzero = some_nonzero || std::abs(sh.value) > 1e-15;
    CHECK(some_nonzero);
    // and the shells are invariant under unit scaling of the support data
    for (const auto& sh : rep2.shells)
        if (sh.terms > 0) CHECK(sh.unit_invariant);
}
