#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "klab/expsum.hpp"

using namespace klab;
using namespace klab::expsum;

namespace {

// classical Ramanujan sum over a prime power, the closed form used as oracle
double ramanujan_oracle(std::int64_t p, int m, std::int64_t a) {
    int v = 0;
    std::int64_t aa = mod_reduce(a, ipow(p, m));
    if (aa == 0) v = m;
    else while (aa % p == 0) { aa /= p; ++v; }
    double pm1 = static_cast<double>(ipow(p, m - 1));
    if (v >= m) return pm1 * (p - 1);
    if (v == m - 1) return -pm1;
    return 0.0;
}

PadicAlpha random_integral_alpha(std::mt19937_64& rng, std::int64_t p, int span) {
    auto r = [&]() { return PadicScalar::make(p, static_cast<std::int64_t>(rng() % (2 * span + 1)) - span, 0); };
    return {r(), r(), r(), r(), r(), r()};
}

} // namespace

TEST_CASE("gaussian sum: trivial phase") {
    SumSpec s{ResidueCtx(3, 2), 1, 0, std::nullopt, 1, Backend::Exact};
    auto r = gaussian_sum(s);
    CHECK(std::abs(r.value - cplx{1.0, 0.0}) < 1e-12);
    CHECK(r.exact->equals(CycloSum::integer(3, 2, ipow(3, 12))));
}

TEST_CASE("gaussian sum equals p^{-3m} exactly, all units") {
    for (std::int64_t p : {2, 3}) {
        for (int m = 1; m <= 2; ++m) {
            for (std::int64_t b = 1; b < ipow(p, m); ++b) {
                if (b % p == 0) continue;
                SumSpec s{ResidueCtx(p, m), b, m, std::nullopt, 1, Backend::Exact};
                auto r = gaussian_sum(s);
                // raw sum over v mod p^m must be exactly p^{6m - 3m}
                CHECK(r.exact->equals(CycloSum::integer(p, m, ipow(p, 3 * m))));
            }
        }
    }
    // odd level on top
    SumSpec s{ResidueCtx(2, 3), 3, 3, std::nullopt, 1, Backend::Exact};
    CHECK(gaussian_sum(s).exact->equals(CycloSum::integer(2, 3, ipow(2, 9))));
}

TEST_CASE("gaussian sum floating backend") {
    SumSpec s{ResidueCtx(5, 1), 2, 1, std::nullopt, 1, Backend::Floating};
    auto r = gaussian_sum(s);
    CHECK(std::abs(r.value - cplx{std::pow(5.0, -3.0), 0.0}) < 1e-9);
    CHECK(r.backend == "floating/full6");
}

TEST_CASE("enumeration level is immaterial above m") {
    for (std::int64_t p : {2, 3}) {
        SumSpec lo{ResidueCtx(p, 1), 1, 1, std::nullopt, 1, Backend::Exact};
        SumSpec hi{ResidueCtx(p, 2), 1, 1, std::nullopt, 1, Backend::Exact};
        auto a = gaussian_sum(lo), b = gaussian_sum(hi);
        CHECK(std::abs(a.value - b.value) < 1e-12);
        CHECK(b.exact->equals(ipow(p, 6) * a.exact->lifted_to_level(2)));
    }
}

TEST_CASE("factored path agrees with full enumeration") {
    for (std::int64_t p : {2, 3}) {
        for (int m = 1; m <= 2; ++m) {
            SumSpec s{ResidueCtx(p, m), 1, m, std::nullopt, 1, Backend::Exact};
            auto full = gaussian_sum(s);
            auto fold = gaussian_sum_zfold(s);
            CHECK(full.exact->equals(*fold.exact));
        }
    }
    // and the big case actually routes through the factored path
    SumSpec big{ResidueCtx(3, 3), 2, 3, std::nullopt, 1, Backend::Exact};
    auto r = gaussian_sum(big);
    CHECK(r.backend == "exact/zfold");
    CHECK(r.exact->equals(CycloSum::integer(3, 3, ipow(3, 9))));
}

TEST_CASE("partitioned evaluation is bit-identical") {
    SumSpec s{ResidueCtx(3, 2), 2, 2, std::nullopt, 1, Backend::Exact};
    auto serial = gaussian_sum_partitioned(s, 1);
    for (int slices : {2, 3, 5}) {
        auto par = gaussian_sum_partitioned(s, slices);
        CHECK(par.exact->coeffs() == serial.exact->coeffs());
    }
}

TEST_CASE("twisted sum: alpha = 0 reduces to the gaussian sum") {
    SumSpec g{ResidueCtx(3, 2), 2, 2, std::nullopt, 1, Backend::Exact};
    SumSpec t = g;
    t.alpha = PadicAlpha{};
    auto rg = gaussian_sum(g);
    auto rt = twisted_sum(t);
    CHECK(rt.exact->equals(*rg.exact));
}

TEST_CASE("twisted sum matches the closed form on integral alpha") {
    std::mt19937_64 rng(101);
    for (std::int64_t p : {2, 3}) {
        for (int i = 0; i < 20; ++i) {
            int m = 1 + static_cast<int>(rng() % 2);
            SumSpec s{ResidueCtx(p, m), 1 + 2 * static_cast<std::int64_t>(rng() % 2), m,
                      random_integral_alpha(rng, p, 6), 1 + 2 * static_cast<std::int64_t>(rng() % 2),
                      Backend::Exact};
            if (s.b % p == 0) s.b = 1;
            if (s.x % p == 0) s.x = 1;
            auto lhs = twisted_sum(s);
            auto rhs = twisted_closed_form(s);
            CHECK(lhs.exact->equals(*rhs.exact));
        }
    }
}

TEST_CASE("twisted sum vanishes off the integral lattice") {
    std::mt19937_64 rng(103);
    for (int i = 0; i < 10; ++i) {
        std::int64_t p = (i % 2) ? 3 : 2;
        int m = 1;
        SumSpec s{ResidueCtx(p, m + 1), 1, m, random_integral_alpha(rng, p, 4), 1, Backend::Exact};
        // poke one non-integral entry with denominator p^{m+1}... the phase sees
        // it at level n = m+1
        s.alpha->y1 = PadicScalar::make(p, 1 + static_cast<std::int64_t>(rng() % (p - 1 ? p - 1 : 1)), 1);
        auto r = twisted_sum(s);
        CHECK(r.exact->is_zero());
        CHECK(std::abs(r.value) < 1e-15);
    }
}

TEST_CASE("twist only sees alpha mod p^m") {
    std::mt19937_64 rng(107);
    for (int i = 0; i < 10; ++i) {
        std::int64_t p = 3;
        int m = 2;
        SumSpec s{ResidueCtx(p, m), 2, m, random_integral_alpha(rng, p, 8), 1, Backend::Exact};
        SumSpec s2 = s;
        s2.alpha->b11.num += ipow(p, m) * (1 + static_cast<std::int64_t>(rng() % 3));
        s2.alpha->y2.num -= ipow(p, m) * (1 + static_cast<std::int64_t>(rng() % 3));
        CHECK(twisted_sum(s).exact->equals(*twisted_sum(s2).exact));
    }
}

TEST_CASE("quadric point counts") {
    CHECK(quadric_count(2) == 35);
    CHECK(quadric_count(3) == 130);
    CHECK(quadric_count(5) == 806);
    // against the counting polynomial
    for (std::int64_t p : {2, 3, 5}) {
        std::int64_t q = p;
        CHECK(quadric_count(p) == q * q * q * q + q * q * q + 2 * q * q + q + 1);
    }
    // independent of the unit b
    CHECK(quadric_count(3, 2) == quadric_count(3, 1));
    CHECK(quadric_count(5, 3) == quadric_count(5, 1));
}

TEST_CASE("Ramanujan sums against the classical values") {
    CHECK(std::abs(ramanujan_sum(3, 1, 1).value - cplx{-1.0, 0.0}) < 1e-12);
    CHECK(std::abs(ramanujan_sum(3, 1, 6).value - cplx{2.0, 0.0}) < 1e-12);
    CHECK(std::abs(ramanujan_sum(3, 2, 1).value) < 1e-12);
    std::mt19937_64 rng(109);
    for (int i = 0; i < 30; ++i) {
        std::int64_t p = (i % 3 == 0) ? 2 : (i % 3 == 1) ? 3 : 5;
        int m = 1 + static_cast<int>(rng() % 3);
        std::int64_t a = static_cast<std::int64_t>(rng() % 100);
        CHECK(std::abs(ramanujan_sum(p, m, a).value - cplx{ramanujan_oracle(p, m, a), 0.0}) < 1e-9);
    }
}

TEST_CASE("critical locus is the origin") {
    for (std::int64_t p : {2, 3}) {
        auto sols = enumerate_critical(p, 2, 1);
        REQUIRE(sols.size() == 1);
        for (auto c : sols.front()) CHECK(c == 0);
        auto sols2 = enumerate_critical(p, 1, p - 1);
        REQUIRE(sols2.size() == 1);
    }
}

TEST_CASE("stationary phase equals the brute sum") {
    for (std::int64_t p : {2, 3}) {
        for (int m = 2; m <= 3; ++m) {
            SumSpec s{ResidueCtx(p, m), 1, m, std::nullopt, 1, Backend::Exact};
            auto st = stationary_phase_eval(s);
            auto br = gaussian_sum(s);
            CHECK(std::abs(st.value - br.value) < 1e-12);
            REQUIRE(st.exact.has_value());
            CHECK(st.exact->equals(*br.exact));
        }
    }
    // the odd-valuation Gauss factor normalizes to 1
    SumSpec s{ResidueCtx(2, 3), 1, 3, std::nullopt, 1, Backend::Exact};
    auto st = stationary_phase_eval(s);
    CHECK(st.backend == "stationary/odd");
    CHECK(std::abs(st.value - cplx{std::pow(2.0, -9.0), 0.0}) < 1e-12);
    CHECK_THROWS(stationary_phase_eval(SumSpec{ResidueCtx(3, 1), 1, 1, std::nullopt, 1, Backend::Exact}));
}

TEST_CASE("budget violations fail loudly") {
    SumSpec s{ResidueCtx(5, 3), 1, 3, std::nullopt, 1, Backend::Exact};
    CHECK_THROWS_AS(gaussian_sum(s), std::length_error);
    SumSpec t{ResidueCtx(5, 3), 1, 3, PadicAlpha{}, 1, Backend::Exact};
    CHECK_THROWS_AS(twisted_sum(t), std::length_error);
}
