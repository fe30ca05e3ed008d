#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "klab/cyclo.hpp"
#include "klab/residue.hpp"

namespace klab {
namespace expsum {

// Term budgets; enumerations above them fail loudly instead of downsampling.
constexpr std::int64_t kExactBudget = std::int64_t(1) << 24;
constexpr std::int64_t kFloatBudget = std::int64_t(1) << 28;

enum class Backend { Exact, Floating };

// num / p^e with p stripped from num (e = 0 means integral).
struct PadicScalar {
    std::int64_t num = 0;
    int e = 0;

    static PadicScalar make(std::int64_t p, std::int64_t num, int e) {
        while (e > 0 && num % p == 0) { num /= p; --e; }
        if (num == 0) e = 0;
        return {num, e};
    }
    bool integral() const { return e == 0; }
};

// alpha = (B, y1, y2); paired against v = ((x1 x2; x3 x4), z1, z2) through
// tr(B T) + y1 z1 + y2 z2.
struct PadicAlpha {
    PadicScalar b11, b12, b21, b22, y1, y2;

    std::array<PadicScalar, 6> coords_in_v_order() const {
        return {b11, b21, b12, b22, y1, y2};
    }
    int max_denominator_exponent() const {
        int e = 0;
        for (const auto& s : coords_in_v_order()) e = std::max(e, s.e);
        return e;
    }
    bool integral() const { return max_denominator_exponent() == 0; }
};

struct SumSpec {
    ResidueCtx ctx;                  // enumeration ring Z/p^n
    std::int64_t b = 1;              // unit of Z/p^n
    int m = 0;                       // t-valuation, m <= n
    std::optional<PadicAlpha> alpha; // twist data
    std::int64_t x = 1;              // unit twist factor
    Backend backend = Backend::Exact;

    void validate() const;
};

struct SumResult {
    cplx value;                      // normalized by p^{-6n}
    std::optional<CycloSum> exact;   // raw sum over V(Z/p^n), when exact backend
    std::int64_t term_count = 0;
    std::string backend;
};

// p^{-6n} sum over v in V(Z/p^n) of psi(P(b, v) / p^m); equals p^{-3m}.
SumResult gaussian_sum(const SumSpec& spec);

// Same sum with threads slices merged in fixed order; bit-identical to the
// serial exact result for any slice count.
SumResult gaussian_sum_partitioned(const SumSpec& spec, int slices);

// Force the factored path (the (z1,z2)-plane split off the T-block); used
// automatically above the full enumeration budget, exposed for cross-checks.
SumResult gaussian_sum_zfold(const SumSpec& spec);

// p^{-6n} sum of psi((x P(b,v) + <alpha, v>) / p^m).
SumResult twisted_sum(const SumSpec& spec);

// The closed form the twisted sum must match: |t|^3 psi(-P(b^{-1}, alpha)/(x t)),
// returned on the same raw-sum scale as twisted_sum's exact field.
SumResult twisted_closed_form(const SumSpec& spec);

// Point count of the projective quadric {b(x1 x4 - x2 x3) = z1 z2} over F_p.
std::int64_t quadric_count(std::int64_t p, std::int64_t b = 1);

// sum over units x mod p^m of psi(x a / p^m).
SumResult ramanujan_sum(std::int64_t p, int m, std::int64_t a);

// Critical points of P(b, .) mod p^j by brute enumeration of the gradient kernel.
std::vector<std::array<std::int64_t, 6>> enumerate_critical(std::int64_t p, int j, std::int64_t b);

// Stationary-phase evaluation for m >= 2: |t|^3 sum over critical points of
// psi(P/p^m) times the quadratic Gauss factor at odd valuation.
SumResult stationary_phase_eval(const SumSpec& spec);

} // namespace expsum
} // namespace klab
