#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "klab/geometry.hpp"
#include "klab/mat2.hpp"
#include "klab/rat.hpp"
#include "klab/unit_char.hpp"
#include "klab/zetafn.hpp"

namespace klab {
namespace zeta {

// Data of one local integral: a unit b, the dual point alpha over Q_p, a
// character of Q_p^x, the complex exponent s, and a shell truncation M.
struct LocalZetaSpec {
    std::int64_t p = 3;
    Rat b = 1;
    AlphaPoint<Rat> alpha;
    UnitChar chi = UnitChar::unramified(3, {1.0, 0.0});
    cplx s{2.0, 0.0};
    int M = 4;                               // highest t-valuation shell
    std::int64_t budget = std::int64_t(1) << 28;

    void validate() const;
};

struct ShellReport {
    int m = 0;
    cplx value{0.0, 0.0};   // the full shell contribution, measure included
    bool exact_zero = false; // integer-verified cancellation
    std::int64_t terms = 0;
};

struct LocalZetaValue {
    cplx value{0.0, 0.0};
    double tail = 0;        // bound on the discarded shells m > M
    std::vector<ShellReport> shells;
};

// Shell-by-shell evaluation of
//   int_O int_{V(O)} 1_{tO}(P(b,v)) psi(<alpha,v>/t) dv chi(t) |t|^s dt^x
// with vol(Z_p^x, dt^x) = 1 - 1/p.  Requires Re(s) > 0.
LocalZetaValue local_zeta_brute(const LocalZetaSpec& spec);

// The closed form: L(4+s,chi)^{-1} sum_k chi(p)^k p^{-k(1+s)} [p^{-k} alpha integral]
// times the finite geometric t-mass determined by v_p(P(b^{-1}, p^{-k} alpha)).
cplx local_zeta_closed(const LocalZetaSpec& spec);

// ---------------------------------------------------------------------------
// The Dirichlet-series factor: an Euler product of local t-integrals against
// an everywhere-unramified character, normalized so the on-quadric value is
// the ratio L^S(s+3, chi) / L^S(s+4, chi).
// ---------------------------------------------------------------------------

struct DirichletSpec {
    Rat b = 1;
    AlphaPoint<Rat> alpha;
    std::function<cplx(std::int64_t)> chi_p; // chi(p) per prime; null = trivial
    bool chi_trivial = true;
    cplx s{0.0, 0.0};
    std::vector<std::int64_t> excluded;      // finite primes of S
    std::int64_t pmax = 10000;               // Euler truncation
};

struct DirichletValue {
    cplx value{0.0, 0.0};
    double tail = 0;
    bool on_quadric = false;
};

DirichletValue dirichlet_series(const DirichletSpec& spec);

// Res_{s=1} zeta^S / zeta^S(2), the residue constant of (s+2) D at s = -2,
// with zeta^S(2) Euler-truncated at pmax.
TailValue dirichlet_residue_constant(const std::vector<std::int64_t>& excluded, std::int64_t pmax);

// ---------------------------------------------------------------------------
// Ramified vanishing through unit averaging, on indicator test data
// 1_{gamma p^{-m} + p^k gl2(Z_p)}.
// ---------------------------------------------------------------------------

struct RamifiedShell {
    int t_valuation = 0;
    cplx value{0.0, 0.0};
    bool exact_zero = false;
    bool unit_invariant = false; // I(ut) = I(t) verified for u in 1 + p^K
    std::int64_t terms = 0;
};

struct RamifiedCheckReport {
    int stability_level = 0;  // K with F(ut) = F(t) for u in 1 + p^K
    bool annihilated = false; // conductor exceeds K, so every shell dies
    std::vector<RamifiedShell> shells;
    bool all_shells_zero = true;
};

// Test data f1 = 1_{gamma p^{-m} + p^k gl2(Z_p)}, f2 = 1_{beta p^{-m} + p^k gl2(Z_p)}
// with integral alpha; probes the t-shells in [shell_lo, shell_hi].
struct RamifiedCheckSpec {
    std::int64_t p = 3;
    Mat2<std::int64_t> gamma = Mat2<std::int64_t>::identity();
    Mat2<std::int64_t> beta = Mat2<std::int64_t>::identity();
    int m = 0;
    int k = 1;
    std::int64_t b = 1; // p-adic unit
    UnitChar chi = UnitChar::unramified(3, {1.0, 0.0});
    Mat2<std::int64_t> alpha_mat{};
    std::int64_t alpha_y1 = 0, alpha_y2 = 0;
    int shell_lo = 0, shell_hi = 1;
    std::int64_t budget = std::int64_t(1) << 26;
};

RamifiedCheckReport ramified_vanishing_check(const RamifiedCheckSpec& spec);

} // namespace zeta
} // namespace klab
