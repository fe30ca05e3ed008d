#pragma once

#include <cstdint>
#include <vector>

#include "klab/residue.hpp"

namespace klab {

// An element of Z[zeta_N], N = p^n, stored as an integer vector in the
// group-ring basis 1, zeta, ..., zeta^{N-1}.  Equality and zero tests go
// through the canonical form of degree < phi(p^n), i.e. reduction modulo
// the sparse cyclotomic relation 1 + x^{p^{n-1}} + ... + x^{(p-1)p^{n-1}}.
class CycloSum {
public:
    CycloSum() : CycloSum(2, 0) {}
    CycloSum(std::int64_t p, int n);

    static CycloSum basis(std::int64_t p, int n, std::int64_t idx, std::int64_t weight = 1);
    static CycloSum integer(std::int64_t p, int n, std::int64_t value);

    std::int64_t p() const { return p_; }
    int level() const { return n_; }
    std::int64_t order() const { return order_; }
    const std::vector<std::int64_t>& coeffs() const { return c_; }

    // Accumulate weight * zeta^idx; idx taken mod the order.  Hot path.
    void add_basis(std::int64_t idx, std::int64_t weight = 1) {
        c_[static_cast<std::size_t>(mod_reduce(idx, order_))] += weight;
    }

    CycloSum& operator+=(const CycloSum& o);
    CycloSum& operator-=(const CycloSum& o);
    CycloSum& operator*=(std::int64_t k);
    friend CycloSum operator+(CycloSum a, const CycloSum& b) { return a += b; }
    friend CycloSum operator-(CycloSum a, const CycloSum& b) { return a -= b; }
    friend CycloSum operator*(std::int64_t k, CycloSum a) { return a *= k; }
    CycloSum operator*(const CycloSum& o) const; // convolution in the group ring

    // Raise the root-of-unity order to p^n' (n' >= n), reindexing coefficients.
    CycloSum lifted_to_level(int n_target) const;

    // Coefficient vector reduced mod the cyclotomic polynomial, length phi(p^n).
    std::vector<std::int64_t> canonical() const;

    bool is_zero() const;
    bool equals(const CycloSum& o) const;

    cplx to_complex() const;

private:
    std::int64_t p_;
    int n_;
    std::int64_t order_;
    std::vector<std::int64_t> c_;
};

// Exact value of psi(x) as a basis vector of Z[zeta_{p^n}].  Signals if the
// level is insufficient (x.m > ctx.n).
inline CycloSum psi_exact(const PadicPhase& x, const ResidueCtx& ctx) {
    if (x.p != ctx.p) throw std::invalid_argument("psi_exact: mixed primes");
    if (x.m > ctx.n) throw std::domain_error("psi_exact: level p^n below phase denominator");
    return CycloSum::basis(ctx.p, ctx.n, x.num * ipow(ctx.p, ctx.n - x.m));
}

} // namespace klab
