#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "klab/residue.hpp"

namespace klab {
namespace zeta {

// A numeric value with a bound on the truncation error of its computation.
struct TailValue {
    double value = 0;
    double tail = 0;
};

// Riemann zeta for real sigma > 0, sigma != 1, by Euler-Maclaurin summation.
// Accurate to roughly 1e-14 relative; safe arbitrarily close to the pole.
double zeta_em(double sigma, int cutoff = 2000);

// zeta^S(sigma) = zeta(sigma) * prod_{p in S} (1 - p^{-sigma}).
double zeta_S(double sigma, const std::vector<std::int64_t>& excluded);

// Truncated Euler product over primes p <= pmax, p not in S, for the L-factor
// prod (1 - chi(p) p^{-s})^{-1}, with a rigorous multiplicative tail bound.
// Requires Re(s) > 1.
template <typename ChiFn>
std::pair<cplx, double> euler_product(ChiFn chi, cplx s, const std::vector<std::int64_t>& excluded,
                                      std::int64_t pmax);

// Res_{s=1} zeta^S(s) = prod_{p in S} (1 - 1/p).
double zeta_S_residue(const std::vector<std::int64_t>& excluded);

std::vector<std::int64_t> primes_up_to(std::int64_t n);

// --- template implementation -------------------------------------------------

template <typename ChiFn>
std::pair<cplx, double> euler_product(ChiFn chi, cplx s, const std::vector<std::int64_t>& excluded,
                                      std::int64_t pmax) {
    double sigma = s.real();
    if (sigma <= 1.0) throw std::domain_error("euler_product: needs Re(s) > 1");
    cplx prod{1.0, 0.0};
    for (std::int64_t p : primes_up_to(pmax)) {
        bool skip = false;
        for (auto q : excluded) skip = skip || q == p;
        if (skip) continue;
        cplx ps = std::exp(-s * std::log(static_cast<double>(p)));
        prod /= (1.0 - chi(p) * ps);
    }
    // |log of the missing factors| <= sum_{n > pmax} n^{-sigma} / (1 - 2^{-sigma})-ish;
    // bounded by the integral test.
    double tail_log = std::pow(static_cast<double>(pmax), 1.0 - sigma) / (sigma - 1.0) * 1.5;
    double tail = std::abs(prod) * (std::expm1(tail_log));
    return {prod, tail};
}

} // namespace zeta
} // namespace klab
