#pragma once

#include <cstdint>
#include <vector>

#include "klab/residue.hpp"

namespace klab {

// A unitary character of Q_p^x.  Writing t = p^v u with u a unit,
// chi(t) = z^v * chi_ram(u).  Unramified characters ignore u entirely;
// ramified ones carry a character of (Z/p^k)^x of exact conductor p^k,
// realized through a generator of the unit group for odd p and through
// the <-1> x <5> decomposition for p = 2.
class UnitChar {
public:
    // Unramified: determined by the value at the uniformizer.
    static UnitChar unramified(std::int64_t p, cplx value_at_p);

    // Ramified of exact conductor p^k.  For odd p the unit-group part is
    // u = g^j |-> e^{2 pi i r j / phi(p^k)} with g a fixed generator; r must
    // keep the character nontrivial on 1 + p^{k-1} Z_p.  For p = 2 the pair
    // (eps, r) acts on the <-1> x <5> coordinates.
    static UnitChar ramified(std::int64_t p, int k, std::int64_t r, int eps = 0,
                             cplx value_at_p = {1.0, 0.0});

    // The quadratic character mod p (odd p), i.e. the Legendre symbol.
    static UnitChar quadratic(std::int64_t p);

    bool is_ramified() const { return k_ > 0; }
    std::int64_t p() const { return p_; }
    int conductor_exponent() const { return k_; }
    cplx value_at_uniformizer() const { return z_; }

    // chi(p^v * u).  u must be a unit mod p^k (ignored when unramified).
    cplx eval(std::int64_t v, std::int64_t u = 1) const;

    // The unit-group part alone.
    cplx eval_unit(std::int64_t u) const;

private:
    UnitChar() = default;

    std::int64_t p_ = 2;
    int k_ = 0;            // conductor exponent; 0 means unramified
    cplx z_ = {1.0, 0.0};  // value at p
    std::int64_t r_ = 0;
    int eps_ = 0;
    std::int64_t pk_ = 1;
    std::int64_t phi_ = 1;
    std::vector<std::int32_t> dlog_; // discrete log table on units mod p^k
};

} // namespace klab
