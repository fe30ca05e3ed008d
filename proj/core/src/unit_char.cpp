#include "klab/unit_char.hpp"

#include <cmath>

namespace klab {

namespace {

cplx root_of_unity(std::int64_t num, std::int64_t den) {
    double arg = kTau * static_cast<double>(mod_reduce(num, den)) / static_cast<double>(den);
    return {std::cos(arg), std::sin(arg)};
}

// Order of u in (Z/m)^x.
std::int64_t unit_order(std::int64_t u, std::int64_t m, std::int64_t group_order) {
    std::int64_t ord = 1, x = mod_reduce(u, m);
    std::int64_t acc = x;
    while (acc != 1) {
        acc = mul_mod(acc, x, m);
        if (++ord > group_order) throw std::logic_error("unit_order: not a unit");
    }
    return ord;
}

} // namespace

UnitChar UnitChar::unramified(std::int64_t p, cplx value_at_p) {
    if (!is_prime_i64(p)) throw std::invalid_argument("UnitChar: p must be prime");
    if (std::abs(std::abs(value_at_p) - 1.0) > 1e-12)
        throw std::invalid_argument("UnitChar: |chi(p)| must be 1");
    UnitChar c;
    c.p_ = p;
    c.z_ = value_at_p;
    return c;
}

UnitChar UnitChar::ramified(std::int64_t p, int k, std::int64_t r, int eps, cplx value_at_p) {
    if (!is_prime_i64(p)) throw std::invalid_argument("UnitChar: p must be prime");
    if (k < 1) throw std::invalid_argument("UnitChar: ramified character needs k >= 1");
    if (std::abs(std::abs(value_at_p) - 1.0) > 1e-12)
        throw std::invalid_argument("UnitChar: |chi(p)| must be 1");

    UnitChar c;
    c.p_ = p;
    c.k_ = k;
    c.z_ = value_at_p;
    c.r_ = r;
    c.eps_ = eps & 1;
    c.pk_ = ipow(p, k);
    c.phi_ = c.pk_ - c.pk_ / p;
    c.dlog_.assign(static_cast<std::size_t>(c.pk_), -1);

    if (p != 2) {
        // Find a generator of the cyclic group (Z/p^k)^x.
        std::int64_t g = 0;
        for (std::int64_t cand = 2; cand < c.pk_; ++cand) {
            if (cand % p == 0) continue;
            if (unit_order(cand, c.pk_, c.phi_) == c.phi_) { g = cand; break; }
        }
        if (g == 0) throw std::logic_error("UnitChar: no generator found");
        std::int64_t acc = 1;
        for (std::int64_t j = 0; j < c.phi_; ++j) {
            c.dlog_[static_cast<std::size_t>(acc)] = static_cast<std::int32_t>(j);
            acc = mul_mod(acc, g, c.pk_);
        }
    } else if (k >= 3) {
        // u = (-1)^a 5^b; store b for units congruent to 1 mod 4 and recover a
        // from u mod 4 at evaluation time.
        std::int64_t half = c.pk_ / 4; // order of 5
        std::int64_t acc = 1;
        for (std::int64_t b = 0; b < half; ++b) {
            c.dlog_[static_cast<std::size_t>(acc)] = static_cast<std::int32_t>(b);
            acc = mul_mod(acc, 5, c.pk_);
        }
    }
    // k <= 2 at p = 2 needs no table: the unit group is trivial or {1,3}.

    // Exact conductor: chi must be nontrivial on 1 + p^{k-1}.
    bool nontrivial = false;
    std::int64_t step = c.pk_ / p;
    for (std::int64_t t = 1; t < p; ++t) {
        std::int64_t u = mod_reduce(1 + t * step, c.pk_);
        if (u % p == 0) continue;
        if (std::abs(c.eval_unit(u) - cplx{1.0, 0.0}) > 1e-9) { nontrivial = true; break; }
    }
    if (!nontrivial)
        throw std::invalid_argument("UnitChar: data does not have exact conductor p^k");

    // Homomorphism sanity on a few products of units.
    for (std::int64_t u1 = 1, checked = 0; u1 < c.pk_ && checked < 24; ++u1) {
        if (u1 % p == 0) continue;
        std::int64_t u2 = mod_reduce(u1 * 2 + 1, c.pk_);
        if (u2 % p == 0) continue;
        ++checked;
        cplx lhs = c.eval_unit(mul_mod(u1, u2, c.pk_));
        cplx rhs = c.eval_unit(u1) * c.eval_unit(u2);
        if (std::abs(lhs - rhs) > 1e-9) throw std::logic_error("UnitChar: not multiplicative");
    }
    return c;
}

UnitChar UnitChar::quadratic(std::int64_t p) {
    if (p == 2) return ramified(2, 2, 1, 1);
    return ramified(p, 1, (p - 1) / 2);
}

cplx UnitChar::eval_unit(std::int64_t u) const {
    if (k_ == 0) return {1.0, 0.0};
    u = mod_reduce(u, pk_);
    if (u % p_ == 0) throw std::invalid_argument("UnitChar: argument not a unit");
    if (p_ != 2) {
        std::int64_t j = dlog_[static_cast<std::size_t>(u)];
        return root_of_unity(r_ * j, phi_);
    }
    if (k_ == 1) return {1.0, 0.0};
    int a = (u % 4 == 3) ? 1 : 0;
    if (k_ == 2) return {a && eps_ ? -1.0 : 1.0, 0.0};
    std::int64_t u1 = a ? mod_reduce(-u, pk_) : u;
    std::int64_t b = dlog_[static_cast<std::size_t>(u1)];
    cplx val = root_of_unity(r_ * b, pk_ / 4);
    if (a && eps_) val = -val;
    return val;
}

cplx UnitChar::eval(std::int64_t v, std::int64_t u) const {
    cplx zv{1.0, 0.0};
    std::int64_t e = v < 0 ? -v : v;
    cplx base = v < 0 ? std::conj(z_) : z_; // |z| = 1, so conj is the inverse
    while (e-- > 0) zv *= base;
    return zv * eval_unit(u);
}

} // namespace klab
