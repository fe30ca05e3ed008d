#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace klab {

using cplx = std::complex<double>;

constexpr double kTau = 6.283185307179586476925286766559;

// ---------------------------------------------------------------------------
// Modular helpers on int64, intermediates widened through __int128.
// ---------------------------------------------------------------------------

inline std::int64_t mod_reduce(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

inline std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
    return static_cast<std::int64_t>(static_cast<__int128>(a) * b % m);
}

inline std::int64_t pow_mod(std::int64_t a, std::int64_t e, std::int64_t m) {
    if (m == 1) return 0;
    std::int64_t r = 1;
    a = mod_reduce(a, m);
    while (e > 0) {
        if (e & 1) r = mul_mod(r, a, m);
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    return r;
}

// Inverse of a mod m, requiring gcd(a, m) = 1.
inline std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
    std::int64_t t = 0, newt = 1, r = m, newr = mod_reduce(a, m);
    while (newr != 0) {
        std::int64_t q = r / newr;
        std::int64_t tmp = t - q * newt;
        t = newt; newt = tmp;
        tmp = r - q * newr;
        r = newr; newr = tmp;
    }
    if (r != 1) throw std::domain_error("inv_mod: argument not a unit");
    return t < 0 ? t + m : t;
}

inline std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t r = 1;
    while (e-- > 0) {
        if (__builtin_mul_overflow(r, b, &r))
            throw std::overflow_error("ipow: overflow");
    }
    return r;
}

inline bool is_prime_i64(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// ---------------------------------------------------------------------------
// ResidueCtx / ResidueElem: the ring Z/p^n.
// ---------------------------------------------------------------------------

struct ResidueCtx {
    std::int64_t p = 2;
    int n = 0;
    std::int64_t modulus = 1; // p^n

    ResidueCtx() = default;
    ResidueCtx(std::int64_t p_, int n_) : p(p_), n(n_) {
        if (!is_prime_i64(p)) throw std::invalid_argument("ResidueCtx: p must be prime");
        if (n < 0) throw std::invalid_argument("ResidueCtx: n must be >= 0");
        modulus = ipow(p, n);
    }

    bool operator==(const ResidueCtx& o) const { return p == o.p && n == o.n; }
};

class ResidueElem {
public:
    ResidueElem() = default;
    ResidueElem(ResidueCtx ctx, std::int64_t v) : ctx_(ctx), v_(mod_reduce(v, ctx.modulus)) {}

    const ResidueCtx& ctx() const { return ctx_; }
    std::int64_t value() const { return v_; }

    bool is_unit() const { return ctx_.n == 0 || v_ % ctx_.p != 0; }

    ResidueElem inverse() const {
        if (!is_unit()) throw std::domain_error("ResidueElem: not a unit");
        return {ctx_, ctx_.modulus == 1 ? 0 : inv_mod(v_, ctx_.modulus)};
    }

    friend ResidueElem operator+(ResidueElem a, ResidueElem b) { a.match(b); return {a.ctx_, a.v_ + b.v_}; }
    friend ResidueElem operator-(ResidueElem a, ResidueElem b) { a.match(b); return {a.ctx_, a.v_ - b.v_}; }
    friend ResidueElem operator*(ResidueElem a, ResidueElem b) { a.match(b); return {a.ctx_, mul_mod(a.v_, b.v_, a.ctx_.modulus)}; }
    ResidueElem operator-() const { return {ctx_, -v_}; }
    bool operator==(const ResidueElem& o) const { return ctx_ == o.ctx_ && v_ == o.v_; }

private:
    void match(const ResidueElem& o) const {
        if (!(ctx_ == o.ctx_)) throw std::invalid_argument("ResidueElem: mixed rings");
    }
    ResidueCtx ctx_;
    std::int64_t v_ = 0;
};

// ---------------------------------------------------------------------------
// PadicPhase: a class num/p^m in Q_p/Z_p, stored in lowest terms.
// psi maps it to the unit circle, psi(a/p^m) = e^{2 pi i a / p^m}.
// ---------------------------------------------------------------------------

struct PadicPhase {
    std::int64_t p = 2;
    std::int64_t num = 0; // in [0, p^m)
    int m = 0;

    PadicPhase() = default;
    PadicPhase(std::int64_t p_, std::int64_t num_, int m_) : p(p_), num(num_), m(m_) {
        if (!is_prime_i64(p)) throw std::invalid_argument("PadicPhase: p must be prime");
        if (m < 0) throw std::invalid_argument("PadicPhase: m must be >= 0");
        normalize();
    }

    // The class of (a / (p^e * b0)) with p not dividing b0: a * b0^{-1} / p^e.
    static PadicPhase from_fraction(std::int64_t p, std::int64_t a, std::int64_t b) {
        if (b == 0) throw std::invalid_argument("PadicPhase: zero denominator");
        if (b < 0) { a = -a; b = -b; }
        int e = 0;
        while (b % p == 0) { b /= p; ++e; }
        std::int64_t pe = ipow(p, e);
        std::int64_t a0 = mod_reduce(a, pe);
        return {p, mul_mod(a0, inv_mod(mod_reduce(b, pe == 1 ? 1 : pe), pe), pe), e};
    }

    bool is_zero() const { return m == 0; }

    friend PadicPhase operator+(PadicPhase a, const PadicPhase& b) {
        if (a.p != b.p) throw std::invalid_argument("PadicPhase: mixed primes");
        int mm = std::max(a.m, b.m);
        std::int64_t scale_a = ipow(a.p, mm - a.m), scale_b = ipow(a.p, mm - b.m);
        return {a.p, a.num * scale_a + b.num * scale_b, mm};
    }
    PadicPhase operator-() const { return {p, m == 0 ? 0 : ipow(p, m) - num, m}; }
    friend PadicPhase operator-(const PadicPhase& a, const PadicPhase& b) { return a + (-b); }

    // Scale by an integer (phases form a Z-module).
    friend PadicPhase operator*(std::int64_t k, const PadicPhase& x) {
        std::int64_t pm = ipow(x.p, x.m);
        return {x.p, mul_mod(mod_reduce(k, pm), x.num, pm == 1 ? 1 : pm), x.m};
    }

    bool operator==(const PadicPhase& o) const { return p == o.p && num == o.num && m == o.m; }

private:
    void normalize() {
        std::int64_t pm = ipow(p, m);
        num = mod_reduce(num, pm);
        while (m > 0 && num % p == 0) { num /= p; --m; }
        if (num == 0) m = 0;
    }
};

inline cplx psi(const PadicPhase& x) {
    if (x.m == 0) return {1.0, 0.0};
    double arg = kTau * static_cast<double>(x.num) / static_cast<double>(ipow(x.p, x.m));
    return {std::cos(arg), std::sin(arg)};
}

} // namespace klab
