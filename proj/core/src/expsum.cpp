#include "klab/expsum.hpp"

#include <cmath>
#include <thread>

namespace klab {
namespace expsum {

namespace {

std::int64_t budget_for(Backend b) {
    return b == Backend::Exact ? kExactBudget : kFloatBudget;
}

// Roots-of-unity table e^{2 pi i a / N}, a = 0..N-1.
std::vector<cplx> psi_table(std::int64_t N) {
    std::vector<cplx> t(static_cast<std::size_t>(N));
    for (std::int64_t a = 0; a < N; ++a) {
        double arg = kTau * static_cast<double>(a) / static_cast<double>(N);
        t[static_cast<std::size_t>(a)] = {std::cos(arg), std::sin(arg)};
    }
    return t;
}

// Raw sum over v mod p^m of psi(P(b,v)/p^m) as a CycloSum at level m,
// enumerating one x1-slice range.
void gaussian_slice(std::int64_t p, int m, std::int64_t b, std::int64_t x1_lo,
                    std::int64_t x1_hi, CycloSum& acc) {
    const std::int64_t pm = ipow(p, m);
    for (std::int64_t x1 = x1_lo; x1 < x1_hi; ++x1)
        for (std::int64_t x2 = 0; x2 < pm; ++x2)
            for (std::int64_t x3 = 0; x3 < pm; ++x3) {
                const std::int64_t x2x3 = mul_mod(x2, x3, pm);
                for (std::int64_t x4 = 0; x4 < pm; ++x4) {
                    const std::int64_t det = mod_reduce(mul_mod(x1, x4, pm) - x2x3, pm);
                    const std::int64_t bdet = mul_mod(b, det, pm);
                    for (std::int64_t z1 = 0; z1 < pm; ++z1) {
                        const std::int64_t base = mod_reduce(bdet - 0, pm);
                        std::int64_t idx = base;
                        // phase (b det - z1 z2)/p^m; walk z2 via idx -= z1 steps
                        for (std::int64_t z2 = 0; z2 < pm; ++z2) {
                            acc.add_basis(idx);
                            idx -= z1;
                            if (idx < 0) idx += pm;
                        }
                    }
                }
            }
}

CycloSum gaussian_raw_level_m(std::int64_t p, int m, std::int64_t b, int slices) {
    const std::int64_t pm = ipow(p, m);
    if (slices <= 1) {
        CycloSum acc(p, m);
        gaussian_slice(p, m, b, 0, pm, acc);
        return acc;
    }
    std::vector<CycloSum> parts;
    parts.reserve(static_cast<std::size_t>(slices));
    for (int s = 0; s < slices; ++s) parts.emplace_back(p, m);
    std::vector<std::thread> pool;
    for (int s = 0; s < slices; ++s) {
        std::int64_t lo = pm * s / slices, hi = pm * (s + 1) / slices;
        pool.emplace_back(gaussian_slice, p, m, b, lo, hi, std::ref(parts[static_cast<std::size_t>(s)]));
    }
    for (auto& t : pool) t.join();
    CycloSum acc(p, m);
    for (auto& part : parts) acc += part; // fixed merge order
    return acc;
}

// Sum over (z1, z2) mod p^m of psi(-z1 z2 / p^m), by enumeration.
CycloSum z_plane_raw(std::int64_t p, int m) {
    const std::int64_t pm = ipow(p, m);
    CycloSum acc(p, m);
    for (std::int64_t z1 = 0; z1 < pm; ++z1) {
        std::int64_t idx = 0;
        for (std::int64_t z2 = 0; z2 < pm; ++z2) {
            acc.add_basis(idx);
            idx -= z1;
            if (idx < 0) idx += pm;
        }
    }
    return acc;
}

// Sum over T mod p^m of psi(b det T / p^m).
CycloSum t_block_raw(std::int64_t p, int m, std::int64_t b) {
    const std::int64_t pm = ipow(p, m);
    CycloSum acc(p, m);
    for (std::int64_t x1 = 0; x1 < pm; ++x1)
        for (std::int64_t x2 = 0; x2 < pm; ++x2)
            for (std::int64_t x3 = 0; x3 < pm; ++x3) {
                const std::int64_t x2x3 = mul_mod(x2, x3, pm);
                std::int64_t det0 = mod_reduce(-x2x3, pm);
                const std::int64_t bx1 = mul_mod(b, x1, pm);
                std::int64_t idx = mul_mod(b, det0, pm);
                for (std::int64_t x4 = 0; x4 < pm; ++x4) {
                    acc.add_basis(idx);
                    idx += bx1;
                    if (idx >= pm) idx -= pm;
                }
            }
    return acc;
}

SumResult finish_exact(const ResidueCtx& ctx, int m, CycloSum raw_level_m,
                       std::int64_t terms, const std::string& tag) {
    // Raw sum over v mod p^n is p^{6(n-m)} times the level-m sum.
    std::int64_t lift = ipow(ctx.p, 6 * (ctx.n - m));
    CycloSum raw = raw_level_m.lifted_to_level(ctx.n);
    raw *= lift;
    SumResult r;
    r.exact = raw;
    double norm = std::pow(static_cast<double>(ctx.p), -6.0 * ctx.n);
    r.value = norm * raw.to_complex();
    r.term_count = terms;
    r.backend = tag;
    return r;
}

} // namespace

void SumSpec::validate() const {
    if (m < 0 || m > ctx.n) throw std::invalid_argument("SumSpec: need 0 <= m <= n");
    if (mod_reduce(b, ctx.p) == 0) throw std::invalid_argument("SumSpec: b must be a unit");
    if (mod_reduce(x, ctx.p) == 0) throw std::invalid_argument("SumSpec: x must be a unit");
}

SumResult gaussian_sum(const SumSpec& spec) { return gaussian_sum_partitioned(spec, 1); }

SumResult gaussian_sum_partitioned(const SumSpec& spec, int slices) {
    spec.validate();
    if (spec.alpha) throw std::invalid_argument("gaussian_sum: alpha must be absent");
    const std::int64_t p = spec.ctx.p;
    const int m = spec.m;
    const std::int64_t pm = ipow(p, m);
    const std::int64_t budget = budget_for(spec.backend);
    const std::int64_t full = ipow(pm, 6);

    if (spec.backend == Backend::Floating) {
        if (full > budget) throw std::length_error("gaussian_sum: term count above floating budget");
        auto tab = psi_table(pm);
        cplx acc{0.0, 0.0};
        const std::int64_t bb = mod_reduce(spec.b, pm);
        for (std::int64_t x1 = 0; x1 < pm; ++x1)
            for (std::int64_t x2 = 0; x2 < pm; ++x2)
                for (std::int64_t x3 = 0; x3 < pm; ++x3) {
                    const std::int64_t x2x3 = mul_mod(x2, x3, pm);
                    for (std::int64_t x4 = 0; x4 < pm; ++x4) {
                        const std::int64_t bdet = mul_mod(bb, mod_reduce(mul_mod(x1, x4, pm) - x2x3, pm), pm);
                        for (std::int64_t z1 = 0; z1 < pm; ++z1) {
                            std::int64_t idx = bdet;
                            for (std::int64_t z2 = 0; z2 < pm; ++z2) {
                                acc += tab[static_cast<std::size_t>(idx)];
                                idx -= z1;
                                if (idx < 0) idx += pm;
                            }
                        }
                    }
                }
        SumResult r;
        r.value = acc * std::pow(static_cast<double>(p), -6.0 * m);
        r.term_count = full;
        r.backend = "floating/full6";
        return r;
    }

    const std::int64_t bb = mod_reduce(spec.b, pm);
    if (full <= budget) {
        CycloSum raw = gaussian_raw_level_m(p, m, bb, slices);
        return finish_exact(spec.ctx, m, std::move(raw), full, "exact/full6");
    }
    return gaussian_sum_zfold(spec);
}

SumResult gaussian_sum_zfold(const SumSpec& spec) {
    spec.validate();
    if (spec.alpha) throw std::invalid_argument("gaussian_sum: alpha must be absent");
    const std::int64_t p = spec.ctx.p;
    const int m = spec.m;
    const std::int64_t pm = ipow(p, m);
    // The (z1, z2)-plane factors off the T-block; both factors stay brute.
    const std::int64_t cost = ipow(pm, 4) + ipow(pm, 2);
    if (cost > budget_for(Backend::Exact))
        throw std::length_error("gaussian_sum: term count above exact budget");
    CycloSum raw = t_block_raw(p, m, mod_reduce(spec.b, pm)) * z_plane_raw(p, m);
    return finish_exact(spec.ctx, m, std::move(raw), cost, "exact/zfold");
}

SumResult twisted_sum(const SumSpec& spec) {
    spec.validate();
    if (!spec.alpha) throw std::invalid_argument("twisted_sum: alpha required");
    const std::int64_t p = spec.ctx.p;
    const int n = spec.ctx.n, m = spec.m;
    const PadicAlpha& alpha = *spec.alpha;
    const int emax = alpha.max_denominator_exponent();
    if (n < m + emax)
        throw std::invalid_argument("twisted_sum: level n below m + denominator exponent");

    const std::int64_t pm = ipow(p, m);
    const std::int64_t level = ipow(p, m + emax);
    const std::int64_t inner_terms = ipow(pm, 6);
    if (inner_terms > budget_for(Backend::Exact))
        throw std::length_error("twisted_sum: term count above exact budget");

    auto coords = alpha.coords_in_v_order();

    // Sum over v0 mod p^m of psi((x P(b,v0) + <alpha, v0>)/p^m), phases carried
    // at level p^{m+emax}.
    CycloSum inner(p, m + emax);
    const std::int64_t bb = mod_reduce(spec.b, pm);
    const std::int64_t xx = mod_reduce(spec.x, pm);
    std::array<std::vector<std::int64_t>, 6> lin; // per-axis phase index tables
    for (int i = 0; i < 6; ++i) {
        lin[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(pm));
        const std::int64_t scale = ipow(p, emax - coords[static_cast<std::size_t>(i)].e);
        for (std::int64_t w = 0; w < pm; ++w) {
            // alpha_i * w as a multiple of 1/p^{m+emax}
            __int128 t = static_cast<__int128>(coords[static_cast<std::size_t>(i)].num) * w * scale;
            lin[static_cast<std::size_t>(i)][static_cast<std::size_t>(w)] =
                mod_reduce(static_cast<std::int64_t>(t % level), level);
        }
    }
    const std::int64_t phase_scale = ipow(p, emax); // lifts P/p^m to level m+emax
    for (std::int64_t x1 = 0; x1 < pm; ++x1)
        for (std::int64_t x2 = 0; x2 < pm; ++x2)
            for (std::int64_t x3 = 0; x3 < pm; ++x3) {
                const std::int64_t x2x3 = mul_mod(x2, x3, pm);
                const std::int64_t l123 = mod_reduce(lin[0][x1] + lin[1][x2] + lin[2][x3], level);
                for (std::int64_t x4 = 0; x4 < pm; ++x4) {
                    const std::int64_t det = mod_reduce(mul_mod(x1, x4, pm) - x2x3, pm);
                    const std::int64_t xbdet = mul_mod(xx, mul_mod(bb, det, pm), pm);
                    const std::int64_t l1234 = mod_reduce(l123 + lin[3][x4], level);
                    for (std::int64_t z1 = 0; z1 < pm; ++z1) {
                        const std::int64_t l12345 = mod_reduce(l1234 + lin[4][z1], level);
                        for (std::int64_t z2 = 0; z2 < pm; ++z2) {
                            const std::int64_t pp = mod_reduce(xbdet - mul_mod(mul_mod(xx, z1, pm), z2, pm), pm);
                            const std::int64_t idx = mod_reduce(pp * phase_scale + l12345 + lin[5][z2], level);
                            inner.add_basis(idx);
                        }
                    }
                }
            }

    // Factor from the remaining range v = v0 + p^m w, w mod p^{n-m}: the P-part
    // of the phase is periodic, only <alpha, w> survives, and it splits by axis.
    CycloSum factor = CycloSum::integer(p, m + emax, 1);
    const std::int64_t wrange = ipow(p, n - m);
    for (int i = 0; i < 6; ++i) {
        CycloSum axis(p, m + emax);
        const PadicScalar& s = coords[static_cast<std::size_t>(i)];
        const std::int64_t pe = ipow(p, s.e);
        for (std::int64_t w = 0; w < wrange; ++w) {
            std::int64_t a = mul_mod(mod_reduce(s.num, pe), mod_reduce(w, pe), pe == 1 ? 1 : pe);
            axis.add_basis(a * ipow(p, m + emax - s.e));
        }
        factor = factor * axis;
    }

    CycloSum raw = (inner * factor).lifted_to_level(n);
    SumResult r;
    r.exact = raw;
    r.value = raw.to_complex() * std::pow(static_cast<double>(p), -6.0 * n);
    r.term_count = inner_terms;
    r.backend = "exact/split";
    return r;
}

SumResult twisted_closed_form(const SumSpec& spec) {
    spec.validate();
    if (!spec.alpha) throw std::invalid_argument("twisted_closed_form: alpha required");
    const std::int64_t p = spec.ctx.p;
    const int n = spec.ctx.n, m = spec.m;
    SumResult r;
    r.backend = "closed-form";
    if (!spec.alpha->integral()) {
        r.exact = CycloSum(p, n);
        r.value = {0.0, 0.0};
        return r;
    }
    const std::int64_t pm = ipow(p, m);
    // -P(b^{-1}, alpha) x^{-1} mod p^m over residues.
    auto c = spec.alpha->coords_in_v_order(); // (B11,B21,B12,B22,y1,y2)
    const std::int64_t binv = pm == 1 ? 0 : inv_mod(mod_reduce(spec.b, pm), pm);
    const std::int64_t detB = mod_reduce(
        mul_mod(mod_reduce(c[0].num, pm), mod_reduce(c[3].num, pm), pm) -
        mul_mod(mod_reduce(c[2].num, pm), mod_reduce(c[1].num, pm), pm), pm);
    const std::int64_t pval = mod_reduce(mul_mod(binv, detB, pm) -
                                         mul_mod(mod_reduce(c[4].num, pm), mod_reduce(c[5].num, pm), pm), pm);
    const std::int64_t xinv = pm == 1 ? 0 : inv_mod(mod_reduce(spec.x, pm), pm);
    const std::int64_t idx = pm == 1 ? 0 : mod_reduce(-mul_mod(pval, xinv, pm), pm);

    CycloSum expected = CycloSum::basis(p, n, idx * ipow(p, n - m), ipow(p, 6 * n - 3 * m));
    r.exact = expected;
    r.value = expected.to_complex() * std::pow(static_cast<double>(p), -6.0 * n);
    return r;
}

std::int64_t quadric_count(std::int64_t p, std::int64_t b) {
    if (!is_prime_i64(p)) throw std::invalid_argument("quadric_count: p must be prime");
    if (mod_reduce(b, p) == 0) throw std::invalid_argument("quadric_count: b must be a unit");
    std::int64_t affine = 0;
    for (std::int64_t x1 = 0; x1 < p; ++x1)
        for (std::int64_t x2 = 0; x2 < p; ++x2)
            for (std::int64_t x3 = 0; x3 < p; ++x3)
                for (std::int64_t x4 = 0; x4 < p; ++x4) {
                    const std::int64_t lhs = mod_reduce(b * mod_reduce(x1 * x4 - x2 * x3, p), p);
                    for (std::int64_t z1 = 0; z1 < p; ++z1)
                        for (std::int64_t z2 = 0; z2 < p; ++z2)
                            if (lhs == mul_mod(z1, z2, p)) ++affine;
                }
    // Drop the origin and pass to lines through 0.
    return (affine - 1) / (p - 1);
}

SumResult ramanujan_sum(std::int64_t p, int m, std::int64_t a) {
    if (m < 1) throw std::invalid_argument("ramanujan_sum: m >= 1 required");
    const std::int64_t pm = ipow(p, m);
    CycloSum raw(p, m);
    std::int64_t aa = mod_reduce(a, pm);
    for (std::int64_t x = 0; x < pm; ++x) {
        if (x % p == 0) continue;
        raw.add_basis(mul_mod(x, aa, pm));
    }
    SumResult r;
    r.exact = raw;
    r.value = raw.to_complex();
    r.term_count = pm - pm / p;
    r.backend = "exact/full";
    return r;
}

std::vector<std::array<std::int64_t, 6>> enumerate_critical(std::int64_t p, int j, std::int64_t b) {
    const std::int64_t pj = ipow(p, j);
    if (ipow(pj, 6) > kFloatBudget) throw std::length_error("enumerate_critical: range too large");
    std::vector<std::array<std::int64_t, 6>> sols;
    for (std::int64_t x1 = 0; x1 < pj; ++x1)
        for (std::int64_t x2 = 0; x2 < pj; ++x2)
            for (std::int64_t x3 = 0; x3 < pj; ++x3)
                for (std::int64_t x4 = 0; x4 < pj; ++x4)
                    for (std::int64_t z1 = 0; z1 < pj; ++z1)
                        for (std::int64_t z2 = 0; z2 < pj; ++z2) {
                            // grad P = (b x4, -b x3, -b x2, b x1, -z2, -z1)
                            if (mod_reduce(b * x4, pj) || mod_reduce(b * x3, pj) ||
                                mod_reduce(b * x2, pj) || mod_reduce(b * x1, pj) ||
                                mod_reduce(z2, pj) || mod_reduce(z1, pj))
                                continue;
                            sols.push_back({x1, x2, x3, x4, z1, z2});
                        }
    return sols;
}

SumResult stationary_phase_eval(const SumSpec& spec) {
    spec.validate();
    if (spec.m < 2) throw std::invalid_argument("stationary_phase_eval: needs m >= 2");
    if (spec.alpha) throw std::invalid_argument("stationary_phase_eval: alpha must be absent");
    const std::int64_t p = spec.ctx.p;
    const int m = spec.m;
    const std::int64_t pm = ipow(p, m);
    const std::int64_t bb = mod_reduce(spec.b, pm);

    // Critical locus: gradient kernel mod p, lifted through the invertible
    // Hessian (one exact linear correction per level).
    auto base = enumerate_critical(p, 1, bb);
    const std::int64_t binv = inv_mod(bb, pm);
    std::vector<std::array<std::int64_t, 6>> crit;
    for (auto v : base) {
        for (int lvl = 1; lvl < m; ++lvl) {
            // v <- v - H^{-1} grad P(v) exactly
            std::array<std::int64_t, 6> g = {
                mod_reduce(bb * v[3], pm), mod_reduce(-bb * v[2], pm), mod_reduce(-bb * v[1], pm),
                mod_reduce(bb * v[0], pm), mod_reduce(-v[5], pm),      mod_reduce(-v[4], pm)};
            std::array<std::int64_t, 6> hg = {
                mul_mod(binv, g[3], pm), mod_reduce(-mul_mod(binv, g[2], pm), pm),
                mod_reduce(-mul_mod(binv, g[1], pm), pm), mul_mod(binv, g[0], pm),
                mod_reduce(-g[5], pm), mod_reduce(-g[4], pm)};
            for (int i = 0; i < 6; ++i) v[static_cast<std::size_t>(i)] =
                mod_reduce(v[static_cast<std::size_t>(i)] - hg[static_cast<std::size_t>(i)], pm);
        }
        // keep only genuine solutions mod p^m
        std::array<std::int64_t, 6> g = {
            mod_reduce(bb * v[3], pm), mod_reduce(-bb * v[2], pm), mod_reduce(-bb * v[1], pm),
            mod_reduce(bb * v[0], pm), mod_reduce(-v[5], pm),      mod_reduce(-v[4], pm)};
        bool ok = true;
        for (auto gi : g) ok = ok && gi == 0;
        if (ok) crit.push_back(v);
    }

    // Quadratic Gauss factor at odd valuation: since X^t H X = 2 P(b, X), the
    // halved form reduces to P itself and the factor is computed by brute force.
    cplx gauss{1.0, 0.0};
    CycloSum graw(p, 1);
    if (m % 2 == 1) {
        for (std::int64_t x1 = 0; x1 < p; ++x1)
            for (std::int64_t x2 = 0; x2 < p; ++x2)
                for (std::int64_t x3 = 0; x3 < p; ++x3)
                    for (std::int64_t x4 = 0; x4 < p; ++x4)
                        for (std::int64_t z1 = 0; z1 < p; ++z1)
                            for (std::int64_t z2 = 0; z2 < p; ++z2)
                                graw.add_basis(mod_reduce(bb * (x1 * x4 - x2 * x3) - z1 * z2, p));
        gauss = graw.to_complex() * std::pow(static_cast<double>(p), -3.0);
    }

    cplx total{0.0, 0.0};
    for (const auto& v : crit) {
        const std::int64_t det = mod_reduce(mul_mod(v[0], v[3], pm) - mul_mod(v[1], v[2], pm), pm);
        const std::int64_t pv = mod_reduce(mul_mod(bb, det, pm) - mul_mod(v[4], v[5], pm), pm);
        total += psi(PadicPhase(p, pv, m));
    }

    SumResult r;
    r.value = std::pow(static_cast<double>(p), -3.0 * m) * total * gauss;
    r.term_count = static_cast<std::int64_t>(crit.size());
    r.backend = m % 2 == 1 ? "stationary/odd" : "stationary/even";
    // Exact form when the data is exactly representable: critical phase values
    // and an integer Gauss factor.
    if (m % 2 == 0 || graw.equals(CycloSum::integer(p, 1, ipow(p, 3)))) {
        CycloSum raw(p, spec.ctx.n);
        for (const auto& v : crit) {
            const std::int64_t det = mod_reduce(mul_mod(v[0], v[3], pm) - mul_mod(v[1], v[2], pm), pm);
            const std::int64_t pv = mod_reduce(mul_mod(bb, det, pm) - mul_mod(v[4], v[5], pm), pm);
            raw.add_basis(pv * ipow(p, spec.ctx.n - m), ipow(p, 6 * spec.ctx.n - 3 * m));
        }
        r.exact = raw;
    }
    return r;
}

} // namespace expsum
} // namespace klab
