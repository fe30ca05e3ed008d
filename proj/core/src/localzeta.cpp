#include "klab/localzeta.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "klab/cyclo.hpp"

namespace klab {
namespace zeta {

namespace {

cplx p_power(std::int64_t p, cplx exponent) {
    return std::exp(exponent * std::log(static_cast<double>(p)));
}

// Reduce a p-integral rational mod p^k to [0, p^k).
std::int64_t rat_mod(const Rat& q, std::int64_t p, int k) {
    if (k == 0) return 0;
    if (q == 0) return 0;
    std::int64_t pk = ipow(p, k);
    Int num = rat_num(q), den = rat_den(q);
    if (den % p == 0) throw std::domain_error("rat_mod: not p-integral");
    Int nn = num % pk; if (nn < 0) nn += pk;
    Int dd = den % pk;
    return mul_mod(static_cast<std::int64_t>(nn),
                   inv_mod(static_cast<std::int64_t>(dd), pk), pk);
}

// chi(u) written as e^{2 pi i j / N}: integer exponent class used for the
// exact cancellation checks.  Requires a ramified character.
std::pair<std::int64_t, std::int64_t> chi_exponent(const UnitChar& chi, std::int64_t u) {
    // Recover the exponent by comparing against the full list of N-th roots.
    // N = order of the unit-group part, bounded by phi(p^k).
    std::int64_t pk = ipow(chi.p(), chi.conductor_exponent());
    std::int64_t phi = pk - pk / chi.p();
    cplx val = chi.eval_unit(u);
    for (std::int64_t j = 0; j < phi; ++j) {
        double arg = kTau * static_cast<double>(j) / static_cast<double>(phi);
        if (std::abs(val - cplx{std::cos(arg), std::sin(arg)}) < 1e-7) return {j, phi};
    }
    throw std::logic_error("chi_exponent: value is not a phi-th root of unity");
}

// Exact vanishing of sum_u chi(u) over the given units: the exponent classes
// must fill cosets of a nontrivial cyclic subgroup with equal counts.
bool chi_sum_balanced(const UnitChar& chi, const std::vector<std::int64_t>& units) {
    if (!chi.is_ramified()) return false;
    std::int64_t N = 0;
    std::vector<std::int64_t> count;
    for (auto u : units) {
        auto [j, n] = chi_exponent(chi, u);
        if (N == 0) { N = n; count.assign(static_cast<std::size_t>(N), 0); }
        ++count[static_cast<std::size_t>(j)];
    }
    if (N == 0) return false;
    // Occurring exponents must form the cyclic subgroup generated by their gcd,
    // hit equally often, and be nontrivial.
    std::int64_t g = N;
    std::int64_t occupied = 0, per = -1;
    for (std::int64_t j = 0; j < N; ++j) {
        if (count[static_cast<std::size_t>(j)] == 0) continue;
        ++occupied;
        g = std::gcd(g, j);
        if (per < 0) per = count[static_cast<std::size_t>(j)];
        else if (per != count[static_cast<std::size_t>(j)]) return false;
    }
    if (occupied <= 1) return false; // chi trivial on the sampled set
    std::int64_t expected = N / g;
    if (occupied != expected) return false;
    for (std::int64_t j = 0; j < N; j += g)
        if (count[static_cast<std::size_t>(j)] != per) return false;
    return true;
}

} // namespace

void LocalZetaSpec::validate() const {
    if (!is_prime_i64(p)) throw std::invalid_argument("LocalZetaSpec: p must be prime");
    if (b == 0 || valuation(b, p) != 0) throw std::invalid_argument("LocalZetaSpec: b must be a p-adic unit");
    if (M < 1) throw std::invalid_argument("LocalZetaSpec: M >= 1 required");
    if (chi.p() != p) throw std::invalid_argument("LocalZetaSpec: character prime mismatch");
}

LocalZetaValue local_zeta_brute(const LocalZetaSpec& spec) {
    spec.validate();
    if (spec.s.real() <= 0) throw std::domain_error("local_zeta_brute: needs Re(s) > 0");
    const std::int64_t p = spec.p;
    const double pinv = 1.0 / static_cast<double>(p);

    // v-coordinate order (x1,x2,x3,x4,z1,z2) pairs against
    // (B11, B21, B12, B22, y1, y2).
    std::array<Rat, 6> coef = {spec.alpha.mat.e11, spec.alpha.mat.e21, spec.alpha.mat.e12,
                               spec.alpha.mat.e22, spec.alpha.s1, spec.alpha.s2};
    int emax = 0;
    for (const auto& c : coef)
        if (c != 0) emax = std::max(emax, -std::min(0, valuation(c, p)));

    LocalZetaValue out;
    for (int m = 0; m <= spec.M; ++m) {
        ShellReport shell;
        shell.m = m;
        const std::int64_t pm = ipow(p, m);

        if (emax > 0) {
            // v = v0 + p^m w: the fractional part of alpha sees only w, and its
            // average is a full character sum on each non-integral axis.
            bool all_zero = true;
            for (const auto& c : coef) {
                int e = c == 0 ? 0 : -std::min(0, valuation(c, p));
                if (e == 0) continue;
                std::int64_t pe = ipow(p, e);
                // numerator of c * p^e, a unit mod p
                std::int64_t a = rat_mod(c * Rat(pe), p, e);
                CycloSum axis(p, e);
                for (std::int64_t w = 0; w < pe; ++w) axis.add_basis(mul_mod(a, w, pe));
                all_zero = all_zero && axis.is_zero();
            }
            shell.exact_zero = all_zero;
            shell.value = {0.0, 0.0};
            shell.terms = 0;
            if (!all_zero) throw std::logic_error("local_zeta_brute: fractional axis sum did not vanish");
            out.shells.push_back(shell);
            continue;
        }

        const std::int64_t tcost = ipow(pm, 4);
        if (tcost + ipow(pm, 2) > spec.budget)
            throw std::length_error("local_zeta_brute: shell above budget");

        const std::int64_t bb = m == 0 ? 0 : rat_mod(spec.b, p, m);
        std::array<std::int64_t, 6> ac{};
        for (int i = 0; i < 6; ++i) ac[static_cast<std::size_t>(i)] = m == 0 ? 0 : rat_mod(coef[static_cast<std::size_t>(i)], p, m);

        // F[d][a1]: T mod p^m with b det T = d, tr(B T) = a1.
        std::vector<std::int64_t> F(static_cast<std::size_t>(pm * pm), 0);
        for (std::int64_t x1 = 0; x1 < pm; ++x1)
            for (std::int64_t x2 = 0; x2 < pm; ++x2)
                for (std::int64_t x3 = 0; x3 < pm; ++x3) {
                    const std::int64_t x2x3 = mul_mod(x2, x3, pm);
                    const std::int64_t base = mod_reduce(ac[0] * x1 + ac[1] * x2 + ac[2] * x3, pm);
                    for (std::int64_t x4 = 0; x4 < pm; ++x4) {
                        const std::int64_t d = mul_mod(bb, mod_reduce(mul_mod(x1, x4, pm) - x2x3, pm), pm);
                        const std::int64_t a1 = mod_reduce(base + ac[3] * x4, pm);
                        ++F[static_cast<std::size_t>(d * pm + a1)];
                    }
                }
        // g[d][a2]: (z1,z2) mod p^m with z1 z2 = d, y1 z1 + y2 z2 = a2.
        std::vector<std::int64_t> G(static_cast<std::size_t>(pm * pm), 0);
        for (std::int64_t z1 = 0; z1 < pm; ++z1)
            for (std::int64_t z2 = 0; z2 < pm; ++z2) {
                const std::int64_t d = mul_mod(z1, z2, pm);
                const std::int64_t a2 = mod_reduce(ac[4] * z1 + ac[5] * z2, pm);
                ++G[static_cast<std::size_t>(d * pm + a2)];
            }
        // h[a]: points with P(b,v) = 0 mod p^m and <alpha, v> = a.
        std::vector<std::int64_t> h(static_cast<std::size_t>(pm), 0);
        for (std::int64_t d = 0; d < pm; ++d)
            for (std::int64_t a1 = 0; a1 < pm; ++a1) {
                const std::int64_t f = F[static_cast<std::size_t>(d * pm + a1)];
                if (f == 0) continue;
                for (std::int64_t a2 = 0; a2 < pm; ++a2) {
                    const std::int64_t g = G[static_cast<std::size_t>(d * pm + a2)];
                    if (g) h[static_cast<std::size_t>(mod_reduce(a1 + a2, pm))] += f * g;
                }
            }

        const int kchi = spec.chi.conductor_exponent();
        const int j = std::max(1, std::max(m, kchi));
        const std::int64_t pj = ipow(p, j);
        const double norm = std::pow(static_cast<double>(p), -6.0 * m);
        std::vector<std::int64_t> units;
        cplx acc{0.0, 0.0};
        for (std::int64_t u = 0; u < pj; ++u) {
            if (u % p == 0) continue;
            units.push_back(u);
            const std::int64_t ubar = m == 0 ? 0 : inv_mod(mod_reduce(u, pm), pm);
            cplx A{0.0, 0.0};
            for (std::int64_t a = 0; a < pm; ++a) {
                if (h[static_cast<std::size_t>(a)] == 0) continue;
                double arg = kTau * static_cast<double>(mul_mod(a, ubar, pm)) / static_cast<double>(pm);
                A += static_cast<double>(h[static_cast<std::size_t>(a)]) * cplx{std::cos(arg), std::sin(arg)};
            }
            acc += spec.chi.eval_unit(u) * (norm * A);
        }
        const double phi_pj = static_cast<double>(pj - pj / p);
        cplx U = acc / phi_pj;

        // Exact cancellation for ramified chi: the histogram is invariant under
        // unit scaling of the pairing value, so the unit average factors into
        // A(1) times a full character sum.
        if (spec.chi.is_ramified()) {
            bool invariant = true;
            for (std::int64_t u = 1; u < pm && invariant; ++u) {
                if (u % p == 0) continue;
                for (std::int64_t a = 0; a < pm; ++a)
                    if (h[static_cast<std::size_t>(a)] != h[static_cast<std::size_t>(mul_mod(u, a, pm))]) {
                        invariant = false;
                        break;
                    }
            }
            shell.exact_zero = invariant && chi_sum_balanced(spec.chi, units);
        }

        shell.terms = tcost;
        shell.value = p_power(p, -spec.s * static_cast<double>(m)) * spec.chi.eval(m, 1) *
                      (1.0 - pinv) * U;
        if (shell.exact_zero) shell.value = {0.0, 0.0};
        out.shells.push_back(shell);
    }

    for (const auto& sh : out.shells) out.value += sh.value;
    const double sigma = spec.s.real();
    out.tail = (1.0 - pinv) * std::pow(static_cast<double>(p), -sigma * (spec.M + 1)) /
               (1.0 - std::pow(static_cast<double>(p), -sigma));
    return out;
}

cplx local_zeta_closed(const LocalZetaSpec& spec) {
    spec.validate();
    if (spec.chi.is_ramified()) return {0.0, 0.0};
    const std::int64_t p = spec.p;
    const double pinv = 1.0 / static_cast<double>(p);
    const cplx zp = spec.chi.value_at_uniformizer();
    const cplx q1s = zp * p_power(p, -(spec.s + 1.0)); // chi(p) p^{-(1+s)}
    const cplx q3s = zp * p_power(p, -(spec.s + 3.0)); // chi(p) p^{-(3+s)}
    const cplx lfac_inv = 1.0 - zp * p_power(p, -(spec.s + 4.0));

    auto t_mass = [&](long dk) -> cplx {
        // (1 - 1/p) sum_{j<=dk} q3s^j; dk < 0 means P itself is 0.
        if (dk < 0) {
            if (std::abs(q3s) >= 1.0) throw std::domain_error("local_zeta_closed: needs Re(s) > -3");
            return (1.0 - pinv) / (1.0 - q3s);
        }
        cplx sum{0.0, 0.0}, pow{1.0, 0.0};
        for (long i = 0; i <= dk; ++i) { sum += pow; pow *= q3s; }
        return (1.0 - pinv) * sum;
    };

    // k-support: p^{-k} alpha integral, i.e. k at most the minimum valuation.
    std::array<Rat, 6> coords = {spec.alpha.mat.e11, spec.alpha.mat.e12, spec.alpha.mat.e21,
                                 spec.alpha.mat.e22, spec.alpha.s1, spec.alpha.s2};
    bool alpha_zero = true;
    long emin = std::numeric_limits<long>::max();
    for (const auto& c : coords) {
        if (c == 0) continue;
        alpha_zero = false;
        emin = std::min<long>(emin, valuation(c, p));
    }

    if (alpha_zero) {
        if (std::abs(q1s) >= 1.0)
            throw std::domain_error("local_zeta_closed: alpha = 0 needs Re(s) > -1");
        return lfac_inv * t_mass(-1) / (1.0 - q1s);
    }
    if (emin < 0) return {0.0, 0.0}; // alpha not integral: no k passes

    cplx total{0.0, 0.0};
    cplx kpow{1.0, 0.0};
    Rat binv = Rat(1) / spec.b;
    for (long k = 0; k <= emin; ++k) {
        Rat scale(1, ipow(p, static_cast<int>(k)));
        AlphaPoint<Rat> scaled{scale * spec.alpha.mat, scale * spec.alpha.s1, scale * spec.alpha.s2};
        Rat pv = phase_P(binv, scaled);
        long dk = pv == 0 ? -1 : valuation(pv, p);
        if (pv != 0 && dk < 0)
            break; // by homogeneity P scales by p^{-2k}: all later k are empty too
        total += kpow * t_mass(dk);
        kpow *= q1s;
    }
    return lfac_inv * total;
}

DirichletValue dirichlet_series(const DirichletSpec& spec) {
    DirichletValue out;
    if (spec.b == 0) throw std::invalid_argument("dirichlet_series: b must be nonzero");
    Rat pdual = phase_P_dual(spec.b, spec.alpha);
    out.on_quadric = pdual == 0;
    const double sigma = spec.s.real();

    auto chi_at = [&](std::int64_t p) -> cplx {
        return spec.chi_trivial || !spec.chi_p ? cplx{1.0, 0.0} : spec.chi_p(p);
    };
    auto excluded_has = [&](std::int64_t p) {
        return std::find(spec.excluded.begin(), spec.excluded.end(), p) != spec.excluded.end();
    };

    if (out.on_quadric) {
        if (spec.chi_trivial) {
            if (spec.s.imag() != 0.0)
                throw std::domain_error("dirichlet_series: complex s unsupported on the quadric locus");
            if (sigma == -2.0)
                throw std::domain_error("dirichlet_series: pole at s = -2; evaluate at an offset");
            out.value = zeta_S(sigma + 3.0, spec.excluded) / zeta_S(sigma + 4.0, spec.excluded);
            out.tail = std::abs(out.value) * 1e-12;
            return out;
        }
        if (sigma + 3.0 <= 1.2)
            throw std::domain_error("dirichlet_series: Euler product not certified this close to the pole");
        auto [l3, t3] = euler_product(chi_at, spec.s + 3.0, spec.excluded, spec.pmax);
        auto [l4, t4] = euler_product(chi_at, spec.s + 4.0, spec.excluded, spec.pmax);
        out.value = l3 / l4;
        out.tail = std::abs(out.value) * (t3 / std::abs(l3) + t4 / std::abs(l4));
        return out;
    }

    // Off the quadric: the t-mass is a finite product over primes dividing P^v.
    if (sigma + 4.0 <= 1.0)
        throw std::domain_error("dirichlet_series: needs Re(s) > -3");
    cplx linv{1.0, 0.0};
    for (std::int64_t p : primes_up_to(spec.pmax)) {
        if (excluded_has(p)) continue;
        linv *= 1.0 - chi_at(p) * p_power(p, -(spec.s + 4.0));
    }
    double linv_tail_log = std::pow(static_cast<double>(spec.pmax), -(sigma + 3.0)) / (sigma + 3.0) * 1.5;
    cplx jpart{1.0, 0.0};
    Int num = rat_num(pdual), den = rat_den(pdual);
    if (num < 0) num = -num;
    for (std::int64_t p : primes_up_to(spec.pmax)) {
        if (num % p != 0 && den % p != 0) continue;
        if (excluded_has(p)) { while (num % p == 0) num /= p; while (den % p == 0) den /= p; continue; }
        if (den % p == 0) { out.value = {0.0, 0.0}; out.tail = 0; return out; }
        long d = 0;
        while (num % p == 0) { num /= p; ++d; }
        cplx q3s = chi_at(p) * p_power(p, -(spec.s + 3.0));
        cplx sum{0.0, 0.0}, pw{1.0, 0.0};
        for (long i = 0; i <= d; ++i) { sum += pw; pw *= q3s; }
        jpart *= sum;
    }
    if (num != 1 || den != 1)
        throw std::range_error("dirichlet_series: P^v has prime factors beyond the truncation");
    out.value = linv * jpart;
    out.tail = std::abs(out.value) * std::expm1(linv_tail_log);
    return out;
}

TailValue dirichlet_residue_constant(const std::vector<std::int64_t>& excluded, std::int64_t pmax) {
    double res = zeta_S_residue(excluded);
    double z2 = 1.0, logtail = 0.0;
    for (std::int64_t p : primes_up_to(pmax)) {
        if (std::find(excluded.begin(), excluded.end(), p) != excluded.end()) continue;
        z2 /= 1.0 - std::pow(static_cast<double>(p), -2.0);
    }
    logtail = 1.5 / static_cast<double>(pmax);
    TailValue t;
    t.value = res / z2;
    t.tail = t.value * std::expm1(logtail);
    return t;
}

// ---------------------------------------------------------------------------

RamifiedCheckReport ramified_vanishing_check(const RamifiedCheckSpec& spec) {
    const std::int64_t p = spec.p;
    if (!is_prime_i64(p)) throw std::invalid_argument("ramified_vanishing_check: p must be prime");
    if (spec.m < 0 || spec.k < 1) throw std::invalid_argument("ramified_vanishing_check: need m >= 0, k >= 1");
    if (mod_reduce(spec.b, p) == 0) throw std::invalid_argument("ramified_vanishing_check: b must be a unit");

    RamifiedCheckReport rep;
    rep.stability_level = spec.k + spec.m;
    rep.annihilated = spec.chi.is_ramified() && spec.chi.conductor_exponent() > rep.stability_level;

    const int m = spec.m, k = spec.k;
    const std::int64_t km = ipow(p, k + m);

    for (int mt = spec.shell_lo; mt <= spec.shell_hi; ++mt) {
        RamifiedShell shell;
        shell.t_valuation = mt;

        // Determination level for all indicator conditions and phases.
        const int lam = std::max(k + 2 * m + mt, m + mt);
        const int digits = lam - (k + m);
        if (digits < 0) { rep.shells.push_back(shell); continue; }
        const std::int64_t range = ipow(p, digits);
        const std::int64_t plam = ipow(p, lam);
        if (6.0 * std::log2(static_cast<double>(range)) > std::log2(static_cast<double>(spec.budget)))
            throw std::length_error("ramified_vanishing_check: enumeration above budget");

        const int phase_level = m + mt;
        const std::int64_t pphase = phase_level > 0 ? ipow(p, phase_level) : 1;

        // Units mod p^{ju} classify both chi and the t-direction.
        const int ju = std::max({1, spec.chi.conductor_exponent(), rep.stability_level + 1, phase_level});
        const std::int64_t pju = ipow(p, ju);

        // t-support: p^m t = beta21 + p^{k+m} Z with t = p^{mt} u means
        // u p^{m+mt} = beta21 mod p^{k+m}.
        const std::int64_t b21 = mod_reduce(spec.beta.e21, km);

        std::vector<std::int64_t> units;
        std::vector<CycloSum> ivals;
        const std::int64_t bb = mod_reduce(spec.b, plam);
        for (std::int64_t u = 0; u < pju; ++u) {
            if (u % p == 0) continue;
            // admissibility of the shell point t = p^{mt} u
            if (m + mt < 0) continue; // p^m t not integral, cannot meet the coset
            if (mod_reduce(u * ipow(p, m + mt), km) != b21) continue;
            units.push_back(u);

            // Enumerate scaled coordinates X = rep + p^{k+m} xi, xi mod p^{digits}.
            CycloSum isum(p, std::max(phase_level, 0));
            const std::int64_t ubar = pphase == 1 ? 0 : inv_mod(mod_reduce(u, pphase), pphase);
            std::array<std::int64_t, 6> reps = {
                mod_reduce(spec.gamma.e11, plam), mod_reduce(spec.gamma.e12, plam),
                mod_reduce(spec.gamma.e21, plam), mod_reduce(spec.gamma.e22, plam),
                mod_reduce(-spec.beta.e11, plam), mod_reduce(spec.beta.e22, plam)};
            std::array<std::int64_t, 6> acoef = {
                mod_reduce(spec.alpha_mat.e11, plam), mod_reduce(spec.alpha_mat.e21, plam),
                mod_reduce(spec.alpha_mat.e12, plam), mod_reduce(spec.alpha_mat.e22, plam),
                mod_reduce(spec.alpha_y1, plam), mod_reduce(spec.alpha_y2, plam)};
            const std::int64_t cond_mod = km * ipow(p, m + mt); // p^{k+2m+mt}
            const std::int64_t rhs12 = mul_mod(mod_reduce(spec.beta.e12, cond_mod),
                                               mod_reduce(u * ipow(p, m + mt), cond_mod), cond_mod);
            for (std::int64_t i0 = 0; i0 < range; ++i0)
                for (std::int64_t i1 = 0; i1 < range; ++i1)
                    for (std::int64_t i2 = 0; i2 < range; ++i2)
                        for (std::int64_t i3 = 0; i3 < range; ++i3) {
                            const std::int64_t X11 = mod_reduce(reps[0] + km * i0, plam);
                            const std::int64_t X12 = mod_reduce(reps[1] + km * i1, plam);
                            const std::int64_t X21 = mod_reduce(reps[2] + km * i2, plam);
                            const std::int64_t X22 = mod_reduce(reps[3] + km * i3, plam);
                            const std::int64_t detX = mod_reduce(mul_mod(X11, X22, plam) - mul_mod(X12, X21, plam), plam);
                            const std::int64_t trB = mod_reduce(
                                acoef[0] * X11 + acoef[1] * X12 + acoef[2] * X21 + acoef[3] * X22, plam);
                            for (std::int64_t i4 = 0; i4 < range; ++i4)
                                for (std::int64_t i5 = 0; i5 < range; ++i5) {
                                    const std::int64_t X1 = mod_reduce(reps[4] + km * i4, plam);
                                    const std::int64_t X2 = mod_reduce(reps[5] + km * i5, plam);
                                    // (b det T - t1 t2)/t in beta12 + p^k Z, scaled by p^{2m} t
                                    const std::int64_t lhs12 = mod_reduce(
                                        mul_mod(bb, detX, plam) - mul_mod(X1, X2, plam), cond_mod);
                                    if (lhs12 != mod_reduce(rhs12, cond_mod)) continue;
                                    if (pphase > 1) {
                                        const std::int64_t pairv = mod_reduce(
                                            trB + acoef[4] * X1 + acoef[5] * X2, pphase);
                                        isum.add_basis(mul_mod(pairv, ubar, pphase));
                                    } else {
                                        isum.add_basis(0);
                                    }
                                }
                        }
            shell.terms += ipow(range, 6);
            ivals.push_back(std::move(isum));
        }

        if (units.empty()) {
            shell.exact_zero = true;
            rep.shells.push_back(shell);
            continue;
        }

        // Volume per enumerated class and the multiplicative shell weight.
        const double volcls = std::pow(static_cast<double>(p), -6.0 * (lam - m));
        const double phi_pju = static_cast<double>(pju - pju / p);
        cplx acc{0.0, 0.0};
        for (std::size_t i = 0; i < units.size(); ++i)
            acc += spec.chi.eval_unit(units[i]) * ivals[i].to_complex();
        shell.value = spec.chi.eval(mt, 1) *
                      (1.0 - 1.0 / static_cast<double>(p)) / phi_pju * volcls * acc;

        // Exact checks: I constant on 1 + p^K cosets, then the character sum
        // over each coset vanishes.
        const std::int64_t K = rep.stability_level;
        bool invariant = true;
        for (std::size_t i = 0; i < units.size() && invariant; ++i)
            for (std::size_t l = i + 1; l < units.size() && invariant; ++l)
                if (mod_reduce(units[i] - units[l], ipow(p, std::min<int>(K, ju))) == 0)
                    invariant = ivals[i].equals(ivals[l]);
        shell.unit_invariant = invariant;
        if (spec.chi.is_ramified() && invariant) {
            // chi restricted to the subgroup 1 + p^K must cancel.
            std::vector<std::int64_t> subgroup;
            for (std::int64_t w = 0; w < pju; ++w) {
                std::int64_t u = mod_reduce(1 + ipow(p, std::min<int>(K, ju)) * w, pju);
                if (u % p != 0) subgroup.push_back(u);
            }
            std::sort(subgroup.begin(), subgroup.end());
            subgroup.erase(std::unique(subgroup.begin(), subgroup.end()), subgroup.end());
            shell.exact_zero = chi_sum_balanced(spec.chi, subgroup);
            if (shell.exact_zero) shell.value = {0.0, 0.0};
        }
        rep.shells.push_back(shell);
    }

    for (const auto& s : rep.shells)
        rep.all_shells_zero = rep.all_shells_zero && (s.exact_zero || std::abs(s.value) < 1e-12);
    return rep;
}

} // namespace zeta
} // namespace klab
