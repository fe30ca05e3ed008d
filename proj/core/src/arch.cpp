#include "klab/arch.hpp"

#include <algorithm>
#include <cmath>

#include "klab/quadrature.hpp"

namespace klab {
namespace arch {

namespace {

cplx e_minus(double x) { // e^{-2 pi i x}
    double a = kTau * x;
    return {std::cos(a), -std::sin(a)};
}

cplx unit_phase(double a) { return {std::cos(a), std::sin(a)}; }

int needed_nodes(double freq_per_unit, double width, const QuadratureSpec& q) {
    double periods = std::abs(freq_per_unit) * width;
    return q.base_nodes + static_cast<int>(std::ceil(q.points_per_period * periods));
}

struct AxisRule {
    std::vector<double> x, w;
};

AxisRule axis_rule(const Interval& iv, int n) {
    AxisRule r;
    gauss_legendre_on(iv.lo, iv.hi, n, r.x, r.w);
    return r;
}

Interval finite_support(const Profile1D& p, const char* where) {
    if (p.is_flat()) throw std::invalid_argument(std::string(where) + ": flat profile has no finite support");
    return p.support();
}

Interval quotient_window(const Interval& num, double den) {
    if (den > 0) return {num.lo / den, num.hi / den};
    return {num.hi / den, num.lo / den};
}

} // namespace

std::vector<TestFnTerm> expand_terms(const MatrixTestFn& f) {
    std::vector<TestFnTerm> out;
    if (!f.central_invariant) {
        out.push_back({1.0, f.e11, f.e12, f.e21, f.e22, f.det_window});
        return out;
    }
    // Radial average against dz/z; each quadrature node becomes one product
    // term with the profiles rescaled by 1/z and det windows by 1/z^2.
    std::vector<double> zn, zw;
    gauss_legendre_on(std::log(0.25), std::log(4.0), f.radial_nodes, zn, zw);
    auto rescale = [](const Profile1D& p, double z) {
        if (p.is_flat()) return p;
        Profile1D q = p;
        q.center = p.center / z;
        q.radius = p.radius / z;
        return q;
    };
    for (std::size_t i = 0; i < zn.size(); ++i) {
        double z = std::exp(zn[i]);
        TestFnTerm t{zw[i], rescale(f.e11, z), rescale(f.e12, z), rescale(f.e21, z),
                     rescale(f.e22, z), std::nullopt};
        if (f.det_window) t.det_window = rescale(*f.det_window, z * z);
        out.push_back(std::move(t));
    }
    return out;
}

Interval b_support_window(const MatrixTestFn& f1, const MatrixTestFn& f2, const Profile1D& V) {
    Interval dT = interval_minus(
        interval_product(finite_support(f1.e11, "f1"), finite_support(f1.e22, "f1")),
        interval_product(finite_support(f1.e12, "f1"), finite_support(f1.e21, "f1")));
    Interval vs = V.support();
    Interval dRange = dT.intersect({-vs.hi, vs.hi});
    if (dRange.is_empty()) return {0, 0};
    Interval s11 = finite_support(f2.e11, "f2");
    Interval t1{-s11.hi, -s11.lo};
    Interval t2 = finite_support(f2.e22, "f2");
    Interval t = finite_support(f2.e21, "f2");
    Interval u = finite_support(f2.e12, "f2");
    Interval rhs = interval_plus(interval_product(t1, t2), interval_product(t, u));
    // b det T must land in rhs; when det T is sign-definite this pins b to a
    // compact window, otherwise the window is unbounded on the spanned side.
    if (dRange.lo > 0 || dRange.hi < 0) {
        double c[4] = {rhs.lo / dRange.lo, rhs.lo / dRange.hi, rhs.hi / dRange.lo, rhs.hi / dRange.hi};
        return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
    }
    return {-1e300, 1e300};
}

namespace {

// K(d, t): the (t1, t2) block at fixed determinant value d, phase weights
// folded into the tables.
cplx coupling_K(const TestFnTerm& f2, double b, double d, double t,
                const AxisRule& r1, const AxisRule& r2,
                const std::vector<cplx>& ph1, const std::vector<cplx>& ph2) {
    cplx acc{0.0, 0.0};
    const double bd = b * d;
    for (std::size_t i = 0; i < r1.x.size(); ++i) {
        const double t1 = r1.x[i];
        const double g1 = f2.e11(-t1);
        if (g1 == 0) continue;
        cplx row{0.0, 0.0};
        for (std::size_t j = 0; j < r2.x.size(); ++j) {
            const double g2 = f2.e22(r2.x[j]);
            if (g2 == 0) continue;
            const double g12 = f2.e12((bd - t1 * r2.x[j]) / t);
            if (g12 == 0) continue;
            row += g2 * g12 * ph2[j];
        }
        acc += g1 * ph1[i] * row;
    }
    return acc;
}

} // namespace

TransformResult inner_integral(const MatrixTestFn& f1, const MatrixTestFn& f2,
                               const Profile1D& V, double b, const ArchAlpha& alpha,
                               double t, const QuadratureSpec& quad) {
    TransformResult res;
    if (t == 0) throw std::invalid_argument("inner_integral: t must be nonzero");
    if (b == 0) throw std::invalid_argument("inner_integral: b must be nonzero");
    auto f1_terms = expand_terms(f1);
    auto f2_terms = expand_terms(f2);
    bool any_alive = false;

    for (const auto& tf1 : f1_terms) {
        Interval ivT[4] = {finite_support(tf1.e11, "f1.e11"), finite_support(tf1.e12, "f1.e12"),
                           finite_support(tf1.e21, "f1.e21"), finite_support(tf1.e22, "f1.e22")};
        // <alpha, v>: x11 pairs with B11, x12 with B21, x21 with B12, x22 with B22
        const double coefT[4] = {alpha.B.e11 / t, alpha.B.e21 / t, alpha.B.e12 / t, alpha.B.e22 / t};
        for (int i = 0; i < 4; ++i) {
            if (needed_nodes(coefT[i], ivT[i].width(), quad) > quad.max_nodes) {
                res.refused = true;
                res.refusal_reason = "T-axis oscillation above node cap";
                return res;
            }
        }
        Interval dT = interval_minus(interval_product(ivT[0], ivT[3]),
                                     interval_product(ivT[1], ivT[2]));
        // |det T| must fall in the V window: split by sign and take the hull
        Interval vs = V.support();
        double vlo = std::max(0.0, vs.lo), vhi = vs.hi;
        Interval dpos = dT.intersect({vlo, vhi});
        Interval dneg = dT.intersect({-vhi, -vlo});
        if (dpos.is_empty() && dneg.is_empty()) continue;
        Interval dRange = dpos.is_empty() ? dneg
                        : dneg.is_empty() ? dpos
                                          : Interval{dneg.lo, dpos.hi};

        for (const auto& tf2 : f2_terms) {
            const double w21 = tf2.e21(t);
            if (w21 == 0) continue;

            Interval s11 = finite_support(tf2.e11, "f2.e11");
            Interval ivt1{-s11.hi, -s11.lo};
            Interval ivt2 = finite_support(tf2.e22, "f2.e22");
            const double coef1 = alpha.y1 / t, coef2 = alpha.y2 / t;
            int n1 = needed_nodes(coef1, ivt1.width(), quad);
            int n2 = needed_nodes(coef2, ivt2.width(), quad);
            if (n1 > quad.max_nodes || n2 > quad.max_nodes) {
                res.refused = true;
                res.refusal_reason = "t1/t2-axis oscillation above node cap";
                return res;
            }

            Interval dUse = dRange;
            if (tf2.e12.compact()) {
                Interval uiv = tf2.e12.support();
                Interval tu = t >= 0 ? Interval{t * uiv.lo, t * uiv.hi}
                                     : Interval{t * uiv.hi, t * uiv.lo};
                Interval rhs = interval_plus(interval_product(ivt1, ivt2), tu);
                dUse = dUse.intersect(quotient_window(rhs, b));
            }
            if (dUse.is_empty()) continue;
            any_alive = true;

            AxisRule rt1 = axis_rule(ivt1, n1), rt2 = axis_rule(ivt2, n2);
            std::vector<cplx> pht1(rt1.x.size()), pht2(rt2.x.size());
            for (std::size_t i = 0; i < rt1.x.size(); ++i)
                pht1[i] = rt1.w[i] * e_minus(coef1 * rt1.x[i]);
            for (std::size_t j = 0; j < rt2.x.size(); ++j)
                pht2[j] = rt2.w[j] * e_minus(coef2 * rt2.x[j]);

            // Coupling samples W(d) = cutoff * V(|d|)/d^2 * windows * K(d, t)
            const double pad = 0.15 * std::max(dUse.width(), 0.25);
            const double D0 = dUse.lo - pad;
            const double L = dUse.width() + 2 * pad;
            const int Nd = quad.d_grid;
            std::vector<cplx> W(static_cast<std::size_t>(Nd));
            double wmass = 1e-300;
            for (int jd = 0; jd < Nd; ++jd) {
                const double d = D0 + L * (jd + 0.5) / Nd;
                double cut = 1.0;
                if (d > dUse.hi) cut = smooth_step((d - dUse.hi) / pad);
                else if (d < dUse.lo) cut = smooth_step((dUse.lo - d) / pad);
                cplx val{0.0, 0.0};
                if (cut != 0.0 && d != 0.0) {
                    double vv = V(std::abs(d));
                    if (tf1.det_window) vv *= (*tf1.det_window)(d);
                    if (tf2.det_window) vv *= (*tf2.det_window)(-b * d);
                    if (vv != 0.0) {
                        val = cut * vv / (d * d) *
                              coupling_K(tf2, b, d, t, rt1, rt2, pht1, pht2);
                        res.evals += static_cast<std::int64_t>(rt1.x.size() * rt2.x.size());
                    }
                }
                W[static_cast<std::size_t>(jd)] = val;
                wmass += std::abs(val);
            }

            // DFT modes, grid midpoints: wf_f = (1/Nd) sum_j W_j e^{-2 pi i f (j+1/2)/Nd}
            const int Fcap = std::min(quad.fourier_modes, Nd / 3);
            std::vector<cplx> wf(static_cast<std::size_t>(2 * Fcap + 1));
            for (int f = -Fcap; f <= Fcap; ++f) {
                cplx acc{0.0, 0.0};
                for (int jd = 0; jd < Nd; ++jd)
                    acc += W[static_cast<std::size_t>(jd)] * unit_phase(-kTau * f * (jd + 0.5) / Nd);
                wf[static_cast<std::size_t>(f + Fcap)] = acc / static_cast<double>(Nd);
            }
            // Highest mode the node cap affords: nodes scale with the phase
            // frequency plus f * x_partner / L from the det bilinears.
            double xmax[4];
            for (int i = 0; i < 4; ++i)
                xmax[i] = std::max(std::abs(ivT[i].lo), std::abs(ivT[i].hi));
            int fuse_budget = Fcap;
            for (int i = 0; i < 4; ++i) {
                const int partner = 3 - i; // det pairs (x11,x22) and (x12,x21)
                double spare = (static_cast<double>(quad.max_nodes - quad.base_nodes) /
                                    quad.points_per_period -
                                std::abs(coefT[i]) * ivT[i].width()) /
                               std::max(ivT[i].width(), 1e-12);
                if (xmax[partner] > 0)
                    fuse_budget = std::min(fuse_budget,
                                           static_cast<int>(std::floor(spare * L / xmax[partner])));
            }
            if (fuse_budget < 0) fuse_budget = 0;
            // skip trailing modes that are negligible anyway
            const double thresh = 1e-13 * wmass / Nd;
            int Fuse = 0;
            for (int f = Fcap; f >= 1; --f) {
                double mag = std::abs(wf[static_cast<std::size_t>(f + Fcap)]) +
                             std::abs(wf[static_cast<std::size_t>(-f + Fcap)]);
                if (mag > thresh) { Fuse = f; break; }
            }
            Fuse = std::min(Fuse, fuse_budget);
            double mode_tail = 0;
            for (int f = Fuse + 1; f <= Fcap; ++f)
                mode_tail += std::abs(wf[static_cast<std::size_t>(f + Fcap)]) +
                             std::abs(wf[static_cast<std::size_t>(-f + Fcap)]);

            int nT[4];
            for (int i = 0; i < 4; ++i) {
                const int partner = 3 - i;
                const double extra = static_cast<double>(Fuse) * xmax[partner] / L;
                nT[i] = std::min(needed_nodes(std::abs(coefT[i]) + extra, ivT[i].width(), quad),
                                 quad.max_nodes);
            }
            AxisRule aT[4];
            std::vector<cplx> tb[4];
            const Profile1D* prof[4] = {&tf1.e11, &tf1.e12, &tf1.e21, &tf1.e22};
            for (int i = 0; i < 4; ++i) {
                aT[i] = axis_rule(ivT[i], nT[i]);
                tb[i].resize(aT[i].x.size());
                for (std::size_t k = 0; k < aT[i].x.size(); ++k)
                    tb[i][k] = (*prof[i])(aT[i].x[k]) * aT[i].w[k] * e_minus(coefT[i] * aT[i].x[k]);
                res.evals += static_cast<std::int64_t>(aT[i].x.size());
            }

            const std::size_t n0 = aT[0].x.size(), n3 = aT[3].x.size();
            const std::size_t m1 = aT[1].x.size(), m2 = aT[2].x.size();
            std::vector<cplx> U03(n0 * n3), P03(n0 * n3), U12(m1 * m2), P12(m1 * m2);
            for (std::size_t i = 0; i < n0; ++i)
                for (std::size_t j = 0; j < n3; ++j) {
                    U03[i * n3 + j] = unit_phase(kTau * aT[0].x[i] * aT[3].x[j] / L);
                    P03[i * n3 + j] = tb[0][i] * tb[3][j];
                }
            for (std::size_t i = 0; i < m1; ++i)
                for (std::size_t j = 0; j < m2; ++j) {
                    U12[i * m2 + j] = unit_phase(-kTau * aT[1].x[i] * aT[2].x[j] / L);
                    P12[i * m2 + j] = tb[1][i] * tb[2][j];
                }
            res.evals += static_cast<std::int64_t>((2 * Fuse + 1) * (n0 * n3 + m1 * m2));

            std::vector<cplx> A(static_cast<std::size_t>(2 * Fuse + 1)),
                C(static_cast<std::size_t>(2 * Fuse + 1));
            {
                std::vector<cplx> pw03(n0 * n3, cplx{1.0, 0.0}), pw12(m1 * m2, cplx{1.0, 0.0});
                for (int f = 0; f <= Fuse; ++f) {
                    cplx a{0.0, 0.0}, c{0.0, 0.0};
                    for (std::size_t k = 0; k < pw03.size(); ++k) a += P03[k] * pw03[k];
                    for (std::size_t k = 0; k < pw12.size(); ++k) c += P12[k] * pw12[k];
                    A[static_cast<std::size_t>(Fuse + f)] = a;
                    C[static_cast<std::size_t>(Fuse + f)] = c;
                    if (f < Fuse) {
                        for (std::size_t k = 0; k < pw03.size(); ++k) pw03[k] *= U03[k];
                        for (std::size_t k = 0; k < pw12.size(); ++k) pw12[k] *= U12[k];
                    }
                }
                std::vector<cplx> nw03(n0 * n3, cplx{1.0, 0.0}), nw12(m1 * m2, cplx{1.0, 0.0});
                for (int f = -1; f >= -Fuse; --f) {
                    for (std::size_t k = 0; k < nw03.size(); ++k) nw03[k] *= std::conj(U03[k]);
                    for (std::size_t k = 0; k < nw12.size(); ++k) nw12[k] *= std::conj(U12[k]);
                    cplx a{0.0, 0.0}, c{0.0, 0.0};
                    for (std::size_t k = 0; k < nw03.size(); ++k) a += P03[k] * nw03[k];
                    for (std::size_t k = 0; k < nw12.size(); ++k) c += P12[k] * nw12[k];
                    A[static_cast<std::size_t>(Fuse + f)] = a;
                    C[static_cast<std::size_t>(Fuse + f)] = c;
                }
            }

            cplx tsum{0.0, 0.0};
            for (int f = -Fuse; f <= Fuse; ++f) {
                const cplx shift = unit_phase(-kTau * f * D0 / L);
                tsum += wf[static_cast<std::size_t>(f + Fcap)] * shift *
                        A[static_cast<std::size_t>(Fuse + f)] * C[static_cast<std::size_t>(Fuse + f)];
            }

            double mass = 1.0;
            for (int i = 0; i < 4; ++i) {
                double s = 0;
                for (const auto& v : tb[i]) s += std::abs(v);
                mass *= s;
            }
            double tail_total = mode_tail;
            tail_total += std::abs(wf.front()) + std::abs(wf.back()); // continuation beyond the cap
            res.error += std::abs(tf1.weight * tf2.weight * w21) * tail_total * mass;

            res.value += tf1.weight * tf2.weight * w21 * tsum;
        }
    }
    res.support_vanishes = !any_alive;
    return res;
}

cplx inner_integral_direct(const MatrixTestFn& f1, const MatrixTestFn& f2,
                           const Profile1D& V, double b, const ArchAlpha& alpha,
                           double t, int nodes_v, int nodes_w) {
    auto f1_terms = expand_terms(f1);
    auto f2_terms = expand_terms(f2);
    cplx total{0.0, 0.0};
    for (const auto& tf1 : f1_terms)
        for (const auto& tf2 : f2_terms) {
            const double w21 = tf2.e21(t);
            if (w21 == 0) continue;
            AxisRule aT[4] = {axis_rule(finite_support(tf1.e11, "f1"), nodes_v),
                              axis_rule(finite_support(tf1.e12, "f1"), nodes_v),
                              axis_rule(finite_support(tf1.e21, "f1"), nodes_v),
                              axis_rule(finite_support(tf1.e22, "f1"), nodes_v)};
            Interval s11 = finite_support(tf2.e11, "f2");
            AxisRule r1 = axis_rule({-s11.hi, -s11.lo}, nodes_w);
            AxisRule r2 = axis_rule(finite_support(tf2.e22, "f2"), nodes_w);
            cplx acc{0.0, 0.0};
            for (std::size_t i0 = 0; i0 < aT[0].x.size(); ++i0)
                for (std::size_t i1 = 0; i1 < aT[1].x.size(); ++i1)
                    for (std::size_t i2 = 0; i2 < aT[2].x.size(); ++i2)
                        for (std::size_t i3 = 0; i3 < aT[3].x.size(); ++i3) {
                            const double x11 = aT[0].x[i0], x12 = aT[1].x[i1];
                            const double x21 = aT[2].x[i2], x22 = aT[3].x[i3];
                            double fw = tf1.e11(x11) * tf1.e12(x12) * tf1.e21(x21) * tf1.e22(x22) *
                                        aT[0].w[i0] * aT[1].w[i1] * aT[2].w[i2] * aT[3].w[i3];
                            if (fw == 0) continue;
                            const double det = x11 * x22 - x12 * x21;
                            if (det == 0) continue;
                            double vv = V(std::abs(det));
                            if (tf1.det_window) vv *= (*tf1.det_window)(det);
                            if (tf2.det_window) vv *= (*tf2.det_window)(-b * det);
                            if (vv == 0) continue;
                            const double trB = alpha.B.e11 * x11 + alpha.B.e21 * x12 +
                                               alpha.B.e12 * x21 + alpha.B.e22 * x22;
                            cplx inner{0.0, 0.0};
                            for (std::size_t j1 = 0; j1 < r1.x.size(); ++j1) {
                                const double t1 = r1.x[j1];
                                const double g1 = tf2.e11(-t1);
                                if (g1 == 0) continue;
                                for (std::size_t j2 = 0; j2 < r2.x.size(); ++j2) {
                                    const double t2 = r2.x[j2];
                                    const double g2 = tf2.e22(t2);
                                    if (g2 == 0) continue;
                                    const double g12 = tf2.e12((b * det - t1 * t2) / t);
                                    if (g12 == 0) continue;
                                    inner += g1 * g2 * g12 * r1.w[j1] * r2.w[j2] *
                                             e_minus((trB + alpha.y1 * t1 + alpha.y2 * t2) / t);
                                }
                            }
                            acc += fw * vv / (det * det) * inner;
                        }
            total += tf1.weight * tf2.weight * w21 * acc;
        }
    return total;
}

namespace {

TransformResult outer_integral(const MatrixTestFn& f1, const MatrixTestFn& f2,
                               const Profile1D& V, double b, const ArchAlpha& alpha,
                               int eps, double tau, cplx s, const QuadratureSpec& quad,
                               double zeta_norm) {
    TransformResult out;
    Interval ts = finite_support(f2.e21, "f2.e21");
    std::vector<Interval> panels;
    const double e0 = quad.eps0;
    Interval pos{std::max(ts.lo, e0), ts.hi};
    Interval neg{ts.lo, std::min(ts.hi, -e0)};
    if (!pos.is_empty()) panels.push_back(pos);
    if (!neg.is_empty()) panels.push_back(neg);
    if (panels.empty()) {
        out.support_vanishes = true;
        return out;
    }

    bool all_vanish = true;
    for (const auto& pan : panels) {
        std::vector<double> tn, tw;
        gauss_legendre_on(pan.lo, pan.hi, quad.t_nodes, tn, tw);
        for (std::size_t i = 0; i < tn.size(); ++i) {
            const double t = tn[i];
            TransformResult inner = inner_integral(f1, f2, V, b, alpha, t, quad);
            out.evals += inner.evals;
            if (inner.refused) {
                out.refused = true;
                out.refusal_reason = inner.refusal_reason;
                return out;
            }
            all_vanish = all_vanish && inner.support_vanishes;
            const double at = std::abs(t);
            cplx weight = std::pow(at, s.real() - 1.0) *
                          unit_phase((tau + s.imag()) * std::log(at));
            if (eps && t < 0) weight = -weight;
            out.value += tw[i] * weight * inner.value;
            out.error += std::abs(tw[i] * weight) * inner.error;
            if (quad.work_budget > 0 && out.evals > quad.work_budget) {
                out.refused = true;
                out.refusal_reason = "work budget exhausted";
                return out;
            }
        }
    }
    out.support_vanishes = all_vanish;

    if (e0 > 0 && ts.lo < e0 && ts.hi > -e0) {
        // excised neighbourhood of t = 0: estimate by the boundary magnitude
        TransformResult probe = inner_integral(f1, f2, V, b, alpha, e0, quad);
        out.error += 2.0 * e0 * std::abs(probe.value) * std::pow(e0, s.real() - 1.0);
        out.evals += probe.evals;
    }
    out.value /= zeta_norm;
    out.error /= std::abs(zeta_norm);
    return out;
}

} // namespace

TransformResult transform_is_general(const MatrixTestFn& f1, const MatrixTestFn& f2,
                                     const Profile1D& V, double b, const ArchAlpha& alpha,
                                     int eps, double tau, cplx s,
                                     const QuadratureSpec& quad, double zeta_norm) {
    TransformResult coarse = outer_integral(f1, f2, V, b, alpha, eps, tau, s, quad, zeta_norm);
    if (coarse.refused || coarse.support_vanishes) return coarse;
    TransformResult fine = outer_integral(f1, f2, V, b, alpha, eps, tau, s, quad.refined(), zeta_norm);
    if (fine.refused) return fine;
    fine.error += std::abs(fine.value - coarse.value);
    fine.evals += coarse.evals;
    return fine;
}

TransformResult transform_is(const MatrixTestFn& f1, const MatrixTestFn& f2,
                             const Profile1D& V, double b, const ArchAlpha& alpha,
                             const QuadratureSpec& quad, double zeta_norm) {
    return transform_is_general(f1, f2, V, b, alpha, 0, 0.0, cplx{-2.0, 0.0}, quad, zeta_norm);
}

DecayReport decay_probe(const MatrixTestFn& f1, const MatrixTestFn& f2, const Profile1D& V,
                        double b, const ArchAlpha& alpha0, const std::vector<double>& ladder,
                        double t0, const QuadratureSpec& quad) {
    DecayReport rep;
    for (double lam : ladder) {
        TransformResult a = inner_integral(f1, f2, V, b, alpha0.scaled(lam), t0, quad);
        TransformResult fine = inner_integral(f1, f2, V, b, alpha0.scaled(lam), t0, quad.refined());
        rep.lambdas.push_back(lam);
        if (a.refused || fine.refused) {
            rep.resolved = false;
            rep.values.push_back(0);
            rep.errors.push_back(0);
            continue;
        }
        rep.values.push_back(std::abs(fine.value));
        rep.errors.push_back(fine.error + std::abs(fine.value - a.value));
    }
    for (std::size_t i = 0; i + 1 < rep.values.size(); ++i) {
        double num = std::log(std::max(rep.values[i + 1], 1e-300) / std::max(rep.values[i], 1e-300));
        double den = std::log(rep.lambdas[i + 1] / rep.lambdas[i]);
        rep.slopes.push_back(num / den);
    }
    return rep;
}

cplx profile_fourier(const Profile1D& f, double omega, int nodes) {
    if (f.is_flat()) throw std::invalid_argument("profile_fourier: flat profile is not integrable");
    Interval s = f.support();
    std::vector<double> x, w;
    cplx acc{0.0, 0.0};
    const int panels = f.compact() ? 2 : 6;
    for (int pnl = 0; pnl < panels; ++pnl) {
        double lo = s.lo + (s.hi - s.lo) * pnl / panels;
        double hi = s.lo + (s.hi - s.lo) * (pnl + 1) / panels;
        gauss_legendre_on(lo, hi, nodes / panels + 8, x, w);
        for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * f(x[i]) * e_minus(omega * x[i]);
    }
    return acc;
}

cplx PartialFourier::eval(double a11, double x3, double a21, double a22) const {
    return e11(a11) * e21(a21) * e22(a22) * entry_hat(x3);
}

cplx PartialFourier::invert_entry(double u, double omega_max, int omega_nodes) const {
    std::vector<double> x, w;
    gauss_legendre_on(-omega_max, omega_max, omega_nodes, x, w);
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < x.size(); ++i)
        acc += w[i] * entry_hat(x[i]) * std::conj(e_minus(x[i] * u));
    return acc;
}

PartialFourier partial_fourier_f3(const MatrixTestFn& f2, int nodes) {
    return PartialFourier{f2.e11, f2.e12, f2.e21, f2.e22, nodes};
}

} // namespace arch
} // namespace klab
