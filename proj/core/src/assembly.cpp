#include "klab/assembly.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>
#include <random>
#include <thread>

namespace klab {
namespace assembly {

std::vector<Rat> rationals_of_height(std::int64_t h) {
    std::vector<Rat> out;
    for (std::int64_t den = 1; den <= h; ++den)
        for (std::int64_t num = 1; num <= h; ++num) {
            if (std::gcd(num, den) != 1) continue;
            out.emplace_back(num, den);
            out.emplace_back(-num, den);
        }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<QuadricPoint<Rat>> enumerate_w(std::int64_t h) {
    std::vector<Rat> nz = rationals_of_height(h);
    std::vector<Rat> entries = nz;
    entries.push_back(Rat(0));

    // products b * t1 * t2 grouped by value; the matrix loop then solves
    // det T = value.
    std::map<Rat, std::vector<std::array<Rat, 3>>> targets;
    for (const Rat& b : nz)
        for (const Rat& t1 : nz)
            for (const Rat& t2 : nz) targets[b * t1 * t2].push_back({b, t1, t2});

    std::vector<QuadricPoint<Rat>> out;
    for (const Rat& x1 : entries)
        for (const Rat& x2 : entries)
            for (const Rat& x3 : entries) {
                if (x1 == 0) {
                    // det = -x2 x3 regardless of x4
                    Rat d = -x2 * x3;
                    if (d == 0) continue;
                    auto it = targets.find(d);
                    if (it == targets.end()) continue;
                    for (const Rat& x4 : entries)
                        for (const auto& bt : it->second)
                            out.push_back(QuadricPoint<Rat>{
                                bt[0], PhasePoint<Rat>{Mat2<Rat>{x1, x2, x3, x4}, bt[1], bt[2]}});
                    continue;
                }
                for (const auto& [d, combos] : targets) {
                    Rat x4 = (d + x2 * x3) / x1;
                    if (height(x4) > h) continue;
                    for (const auto& bt : combos)
                        out.push_back(QuadricPoint<Rat>{
                            bt[0], PhasePoint<Rat>{Mat2<Rat>{x1, x2, x3, x4}, bt[1], bt[2]}});
                }
            }
    return out;
}

bool term_indicator(const GroupElem<Rat>& g, const Rat& b, const AlphaPoint<Rat>& alpha) {
    auto [bi, ai] = act(g, b, alpha);
    if (!(bi == 1 || bi == -1)) return false;
    return is_integral(ai.mat.e11) && is_integral(ai.mat.e12) && is_integral(ai.mat.e21) &&
           is_integral(ai.mat.e22) && is_integral(ai.s1) && is_integral(ai.s2);
}

namespace {

Int rat_height_pt(const Rat& b, const AlphaPoint<Rat>& a) {
    Int h = height(b);
    for (const Rat& v : {a.mat.e11, a.mat.e12, a.mat.e21, a.mat.e22, a.s1, a.s2})
        h = std::max(h, height(v));
    return h;
}

// Indicator-passing quadric points of height <= H: enumerate the integral
// image points (b', A) with b' = +-1 and pull back through g.
std::vector<QuadricPoint<Rat>> indicator_passing_points(const GroupElem<Rat>& g, std::int64_t H) {
    // Image box: A = g2^{-1} B g1 is linear in B, so per-coordinate row sums of
    // the action matrix bound |A| by rowsum * H; likewise for the scalar slots.
    GroupElem<Rat> ginv{g.g1.inverse(), g.g2.inverse(), Rat(1) / g.x, Rat(1) / g.y};
    Mat2<Rat> g2i = g.g2.inverse();
    double rowmax = 0;
    const Rat* l[2][2] = {{&g2i.e11, &g2i.e12}, {&g2i.e21, &g2i.e22}};
    const Rat r[2][2] = {{g.g1.e11, g.g1.e12}, {g.g1.e21, g.g1.e22}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            double rs = 0;
            for (int k = 0; k < 2; ++k)
                for (int ll = 0; ll < 2; ++ll) rs += std::abs(to_double(*l[i][k] * r[ll][j]));
            rowmax = std::max(rowmax, rs);
        }
    rowmax = std::max({rowmax, std::abs(to_double(g.x)), std::abs(to_double(Rat(1) / g.y))});
    std::int64_t box = static_cast<std::int64_t>(std::ceil(static_cast<double>(H) * rowmax));
    if (box > 128) throw std::invalid_argument("geometric_side: window too large for the enumerator");

    std::vector<QuadricPoint<Rat>> out;
    for (std::int64_t a11 = -box; a11 <= box; ++a11)
        for (std::int64_t a12 = -box; a12 <= box; ++a12)
            for (std::int64_t a21 = -box; a21 <= box; ++a21)
                for (std::int64_t a22 = -box; a22 <= box; ++a22) {
                    const std::int64_t det = a11 * a22 - a12 * a21;
                    if (det == 0) continue;
                    const std::int64_t ad = det < 0 ? -det : det;
                    for (std::int64_t y1 = 1; y1 <= box; ++y1) {
                        if (ad % y1 != 0) continue;
                        const std::int64_t y2m = ad / y1;
                        if (y2m > box) continue;
                        for (int s1 = -1; s1 <= 1; s1 += 2)
                            for (int s2 = -1; s2 <= 1; s2 += 2) {
                                // b' = det / (y1 y2) must be +-1: automatic once
                                // |y1 y2| = |det|
                                Rat bp = Rat(det) / Rat(s1 * y1 * s2 * y2m);
                                AlphaPoint<Rat> A{Mat2<Rat>{Rat(a11), Rat(a12), Rat(a21), Rat(a22)},
                                                  Rat(s1 * y1), Rat(s2 * y2m)};
                                auto [b0, a0] = act(ginv, bp, A);
                                if (rat_height_pt(b0, a0) > H) continue;
                                out.push_back(QuadricPoint<Rat>{b0, a0});
                            }
                    }
                }
    return out;
}

} // namespace

GeometricSideReport geometric_side(const GeometricSideSpec& spec) {
    GeometricSideReport rep;
    auto points = indicator_passing_points(spec.g, spec.window.height);

    struct Job {
        std::int64_t c;
        Rat b;
        AlphaPoint<Rat> alpha;
        std::int64_t height;
    };
    std::vector<Job> jobs;
    for (const auto& w : points) {
        std::int64_t hh = static_cast<std::int64_t>(rat_height_pt(w.b, w.v));
        for (std::int64_t c = 1; c <= spec.window.cmax; ++c)
            jobs.push_back({c, w.b, w.v, hh});
    }
    // deterministic processing order: (c, height, lexicographic alpha)
    std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
        if (a.c != b.c) return a.c < b.c;
        if (a.height != b.height) return a.height < b.height;
        auto key = [](const Job& j) {
            return std::array<Rat, 7>{j.b,      j.alpha.mat.e11, j.alpha.mat.e12, j.alpha.mat.e21,
                                      j.alpha.mat.e22, j.alpha.s1,      j.alpha.s2};
        };
        return key(a) < key(b);
    });

    std::vector<GeomTerm> terms(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            const Job& jb = jobs[i];
            GeomTerm t;
            t.c = jb.c;
            t.b = jb.b;
            t.alpha = jb.alpha;
            t.height = jb.height;
            // image point under g, scaled by c in the dual slot
            auto [bi, ai] = act(spec.g, jb.b, jb.alpha);
            arch::ArchAlpha aa;
            aa.B = Mat2<double>{to_double(ai.mat.e11), to_double(ai.mat.e12),
                                to_double(ai.mat.e21), to_double(ai.mat.e22)};
            aa.y1 = to_double(ai.s1);
            aa.y2 = to_double(ai.s2);
            aa = aa.scaled(static_cast<double>(jb.c));
            arch::TransformResult r = arch::transform_is(spec.f1, spec.f2, spec.V,
                                                         to_double(bi), aa, spec.quad,
                                                         spec.zeta_norm);
            if (r.refused) {
                t.refused = true;
                t.refusal_reason = r.refusal_reason;
            } else {
                t.certified = true;
                t.value = static_cast<double>(jb.c) * r.value;
                t.error = static_cast<double>(jb.c) * r.error;
            }
            terms[i] = std::move(t);
        }
    };
    std::vector<std::thread> pool;
    int nthreads = std::max(1, spec.threads);
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    // aggregate in the sorted deterministic order
    rep.n_terms = static_cast<std::int64_t>(terms.size());
    for (const auto& t : terms) {
        if (t.certified) {
            rep.certified_sum += t.value;
            rep.aggregated_error += t.error;
            ++rep.n_certified;
        } else {
            ++rep.n_refused;
        }
    }
    // nested-window trace: (1,1), (2,2), ..., (H, cmax)
    for (std::int64_t w = 1;; w *= 2) {
        std::int64_t hw = std::min(w, spec.window.height);
        std::int64_t cw = std::min(w, spec.window.cmax);
        WindowPartial part;
        part.height = hw;
        part.cmax = cw;
        for (const auto& t : terms) {
            if (t.height > hw || t.c > cw) continue;
            if (t.certified) {
                part.certified_sum += t.value;
                part.aggregated_error += t.error;
                ++part.certified;
            } else {
                ++part.refused;
            }
        }
        rep.trace.push_back(part);
        if (hw == spec.window.height && cw == spec.window.cmax) break;
    }
    if (static_cast<std::int64_t>(terms.size()) > spec.max_rows) {
        terms.resize(static_cast<std::size_t>(spec.max_rows));
        rep.rows_capped = true;
    }
    rep.terms = std::move(terms);
    return rep;
}

Sigma1Report sigma1_structure_check(const arch::MatrixTestFn& f2, std::int64_t window_height,
                                    int samples, std::uint64_t seed) {
    Sigma1Report rep;
    rep.samples = samples;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> num(-9, 9), den(1, 9);
    auto rand_rat = [&](bool nonzero) {
        for (;;) {
            Rat q(num(rng), den(rng));
            if (!nonzero || q != 0) return q;
        }
    };

    std::vector<Rat> grid = rationals_of_height(window_height);
    bool unique_ok = true, match_ok = true, stab_ok = true;

    for (int i = 0; i < samples; ++i) {
        Rat b = rand_rat(true), c = rand_rat(true), y1 = rand_rat(true);
        Rat y2_star = -b / c * y1;

        // relevance picks exactly one y2
        std::int64_t hits = 0;
        for (const Rat& y2 : grid)
            if (is_relevant(b, c, y1, y2)) ++hits;
        bool in_grid = std::find(grid.begin(), grid.end(), y2_star) != grid.end();
        unique_ok = unique_ok && hits == (in_grid ? 1 : 0);

        // two-variable integrand against the collapsed one-variable form
        Rat t1 = rand_rat(false), t2 = rand_rat(false);
        Rat u = b * t2 - c * t1;
        Mat2<Rat> m2{b, u, Rat(0), c};
        Mat2<Rat> m1{b, u, Rat(0), c}; // same matrix in the one-variable form at t = u
        Rat phase2 = y1 * t1 + y2_star * t2;
        Rat phase1 = -y1 * u / c;
        bool same = m1 == m2 && phase1 == phase2;
        // and the numeric integrand built from f2 agrees as well
        double v2 = f2(Mat2<double>{to_double(m2.e11), to_double(m2.e12), to_double(m2.e21),
                                    to_double(m2.e22)});
        double v1 = f2(Mat2<double>{to_double(m1.e11), to_double(m1.e12), to_double(m1.e21),
                                    to_double(m1.e22)});
        same = same && v1 == v2;
        match_ok = match_ok && same;

        // stabilizer (1, t; 0, 1) x (1, ct/b; 0, 1) fixes diag(b, c)
        Rat t = rand_rat(false);
        Mat2<Rat> n1{Rat(1), t, Rat(0), Rat(1)};
        Mat2<Rat> n2{Rat(1), c * t / b, Rat(0), Rat(1)};
        Mat2<Rat> delta = Mat2<Rat>::diagonal(b, c);
        stab_ok = stab_ok && (n1.inverse() * delta * n2 == delta);
    }
    rep.relevance_unique = unique_ok;
    rep.integrand_match = match_ok;
    rep.stabilizer_fixes = stab_ok;

    // per-window relevant count for integral (b, c) = (1, 1): the line y2 = -y1
    std::int64_t count = 0;
    for (const Rat& y1 : grid)
        if (is_relevant(Rat(1), Rat(1), y1, -y1)) ++count;
    rep.relevant_count = count;
    return rep;
}

} // namespace assembly
} // namespace klab
