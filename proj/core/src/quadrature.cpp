#include "klab/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "klab/bump.hpp"

namespace klab {
namespace arch {

namespace {

void compute_gl(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(static_cast<std::size_t>(n));
    w.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        // Newton from the Chebyshev-style initial guess.
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (t * p1 - p0) / (t * t - 1.0);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (t * p1 - p0) / (t * t - 1.0);
        x[static_cast<std::size_t>(n - 1 - i)] = t;
        w[static_cast<std::size_t>(n - 1 - i)] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
}

} // namespace

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1");
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) {
        std::pair<std::vector<double>, std::vector<double>> entry;
        compute_gl(n, entry.first, entry.second);
        it = cache.emplace(n, std::move(entry)).first;
    }
    nodes = it->second.first;
    weights = it->second.second;
}

void gauss_legendre_on(double lo, double hi, int n, std::vector<double>& nodes,
                       std::vector<double>& weights) {
    gauss_legendre(n, nodes, weights);
    double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (int i = 0; i < n; ++i) {
        nodes[static_cast<std::size_t>(i)] = mid + half * nodes[static_cast<std::size_t>(i)];
        weights[static_cast<std::size_t>(i)] *= half;
    }
}

double smooth_step(double u) {
    if (u <= 0) return 1.0;
    if (u >= 1) return 0.0;
    double a = std::exp(-1.0 / (1.0 - u));
    double b = std::exp(-1.0 / u);
    return a / (a + b);
}

double MatrixTestFn::operator()(const Mat2<double>& g) const {
    auto plain = [&](const Mat2<double>& h) {
        double v = entry_product(h.e11, h.e12, h.e21, h.e22);
        if (v != 0 && det_window) v *= (*det_window)(h.det());
        return v;
    };
    if (!central_invariant) return plain(g);

    // Radial average over z > 0 against dz/z; the z-range comes from the
    // entry supports, so the integral is genuinely compact.
    double zlo = 0, zhi = 1e300;
    const Profile1D* profs[4] = {&e11, &e12, &e21, &e22};
    double entries[4] = {g.e11, g.e12, g.e21, g.e22};
    bool constrained = false;
    for (int i = 0; i < 4; ++i) {
        if (profs[i]->is_flat() || entries[i] == 0.0) continue;
        Interval s = profs[i]->support();
        double a = s.lo / entries[i], b = s.hi / entries[i];
        if (a > b) std::swap(a, b);
        zlo = std::max(zlo, a);
        zhi = std::min(zhi, b);
        constrained = true;
    }
    if (!constrained || !(zlo < zhi) || zhi <= 0) return 0.0;
    zlo = std::max(zlo, 1e-9);
    std::vector<double> zn, zw;
    gauss_legendre_on(std::log(zlo), std::log(zhi), radial_nodes, zn, zw);
    double acc = 0;
    for (std::size_t i = 0; i < zn.size(); ++i) {
        double z = std::exp(zn[i]);
        acc += zw[i] * plain(Mat2<double>{z * g.e11, z * g.e12, z * g.e21, z * g.e22});
    }
    return acc;
}

} // namespace arch
} // namespace klab
