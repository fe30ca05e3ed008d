#include "klab/zetafn.hpp"

#include <cmath>
#include <mutex>

namespace klab {
namespace zeta {

double zeta_em(double sigma, int cutoff) {
    if (sigma <= 0 || sigma == 1.0) throw std::domain_error("zeta_em: needs sigma > 0, sigma != 1");
    const double N = static_cast<double>(cutoff);
    double s = 0;
    for (int n = 1; n <= cutoff; ++n) s += std::pow(static_cast<double>(n), -sigma);
    s += std::pow(N, 1.0 - sigma) / (sigma - 1.0);
    s -= 0.5 * std::pow(N, -sigma);
    // Bernoulli corrections B2/2!, B4/4!, B6/6!
    double t = sigma * std::pow(N, -sigma - 1.0);
    s += t / 12.0;
    t = sigma * (sigma + 1.0) * (sigma + 2.0) * std::pow(N, -sigma - 3.0);
    s -= t / 720.0;
    t = sigma * (sigma + 1.0) * (sigma + 2.0) * (sigma + 3.0) * (sigma + 4.0) * std::pow(N, -sigma - 5.0);
    s += t / 30240.0;
    return s;
}

double zeta_S(double sigma, const std::vector<std::int64_t>& excluded) {
    double z = zeta_em(sigma);
    for (auto p : excluded) z *= 1.0 - std::pow(static_cast<double>(p), -sigma);
    return z;
}

double zeta_S_residue(const std::vector<std::int64_t>& excluded) {
    double r = 1.0;
    for (auto p : excluded) r *= 1.0 - 1.0 / static_cast<double>(p);
    return r;
}

std::vector<std::int64_t> primes_up_to(std::int64_t n) {
    static std::vector<std::int64_t> cache;
    static std::int64_t cached_limit = 0;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (n > cached_limit) {
        cache.clear();
        std::vector<bool> sieve(static_cast<std::size_t>(n + 1), true);
        for (std::int64_t i = 2; i <= n; ++i) {
            if (!sieve[static_cast<std::size_t>(i)]) continue;
            cache.push_back(i);
            for (std::int64_t j = i * i; j <= n; j += i) sieve[static_cast<std::size_t>(j)] = false;
        }
        cached_limit = n;
    }
    std::vector<std::int64_t> out;
    for (auto p : cache) {
        if (p > n) break;
        out.push_back(p);
    }
    return out;
}

} // namespace zeta
} // namespace klab
