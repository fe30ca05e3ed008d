#include "klab/cyclo.hpp"

#include <cmath>

namespace klab {

CycloSum::CycloSum(std::int64_t p, int n) : p_(p), n_(n) {
    if (!is_prime_i64(p)) throw std::invalid_argument("CycloSum: p must be prime");
    if (n < 0) throw std::invalid_argument("CycloSum: n must be >= 0");
    order_ = ipow(p, n);
    if (order_ > (1 << 26)) throw std::invalid_argument("CycloSum: order too large");
    c_.assign(static_cast<std::size_t>(order_), 0);
}

CycloSum CycloSum::basis(std::int64_t p, int n, std::int64_t idx, std::int64_t weight) {
    CycloSum s(p, n);
    s.add_basis(idx, weight);
    return s;
}

CycloSum CycloSum::integer(std::int64_t p, int n, std::int64_t value) {
    return basis(p, n, 0, value);
}

CycloSum& CycloSum::operator+=(const CycloSum& o) {
    if (p_ != o.p_ || n_ != o.n_) throw std::invalid_argument("CycloSum: mixed orders");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

CycloSum& CycloSum::operator-=(const CycloSum& o) {
    if (p_ != o.p_ || n_ != o.n_) throw std::invalid_argument("CycloSum: mixed orders");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

CycloSum& CycloSum::operator*=(std::int64_t k) {
    for (auto& v : c_) v *= k;
    return *this;
}

CycloSum CycloSum::operator*(const CycloSum& o) const {
    if (p_ != o.p_ || n_ != o.n_) throw std::invalid_argument("CycloSum: mixed orders");
    CycloSum r(p_, n_);
    for (std::int64_t i = 0; i < order_; ++i) {
        if (c_[i] == 0) continue;
        for (std::int64_t j = 0; j < order_; ++j) {
            if (o.c_[j] == 0) continue;
            std::int64_t k = i + j;
            if (k >= order_) k -= order_;
            r.c_[k] += c_[i] * o.c_[j];
        }
    }
    return r;
}

CycloSum CycloSum::lifted_to_level(int n_target) const {
    if (n_target < n_) throw std::invalid_argument("CycloSum: cannot lower level");
    if (n_target == n_) return *this;
    CycloSum r(p_, n_target);
    std::int64_t stride = ipow(p_, n_target - n_);
    for (std::int64_t i = 0; i < order_; ++i)
        if (c_[i] != 0) r.c_[i * stride] += c_[i];
    return r;
}

std::vector<std::int64_t> CycloSum::canonical() const {
    std::vector<std::int64_t> r = c_;
    if (n_ == 0) return r;
    // Divide by the minimal polynomial sum_{j<p} x^{j p^{n-1}}, degree phi = p^n - p^{n-1}.
    std::int64_t step = order_ / p_;
    std::int64_t phi = order_ - step;
    for (std::int64_t d = order_ - 1; d >= phi; --d) {
        std::int64_t t = r[d];
        if (t == 0) continue;
        r[d] = 0;
        for (std::int64_t j = 0; j < p_ - 1; ++j) r[d - phi + j * step] -= t;
    }
    r.resize(static_cast<std::size_t>(phi > 0 ? phi : 1));
    return r;
}

bool CycloSum::is_zero() const {
    for (auto v : canonical())
        if (v != 0) return false;
    return true;
}

bool CycloSum::equals(const CycloSum& o) const {
    if (p_ != o.p_ || n_ != o.n_) return false;
    return (*this - o).is_zero();
}

cplx CycloSum::to_complex() const {
    long double re = 0, im = 0;
    for (std::int64_t i = 0; i < order_; ++i) {
        if (c_[i] == 0) continue;
        long double arg = 2.0L * 3.14159265358979323846264338327950288L *
                          static_cast<long double>(i) / static_cast<long double>(order_);
        re += static_cast<long double>(c_[i]) * std::cos(arg);
        im += static_cast<long double>(c_[i]) * std::sin(arg);
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

} // namespace klab
