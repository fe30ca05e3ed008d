#pragma once

#include <array>
#include <stdexcept>

namespace klab {

// 2x2 matrix over an arbitrary commutative ring.
template <typename T>
struct Mat2 {
    T e11{}, e12{}, e21{}, e22{};

    Mat2() = default;
    Mat2(T a, T b, T c, T d) : e11(a), e12(b), e21(c), e22(d) {}

    static Mat2 identity() { return {T(1), T(0), T(0), T(1)}; }
    static Mat2 diagonal(T a, T d) { return {a, T(0), T(0), d}; }

    T det() const { return e11 * e22 - e12 * e21; }
    T trace() const { return e11 + e22; }

    friend Mat2 operator+(const Mat2& a, const Mat2& b) {
        return {a.e11 + b.e11, a.e12 + b.e12, a.e21 + b.e21, a.e22 + b.e22};
    }
    friend Mat2 operator-(const Mat2& a, const Mat2& b) {
        return {a.e11 - b.e11, a.e12 - b.e12, a.e21 - b.e21, a.e22 - b.e22};
    }
    friend Mat2 operator*(const Mat2& a, const Mat2& b) {
        return {a.e11 * b.e11 + a.e12 * b.e21, a.e11 * b.e12 + a.e12 * b.e22,
                a.e21 * b.e11 + a.e22 * b.e21, a.e21 * b.e12 + a.e22 * b.e22};
    }
    friend Mat2 operator*(const T& s, const Mat2& a) {
        return {s * a.e11, s * a.e12, s * a.e21, s * a.e22};
    }
    Mat2 operator-() const { return {-e11, -e12, -e21, -e22}; }

    bool operator==(const Mat2& o) const {
        return e11 == o.e11 && e12 == o.e12 && e21 == o.e21 && e22 == o.e22;
    }

    // Requires det invertible in T (fields, or rings where division is exact).
    Mat2 inverse() const {
        T d = det();
        if (d == T(0)) throw std::domain_error("Mat2: singular matrix");
        T di = T(1) / d;
        return {e22 * di, -e12 * di, -e21 * di, e11 * di};
    }
};

template <typename T>
T tr_prod(const Mat2<T>& a, const Mat2<T>& b) {
    return a.e11 * b.e11 + a.e12 * b.e21 + a.e21 * b.e12 + a.e22 * b.e22;
}

} // namespace klab
