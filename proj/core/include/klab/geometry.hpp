#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <variant>

#include "klab/mat2.hpp"
#include "klab/rat.hpp"

namespace klab {

// A point of the six-dimensional affine space gl2 x A^1 x A^1: a matrix
// together with two scalars.  Used both for integration variables
// v = (T, t1, t2) and for the dual data alpha = (B, y1, y2).
template <typename T>
struct PhasePoint {
    Mat2<T> mat{};
    T s1{};
    T s2{};

    PhasePoint() = default;
    PhasePoint(Mat2<T> m, T a, T b) : mat(std::move(m)), s1(std::move(a)), s2(std::move(b)) {}

    friend PhasePoint operator+(const PhasePoint& a, const PhasePoint& b) {
        return {a.mat + b.mat, a.s1 + b.s1, a.s2 + b.s2};
    }
    friend PhasePoint operator-(const PhasePoint& a, const PhasePoint& b) {
        return {a.mat - b.mat, a.s1 - b.s1, a.s2 - b.s2};
    }
    friend PhasePoint operator*(const T& k, const PhasePoint& a) {
        return {k * a.mat, k * a.s1, k * a.s2};
    }
    bool operator==(const PhasePoint& o) const {
        return mat == o.mat && s1 == o.s1 && s2 == o.s2;
    }

    // Membership in the open locus where det, s1, s2 are all invertible.
    bool unit_locus() const { return mat.det() != T(0) && s1 != T(0) && s2 != T(0); }
};

template <typename T>
using AlphaPoint = PhasePoint<T>;

// <(delta,a1,a2), (T,t1,t2)> = tr(delta T) + a1 t1 + a2 t2.
template <typename T>
T pairing(const PhasePoint<T>& delta, const PhasePoint<T>& v) {
    return tr_prod(delta.mat, v.mat) + delta.s1 * v.s1 + delta.s2 * v.s2;
}

// P(b, v) = b det T - t1 t2.
template <typename T>
T phase_P(const T& b, const PhasePoint<T>& v) {
    return b * v.mat.det() - v.s1 * v.s2;
}

// P^v(b, alpha) = P(b^{-1}, alpha); vanishes exactly on the quadric.
inline Rat phase_P_dual(const Rat& b, const PhasePoint<Rat>& alpha) {
    if (b == 0) throw std::domain_error("phase_P_dual: b must be invertible");
    return phase_P(Rat(1) / b, alpha);
}

// The linear map f with P(b, v+v') = P(b,v) + P(b,v') + <f(v'), v>:
// (x1 x2; x3 x4, t1, t2) |-> (b (x4 -x2; -x3 x1), -t2, -t1).
template <typename T>
PhasePoint<T> dual_map_f(const T& b, const PhasePoint<T>& v) {
    return {Mat2<T>{b * v.mat.e22, -(b * v.mat.e12), -(b * v.mat.e21), b * v.mat.e11},
            -v.s2, -v.s1};
}

// Gradient of P(b, .) in coordinates (x1, x2, x3, x4, z1, z2).
template <typename T>
std::array<T, 6> grad_P(const T& b, const PhasePoint<T>& v) {
    return {b * v.mat.e22, -(b * v.mat.e21), -(b * v.mat.e12), b * v.mat.e11,
            -v.s2, -v.s1};
}

// Constant Hessian of P(b, .); det = -b^4, a unit exactly when b is.
template <typename T>
std::array<std::array<T, 6>, 6> hessian_P(const T& b) {
    std::array<std::array<T, 6>, 6> h{};
    for (auto& row : h) row.fill(T(0));
    h[0][3] = b;  h[3][0] = b;
    h[1][2] = -b; h[2][1] = -b;
    h[4][5] = T(-1); h[5][4] = T(-1);
    return h;
}

// A point (b, T, t1, t2) of the quadric b^{-1} det T = t1 t2.
template <typename T>
struct QuadricPoint {
    T b{};
    PhasePoint<T> v{};

    QuadricPoint() = default;
    QuadricPoint(T b_, PhasePoint<T> v_) : b(std::move(b_)), v(std::move(v_)) {
        check();
    }

    bool satisfies_constraint() const {
        return b != T(0) && v.unit_locus() && v.mat.det() == b * v.s1 * v.s2;
    }

private:
    void check() const {
        if (!satisfies_constraint())
            throw std::invalid_argument("QuadricPoint: constraint b^{-1} det T = t1 t2 violated");
    }
};

// (g1, g2, h3, h4) with h3 = diag(x, 1), h4 = diag(1, y).
template <typename T>
struct GroupElem {
    Mat2<T> g1 = Mat2<T>::identity();
    Mat2<T> g2 = Mat2<T>::identity();
    T x = T(1); // h3 = diag(x, 1)
    T y = T(1); // h4 = diag(1, y)

    static GroupElem identity() { return {}; }

    bool invertible() const {
        return g1.det() != T(0) && g2.det() != T(0) && x != T(0) && y != T(0);
    }

    // Composition matching act(a * b, w) == act(a, act(b, w)); since the
    // matrix slots act by T |-> g2^{-1} T g1, their products reverse.
    friend GroupElem operator*(const GroupElem& a, const GroupElem& b) {
        return {b.g1 * a.g1, b.g2 * a.g2, a.x * b.x, a.y * b.y};
    }
};

// (g1,g2,h3,h4).(b, T, t1, t2) =
//   (b det(g1 g2^{-1} h3^{-1} h4), g2^{-1} T g1, t1 det h3, t2 det h4^{-1}).
template <typename T>
std::pair<T, PhasePoint<T>> act(const GroupElem<T>& g, const T& b, const PhasePoint<T>& v) {
    if (!g.invertible()) throw std::domain_error("act: group element not invertible");
    T scale = b * g.g1.det() * (T(1) / g.g2.det()) * (T(1) / g.x) * g.y;
    PhasePoint<T> w{g.g2.inverse() * v.mat * g.g1, v.s1 * g.x, v.s2 * (T(1) / g.y)};
    return {scale, w};
}

template <typename T>
QuadricPoint<T> act(const GroupElem<T>& g, const QuadricPoint<T>& w) {
    auto [b, v] = act(g, w.b, w.v);
    return QuadricPoint<T>{b, v};
}

// ---------------------------------------------------------------------------
// Bruhat decomposition of GL2 over Q: the triangular cell and the big cell
// through the antidiagonal Weyl element.
// ---------------------------------------------------------------------------

struct BruhatCell1 {
    Mat2<Rat> upper; // the matrix itself, e21 = 0
};

// gamma = (1 u; 0 1) (0 bp/c; c 0) (1 w; 0 1)
struct BruhatCell2 {
    Rat u;
    Rat bp; // antidiagonal data: delta = (0 bp/c; c 0)
    Rat c;
    Rat w;

    Mat2<Rat> reconstruct() const {
        Mat2<Rat> n1{Rat(1), u, Rat(0), Rat(1)};
        Mat2<Rat> d{Rat(0), bp / c, c, Rat(0)};
        Mat2<Rat> n2{Rat(1), w, Rat(0), Rat(1)};
        return n1 * d * n2;
    }
};

using BruhatResult = std::variant<BruhatCell1, BruhatCell2>;

inline BruhatResult bruhat_decompose(const Mat2<Rat>& gamma) {
    if (gamma.det() == 0) throw std::domain_error("bruhat_decompose: singular matrix");
    if (gamma.e21 == 0) return BruhatCell1{gamma};
    // Matching (u c, bp/c + u c w; c, c w) against gamma pins all coordinates.
    Rat c = gamma.e21;
    Rat u = gamma.e11 / c;
    Rat w = gamma.e22 / c;
    Rat bp = -gamma.det();
    return BruhatCell2{u, bp, c, w};
}

// delta = (b 0; 0 c) is relevant for the pair (y1, y2) iff -b c^{-1} y1 = y2.
inline bool is_relevant(const Rat& b, const Rat& c, const Rat& y1, const Rat& y2) {
    if (b == 0 || c == 0) throw std::invalid_argument("is_relevant: b, c must be nonzero");
    return -b / c * y1 == y2;
}

// ---------------------------------------------------------------------------
// Unramified Hecke indicator functions on gl2 over Q, integrality read
// simultaneously at all finite places.
// ---------------------------------------------------------------------------

inline bool mat_is_integral(const Mat2<Rat>& g) {
    return is_integral(g.e11) && is_integral(g.e12) && is_integral(g.e21) && is_integral(g.e22);
}

// 1_m: integral entries and det g generating m Z-hat, i.e. |det g| = |m|.
inline int hecke_indicator(std::int64_t m, const Mat2<Rat>& g) {
    if (m == 0) throw std::invalid_argument("hecke_indicator: m must be nonzero");
    if (!mat_is_integral(g)) return 0;
    Rat d = g.det();
    return (d == m || d == -m) ? 1 : 0;
}

// 1_{m,m}: membership in m GL2(Z-hat).
inline int hecke_indicator_central(std::int64_t m, const Mat2<Rat>& g) {
    if (m == 0) throw std::invalid_argument("hecke_indicator_central: m must be nonzero");
    Rat mi{1, m};
    Mat2<Rat> h{g.e11 * mi, g.e12 * mi, g.e21 * mi, g.e22 * mi};
    if (!mat_is_integral(h)) return 0;
    Rat d = h.det();
    return (d == 1 || d == -1) ? 1 : 0;
}

} // namespace klab
