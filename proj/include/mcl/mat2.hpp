#pragma once

#include "mcl/laurent.hpp"

namespace mcl {

// 2x2 matrix over the exact Laurent ring.
struct Mat2 {
    Poly a, b, c, d; // [[a, b], [c, d]]

    static Mat2 identity() { return {Poly::one(), Poly(), Poly(), Poly::one()}; }
    static Mat2 zero() { return {}; }

    friend bool operator==(const Mat2& m, const Mat2& n) {
        return m.a == n.a && m.b == n.b && m.c == n.c && m.d == n.d;
    }
    friend bool operator!=(const Mat2& m, const Mat2& n) { return !(m == n); }

    friend Mat2 operator*(const Mat2& m, const Mat2& n) {
        return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
                m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
    }
    friend Mat2 operator+(const Mat2& m, const Mat2& n) {
        return {m.a + n.a, m.b + n.b, m.c + n.c, m.d + n.d};
    }
    friend Mat2 operator-(const Mat2& m, const Mat2& n) {
        return {m.a - n.a, m.b - n.b, m.c - n.c, m.d - n.d};
    }
    Mat2 operator-() const { return {-a, -b, -c, -d}; }
};

inline Poly det(const Mat2& m) { return m.a * m.d - m.b * m.c; }
inline Poly trace(const Mat2& m) { return m.a + m.d; }

// Inverse via the adjugate; callers guarantee det = 1.
inline Mat2 inverse(const Mat2& m) {
    if (det(m) != Poly::one()) throw NotUnimodular();
    return {m.d, -m.b, -m.c, m.a};
}

} // namespace mcl
