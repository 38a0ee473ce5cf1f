#pragma once

// Small fixed-size complex matrices and the four-mode state vector.
// Everything here is a plain value type; no allocation, no aliasing.

#include <array>
#include <cmath>
#include <complex>

#include "quartet/error.hpp"

namespace quartet {

using cplx = std::complex<double>;

struct Mat2 {
    std::array<cplx, 4> m{};  // row-major

    cplx& operator()(int i, int j) { return m[2 * i + j]; }
    const cplx& operator()(int i, int j) const { return m[2 * i + j]; }

    static Mat2 identity() { return Mat2{{1.0, 0.0, 0.0, 1.0}}; }

    Mat2 transpose() const { return Mat2{{m[0], m[2], m[1], m[3]}}; }

    Mat2 adjoint() const {
        return Mat2{{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
    }

    cplx det() const { return m[0] * m[3] - m[1] * m[2]; }
};

inline Mat2 operator*(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
    return r;
}

struct Mat4 {
    std::array<cplx, 16> m{};  // row-major

    cplx& operator()(int i, int j) { return m[4 * i + j]; }
    const cplx& operator()(int i, int j) const { return m[4 * i + j]; }

    static Mat4 identity() {
        Mat4 r;
        for (int i = 0; i < 4; ++i) r(i, i) = 1.0;
        return r;
    }

    Mat4 adjoint() const {
        Mat4 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r(i, j) = std::conj((*this)(j, i));
        return r;
    }

    double max_abs() const {
        double v = 0.0;
        for (const auto& e : m) v = std::max(v, std::abs(e));
        return v;
    }
};

inline Mat4 operator*(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < 4; ++k) s += a(i, k) * b(k, j);
            r(i, j) = s;
        }
    return r;
}

inline Mat4 operator-(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (int i = 0; i < 16; ++i) r.m[i] = a.m[i] - b.m[i];
    return r;
}

// Kronecker product; the left factor indexes the slow (row-block) axis.
inline Mat4 kron(const Mat2& a, const Mat2& b) {
    Mat4 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) r(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return r;
}

// Amplitudes of the four modes; unit norm when describing a physical state.
struct StateAmplitudes {
    std::array<cplx, 4> a{};

    cplx& operator[](int n) { return a[n]; }          // 0-based storage
    const cplx& operator[](int n) const { return a[n]; }

    cplx a1() const { return a[0]; }
    cplx a2() const { return a[1]; }
    cplx a3() const { return a[2]; }
    cplx a4() const { return a[3]; }

    double norm_sq() const {
        double s = 0.0;
        for (const auto& x : a) s += std::norm(x);
        return s;
    }

    double norm() const { return std::sqrt(norm_sq()); }

    std::array<double, 4> populations() const {
        return {std::norm(a[0]), std::norm(a[1]), std::norm(a[2]), std::norm(a[3])};
    }

    // level is 1-based to match the usual mode numbering
    static StateAmplitudes basis_state(int level) {
        if (level < 1 || level > 4) throw InvalidInput("basis_state: level must be in 1..4");
        StateAmplitudes s;
        s.a[level - 1] = 1.0;
        return s;
    }
};

inline StateAmplitudes operator*(const Mat4& u, const StateAmplitudes& v) {
    StateAmplitudes r;
    for (int i = 0; i < 4; ++i) {
        cplx s = 0.0;
        for (int j = 0; j < 4; ++j) s += u(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

}  // namespace quartet
