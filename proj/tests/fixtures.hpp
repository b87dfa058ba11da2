#pragma once

#include <initializer_list>

#include "mpk/mpk.hpp"

namespace fx {

using namespace mpk;

/// Polynomial from ascending integer coefficients.
inline PolyQ P(std::initializer_list<long> c) {
    std::vector<GaussianRational> v;
    for (long x : c) v.emplace_back(x);
    return PolyQ(std::move(v));
}

inline GaussianRational Q(long num, long den = 1) { return GaussianRational(mpq_class(num, den)); }
inline GaussianRational I(long re, long im) { return GaussianRational(mpq_class(re), mpq_class(im)); }

inline MatrixQ MQ(std::initializer_list<std::initializer_list<long>> rows) {
    MatrixQ m(rows.size(), rows.begin()->size(), GaussianRational(0));
    std::size_t i = 0;
    for (const auto& r : rows) {
        std::size_t j = 0;
        for (long x : r) m(i, j++) = GaussianRational(x);
        ++i;
    }
    return m;
}

inline Vec<GaussianRational> V(std::initializer_list<long> c) {
    Vec<GaussianRational> v;
    for (long x : c) v.emplace_back(x);
    return v;
}

inline MatPoly identity(std::size_t n) { return MatPoly::identity(n); }

inline MatPoly zI(std::size_t n) {
    MatPoly m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = PolyQ::z();
    return m;
}

// L(z) = [[0, z, 0], [1, 0, z], [0, 0, z^3 - z^2]]
inline MatPoly cubic3x3() {
    return MatPoly{{P({}), P({0, 1}), P({})}, {P({1}), P({}), P({0, 1})}, {P({}), P({}), P({0, 0, -1, 1})}};
}

// L(z) = [[1, z^2 - z], [z^2 - z, 0]]
inline MatPoly hermitian2x2() { return MatPoly{{P({1}), P({0, -1, 1})}, {P({0, -1, 1}), P({})}}; }

// L(z) = [[z^3, z], [z, 0]]
inline MatPoly divergent2x2() { return MatPoly{{P({0, 0, 0, 1}), P({0, 1})}, {P({0, 1}), P({})}}; }

inline MatPoly nonzero_limit() { return MatPoly{{P({0, 1}), P({1})}, {P({1}), P({1})}}; }

/// The flip matrix G_k with ones on the antidiagonal.
inline MatrixQ flip(std::size_t k, int sign = 1) {
    MatrixQ g(k, k, GaussianRational(0));
    for (std::size_t i = 0; i < k; ++i) g(i, k - 1 - i) = GaussianRational(sign);
    return g;
}

}  // namespace fx
