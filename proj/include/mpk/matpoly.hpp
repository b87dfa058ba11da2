#pragma once

#include <algorithm>
#include <type_traits>
#include <vector>

#include "linalg.hpp"
#include "poly.hpp"
#include "ratfun.hpp"

namespace mpk {

/// n x n matrix of polynomials, L(z) = A_0 + A_1 z + ... + A_l z^l.
using MatPoly = Matrix<PolyQ>;
/// n x n matrix of reduced rational functions.
using MatRatFun = Matrix<RatFun>;

/// l = max entry degree (-1 for the zero matrix).
inline int matpoly_degree(const MatPoly& L) {
    int l = -1;
    for (std::size_t i = 0; i < L.rows(); ++i)
        for (std::size_t j = 0; j < L.cols(); ++j) l = std::max(l, L(i, j).degree());
    return l;
}

inline MatrixQ coefficient_matrix(const MatPoly& L, std::size_t power) {
    return L.map([power](const PolyQ& p) { return p.coeff(power); });
}

inline MatPoly from_coefficient_matrices(const std::vector<MatrixQ>& coeffs) {
    if (coeffs.empty()) fail(ErrorKind::InvalidArgument, "no coefficient matrices");
    std::size_t r = coeffs.front().rows(), c = coeffs.front().cols();
    MatPoly L(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            std::vector<GaussianRational> v;
            for (const auto& a : coeffs) {
                if (a.rows() != r || a.cols() != c) fail(ErrorKind::InvalidArgument, "coefficient matrices differ in shape");
                v.push_back(a(i, j));
            }
            L(i, j) = PolyQ(std::move(v));
        }
    return L;
}

template <class F>
Matrix<F> mat_eval(const MatPoly& L, const F& z) {
    if constexpr (std::is_same_v<F, GaussianRational>) {
        return L.map([&](const PolyQ& p) { return p(z); });
    } else {
        return L.map([&](const PolyQ& p) { return to_complex(p)(z); });
    }
}

inline MatPoly mat_derivative(const MatPoly& L, unsigned order) {
    return L.map([order](const PolyQ& p) { return derivative(p, order); });
}

inline MatPoly conj_coeffs(const MatPoly& L) {
    return L.map([](const PolyQ& p) { return conj_coeffs(p); });
}

/// Coefficientwise conjugate transpose, i.e. z -> L(conj z)^*.
inline MatPoly adjoint(const MatPoly& L) { return conj_coeffs(L).transpose(); }

inline MatRatFun to_ratfun(const MatPoly& L) {
    return L.map([](const PolyQ& p) { return RatFun(p); });
}

/// det L by Bareiss fraction-free elimination over Q(i)[z].
inline PolyQ mat_det(MatPoly a) {
    if (!a.is_square()) fail(ErrorKind::InvalidArgument, "determinant of a non-square matrix polynomial");
    std::size_t n = a.rows();
    if (n == 0) return PolyQ(GaussianRational(1));
    PolyQ prev(GaussianRational(1));
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k).is_zero()) {
            std::size_t p = k + 1;
            while (p < n && a(p, k).is_zero()) ++p;
            if (p == n) return {};
            for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(k, j));
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = exact_quotient(a(k, k) * a(i, j) - a(i, k) * a(k, j), prev);
            a(i, k) = PolyQ();
        }
        prev = a(k, k);
    }
    PolyQ d = a(n - 1, n - 1);
    return negate ? -d : d;
}

/// Determinant of L with row i and column j deleted.
inline PolyQ mat_minor(const MatPoly& L, std::size_t row, std::size_t col) {
    std::size_t n = L.rows();
    MatPoly m(n - 1, n - 1);
    for (std::size_t i = 0, ii = 0; i < n; ++i) {
        if (i == row) continue;
        for (std::size_t j = 0, jj = 0; j < n; ++j) {
            if (j == col) continue;
            m(ii, jj++) = L(i, j);
        }
        ++ii;
    }
    return mat_det(m);
}

/// Leading coefficient matrix is the identity (and l >= 1).
inline bool is_monic(const MatPoly& L) {
    int l = matpoly_degree(L);
    if (l < 1 || !L.is_square()) return false;
    return coefficient_matrix(L, static_cast<std::size_t>(l)) == MatrixQ::identity(L.rows());
}

inline bool is_hermitian(const MatPoly& L) {
    if (!L.is_square()) return false;
    for (std::size_t i = 0; i < L.rows(); ++i)
        for (std::size_t j = i; j < L.cols(); ++j)
            if (!(L(i, j) == conj_coeffs(L(j, i)))) return false;
    return true;
}

struct DegreeReport {
    int det_degree = -1;
    int nl = 0;
    bool monic = false;
    /// minor_degrees(i, j) = deg m_ij (-1 for an identically zero minor).
    Matrix<int> minor_degrees;
    int max_minor_degree = -1;
    /// deg m_ij <= deg chi for all i, j: the inverse converges at infinity.
    bool convergent_at_infinity = false;
    bool degree_bound_holds = false;
};

inline DegreeReport degree_report(const MatPoly& L) {
    PolyQ chi = mat_det(L);
    if (chi.is_zero()) fail(ErrorKind::NotInvertible, "det L(z) is identically zero");
    DegreeReport r;
    std::size_t n = L.rows();
    r.det_degree = chi.degree();
    r.nl = static_cast<int>(n) * std::max(matpoly_degree(L), 0);
    r.monic = is_monic(L);
    r.minor_degrees = Matrix<int>(n, n, -1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            int d = n == 1 ? 0 : mat_minor(L, i, j).degree();
            r.minor_degrees(i, j) = d;
            r.max_minor_degree = std::max(r.max_minor_degree, d);
        }
    r.convergent_at_infinity = r.max_minor_degree <= r.det_degree;
    r.degree_bound_holds = r.det_degree <= r.nl;
    return r;
}

/// -L(z)^{-1} via adjugate over determinant.
inline MatRatFun inverse_hat(const MatPoly& L) {
    PolyQ chi = mat_det(L);
    if (chi.is_zero()) fail(ErrorKind::NotInvertible, "det L(z) is identically zero");
    std::size_t n = L.rows();
    MatRatFun out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            PolyQ m = n == 1 ? PolyQ(GaussianRational(1)) : mat_minor(L, j, i);
            if ((i + j) % 2 == 0) m = -m;
            out(i, j) = RatFun(m, chi);
        }
    return out;
}

}  // namespace mpk
