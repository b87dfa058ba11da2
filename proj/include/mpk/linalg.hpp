#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "matrix.hpp"
#include "scalar.hpp"

namespace mpk {

using MatrixQ = Matrix<GaussianRational>;
using MatrixC = Matrix<Complex>;

template <class F>
Matrix<F> conj_transpose(const Matrix<F>& m) {
    Matrix<F> t(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = scalar_conj(m(i, j));
    return t;
}

template <class F>
bool is_hermitian(const Matrix<F>& m) {
    if (!m.is_square()) return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j)
            if (!(m(i, j) == scalar_conj(m(j, i)))) return false;
    return true;
}

inline MatrixC to_complex(const MatrixQ& m) {
    return m.map([](const GaussianRational& x) { return x.to_complex(); });
}

template <class F>
bool is_zero_matrix(const Matrix<F>& m, double tol = 0.0) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!ScalarTraits<F>::negligible(m(i, j), tol)) return false;
    return true;
}

template <class F>
struct Echelon {
    Matrix<F> reduced;
    std::vector<std::size_t> pivots;
};

/// Reduced row echelon form. For the floating field, entries below
/// tol * max(1, max|a_ij|) count as zero and partial pivoting is used.
template <class F>
Echelon<F> row_echelon(Matrix<F> a, double tol = 0.0) {
    using Tr = ScalarTraits<F>;
    double scale = 1.0;
    if constexpr (!Tr::exact) {
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) scale = std::max(scale, Tr::magnitude(a(i, j)));
    }
    double thr = tol * scale;
    Echelon<F> out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = a.rows();
        double best = 0.0;
        for (std::size_t i = r; i < a.rows(); ++i) {
            if (Tr::negligible(a(i, c), thr)) continue;
            if constexpr (Tr::exact) {
                p = i;
                break;
            } else {
                double m = Tr::magnitude(a(i, c));
                if (m > best) {
                    best = m;
                    p = i;
                }
            }
        }
        if (p == a.rows()) {
            for (std::size_t i = r; i < a.rows(); ++i) a(i, c) = F(0);
            continue;
        }
        if (p != r)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
        F inv = F(1) / a(r, c);
        for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || is_zero_exact(a(i, c))) continue;
            F f = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
            a(i, c) = F(0);
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.reduced = std::move(a);
    return out;
}

template <class F>
std::size_t rank(const Matrix<F>& a, double tol = 0.0) {
    return row_echelon(a, tol).pivots.size();
}

/// Basis of {x : a x = 0} as columns.
template <class F>
Matrix<F> nullspace(const Matrix<F>& a, double tol = 0.0) {
    auto e = row_echelon(a, tol);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < a.cols(); ++j)
        if (!is_pivot[j]) free.push_back(j);
    Matrix<F> basis(a.cols(), free.size(), F(0));
    for (std::size_t k = 0; k < free.size(); ++k) {
        basis(free[k], k) = F(1);
        for (std::size_t r = 0; r < e.pivots.size(); ++r) basis(e.pivots[r], k) = -e.reduced(r, free[k]);
    }
    return basis;
}

/// Some X with a X = b, or nullopt when the system is inconsistent.
template <class F>
std::optional<Matrix<F>> solve(const Matrix<F>& a, const Matrix<F>& b, double tol = 0.0) {
    if (a.rows() != b.rows()) fail(ErrorKind::InvalidArgument, "solve: row mismatch");
    Matrix<F> aug(a.rows(), a.cols() + b.cols(), F(0));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) aug(i, a.cols() + j) = b(i, j);
    }
    auto e = row_echelon(aug, tol);
    if (!e.pivots.empty() && e.pivots.back() >= a.cols()) return std::nullopt;
    Matrix<F> x(a.cols(), b.cols(), F(0));
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
        for (std::size_t j = 0; j < b.cols(); ++j) x(e.pivots[r], j) = e.reduced(r, a.cols() + j);
    return x;
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& a, double tol = 0.0) {
    if (!a.is_square()) return std::nullopt;
    if (rank(a, tol) != a.rows()) return std::nullopt;
    return solve(a, Matrix<F>::identity(a.rows()), tol);
}

template <class F>
F determinant(Matrix<F> a) {
    if (!a.is_square()) fail(ErrorKind::InvalidArgument, "determinant of a non-square matrix");
    F det(1);
    std::size_t n = a.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && is_zero_exact(a(p, c))) ++p;
        if (p == n) return F(0);
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (is_zero_exact(a(i, c))) continue;
            F f = a(i, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
        }
    }
    return det;
}

struct Inertia {
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t zero = 0;
};

/// Sylvester inertia of an exact Hermitian matrix by symmetric elimination
/// (LDL* with a congruence step when every remaining diagonal entry vanishes).
inline Inertia inertia(MatrixQ h) {
    if (!is_hermitian(h)) fail(ErrorKind::InvalidArgument, "inertia of a non-Hermitian matrix");
    Inertia out;
    std::size_t n = h.rows();
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t piv = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && !h(i, i).is_zero()) {
                piv = i;
                break;
            }
        if (piv == n) {
            std::size_t pi = n, pj = n;
            for (std::size_t i = 0; i < n && pi == n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (!done[i] && !done[j] && i != j && !h(i, j).is_zero()) {
                        pi = i;
                        pj = j;
                        break;
                    }
            if (pi == n) break;  // remaining block is zero
            // x = e_pi + c e_pj with c = conj(h_pi,pj) gives x* h x = 2|h_pi,pj|^2.
            GaussianRational c = h(pi, pj).conj();
            for (std::size_t k = 0; k < n; ++k) h(k, pi) += h(k, pj) * c;
            GaussianRational cc = c.conj();
            for (std::size_t k = 0; k < n; ++k) h(pi, k) += cc * h(pj, k);
            piv = pi;
        }
        const GaussianRational d = h(piv, piv);
        if (sgn(d.re()) > 0) ++out.positive;
        else ++out.negative;
        done[piv] = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || h(i, piv).is_zero()) continue;
            GaussianRational f = h(i, piv) / d;
            for (std::size_t j = 0; j < n; ++j)
                if (!done[j]) h(i, j) -= f * h(piv, j);
        }
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i]) h(piv, i) = h(i, piv) = GaussianRational(0);
    }
    out.zero = n - out.positive - out.negative;
    return out;
}

}  // namespace mpk
