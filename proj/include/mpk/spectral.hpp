#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "roots.hpp"
#include "smith.hpp"

namespace mpk {

template <class F>
using Vec = std::vector<F>;

/// Eigenvalues of L read off the diagonal of a DiagForm. For each alpha the
/// columns i with d_i(alpha) = 0 and their orders k_i.
struct EigenTable {
    struct Column {
        std::size_t index = 0;
        unsigned order = 0;
    };
    struct Entry {
        RootSpec alpha;
        std::vector<Column> columns;
        unsigned total() const {
            unsigned s = 0;
            for (const auto& c : columns) s += c.order;
            return s;
        }
    };
    std::vector<Entry> entries;

    unsigned total_multiplicity() const {
        unsigned s = 0;
        for (const auto& e : entries) s += e.total();
        return s;
    }
    bool all_exact() const {
        return std::all_of(entries.begin(), entries.end(), [](const Entry& e) { return e.alpha.exact; });
    }
    const Entry* find(const GaussianRational& alpha) const {
        for (const auto& e : entries)
            if (e.alpha.exact && e.alpha.value == alpha) return &e;
        return nullptr;
    }
};

inline EigenTable eigen_table(const DiagForm& form, double tol = numeric_tolerance()) {
    EigenTable t;
    int deg = 0;
    for (std::size_t i = 0; i < form.size(); ++i) {
        const PolyQ& d = form.d(i);
        if (d.is_zero()) fail(ErrorKind::NotInvertible, "det L(z) is identically zero");
        deg += d.degree();
        if (d.degree() < 1) continue;
        for (const auto& r : find_roots(d, tol).roots) {
            auto it = std::find_if(t.entries.begin(), t.entries.end(),
                                   [&](const EigenTable::Entry& e) { return same_root(e.alpha, r); });
            if (it == t.entries.end()) {
                t.entries.push_back({r, {}});
                it = t.entries.end() - 1;
            }
            it->columns.push_back({i, r.multiplicity});
        }
    }
    for (auto& e : t.entries) e.alpha.multiplicity = e.total();
    std::sort(t.entries.begin(), t.entries.end(),
              [](const EigenTable::Entry& a, const EigenTable::Entry& b) { return root_order(a.alpha, b.alpha); });
    if (static_cast<int>(t.total_multiplicity()) != deg)
        fail(ErrorKind::Internal, "eigenvalue multiplicities do not add up to deg det L");
    return t;
}

namespace detail {

template <class F>
F field_alpha(const RootSpec& a) {
    if constexpr (std::is_same_v<F, GaussianRational>) {
        if (!a.exact) fail(ErrorKind::NonExactSpectrum, "exact computation requested at an approximate eigenvalue");
        return a.value;
    } else {
        return a.approx;
    }
}

template <class F>
Poly<F> field_poly(const PolyQ& p) {
    if constexpr (std::is_same_v<F, GaussianRational>) return p;
    else return to_complex(p);
}

}  // namespace detail

/// Matrices L^{(p)}(alpha)/p! for p = 0..count-1.
template <class F>
std::vector<Matrix<F>> taylor_matrices(const MatPoly& L, const F& alpha, std::size_t count) {
    std::vector<Matrix<F>> out(count, Matrix<F>(L.rows(), L.cols(), F(0)));
    for (std::size_t i = 0; i < L.rows(); ++i)
        for (std::size_t j = 0; j < L.cols(); ++j) {
            auto c = taylor_shift(detail::field_poly<F>(L(i, j)), alpha);
            for (std::size_t p = 0; p < count && p < c.size(); ++p) out[p](i, j) = c[p];
        }
    return out;
}

template <class F>
Vec<F> mat_vec(const Matrix<F>& a, const Vec<F>& x) {
    Vec<F> y(a.rows(), F(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
    return y;
}

template <class F>
bool is_zero_vector(const Vec<F>& v, double tol = 0.0) {
    return std::all_of(v.begin(), v.end(), [tol](const F& x) { return ScalarTraits<F>::negligible(x, tol); });
}

/// Canonical root polynomial phi = T_i with its Jordan chain at alpha:
/// phi(z) = sum_{j<k} (z - alpha)^j chain[j] + (z - alpha)^k tail(z).
template <class F>
struct RootFunctionRecord {
    RootSpec alpha;
    std::size_t index = 0;
    unsigned order = 0;
    std::vector<PolyQ> phi;
    std::vector<Vec<F>> chain;
    std::vector<Poly<F>> tail;
};

using RootFunctionQ = RootFunctionRecord<GaussianRational>;
using RootFunctionC = RootFunctionRecord<Complex>;

template <class F>
RootFunctionRecord<F> root_function(const DiagForm& form, const EigenTable::Entry& entry, std::size_t i) {
    auto col = std::find_if(entry.columns.begin(), entry.columns.end(),
                            [i](const EigenTable::Column& c) { return c.index == i; });
    if (col == entry.columns.end())
        fail(ErrorKind::NotAnEigencolumn, "column " + std::to_string(i) + " is not in Omega(" + entry.alpha.to_string() + ")");
    RootFunctionRecord<F> rec;
    rec.alpha = entry.alpha;
    rec.index = i;
    rec.order = col->order;
    rec.phi = form.column_of_T(i);
    F a = detail::field_alpha<F>(entry.alpha);
    std::size_t n = rec.phi.size(), k = rec.order;
    rec.chain.assign(k, Vec<F>(n, F(0)));
    rec.tail.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
        auto c = taylor_shift(detail::field_poly<F>(rec.phi[r]), a);
        for (std::size_t j = 0; j < k && j < c.size(); ++j) rec.chain[j][r] = c[j];
        if (c.size() > k) rec.tail[r] = from_taylor(std::vector<F>(c.begin() + static_cast<long>(k), c.end()), a);
    }
    if (is_zero_vector(rec.chain[0], ScalarTraits<F>::exact ? 0.0 : entry.alpha.tol))
        fail(ErrorKind::DegenerateChain, "phi(alpha) vanishes");
    return rec;
}

inline RootFunctionQ root_function(const DiagForm& form, const GaussianRational& alpha, std::size_t i) {
    EigenTable t = eigen_table(form);
    const auto* e = t.find(alpha);
    if (!e) fail(ErrorKind::NotAnEigencolumn, alpha.to_string() + " is not an eigenvalue");
    return root_function<GaussianRational>(form, *e, i);
}

struct PoleCancellationRecord {
    GaussianRational alpha;
    std::size_t index = 0;
    std::vector<PolyQ> psi;
    unsigned vanish_order = 0;
};

/// psi = L phi; its vanishing order at alpha must equal the chain order.
inline PoleCancellationRecord pole_cancellation(const MatPoly& L, const RootFunctionQ& rec) {
    PoleCancellationRecord out;
    out.alpha = rec.alpha.value;
    out.index = rec.index;
    out.psi.assign(L.rows(), PolyQ());
    for (std::size_t i = 0; i < L.rows(); ++i)
        for (std::size_t j = 0; j < L.cols(); ++j) out.psi[i] += L(i, j) * rec.phi[j];
    bool first = true;
    for (const auto& p : out.psi) {
        if (p.is_zero()) continue;
        unsigned m = root_multiplicity(p, out.alpha);
        out.vanish_order = first ? m : std::min(out.vanish_order, m);
        first = false;
    }
    if (first) fail(ErrorKind::OrderMismatch, "L(z) phi(z) vanishes identically");
    if (out.vanish_order != rec.order)
        fail(ErrorKind::OrderMismatch, "L phi vanishes to order " + std::to_string(out.vanish_order) + " at " +
                                           out.alpha.to_string() + ", expected " + std::to_string(rec.order));
    return out;
}

struct ChainCheck {
    /// Largest m such that the first m vectors satisfy the chain equations.
    std::size_t valid_length = 0;
    /// No phi_m exists extending the (fully valid) chain.
    bool maximal = false;
};

/// Checks sum_{p<=i} L^{(p)}(alpha)/p! phi_{i-p} = 0 for i = 0..m-1 and
/// decides maximality from the rank of the i = m system.
template <class F>
ChainCheck verify_chain(const MatPoly& L, const F& alpha, const std::vector<Vec<F>>& chain, double tol = 0.0) {
    if (chain.empty() || is_zero_vector(chain[0], tol)) fail(ErrorKind::DegenerateChain, "chain must start with a nonzero vector");
    std::size_t m = chain.size(), n = L.rows();
    auto Lp = taylor_matrices<F>(L, alpha, m + 1);
    auto lhs = [&](std::size_t i, std::size_t from) {
        Vec<F> s(n, F(0));
        for (std::size_t p = from; p <= i; ++p) {
            Vec<F> t = mat_vec(Lp[p], chain[i - p]);
            for (std::size_t r = 0; r < n; ++r) s[r] += t[r];
        }
        return s;
    };
    double scale = 1.0;
    if constexpr (!ScalarTraits<F>::exact) {
        for (const auto& v : chain)
            for (const auto& x : v) scale = std::max(scale, std::abs(x));
    }
    ChainCheck out;
    while (out.valid_length < m && is_zero_vector(lhs(out.valid_length, 0), tol * scale)) ++out.valid_length;
    if (out.valid_length < m) return out;
    // i = m: L(alpha) phi_m = -sum_{p=1}^{m} Lp[p] phi_{m-p}
    Vec<F> rhs = lhs(m, 1);
    Matrix<F> b(n, 1, F(0));
    for (std::size_t r = 0; r < n; ++r) b(r, 0) = -rhs[r];
    out.maximal = !solve(Lp[0], b, tol).has_value();
    return out;
}

struct CanonicalSystem {
    EigenTable table;
    std::vector<RootFunctionQ> exact;
    std::vector<RootFunctionC> approx;

    std::size_t total_length() const {
        std::size_t s = 0;
        for (const auto& r : exact) s += r.order;
        for (const auto& r : approx) s += r.order;
        return s;
    }
    std::vector<const RootFunctionQ*> at(const GaussianRational& alpha) const {
        std::vector<const RootFunctionQ*> out;
        for (const auto& r : exact)
            if (r.alpha.value == alpha) out.push_back(&r);
        return out;
    }
};

/// One record per (alpha, i in Omega(alpha)). Checks that the eigenvectors
/// T_i(alpha) are a basis of ker L(alpha) and that every chain is valid and
/// maximal.
inline CanonicalSystem canonical_system(const MatPoly& L, const DiagForm& form, double tol = numeric_tolerance()) {
    CanonicalSystem cs;
    cs.table = eigen_table(form, tol);
    std::size_t n = L.rows();
    for (const auto& e : cs.table.entries) {
        std::size_t omega = e.columns.size();
        if (e.alpha.exact) {
            MatrixQ eig(n, omega);
            for (std::size_t c = 0; c < omega; ++c) {
                auto rec = root_function<GaussianRational>(form, e, e.columns[c].index);
                for (std::size_t r = 0; r < n; ++r) eig(r, c) = rec.chain[0][r];
                auto chk = verify_chain(L, e.alpha.value, rec.chain);
                if (chk.valid_length != rec.order || !chk.maximal)
                    fail(ErrorKind::Internal, "chain at " + e.alpha.to_string() + " failed verification");
                cs.exact.push_back(std::move(rec));
            }
            if (rank(eig) != omega || n - rank(mat_eval(L, e.alpha.value)) != omega)
                fail(ErrorKind::Internal, "eigenvectors at " + e.alpha.to_string() + " do not span ker L(alpha)");
        } else {
            for (const auto& c : e.columns) cs.approx.push_back(root_function<Complex>(form, e, c.index));
        }
    }
    return cs;
}

inline CanonicalSystem canonical_system(const MatPoly& L, double tol = numeric_tolerance()) {
    return canonical_system(L, diagonalize(L), tol);
}

}  // namespace mpk
