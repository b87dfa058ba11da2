#pragma once

#include <string>
#include <vector>

#include "spectral.hpp"

namespace mpk {

/// u(t) = (sum_p t^{j-p}/(j-p)! coeffs[p]) e^{alpha t}, j = coeffs.size()-1.
template <class F>
struct SolutionTerm {
    RootSpec alpha;
    std::size_t source_index = 0;
    std::vector<Vec<F>> coeffs;

    std::size_t degree() const { return coeffs.size() - 1; }
};

using SolutionTermQ = SolutionTerm<GaussianRational>;
using SolutionTermC = SolutionTerm<Complex>;

/// The vector polynomial p(t) with u(t) = p(t) e^{alpha t}.
template <class F>
std::vector<Poly<F>> term_polynomial(const SolutionTerm<F>& u) {
    std::size_t n = u.coeffs.empty() ? 0 : u.coeffs[0].size();
    std::size_t j = u.degree();
    std::vector<Poly<F>> p(n);
    for (std::size_t q = 0; q <= j; ++q) {
        std::size_t e = j - q;
        F inv;
        if constexpr (std::is_same_v<F, GaussianRational>) inv = GaussianRational(mpq_class(1, factorial(e)));
        else inv = F(1.0 / factorial(static_cast<unsigned>(e)).get_d());
        for (std::size_t r = 0; r < n; ++r) p[r] += Poly<F>::monomial(u.coeffs[q][r] * inv, e);
    }
    return p;
}

struct GeneralSolution {
    std::vector<SolutionTermQ> exact;
    std::vector<SolutionTermC> approx;
    bool independent = false;

    std::size_t dimension() const { return exact.size() + approx.size(); }
};

template <class F>
struct SolutionCheck {
    bool ok = false;
    /// r(t) with L(d/dt) u = r(t) e^{alpha t}.
    std::vector<Poly<F>> residual;
};

/// Substitutes u into L(d/dt): L(d/dt)[p e^{at}] = e^{at} sum_q L^{(q)}(a)/q! p^{(q)}(t).
template <class F>
SolutionCheck<F> verify_solution(const MatPoly& L, const SolutionTerm<F>& u, double tol = 1e-9) {
    F a = detail::field_alpha<F>(u.alpha);
    auto p = term_polynomial(u);
    std::size_t n = L.rows();
    std::size_t terms = static_cast<std::size_t>(std::max(matpoly_degree(L), 0)) + 1;
    auto Lq = taylor_matrices<F>(L, a, terms);
    SolutionCheck<F> out;
    out.residual.assign(n, Poly<F>());
    for (std::size_t q = 0; q < terms; ++q) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < L.cols(); ++j) {
                if (is_zero_exact(Lq[q](i, j))) continue;
                out.residual[i] += derivative(p[j], static_cast<unsigned>(q)) * Lq[q](i, j);
            }
    }
    out.ok = true;
    for (const auto& r : out.residual)
        for (const auto& c : r.coeffs())
            if (!ScalarTraits<F>::negligible(c, tol)) out.ok = false;
    return out;
}

namespace detail {

/// Column of initial data (u(0), u'(0), ..., u^{(K-1)}(0)) for one term.
template <class F>
std::vector<F> initial_data(const SolutionTerm<F>& u, std::size_t K) {
    F a = field_alpha<F>(u.alpha);
    auto p = term_polynomial(u);
    std::size_t n = p.size();
    std::vector<F> col(n * K, F(0));
    // u^{(r)}(0) = sum_s C(r, s) a^{r-s} p^{(s)}(0)
    for (std::size_t r = 0; r < K; ++r)
        for (std::size_t s = 0; s <= r; ++s) {
            mpz_class binom;
            mpz_bin_uiui(binom.get_mpz_t(), r, s);
            F w;
            if constexpr (std::is_same_v<F, GaussianRational>) w = GaussianRational(mpq_class(binom));
            else w = F(binom.get_d());
            for (std::size_t e = 0; e < r - s; ++e) w = w * a;
            for (std::size_t i = 0; i < n; ++i) {
                F ds = p[i].coeff(s);
                if (is_zero_exact(ds)) continue;
                if constexpr (std::is_same_v<F, GaussianRational>) ds = ds * GaussianRational(mpq_class(factorial(s)));
                else ds = ds * F(factorial(static_cast<unsigned>(s)).get_d());
                col[r * n + i] += w * ds;
            }
        }
    return col;
}

}  // namespace detail

/// Every prefix of every chain of the canonical system, one term each.
inline GeneralSolution general_solution(const MatPoly& L, const CanonicalSystem& cs) {
    GeneralSolution g;
    for (const auto& rec : cs.exact)
        for (std::size_t j = 0; j < rec.order; ++j)
            g.exact.push_back({rec.alpha, rec.index, std::vector<Vec<GaussianRational>>(rec.chain.begin(), rec.chain.begin() + static_cast<long>(j) + 1)});
    for (const auto& rec : cs.approx)
        for (std::size_t j = 0; j < rec.order; ++j)
            g.approx.push_back({rec.alpha, rec.index, std::vector<Vec<Complex>>(rec.chain.begin(), rec.chain.begin() + static_cast<long>(j) + 1)});

    std::size_t K = g.dimension(), n = L.rows();
    if (K == 0) {
        g.independent = true;
        return g;
    }
    if (g.approx.empty()) {
        MatrixQ M(n * K, K);
        for (std::size_t c = 0; c < K; ++c) {
            auto col = detail::initial_data(g.exact[c], K);
            for (std::size_t r = 0; r < col.size(); ++r) M(r, c) = col[r];
        }
        g.independent = rank(M) == K;
    } else {
        MatrixC M(n * K, K);
        std::size_t c = 0;
        for (const auto& t : g.exact) {
            SolutionTermC tc{t.alpha, t.source_index, {}};
            for (const auto& v : t.coeffs) {
                Vec<Complex> w;
                for (const auto& x : v) w.push_back(x.to_complex());
                tc.coeffs.push_back(w);
            }
            auto col = detail::initial_data(tc, K);
            for (std::size_t r = 0; r < col.size(); ++r) M(r, c) = col[r];
            ++c;
        }
        for (const auto& t : g.approx) {
            auto col = detail::initial_data(t, K);
            for (std::size_t r = 0; r < col.size(); ++r) M(r, c) = col[r];
            ++c;
        }
        g.independent = rank(M, 1e-9) == K;
    }
    if (K != static_cast<std::size_t>(mat_det(L).degree()))
        fail(ErrorKind::Internal, "solution count differs from deg det L");
    return g;
}

inline GeneralSolution general_solution(const MatPoly& L) { return general_solution(L, canonical_system(L)); }

namespace detail {

template <class F>
std::string exp_factor(const RootSpec& a, bool latex) {
    if (a.exact && a.value.is_zero()) return "";
    std::string v = a.to_string();
    if (a.exact && a.value.is_one()) v = "";
    else if (a.exact && a.value == GaussianRational(-1)) v = "-";
    if (latex) return " e^{" + v + (v.size() > 1 ? " " : "") + "t}";
    return " exp(" + v + (v.size() > 1 ? "*" : "") + "t)";
}

}  // namespace detail

/// Expanded monomial form, e.g. "(-1, 0, t) exp(t)".
template <class F>
std::string render_expanded(const SolutionTerm<F>& u) {
    auto p = term_polynomial(u);
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + p[i].to_string("t");
    return s + ")" + detail::exp_factor<F>(u.alpha, false);
}

/// Factorial-scaled chain form, e.g. "t phi_0 + phi_1" with the vectors spelled out.
template <class F>
std::string render_chain_form(const SolutionTerm<F>& u) {
    std::string s;
    std::size_t j = u.degree();
    for (std::size_t q = 0; q <= j; ++q) {
        std::size_t e = j - q;
        if (q) s += " + ";
        if (e == 1) s += "t ";
        else if (e > 1) s += "t^" + std::to_string(e) + "/" + std::to_string(e) + "! ";
        s += "(";
        for (std::size_t r = 0; r < u.coeffs[q].size(); ++r) s += (r ? ", " : "") + detail::coeff_text(u.coeffs[q][r]);
        s += ")";
    }
    if (j > 0) s = "[" + s + "]";
    return s + detail::exp_factor<F>(u.alpha, false);
}

template <class F>
std::string render_latex(const SolutionTerm<F>& u) {
    auto p = term_polynomial(u);
    std::string s = "\\begin{pmatrix}";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? " \\\\ " : " ") + p[i].to_string("t");
    return s + " \\end{pmatrix}" + detail::exp_factor<F>(u.alpha, true);
}

}  // namespace mpk
