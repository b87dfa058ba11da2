#pragma once

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <optional>
#include <vector>

#include "poly.hpp"

namespace mpk {

inline constexpr double kDefaultNumericTol = 1e-10;

/// Fallback tolerance, overridable through MPK_NUMERIC_TOL.
inline double numeric_tolerance() {
    if (const char* env = std::getenv("MPK_NUMERIC_TOL")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end != env && v > 0.0 && std::isfinite(v)) return v;
    }
    return kDefaultNumericTol;
}

/// A root with its multiplicity. Exact roots carry `value`; approximate ones
/// only `approx`, and satisfy |p(approx)| <= tol * ||p||.
struct RootSpec {
    GaussianRational value;
    Complex approx;
    unsigned multiplicity = 1;
    bool exact = true;
    double tol = 0.0;

    static RootSpec exact_root(GaussianRational v, unsigned mult) {
        RootSpec r;
        r.approx = v.to_complex();
        r.value = std::move(v);
        r.multiplicity = mult;
        return r;
    }
    static RootSpec approx_root(Complex v, unsigned mult, double tol) {
        RootSpec r;
        r.approx = v;
        r.multiplicity = mult;
        r.exact = false;
        r.tol = tol;
        return r;
    }

    bool is_real() const { return exact ? value.is_real() : std::abs(approx.imag()) <= tol * (1.0 + std::abs(approx)); }
    std::string to_string() const;
};

inline std::string RootSpec::to_string() const {
    if (exact) return value.to_string();
    return "~" + detail::coeff_text(approx);
}

/// Same eigenvalue: exact equality, or proximity for approximate roots.
inline bool same_root(const RootSpec& a, const RootSpec& b) {
    if (a.exact != b.exact) return false;
    if (a.exact) return a.value == b.value;
    double scale = 1.0 + std::max(std::abs(a.approx), std::abs(b.approx));
    return std::abs(a.approx - b.approx) <= 1e3 * std::max(a.tol, b.tol) * scale;
}

/// Exact roots first (ordered by real then imaginary part), then approximate ones.
inline bool root_order(const RootSpec& a, const RootSpec& b) {
    if (a.exact != b.exact) return a.exact;
    if (a.exact) return lex_less(a.value, b.value);
    if (a.approx.real() != b.approx.real()) return a.approx.real() < b.approx.real();
    return a.approx.imag() < b.approx.imag();
}

struct RootSet {
    std::vector<RootSpec> roots;
    /// p == residual * prod over exact roots (z - value)^multiplicity.
    PolyQ residual;
};

namespace detail {

struct GaussInt {
    mpz_class re, im;
};

inline constexpr unsigned long kMaxEnumeratedNorm = 1'000'000'000'000UL;

/// One representative (re > 0, im >= 0) of every associate class of divisors of g.
inline std::optional<std::vector<GaussInt>> gaussian_divisors(const GaussInt& g) {
    mpz_class n = g.re * g.re + g.im * g.im;
    if (n == 0 || n > mpz_class(std::to_string(kMaxEnumeratedNorm))) return std::nullopt;
    unsigned long norm = n.get_ui();
    std::vector<unsigned long> ints;
    for (unsigned long d = 1; d * d <= norm; ++d) {
        if (norm % d) continue;
        ints.push_back(d);
        if (d != norm / d) ints.push_back(norm / d);
    }
    std::vector<GaussInt> out;
    for (unsigned long m : ints) {
        for (unsigned long a = 1; a * a <= m; ++a) {
            unsigned long rest = m - a * a;
            unsigned long b = static_cast<unsigned long>(std::llround(std::sqrt(static_cast<double>(rest))));
            while (b * b > rest) --b;
            while ((b + 1) * (b + 1) <= rest) ++b;
            if (b * b != rest) continue;
            // d = a + b i divides g iff g * conj(d) is divisible by m componentwise.
            mpz_class pr = g.re * a + g.im * b;
            mpz_class pi = g.im * a - g.re * b;
            mpz_class mm(static_cast<unsigned long>(m));
            if (pr % mm == 0 && pi % mm == 0) out.push_back({mpz_class(a), mpz_class(b)});
        }
    }
    return out;
}

/// Multiplies through by the lcm of all denominators.
inline std::vector<GaussInt> clear_denominators(const PolyQ& p) {
    mpz_class l = 1;
    for (const auto& c : p.coeffs()) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.re().get_den_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.im().get_den_mpz_t());
    }
    std::vector<GaussInt> out;
    for (const auto& c : p.coeffs()) {
        mpq_class r = c.re() * l, i = c.im() * l;
        out.push_back({r.get_num(), i.get_num()});
    }
    return out;
}

inline std::vector<GaussianRational> exact_root_candidates(const PolyQ& p) {
    std::vector<GaussianRational> out;
    auto g = clear_denominators(p);
    auto num_div = gaussian_divisors(g.front());
    auto den_div = gaussian_divisors(g.back());
    if (!num_div || !den_div) return out;
    const GaussianRational units[4] = {GaussianRational(1), GaussianRational::i(), GaussianRational(-1),
                                       -GaussianRational::i()};
    for (const auto& u : *num_div) {
        GaussianRational uu{mpq_class(u.re), mpq_class(u.im)};
        for (const auto& v : *den_div) {
            GaussianRational vv{mpq_class(v.re), mpq_class(v.im)};
            GaussianRational base = uu / vv;
            for (const auto& unit : units) {
                GaussianRational c = base * unit;
                if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
            }
        }
    }
    return out;
}

inline std::vector<Complex> companion_roots(const PolyQ& f) {
    PolyC p = to_complex(monic(f));
    int n = p.degree();
    std::vector<Complex> out;
    if (n < 1) return out;
    if (n == 1) return {-p.coeff(0)};
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -p.coeff(static_cast<std::size_t>(i));
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    PolyC dp = derivative(p);
    for (int i = 0; i < n; ++i) {
        Complex z = es.eigenvalues()(i);
        for (int it = 0; it < 8; ++it) {  // Newton polish on the square-free factor
            Complex d = dp(z);
            if (std::abs(d) == 0.0) break;
            Complex step = p(z) / d;
            z -= step;
            if (std::abs(step) <= 1e-17 * (1.0 + std::abs(z))) break;
        }
        out.push_back(z);
    }
    return out;
}

inline double coeff_norm(const PolyQ& p) {
    double m = 0.0;
    for (const auto& c : p.coeffs()) m = std::max(m, std::abs(c.to_complex()));
    return m;
}

}  // namespace detail

/// All roots of p with multiplicities. Gaussian-rational roots are found
/// exactly by divisor enumeration; whatever is left is handed to companion
/// matrix eigenvalues (per square-free factor) and flagged approximate.
inline RootSet find_roots(const PolyQ& p, double tol = numeric_tolerance()) {
    if (p.is_zero()) fail(ErrorKind::InvalidArgument, "roots of the zero polynomial");
    RootSet out;
    PolyQ rest = p;
    if (rest.degree() >= 1 && rest.coeff(0).is_zero()) {
        unsigned k = root_multiplicity(rest, GaussianRational(0));
        out.roots.push_back(RootSpec::exact_root(GaussianRational(0), k));
        rest = exact_quotient(rest, PolyQ::monomial(GaussianRational(1), k));
    }
    if (rest.degree() >= 1) {
        for (const auto& cand : detail::exact_root_candidates(rest)) {
            if (rest.degree() < 1) break;
            if (!rest(cand).is_zero()) continue;
            unsigned k = root_multiplicity(rest, cand);
            out.roots.push_back(RootSpec::exact_root(cand, k));
            rest = exact_quotient(rest, pow(PolyQ::linear_root(cand), k));
        }
    }
    out.residual = rest;
    if (rest.degree() >= 1) {
        auto factors = squarefree_decomposition(rest);
        double pn = detail::coeff_norm(p);
        PolyC pc = to_complex(p);
        for (std::size_t i = 0; i < factors.size(); ++i) {
            for (const Complex& z : detail::companion_roots(factors[i])) {
                if (std::abs(pc(z)) > tol * std::max(1.0, pn) * std::pow(1.0 + std::abs(z), p.degree()))
                    fail(ErrorKind::Internal, "numeric root failed the residual check");
                out.roots.push_back(RootSpec::approx_root(z, static_cast<unsigned>(i + 1), tol));
            }
        }
    }
    std::sort(out.roots.begin(), out.roots.end(), root_order);
    return out;
}

}  // namespace mpk
