#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "scalar.hpp"

namespace mpk {

/// Dense univariate polynomial, coefficient i multiplies z^i.
/// The zero polynomial has no coefficients and degree -1.
template <class F>
class Poly {
   public:
    Poly() = default;
    Poly(F c) {
        if (!is_zero_exact(c)) c_.push_back(std::move(c));
    }
    template <std::integral I>
    Poly(I c) : Poly(ScalarTraits<F>::from_integer(static_cast<long>(c))) {}
    explicit Poly(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly monomial(F c, std::size_t k) {
        if (is_zero_exact(c)) return {};
        std::vector<F> v(k + 1, F(0));
        v[k] = std::move(c);
        return Poly(std::move(v));
    }
    /// z - a
    static Poly linear_root(const F& a) { return Poly(std::vector<F>{-a, F(1)}); }
    static Poly z() { return monomial(F(1), 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<F>& coeffs() const { return c_; }
    F coeff(std::size_t k) const { return k < c_.size() ? c_[k] : F(0); }
    const F& leading() const {
        if (c_.empty()) fail(ErrorKind::InvalidArgument, "leading coefficient of zero polynomial");
        return c_.back();
    }

    F operator()(const F& z) const {
        F acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<F> r(a.c_.size() + b.c_.size() - 1, F(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (is_zero_exact(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(r));
    }
    friend Poly operator*(Poly a, const F& s) {
        for (auto& x : a.c_) x *= s;
        a.trim();
        return a;
    }
    friend Poly operator*(const F& s, Poly a) { return std::move(a) * s; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    std::string to_string(const std::string& var = "z") const;

    friend std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

   private:
    void trim() {
        while (!c_.empty() && is_zero_exact(c_.back())) c_.pop_back();
    }

    std::vector<F> c_;
};

using PolyQ = Poly<GaussianRational>;
using PolyC = Poly<Complex>;

namespace detail {
inline std::string coeff_text(const GaussianRational& c) { return c.to_string(); }
inline std::string coeff_text(const Complex& c) {
    if (c.imag() == 0.0) return std::to_string(c.real());
    return "(" + std::to_string(c.real()) + (c.imag() < 0 ? "" : "+") + std::to_string(c.imag()) + "i)";
}
}  // namespace detail

template <class F>
std::string Poly<F>::to_string(const std::string& var) const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t k = c_.size(); k-- > 0;) {
        const F& c = c_[k];
        if (is_zero_exact(c)) continue;
        std::string t = detail::coeff_text(c);
        bool neg = !t.empty() && t[0] == '-';
        if (neg) t.erase(0, 1);
        if (out.empty()) out = neg ? "-" : "";
        else out += neg ? " - " : " + ";
        if (k == 0) {
            out += t;
            continue;
        }
        if (t != "1") out += t + "*";
        out += var;
        if (k > 1) out += "^" + std::to_string(k);
    }
    return out;
}

/// Quotient and remainder with deg(rem) < deg(den).
template <class F>
std::pair<Poly<F>, Poly<F>> divmod(const Poly<F>& num, const Poly<F>& den) {
    if (den.is_zero()) fail(ErrorKind::DivisionByZero, "polynomial division by the zero polynomial");
    if (num.degree() < den.degree()) return {Poly<F>{}, num};
    std::vector<F> r = num.coeffs();
    const auto& d = den.coeffs();
    std::size_t dd = d.size() - 1;
    std::vector<F> q(r.size() - dd, F(0));
    const F& lead = d.back();
    for (std::size_t k = q.size(); k-- > 0;) {
        F f = r[k + dd] / lead;
        q[k] = f;
        if (is_zero_exact(f)) continue;
        for (std::size_t j = 0; j <= dd; ++j) r[k + j] -= f * d[j];
    }
    r.resize(dd);
    return {Poly<F>(std::move(q)), Poly<F>(std::move(r))};
}

/// Division known to be exact; throws if a remainder is left.
template <class F>
Poly<F> exact_quotient(const Poly<F>& num, const Poly<F>& den) {
    auto [q, r] = divmod(num, den);
    if (!r.is_zero()) fail(ErrorKind::Internal, "expected exact polynomial division");
    return q;
}

template <class F>
Poly<F> derivative(const Poly<F>& p, unsigned order = 1) {
    std::vector<F> c = p.coeffs();
    for (unsigned o = 0; o < order; ++o) {
        if (c.empty()) break;
        for (std::size_t k = 1; k < c.size(); ++k) c[k - 1] = c[k] * ScalarTraits<F>::from_integer(static_cast<long>(k));
        c.pop_back();
    }
    return Poly<F>(std::move(c));
}

template <class F>
Poly<F> monic(const Poly<F>& p) {
    if (p.is_zero()) return p;
    return p * (F(1) / p.leading());
}

template <class F>
Poly<F> pow(const Poly<F>& p, unsigned k) {
    Poly<F> r(F(1));
    for (unsigned i = 0; i < k; ++i) r *= p;
    return r;
}

/// Monic gcd; gcd(0, 0) is 0.
template <class F>
Poly<F> gcd(Poly<F> a, Poly<F> b) {
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = monic(r);
    }
    return monic(a);
}

/// Coefficientwise complex conjugate: z -> conj(p(conj z)).
template <class F>
Poly<F> conj_coeffs(const Poly<F>& p) {
    std::vector<F> c = p.coeffs();
    for (auto& x : c) x = scalar_conj(x);
    return Poly<F>(std::move(c));
}

/// Coefficients of p in powers of (z - alpha), via k passes of synthetic division.
template <class F>
std::vector<F> taylor_shift(const Poly<F>& p, const F& alpha) {
    std::vector<F> c = p.coeffs();
    if (c.size() < 2) return c;
    std::size_t n = c.size() - 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = n - 1; j + 1 > i; --j) c[j] += alpha * c[j + 1];
    return c;
}

/// Inverse of taylor_shift: sum_j c[j] (z - alpha)^j as a polynomial in z.
template <class F>
Poly<F> from_taylor(const std::vector<F>& c, const F& alpha) {
    return Poly<F>(taylor_shift(Poly<F>(c), F(-alpha)));
}

/// Largest k with (z - alpha)^k | p, by repeated synthetic division.
template <class F>
unsigned root_multiplicity(const Poly<F>& p, const F& alpha) {
    if (p.is_zero()) fail(ErrorKind::InvalidArgument, "root multiplicity of the zero polynomial");
    std::vector<F> c = p.coeffs();
    unsigned k = 0;
    while (c.size() > 1) {
        // c / (z - alpha): Horner from the top.
        std::vector<F> q(c.size() - 1, F(0));
        F carry(0);
        for (std::size_t j = c.size(); j-- > 1;) {
            carry = c[j] + alpha * carry;
            q[j - 1] = carry;
        }
        F rem = c[0] + alpha * carry;
        if (!is_zero_exact(rem)) break;
        c = std::move(q);
        ++k;
    }
    return k;
}

inline PolyC to_complex(const PolyQ& p) {
    std::vector<Complex> c;
    c.reserve(p.coeffs().size());
    for (const auto& x : p.coeffs()) c.push_back(x.to_complex());
    return PolyC(std::move(c));
}

/// Square-free decomposition (Yun): p = lc * prod_i factors[i-1]^i, factors monic.
inline std::vector<PolyQ> squarefree_decomposition(const PolyQ& p) {
    std::vector<PolyQ> out;
    if (p.degree() < 1) return out;
    PolyQ f = monic(p);
    PolyQ df = derivative(f);
    PolyQ b = gcd(f, df);
    PolyQ c = exact_quotient(f, b);
    PolyQ d = exact_quotient(df, b) - derivative(c);
    while (c.degree() > 0) {
        PolyQ a = gcd(c, d);
        out.push_back(a);
        c = exact_quotient(c, a);
        d = exact_quotient(d, a) - derivative(c);
    }
    while (!out.empty() && out.back().degree() == 0) out.pop_back();
    return out;
}

}  // namespace mpk
