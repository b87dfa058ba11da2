#pragma once

#include <optional>
#include <string>
#include <vector>

#include "poly.hpp"

namespace mpk {

/// Outcome of lim_{z->alpha} f(z). For a finite limit `order` is the
/// vanishing order at alpha (0 when the value is nonzero); for a pole it is
/// the pole order.
struct PointLimit {
    enum class Kind { Finite, Pole };
    Kind kind = Kind::Finite;
    GaussianRational value;
    unsigned order = 0;

    bool finite() const { return kind == Kind::Finite; }
};

/// Reduced ratio num/den over Q(i): gcd(num, den) = 1 and den monic.
class RatFun {
   public:
    RatFun() : den_(GaussianRational(1)) {}
    RatFun(PolyQ num) : num_(std::move(num)), den_(GaussianRational(1)) {}
    RatFun(GaussianRational c) : RatFun(PolyQ(std::move(c))) {}
    template <std::integral I>
    RatFun(I c) : RatFun(PolyQ(GaussianRational(c))) {}
    RatFun(PolyQ num, PolyQ den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) fail(ErrorKind::DivisionByZero, "rational function with zero denominator");
        normalize();
    }

    const PolyQ& num() const { return num_; }
    const PolyQ& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    GaussianRational operator()(const GaussianRational& z) const {
        GaussianRational d = den_(z);
        if (d.is_zero()) fail(ErrorKind::DivisionByZero, "evaluating a rational function at a pole");
        return num_(z) / d;
    }

    RatFun operator-() const { return RatFun(-num_, den_, Reduced{}); }

    friend RatFun operator+(const RatFun& a, const RatFun& b) {
        if (a.den_ == b.den_) return RatFun(a.num_ + b.num_, a.den_);
        return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }
    friend RatFun operator*(const RatFun& a, const RatFun& b) {
        if (a.is_zero() || b.is_zero()) return RatFun();
        return RatFun(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFun operator/(const RatFun& a, const RatFun& b) {
        if (b.is_zero()) fail(ErrorKind::DivisionByZero, "division by the zero rational function");
        return RatFun(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
    RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
    RatFun& operator*=(const RatFun& o) { return *this = *this * o; }

    friend bool operator==(const RatFun& a, const RatFun& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    std::string to_string() const {
        if (is_polynomial()) return num_.to_string();
        return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
    }

    friend std::ostream& operator<<(std::ostream& os, const RatFun& f) { return os << f.to_string(); }

   private:
    struct Reduced {};
    RatFun(PolyQ num, PolyQ den, Reduced) : num_(std::move(num)), den_(std::move(den)) {}

    void normalize() {
        if (num_.is_zero()) {
            den_ = PolyQ(GaussianRational(1));
            return;
        }
        PolyQ g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = exact_quotient(num_, g);
            den_ = exact_quotient(den_, g);
        }
        GaussianRational lc = den_.leading();
        if (!lc.is_one()) {
            GaussianRational inv = GaussianRational(1) / lc;
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    PolyQ num_;
    PolyQ den_;
};

inline RatFun conj_coeffs(const RatFun& f) { return RatFun(conj_coeffs(f.num()), conj_coeffs(f.den())); }

/// Exact limit at alpha after cancelling the common (z - alpha) powers.
inline PointLimit ratfun_limit(const RatFun& f, const GaussianRational& alpha) {
    PointLimit out;
    if (f.is_zero()) return out;  // value 0, identically
    unsigned on = root_multiplicity(f.num(), alpha);
    unsigned od = root_multiplicity(f.den(), alpha);
    if (on < od) {
        out.kind = PointLimit::Kind::Pole;
        out.order = od - on;
        return out;
    }
    PolyQ n = on ? exact_quotient(f.num(), pow(PolyQ::linear_root(alpha), on)) : f.num();
    PolyQ d = od ? exact_quotient(f.den(), pow(PolyQ::linear_root(alpha), od)) : f.den();
    out.order = on - od;
    out.value = out.order > 0 ? GaussianRational(0) : n(alpha) / d(alpha);
    return out;
}

/// nullopt when f diverges at infinity.
inline std::optional<GaussianRational> ratfun_limit_at_infinity(const RatFun& f) {
    if (f.is_zero()) return GaussianRational(0);
    int dn = f.num().degree(), dd = f.den().degree();
    if (dn > dd) return std::nullopt;
    if (dn < dd) return GaussianRational(0);
    return f.num().leading() / f.den().leading();
}

/// Principal part at alpha: out[m] multiplies (z - alpha)^-(m+1).
inline std::vector<GaussianRational> principal_part(const RatFun& f, const GaussianRational& alpha) {
    if (f.is_zero()) return {};
    unsigned k = root_multiplicity(f.den(), alpha);
    if (k == 0) return {};
    PolyQ h = exact_quotient(f.den(), pow(PolyQ::linear_root(alpha), k));
    auto a = taylor_shift(f.num(), alpha);
    auto b = taylor_shift(h, alpha);
    a.resize(std::max<std::size_t>(a.size(), k), GaussianRational(0));
    b.resize(std::max<std::size_t>(b.size(), k), GaussianRational(0));
    // Power series quotient q = a / b, first k terms.
    std::vector<GaussianRational> q(k, GaussianRational(0));
    for (unsigned j = 0; j < k; ++j) {
        GaussianRational s = a[j];
        for (unsigned t = 0; t < j; ++t) s -= q[t] * b[j - t];
        q[j] = s / b[0];
    }
    std::vector<GaussianRational> out(k);
    for (unsigned j = 0; j < k; ++j) out[k - 1 - j] = q[j];
    while (!out.empty() && out.back().is_zero()) out.pop_back();
    return out;
}

}  // namespace mpk
