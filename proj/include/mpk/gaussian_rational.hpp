#pragma once

#include <gmpxx.h>

#include <complex>
#include <concepts>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "error.hpp"

namespace mpk {

/// Parses "p", "-p" or "p/q" (decimal integers, q > 0 after sign handling).
/// Rejects zero denominators instead of letting GMP trap.
inline mpq_class parse_rational(std::string_view text) {
    std::string s(text);
    auto bad = [&](const char* why) -> mpq_class {
        fail(ErrorKind::InvalidArgument, "malformed rational \"" + s + "\": " + why);
    };
    if (s.empty()) return bad("empty");
    std::size_t slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    auto is_int = [](const std::string& t, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+')) i = 1;
        if (i >= t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    if (!is_int(num, true)) return bad("bad numerator");
    if (!is_int(den, true)) return bad("bad denominator");
    if (num[0] == '+') num.erase(0, 1);
    if (den[0] == '+') den.erase(0, 1);
    mpz_class n(num, 10), d(den, 10);
    if (d == 0) return bad("zero denominator");
    mpq_class q(n, d);
    q.canonicalize();
    return q;
}

inline std::string rational_string(const mpq_class& q) { return q.get_str(10); }

/// Exact complex number re + i*im with re, im in Q.
class GaussianRational {
   public:
    GaussianRational() = default;
    template <std::integral I>
    GaussianRational(I v) : re_(static_cast<long>(v)) {}
    GaussianRational(mpq_class re, mpq_class im = mpq_class(0)) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussianRational parse(std::string_view re, std::string_view im = "0") {
        return {parse_rational(re), parse_rational(im)};
    }
    static GaussianRational i() { return {mpq_class(0), mpq_class(1)}; }

    const mpq_class& re() const noexcept { return re_; }
    const mpq_class& im() const noexcept { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    mpq_class norm() const { return re_ * re_ + im_ * im_; }

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

    GaussianRational operator-() const { return {-re_, -im_}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        mpq_class r = re_ * o.re_ - im_ * o.im_;
        mpq_class m = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(m);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        if (o.is_zero()) fail(ErrorKind::DivisionByZero, "division of Gaussian rational by zero");
        mpq_class n = o.norm();
        mpq_class r = (re_ * o.re_ + im_ * o.im_) / n;
        mpq_class m = (im_ * o.re_ - re_ * o.im_) / n;
        re_ = std::move(r);
        im_ = std::move(m);
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    /// Lexicographic on (re, im); used only for deterministic ordering.
    friend bool lex_less(const GaussianRational& a, const GaussianRational& b) {
        if (a.re_ != b.re_) return a.re_ < b.re_;
        return a.im_ < b.im_;
    }

    std::string to_string() const {
        if (is_real()) return re_.get_str();
        std::string ims;
        if (im_ == 1) ims = "i";
        else if (im_ == -1) ims = "-i";
        else ims = im_.get_str() + "i";
        if (sgn(re_) == 0) return ims;
        return "(" + re_.get_str() + (sgn(im_) > 0 ? "+" : "") + ims + ")";
    }

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& x) { return os << x.to_string(); }

   private:
    mpq_class re_{0};
    mpq_class im_{0};
};

using GR = GaussianRational;

inline mpz_class factorial(unsigned n) {
    mpz_class f = 1;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return f;
}

/// Exact square root of a nonnegative rational if it is a perfect square.
inline bool rational_sqrt(const mpq_class& q, mpq_class& out) {
    if (sgn(q) < 0) return false;
    mpz_class n = q.get_num(), d = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    out = mpq_class(rn, rd);
    out.canonicalize();
    return true;
}

/// True when q > 0 is |w|^2 for some Gaussian rational w, i.e. num*den is a
/// sum of two squares. Decided by trial division by primes 3 mod 4 up to
/// `trial_limit`; a leftover cofactor must be a square or a prime 1 mod 4,
/// otherwise the answer is a conservative false.
inline bool is_gaussian_norm(const mpq_class& q, unsigned long trial_limit = 100'000UL) {
    if (sgn(q) <= 0) return false;
    mpz_class n = q.get_num() * q.get_den();
    while (mpz_even_p(n.get_mpz_t())) n /= 2;
    for (unsigned long p = 3; p <= trial_limit && mpz_class(p) * mpz_class(p) <= n; p += 2) {
        unsigned e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            n /= p;
            ++e;
        }
        if (p % 4 == 3 && e % 2 == 1) return false;
    }
    if (n == 1 || mpz_perfect_square_p(n.get_mpz_t())) return true;
    if (mpz_probab_prime_p(n.get_mpz_t(), 25) > 0) return mpz_fdiv_ui(n.get_mpz_t(), 4) == 1;
    return false;
}

/// Finds a Gaussian rational w with |w|^2 == q (q > 0), preferring a real w.
/// Searches x^2 + y^2 == num*den up to `search_limit` candidates.
inline bool gaussian_sqrt_of_norm(const mpq_class& q, GaussianRational& out,
                                  unsigned long search_limit = 20'000'000UL) {
    if (sgn(q) <= 0) return false;
    mpq_class r;
    if (rational_sqrt(q, r)) {
        out = GaussianRational(r);
        return true;
    }
    mpz_class target = q.get_num() * q.get_den();
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), target.get_mpz_t());
    if (root > mpz_class(search_limit)) return false;
    unsigned long top = root.get_ui();
    for (unsigned long x = top; x >= 1; --x) {
        mpz_class rest = target - mpz_class(x) * mpz_class(x);
        if (rest < 0) continue;
        if (mpz_perfect_square_p(rest.get_mpz_t())) {
            mpz_class y;
            mpz_sqrt(y.get_mpz_t(), rest.get_mpz_t());
            mpq_class den(q.get_den());
            out = GaussianRational(mpq_class(mpz_class(x)) / den, mpq_class(y) / den);
            return true;
        }
    }
    return false;
}

}  // namespace mpk
