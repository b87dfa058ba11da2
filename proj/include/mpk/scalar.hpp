#pragma once

#include <cmath>
#include <complex>

#include "gaussian_rational.hpp"

namespace mpk {

using Complex = std::complex<double>;

/// Per-field hooks used by the generic algorithms. The exact field compares
/// exactly; the floating field uses a caller-provided absolute threshold.
template <class F>
struct ScalarTraits;

template <>
struct ScalarTraits<GaussianRational> {
    static constexpr bool exact = true;
    static bool negligible(const GaussianRational& x, double /*tol*/) { return x.is_zero(); }
    static double magnitude(const GaussianRational& x) { return std::abs(x.to_complex()); }
    static GaussianRational conj(const GaussianRational& x) { return x.conj(); }
    static GaussianRational from_integer(long v) { return GaussianRational(v); }
    static Complex to_complex(const GaussianRational& x) { return x.to_complex(); }
};

template <>
struct ScalarTraits<Complex> {
    static constexpr bool exact = false;
    static bool negligible(const Complex& x, double tol) { return std::abs(x) <= tol; }
    static double magnitude(const Complex& x) { return std::abs(x); }
    static Complex conj(const Complex& x) { return std::conj(x); }
    static Complex from_integer(long v) { return Complex(static_cast<double>(v), 0.0); }
    static Complex to_complex(const Complex& x) { return x; }
};

inline bool is_zero_exact(const GaussianRational& x) { return x.is_zero(); }
inline bool is_zero_exact(const Complex& x) { return x == Complex(0.0, 0.0); }

template <class F>
F scalar_conj(const F& x) {
    return ScalarTraits<F>::conj(x);
}

}  // namespace mpk
