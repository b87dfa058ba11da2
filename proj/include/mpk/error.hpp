#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mpk {

enum class ErrorKind {
    InvalidArgument,
    DivisionByZero,
    NotInvertible,
    NotHermitian,
    DivergentAtInfinity,
    NonRealSpectrum,
    NonExactSpectrum,
    NotAnEigencolumn,
    OrderMismatch,
    DegenerateChain,
    ZeroChainLimit,
    NonRealChainLimit,
    Divergent,
    ResidueStructure,
    InconsistentSystem,
    IrrationalFactor,
    Internal,
};

inline std::string_view to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidArgument: return "invalid-argument";
        case ErrorKind::DivisionByZero: return "division-by-zero";
        case ErrorKind::NotInvertible: return "not-invertible";
        case ErrorKind::NotHermitian: return "not-hermitian";
        case ErrorKind::DivergentAtInfinity: return "divergent-at-infinity";
        case ErrorKind::NonRealSpectrum: return "non-real-spectrum";
        case ErrorKind::NonExactSpectrum: return "non-exact-spectrum";
        case ErrorKind::NotAnEigencolumn: return "not-an-eigencolumn";
        case ErrorKind::OrderMismatch: return "order-mismatch";
        case ErrorKind::DegenerateChain: return "degenerate-chain";
        case ErrorKind::ZeroChainLimit: return "zero-chain-limit";
        case ErrorKind::NonRealChainLimit: return "non-real-chain-limit";
        case ErrorKind::Divergent: return "divergent";
        case ErrorKind::ResidueStructure: return "residue-structure";
        case ErrorKind::InconsistentSystem: return "inconsistent-system";
        case ErrorKind::IrrationalFactor: return "irrational-factor";
        case ErrorKind::Internal: return "internal";
    }
    return "unknown";
}

/// Every failure raised by the library carries a kind so callers (and the
/// CLI exit-code table) can dispatch without parsing messages.
class MathError : public std::runtime_error {
   public:
    MathError(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

   private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw MathError(kind, what); }

}  // namespace mpk
