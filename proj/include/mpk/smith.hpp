#pragma once

#include <optional>
#include <string>
#include <vector>

#include "matpoly.hpp"

namespace mpk {

/// One elementary transformation. Row moves act on S (and the working
/// matrix) from the left, column moves on T from the right.
///   swap:         exchange lines i and j
///   scale:        line i *= c  (c a nonzero constant)
///   add_multiple: line i += q(z) * line j
struct ElementaryMove {
    enum class Side { Row, Col };
    enum class Kind { Swap, Scale, AddMultiple };

    Side side = Side::Row;
    Kind kind = Kind::Swap;
    std::size_t i = 0;
    std::size_t j = 0;
    GaussianRational c{1};
    PolyQ q;

    static ElementaryMove swap(Side s, std::size_t i, std::size_t j) { return {s, Kind::Swap, i, j, GaussianRational(1), {}}; }
    static ElementaryMove scale(Side s, std::size_t i, GaussianRational c) {
        if (c.is_zero()) fail(ErrorKind::InvalidArgument, "scale move with zero constant");
        return {s, Kind::Scale, i, i, std::move(c), {}};
    }
    static ElementaryMove add_multiple(Side s, std::size_t i, std::size_t j, PolyQ q) {
        if (i == j) fail(ErrorKind::InvalidArgument, "add_multiple move onto the same line");
        return {s, Kind::AddMultiple, i, j, GaussianRational(1), std::move(q)};
    }

    /// Determinant contribution: -1 for a swap, c for a scale, 1 otherwise.
    GaussianRational det_factor() const {
        switch (kind) {
            case Kind::Swap: return GaussianRational(-1);
            case Kind::Scale: return c;
            case Kind::AddMultiple: return GaussianRational(1);
        }
        return GaussianRational(1);
    }

    friend bool operator==(const ElementaryMove& a, const ElementaryMove& b) {
        return a.side == b.side && a.kind == b.kind && a.i == b.i && a.j == b.j && a.c == b.c && a.q == b.q;
    }
};

/// Applies a move in place; rows for Side::Row, columns for Side::Col.
inline void apply_move(MatPoly& m, const ElementaryMove& mv) {
    using K = ElementaryMove::Kind;
    bool rows = mv.side == ElementaryMove::Side::Row;
    std::size_t len = rows ? m.cols() : m.rows();
    auto at = [&](std::size_t line, std::size_t k) -> PolyQ& { return rows ? m(line, k) : m(k, line); };
    for (std::size_t k = 0; k < len; ++k) {
        switch (mv.kind) {
            case K::Swap: std::swap(at(mv.i, k), at(mv.j, k)); break;
            case K::Scale: at(mv.i, k) = at(mv.i, k) * mv.c; break;
            case K::AddMultiple:
                if (!at(mv.j, k).is_zero()) at(mv.i, k) += mv.q * at(mv.j, k);
                break;
        }
    }
}

/// D = S L T with S, T unimodular and D diagonal.
struct DiagForm {
    MatPoly S;
    MatPoly D;
    MatPoly T;
    GaussianRational detS{1};
    GaussianRational detT{1};
    std::vector<ElementaryMove> transcript;

    std::size_t size() const { return D.rows(); }
    const PolyQ& d(std::size_t i) const { return D(i, i); }
    /// Column i of T as a vector of polynomials.
    std::vector<PolyQ> column_of_T(std::size_t i) const { return T.column(i); }
};

enum class PivotStrategy {
    /// minimal degree, then lowest row, then lowest column
    FirstIndex,
    /// minimal degree, then highest row, then highest column
    LastIndex,
};

/// Replays a transcript from identities: returns (S, T).
inline std::pair<MatPoly, MatPoly> replay(std::size_t n, const std::vector<ElementaryMove>& moves) {
    MatPoly S = MatPoly::identity(n), T = MatPoly::identity(n);
    for (const auto& mv : moves) apply_move(mv.side == ElementaryMove::Side::Row ? S : T, mv);
    return {S, T};
}

/// Diagonalizes any square L by tracked elementary moves. At each stage the
/// nonzero entry of least degree in the trailing block becomes the pivot and
/// its row and column are cleared by Euclidean steps; a nonzero remainder
/// restarts the stage with a smaller-degree pivot.
inline DiagForm diagonalize(const MatPoly& L, PivotStrategy strategy = PivotStrategy::FirstIndex) {
    if (!L.is_square()) fail(ErrorKind::InvalidArgument, "diagonalize needs a square matrix polynomial");
    using Side = ElementaryMove::Side;
    std::size_t n = L.rows();
    DiagForm f;
    f.S = MatPoly::identity(n);
    f.T = MatPoly::identity(n);
    f.D = L;
    auto record = [&](ElementaryMove mv) {
        apply_move(f.D, mv);
        apply_move(mv.side == Side::Row ? f.S : f.T, mv);
        if (mv.side == Side::Row) f.detS *= mv.det_factor();
        else f.detT *= mv.det_factor();
        f.transcript.push_back(std::move(mv));
    };

    for (std::size_t s = 0; s < n; ++s) {
        while (true) {
            std::optional<std::pair<std::size_t, std::size_t>> best;
            int best_deg = 0;
            for (std::size_t i = s; i < n; ++i)
                for (std::size_t j = s; j < n; ++j) {
                    const PolyQ& e = f.D(i, j);
                    if (e.is_zero()) continue;
                    bool better = !best || e.degree() < best_deg ||
                                  (strategy == PivotStrategy::LastIndex && e.degree() == best_deg);
                    if (better) {
                        best = {i, j};
                        best_deg = e.degree();
                    }
                }
            if (!best) break;
            auto [pi, pj] = *best;
            if (pi != s) record(ElementaryMove::swap(Side::Row, s, pi));
            if (pj != s) record(ElementaryMove::swap(Side::Col, s, pj));
            const GaussianRational lc = f.D(s, s).leading();
            if (!lc.is_one()) record(ElementaryMove::scale(Side::Row, s, GaussianRational(1) / lc));

            bool clean = true;
            for (std::size_t i = s + 1; i < n; ++i) {
                if (f.D(i, s).is_zero()) continue;
                auto [q, r] = divmod(f.D(i, s), f.D(s, s));
                if (!q.is_zero()) record(ElementaryMove::add_multiple(Side::Row, i, s, -q));
                if (!r.is_zero()) clean = false;
            }
            for (std::size_t j = s + 1; j < n; ++j) {
                if (f.D(s, j).is_zero()) continue;
                auto [q, r] = divmod(f.D(s, j), f.D(s, s));
                if (!q.is_zero()) record(ElementaryMove::add_multiple(Side::Col, j, s, -q));
                if (!r.is_zero()) clean = false;
            }
            if (clean) break;
        }
    }
    return f;
}

struct DiagCheck {
    enum class Failure { None, Identity, NotDiagonal, NotUnimodular, DeterminantMismatch, Shape };
    Failure failure = Failure::None;
    std::string reason;

    bool ok() const { return failure == Failure::None; }
};

inline std::string_view to_string(DiagCheck::Failure f) {
    switch (f) {
        case DiagCheck::Failure::None: return "none";
        case DiagCheck::Failure::Identity: return "a";
        case DiagCheck::Failure::NotDiagonal: return "b";
        case DiagCheck::Failure::NotUnimodular: return "c";
        case DiagCheck::Failure::DeterminantMismatch: return "d";
        case DiagCheck::Failure::Shape: return "shape";
    }
    return "?";
}

/// Exact checks: (a) S L T == D, (b) D diagonal, (c) det S, det T nonzero
/// constants, (d) prod d_i == det S * det T * det L (skipped when det L == 0).
inline DiagCheck verify_diag(const MatPoly& L, const MatPoly& S, const MatPoly& D, const MatPoly& T) {
    using Fl = DiagCheck::Failure;
    std::size_t n = L.rows();
    auto sq = [n](const MatPoly& m) { return m.rows() == n && m.cols() == n; };
    if (!L.is_square() || !sq(S) || !sq(D) || !sq(T)) return {Fl::Shape, "dimension mismatch"};
    if (!(S * L * T == D)) return {Fl::Identity, "S(z) L(z) T(z) != D(z)"};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && !D(i, j).is_zero()) return {Fl::NotDiagonal, "D has a nonzero off-diagonal entry"};
    PolyQ ds = mat_det(S), dt = mat_det(T);
    if (ds.degree() != 0) return {Fl::NotUnimodular, "det S(z) is not a nonzero constant"};
    if (dt.degree() != 0) return {Fl::NotUnimodular, "det T(z) is not a nonzero constant"};
    PolyQ chi = mat_det(L);
    if (!chi.is_zero()) {
        PolyQ prod(GaussianRational(1));
        for (std::size_t i = 0; i < n; ++i) prod *= D(i, i);
        if (!(prod == chi * ds.leading() * dt.leading())) return {Fl::DeterminantMismatch, "prod d_i != det S det T det L"};
    }
    return {};
}

inline DiagCheck verify_diag(const MatPoly& L, const DiagForm& f) { return verify_diag(L, f.S, f.D, f.T); }

}  // namespace mpk
