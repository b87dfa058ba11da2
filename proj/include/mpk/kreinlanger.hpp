#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "spectral.hpp"

namespace mpk {

/// The sip matrix G_k: ones on the anti-diagonal.
inline MatrixQ sip_matrix(std::size_t k) {
    MatrixQ g(k, k, GaussianRational(0));
    for (std::size_t i = 0; i < k; ++i) g(i, k - 1 - i) = GaussianRational(1);
    return g;
}

/// alpha on the diagonal, ones on the superdiagonal.
inline MatrixQ jordan_block(const GaussianRational& alpha, std::size_t k) {
    MatrixQ a(k, k, GaussianRational(0));
    for (std::size_t i = 0; i < k; ++i) {
        a(i, i) = alpha;
        if (i + 1 < k) a(i, i + 1) = GaussianRational(1);
    }
    return a;
}

/// Negative eigenvalues of sign * G_k: k = 2l+1 gives l (sign +1) or l+1
/// (sign -1); k = 2l gives l for either sign.
inline std::size_t sip_negative_count(std::size_t k, int sign) {
    std::size_t l = k / 2;
    if (k % 2 == 0) return l;
    return sign > 0 ? l : l + 1;
}

inline std::size_t sip_positive_count(std::size_t k, int sign) { return k - sip_negative_count(k, sign); }

struct BlockSpec {
    GaussianRational alpha;
    std::size_t k = 1;
    int sign = 1;
    std::size_t source_index = 0;
};

struct Representation {
    MatrixQ S_inf;
    MatrixQ A;
    MatrixQ J;
    MatrixQ Gamma;
    std::size_t kappa = 0;
    std::vector<BlockSpec> blocks;

    std::size_t state_dim() const { return A.rows(); }
    MatrixQ Gamma_plus() const { return conj_transpose(Gamma) * J; }
};

struct RepresentabilityReport {
    DegreeReport degrees;
    RootSet spectrum;
};

/// Checks, in order: Hermitian, invertible, the degree condition at infinity, exact real spectrum.
inline RepresentabilityReport check_representability(const MatPoly& L) {
    if (!L.is_square()) fail(ErrorKind::InvalidArgument, "L(z) must be square");
    if (!is_hermitian(L)) fail(ErrorKind::NotHermitian, "L(z) is not Hermitian: L(z) != L(conj z)^*");
    RepresentabilityReport rep;
    rep.degrees = degree_report(L);
    if (!rep.degrees.convergent_at_infinity)
        fail(ErrorKind::DivergentAtInfinity,
             "degree condition at infinity fails: a minor of L has degree " + std::to_string(rep.degrees.max_minor_degree) +
                 " > deg det L = " + std::to_string(rep.degrees.det_degree) +
                 "; -L^{-1} diverges at infinity, so the representing relation has an eigenvalue at infinity");
    rep.spectrum = find_roots(mat_det(L));
    for (const auto& r : rep.spectrum.roots) {
        if (!r.exact)
            fail(ErrorKind::NonExactSpectrum, "eigenvalue " + r.to_string() + " is not rational; an exact real spectrum is required");
        if (!r.is_real()) fail(ErrorKind::NonRealSpectrum, "eigenvalue " + r.to_string() + " is not real");
    }
    return rep;
}

inline MatrixQ limit_at_infinity_matrix(const MatRatFun& Lhat) {
    MatrixQ s(Lhat.rows(), Lhat.cols());
    for (std::size_t i = 0; i < Lhat.rows(); ++i)
        for (std::size_t j = 0; j < Lhat.cols(); ++j) {
            auto v = ratfun_limit_at_infinity(Lhat(i, j));
            if (!v) fail(ErrorKind::Divergent, "entry (" + std::to_string(i) + ", " + std::to_string(j) + ") diverges at infinity");
            s(i, j) = *v;
        }
    return s;
}

/// lim_{z->alpha} <psi(z), phi(z)> / (z - alpha)^k with psi = L phi; the
/// pairing conjugates the coefficients of its second argument. Returns the
/// raw value, which may be zero when several records share alpha.
inline GaussianRational chain_limit_value(const MatPoly& L, const RootFunctionQ& rec) {
    const GaussianRational& a = rec.alpha.value;
    auto pc = pole_cancellation(L, rec);
    PolyQ h;
    for (std::size_t j = 0; j < rec.phi.size(); ++j) h += pc.psi[j] * conj_coeffs(rec.phi[j]);
    auto lim = ratfun_limit(RatFun(h, pow(PolyQ::linear_root(a), rec.order)), a);
    if (!lim.finite()) fail(ErrorKind::Internal, "pairing has a pole at the eigenvalue");
    return lim.value;
}

inline GaussianRational chain_limit(const MatPoly& L, const RootFunctionQ& rec) {
    if (!rec.alpha.exact || !rec.alpha.is_real()) fail(ErrorKind::NonRealSpectrum, "chain limit needs a real exact eigenvalue");
    GaussianRational v = chain_limit_value(L, rec);
    if (v.is_zero()) fail(ErrorKind::ZeroChainLimit, "chain limit vanishes at " + rec.alpha.to_string());
    if (!v.is_real()) fail(ErrorKind::NonRealChainLimit, "chain limit " + v.to_string() + " is not real");
    return v;
}

struct AssembledAJ {
    MatrixQ A;
    MatrixQ J;
    std::size_t kappa = 0;
};

inline AssembledAJ assemble_AJ(const std::vector<BlockSpec>& blocks) {
    std::vector<MatrixQ> as, js;
    AssembledAJ out;
    for (const auto& b : blocks) {
        if (b.k == 0 || (b.sign != 1 && b.sign != -1)) fail(ErrorKind::InvalidArgument, "bad block specification");
        as.push_back(jordan_block(b.alpha, b.k));
        MatrixQ g = sip_matrix(b.k);
        js.push_back(b.sign > 0 ? g : -g);
        out.kappa += sip_negative_count(b.k, b.sign);
    }
    out.A = block_diagonal(as);
    out.J = block_diagonal(js);
    std::size_t K = out.A.rows();
    if (!(out.J * out.J == MatrixQ::identity(K)) || !(out.J * out.A == out.A.transpose() * out.J))
        fail(ErrorKind::Internal, "assembled J is not a fundamental symmetry for A");
    return out;
}

/// Residue matrices at alpha: out[m] multiplies (z - alpha)^-(m+1).
inline std::vector<MatrixQ> residue_matrices(const MatRatFun& Q, const GaussianRational& alpha) {
    std::vector<MatrixQ> out;
    for (std::size_t i = 0; i < Q.rows(); ++i)
        for (std::size_t j = 0; j < Q.cols(); ++j) {
            auto pp = principal_part(Q(i, j), alpha);
            if (pp.size() > out.size()) out.resize(pp.size(), MatrixQ(Q.rows(), Q.cols(), GaussianRational(0)));
            for (std::size_t m = 0; m < pp.size(); ++m) out[m](i, j) = pp[m];
        }
    return out;
}

namespace detail {

inline GaussianRational inner(const MatrixQ& M, const MatrixQ& u, const MatrixQ& f) {
    return (conj_transpose(f) * M * u)(0, 0);
}

inline MatrixQ col(const MatrixQ& m, std::size_t j) {
    MatrixQ c(m.rows(), 1);
    for (std::size_t i = 0; i < m.rows(); ++i) c(i, 0) = m(i, j);
    return c;
}

inline MatrixQ hcat(const std::vector<MatrixQ>& cols, std::size_t rows) {
    std::size_t w = 0;
    for (const auto& c : cols) w += c.cols();
    MatrixQ out(rows, w, GaussianRational(0));
    std::size_t o = 0;
    for (const auto& c : cols) {
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < c.cols(); ++j) out(i, o + j) = c(i, j);
        o += c.cols();
    }
    return out;
}

inline MatrixQ independent_columns(const MatrixQ& w) {
    std::vector<MatrixQ> keep;
    std::size_t r = 0;
    for (std::size_t j = 0; j < w.cols(); ++j) {
        auto trial = keep;
        trial.push_back(col(w, j));
        std::size_t rt = rank(hcat(trial, w.rows()));
        if (rt > r) {
            keep = std::move(trial);
            r = rt;
        }
    }
    return hcat(keep, w.rows());
}

inline int real_sign(const GaussianRational& x) { return sgn(x.re()); }

struct ReducedBlock {
    std::size_t k = 0;
    int sign = 1;
    /// Columns f_0..f_{k-1}: N f_0 = 0, N f_i = f_{i-1}, [f_a, f_b] = sign * delta_{a+b, k-1}.
    MatrixQ V;
};

/// Splits (C^K, [u, f] = f* M u, N) into orthogonal Jordan chains with
/// sip-normalized Gram matrices. C only steers the gauge of each chain.
inline std::vector<ReducedBlock> reduce_metric(const MatrixQ& M, const MatrixQ& N, const MatrixQ& C) {
    std::size_t K = M.rows();
    std::vector<ReducedBlock> out;
    MatrixQ U = MatrixQ::identity(K);
    while (U.cols() > 0) {
        std::size_t m = 0;
        for (MatrixQ P = U; !is_zero_matrix(P); P = N * P) ++m;
        MatrixQ Nm1 = MatrixQ::identity(K);
        for (std::size_t e = 0; e + 1 < m; ++e) Nm1 = N * Nm1;

        auto probe = [&](const MatrixQ& x) { return inner(M, Nm1 * x, x); };
        // Rank a start vector by how its normalization factor can be taken:
        // 2 = rational square root (positive real gauge), 1 = Gaussian
        // rational of the right norm, 0 = neither.
        auto grade = [&](const MatrixQ& x, const GaussianRational& top) {
            mpq_class q0 = mpq_class(1) / abs(top.re());
            MatrixQ y = C * (Nm1 * x);
            for (std::size_t i = 0; i < y.rows(); ++i) {
                if (y(i, 0).is_zero()) continue;
                mpq_class rt;
                if (rational_sqrt(q0 / y(i, 0).norm(), rt)) return 2;
                break;
            }
            return is_gaussian_norm(q0) ? 1 : 0;
        };
        std::optional<MatrixQ> x;
        int best = -1;
        auto consider = [&](const MatrixQ& cand) {
            GaussianRational top = probe(cand);
            if (top.is_zero()) return;
            int gr = grade(cand, top);
            if (gr > best) {
                best = gr;
                x = cand;
            }
        };
        for (std::size_t a = 0; a < U.cols() && best < 2; ++a) consider(col(U, a));

        if (best < 1) {
            // Diagonalize B(u, v) = [N^{m-1} u, v] on span U. The top value of
            // sum z_j w_j is sum d_j |z_j|^2, so only the norms matter.
            auto B = [&](const MatrixQ& u, const MatrixQ& v) { return inner(M, Nm1 * u, v); };
            auto scaled = [](const MatrixQ& v, const GaussianRational& s) {
                return v.map([&](const GaussianRational& e) { return e * s; });
            };
            std::vector<MatrixQ> pool;
            for (std::size_t a = 0; a < U.cols(); ++a) pool.push_back(col(U, a));
            std::vector<MatrixQ> w;
            std::vector<mpq_class> d;
            while (!pool.empty()) {
                std::optional<std::size_t> piv;
                for (std::size_t a = 0; a < pool.size() && !piv; ++a)
                    if (!B(pool[a], pool[a]).is_zero()) piv = a;
                if (!piv) {
                    for (std::size_t a = 0; a < pool.size() && !piv; ++a)
                        for (std::size_t b = 0; b < pool.size() && !piv; ++b) {
                            if (a == b || B(pool[a], pool[b]).is_zero()) continue;
                            for (const auto& s : {GaussianRational(1), GaussianRational::i()}) {
                                MatrixQ t = pool[a] + scaled(pool[b], s);
                                if (!B(t, t).is_zero()) {
                                    pool[a] = t;
                                    piv = a;
                                    break;
                                }
                            }
                        }
                }
                if (!piv) break;
                MatrixQ p = pool[*piv];
                GaussianRational dp = B(p, p);
                pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(*piv));
                for (auto& u : pool) u = u - scaled(p, B(p, u) / dp);
                w.push_back(p);
                d.push_back(dp.re());
            }
            std::vector<unsigned long> norms;
            for (unsigned long n = 0; n <= 100; ++n)
                if (n == 0 || is_gaussian_norm(mpq_class(n))) norms.push_back(n);
            std::size_t r = w.size();
            std::vector<std::size_t> idx(r, 0);
            std::size_t budget = 200'000;
            while (r > 0 && best < 2 && budget-- > 0) {
                std::size_t j = 0;
                while (j < r && ++idx[j] == norms.size()) idx[j++] = 0;
                if (j == r) break;
                mpq_class value = 0;
                for (std::size_t a = 0; a < r; ++a) value += d[a] * norms[idx[a]];
                if (sgn(value) == 0 || !is_gaussian_norm(abs(value))) continue;
                MatrixQ cand(K, 1, GaussianRational(0));
                for (std::size_t a = 0; a < r; ++a) {
                    if (norms[idx[a]] == 0) continue;
                    GaussianRational z;
                    gaussian_sqrt_of_norm(mpq_class(norms[idx[a]]), z);
                    cand = cand + scaled(w[a], z);
                }
                consider(cand);
            }
        }
        if (!x) fail(ErrorKind::ResidueStructure, "degenerate indefinite metric on a pole subspace");

        std::vector<MatrixQ> powers{*x};
        for (std::size_t j = 1; j < m; ++j) powers.push_back(N * powers.back());
        std::vector<GaussianRational> c(m);
        for (std::size_t j = 0; j < m; ++j) {
            c[j] = inner(M, powers[j], *x);
            if (!c[j].is_real()) fail(ErrorKind::ResidueStructure, "metric is not Hermitian");
        }
        const GaussianRational& top = c[m - 1];
        int eps = real_sign(top);
        // q(N) = conj(p)(N) p(N) solves sum_s q_s c_{j+s} = eps delta_{j, m-1}.
        std::vector<GaussianRational> q(m);
        q[0] = GaussianRational(1) / GaussianRational(eps) / top;
        for (std::size_t s = 1; s < m; ++s) {
            GaussianRational acc;
            for (std::size_t t = 0; t < s; ++t) acc += q[t] * c[m - 1 - s + t];
            q[s] = -acc / top;
        }
        // p = p0 * t with t^2 = q / q0, t_0 = 1.
        std::vector<GaussianRational> r(m), t(m);
        for (std::size_t s = 0; s < m; ++s) r[s] = q[s] / q[0];
        t[0] = GaussianRational(1);
        for (std::size_t s = 1; s < m; ++s) {
            GaussianRational acc = r[s];
            for (std::size_t a = 1; a < s; ++a) acc -= t[a] * t[s - a];
            t[s] = acc / GaussianRational(2);
        }
        // |p0|^2 = q0; aim for a positive real leading entry in the image row.
        mpq_class q0 = q[0].re();
        MatrixQ y = C * powers[m - 1];
        std::optional<GaussianRational> p0;
        for (std::size_t i = 0; i < y.rows(); ++i) {
            if (y(i, 0).is_zero()) continue;
            mpq_class rt;
            if (rational_sqrt(q0 / y(i, 0).norm(), rt)) p0 = GaussianRational(eps) * y(i, 0).conj() * GaussianRational(rt);
            break;
        }
        if (!p0) {
            GaussianRational w;
            if (!gaussian_sqrt_of_norm(q0, w))
                fail(ErrorKind::IrrationalFactor,
                     "the Jordan chain normalization needs sqrt(" + rational_string(q0) + "), which is not in Q(i)");
            p0 = w;
        }
        MatrixQ g(K, 1, GaussianRational(0));
        for (std::size_t s = 0; s < m; ++s) g = g + powers[s].map([&](const GaussianRational& v) { return v * t[s] * *p0; });

        std::vector<MatrixQ> f(m);
        f[m - 1] = g;
        for (std::size_t i = m - 1; i > 0; --i) f[i - 1] = N * f[i];
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b) {
                GaussianRational want = a + b == m - 1 ? GaussianRational(eps) : GaussianRational(0);
                if (!(inner(M, f[a], f[b]) == want)) fail(ErrorKind::Internal, "chain normalization failed");
            }
        out.push_back({m, eps, hcat(f, K)});

        std::vector<MatrixQ> rest;
        for (std::size_t a = 0; a < U.cols(); ++a) {
            MatrixQ u = col(U, a);
            MatrixQ proj = u;
            for (std::size_t i = 0; i < m; ++i) {
                GaussianRational w = GaussianRational(eps) * inner(M, u, f[m - 1 - i]);
                proj = proj - f[i].map([&](const GaussianRational& v) { return v * w; });
            }
            rest.push_back(proj);
        }
        MatrixQ next = independent_columns(hcat(rest, K));
        if (next.cols() + m != U.cols()) fail(ErrorKind::ResidueStructure, "pole subspace does not split orthogonally");
        U = next;
    }
    return out;
}

}  // namespace detail

/// Blocks and the matching rows of Gamma at one eigenvalue, plus the chain
/// limits of its records.
struct EigenvalueBlocks {
    GaussianRational alpha;
    std::vector<BlockSpec> blocks;
    std::vector<MatrixQ> gamma;
    std::vector<GaussianRational> chain_limits;
};

/// Solves the residue equations at alpha. With chain matrix C and the
/// chain shift N, the principal part is R_m = C N^m Z C^* for a Hermitian
/// Z; M = -Z^{-1} is the indefinite metric in chain coordinates, and an
/// M-orthogonal sip basis V of each N-cycle gives Gamma_b = eps G (C V)^*.
inline EigenvalueBlocks solve_gamma_at(const MatPoly& L, const MatRatFun& Lhat, const GaussianRational& alpha,
                                       const std::vector<const RootFunctionQ*>& recs) {
    EigenvalueBlocks eb;
    eb.alpha = alpha;
    std::size_t n = L.rows(), K = 0, kmax = 0;
    for (const auto* r : recs) {
        K += r->order;
        kmax = std::max<std::size_t>(kmax, r->order);
        eb.chain_limits.push_back(chain_limit_value(L, *r));
    }
    MatrixQ C(n, K, GaussianRational(0)), N(K, K, GaussianRational(0));
    for (std::size_t o = 0; const auto* r : recs) {
        for (std::size_t j = 0; j < r->order; ++j) {
            for (std::size_t i = 0; i < n; ++i) C(i, o + j) = r->chain[j][i];
            if (j > 0) N(o + j - 1, o + j) = GaussianRational(1);
        }
        o += r->order;
    }
    auto R = residue_matrices(Lhat, alpha);
    if (R.size() > kmax) fail(ErrorKind::ResidueStructure, "pole order exceeds the longest chain");
    R.resize(kmax, MatrixQ(n, n, GaussianRational(0)));

    MatrixQ H(n * kmax, n * kmax, GaussianRational(0)), O(n * kmax, K, GaussianRational(0));
    MatrixQ CN = C;
    for (std::size_t i = 0; i < kmax; ++i) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < K; ++b) O(i * n + a, b) = CN(a, b);
        CN = CN * N;
        for (std::size_t j = 0; i + j < kmax; ++j)
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) H(i * n + a, j * n + b) = R[i + j](a, b);
    }
    MatrixQ Oh = conj_transpose(O);
    auto gram = inverse(Oh * O);
    if (!gram) fail(ErrorKind::ResidueStructure, "chains at " + alpha.to_string() + " are not observable");
    MatrixQ Op = *gram * Oh;
    MatrixQ Z = Op * H * conj_transpose(Op);
    if (!(O * Z * Oh == H)) fail(ErrorKind::ResidueStructure, "principal part at " + alpha.to_string() + " does not match the chains");
    auto Zi = inverse(Z);
    if (!Zi) fail(ErrorKind::ResidueStructure, "residues at " + alpha.to_string() + " are degenerate (non-minimal data)");
    MatrixQ M = -*Zi;
    if (!is_hermitian(M) || !(M * N == conj_transpose(N) * M))
        fail(ErrorKind::ResidueStructure, "chain metric at " + alpha.to_string() + " is not N-symmetric");

    auto reduced = detail::reduce_metric(M, N, C);
    std::vector<bool> used(recs.size(), false);
    for (const auto& rb : reduced) {
        BlockSpec b{alpha, rb.k, rb.sign, recs.front()->index};
        for (std::size_t r = 0; r < recs.size(); ++r)
            if (!used[r] && recs[r]->order == rb.k) {
                used[r] = true;
                b.source_index = recs[r]->index;
                break;
            }
        MatrixQ g = sip_matrix(rb.k);
        MatrixQ gam = g * conj_transpose(C * rb.V);
        if (rb.sign < 0) gam = -gam;
        eb.blocks.push_back(b);
        eb.gamma.push_back(gam);
    }
    if (recs.size() == 1) {
        const auto& v = eb.chain_limits.front();
        if (v.is_zero() || !v.is_real()) fail(ErrorKind::ZeroChainLimit, "chain limit at " + alpha.to_string() + " is " + v.to_string());
        if (eb.blocks.size() != 1 || detail::real_sign(v) != eb.blocks.front().sign)
            fail(ErrorKind::Internal, "metric sign disagrees with the chain limit at " + alpha.to_string());
    }
    return eb;
}

struct RepresentationCheck {
    bool ok = false;
    std::size_t row = 0;
    std::size_t col = 0;
    RatFun defect;
    std::string reason;
};

/// (A - z)^{-1} as rational functions. Diagonal blocks with a single
/// eigenvalue use the finite Neumann series; anything else the adjugate.
inline MatRatFun resolvent(const MatrixQ& A) {
    std::size_t K = A.rows();
    MatRatFun out(K, K, RatFun());
    std::size_t start = 0;
    while (start < K) {
        std::size_t end = start + 1;
        for (bool grow = true; grow;) {
            grow = false;
            for (std::size_t i = start; i < K; ++i)
                for (std::size_t j = start; j < K; ++j) {
                    bool inside_i = i < end, inside_j = j < end;
                    if (inside_i != inside_j && !A(i, j).is_zero()) {
                        end = std::max(i, j) + 1;
                        grow = true;
                    }
                }
        }
        std::size_t k = end - start;
        MatrixQ B(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) B(i, j) = A(start + i, start + j);
        GaussianRational a = B(0, 0);
        MatrixQ Nb = B - MatrixQ::identity(k).map([&](const GaussianRational& v) { return v * a; });
        MatrixQ P = MatrixQ::identity(k);
        std::vector<MatrixQ> powers;
        while (powers.size() < k && !is_zero_matrix(P)) {
            powers.push_back(P);
            P = P * Nb;
        }
        MatRatFun blk(k, k, RatFun());
        if (is_zero_matrix(P)) {
            for (std::size_t m = 0; m < powers.size(); ++m) {
                PolyQ den = pow(PolyQ::linear_root(a), static_cast<unsigned>(m + 1));
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j)
                        if (!powers[m](i, j).is_zero()) blk(i, j) -= RatFun(PolyQ(powers[m](i, j)), den);
            }
        } else {
            MatPoly Bz = B.map([](const GaussianRational& v) { return PolyQ(v); });
            for (std::size_t i = 0; i < k; ++i) Bz(i, i) -= PolyQ::z();
            blk = -inverse_hat(Bz);
        }
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) out(start + i, start + j) = blk(i, j);
        start = end;
    }
    return out;
}

/// S + Gamma^+ (A - z)^{-1} Gamma with Gamma^+ = Gamma^* J.
inline MatRatFun represented_function(const Representation& rep) {
    auto lift = [](const MatrixQ& m) { return m.map([](const GaussianRational& v) { return RatFun(v); }); };
    if (rep.state_dim() == 0) return lift(rep.S_inf);
    return lift(rep.S_inf) + lift(rep.Gamma_plus()) * resolvent(rep.A) * lift(rep.Gamma);
}

inline RepresentationCheck verify_representation(const MatRatFun& Lhat, const Representation& rep) {
    RepresentationCheck out;
    std::size_t n = Lhat.rows(), K = rep.A.rows();
    if (rep.S_inf.rows() != n || rep.S_inf.cols() != n || rep.J.rows() != K || rep.J.cols() != K || rep.A.cols() != K ||
        rep.Gamma.rows() != K || rep.Gamma.cols() != n) {
        out.reason = "dimension mismatch";
        return out;
    }
    MatRatFun Q = represented_function(rep);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!(Q(i, j) == Lhat(i, j))) {
                out.row = i;
                out.col = j;
                out.defect = Q(i, j) - Lhat(i, j);
                out.reason = "entry (" + std::to_string(i) + ", " + std::to_string(j) + ") differs by " + out.defect.to_string();
                return out;
            }
    out.ok = true;
    return out;
}

/// At each eigenvalue the top residue R_{k-1} equals -sum eps_b w_b w_b^*
/// over the blocks of maximal size k with independent w_b.
struct TopResidueCheck {
    GaussianRational alpha;
    std::size_t rank = 0;
    Inertia inertia;
    bool ok = false;
};

inline std::vector<TopResidueCheck> top_residue_checks(const MatRatFun& Lhat, const Representation& rep) {
    std::vector<TopResidueCheck> out;
    for (std::size_t b = 0; b < rep.blocks.size(); ++b) {
        const auto& alpha = rep.blocks[b].alpha;
        if (std::any_of(out.begin(), out.end(), [&](const TopResidueCheck& c) { return c.alpha == alpha; })) continue;
        std::size_t kmax = 0, pos = 0, neg = 0;
        for (const auto& x : rep.blocks)
            if (x.alpha == alpha) kmax = std::max(kmax, x.k);
        for (const auto& x : rep.blocks)
            if (x.alpha == alpha && x.k == kmax) (x.sign > 0 ? neg : pos) += 1;
        auto R = residue_matrices(Lhat, alpha);
        TopResidueCheck c;
        c.alpha = alpha;
        if (R.size() == kmax) {
            c.rank = rank(R.back());
            c.inertia = inertia(R.back());
            c.ok = c.rank == pos + neg && c.inertia.positive == pos && c.inertia.negative == neg;
        }
        out.push_back(c);
    }
    return out;
}

struct RepresentResult {
    RepresentabilityReport report;
    MatRatFun Lhat;
    CanonicalSystem system;
    std::vector<EigenvalueBlocks> per_eigenvalue;
    Representation rep;
};

/// Full pipeline: checks, S_inf, canonical system, blocks and Gamma, and an
/// exact reconstruction check.
inline RepresentResult represent(const MatPoly& L) {
    RepresentResult res;
    res.report = check_representability(L);
    res.Lhat = inverse_hat(L);
    res.rep.S_inf = limit_at_infinity_matrix(res.Lhat);
    if (!is_hermitian(res.rep.S_inf)) fail(ErrorKind::Internal, "limit at infinity is not Hermitian");
    res.system = canonical_system(L);
    std::vector<MatrixQ> gam;
    for (const auto& e : res.system.table.entries) {
        auto recs = res.system.at(e.alpha.value);
        auto eb = solve_gamma_at(L, res.Lhat, e.alpha.value, recs);
        std::vector<std::size_t> order(eb.blocks.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (eb.blocks[a].k != eb.blocks[b].k) return eb.blocks[a].k > eb.blocks[b].k;
            return eb.blocks[a].source_index < eb.blocks[b].source_index;
        });
        for (auto i : order) {
            res.rep.blocks.push_back(eb.blocks[i]);
            gam.push_back(eb.gamma[i]);
        }
        res.per_eigenvalue.push_back(std::move(eb));
    }
    auto aj = assemble_AJ(res.rep.blocks);
    res.rep.A = aj.A;
    res.rep.J = aj.J;
    res.rep.kappa = aj.kappa;
    std::size_t n = L.rows(), K = aj.A.rows();
    res.rep.Gamma = MatrixQ(K, n, GaussianRational(0));
    for (std::size_t o = 0; const auto& g : gam) {
        for (std::size_t i = 0; i < g.rows(); ++i)
            for (std::size_t j = 0; j < n; ++j) res.rep.Gamma(o + i, j) = g(i, j);
        o += g.rows();
    }
    if (K != static_cast<std::size_t>(res.report.degrees.det_degree)) fail(ErrorKind::Internal, "state dimension differs from deg det L");
    auto chk = verify_representation(res.Lhat, res.rep);
    if (!chk.ok) fail(ErrorKind::Internal, "reconstruction failed: " + chk.reason);
    return res;
}

}  // namespace mpk
