#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace fx;

namespace {

MatrixQ ref_A() { return MQ({{0, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}}); }
MatrixQ ref_J() { return MQ({{0, -1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, -1, 0}}); }
MatrixQ ref_Gamma() { return MQ({{1, 1}, {0, 1}, {-1, -1}, {0, 1}}); }

void expect_error(const MatPoly& L, ErrorKind kind) {
    try {
        represent(L);
        ADD_FAILURE() << "expected " << to_string(kind);
    } catch (const MathError& e) {
        EXPECT_EQ(e.kind(), kind) << e.what();
    }
}

/// Independent structural checks on a finished representation.
void expect_structure(const MatPoly& L, const Representation& rep) {
    std::size_t K = rep.state_dim();
    EXPECT_EQ(K, static_cast<std::size_t>(mat_det(L).degree()));
    EXPECT_EQ(rep.J * rep.J, MatrixQ::identity(K));
    EXPECT_EQ(rep.J, conj_transpose(rep.J));
    EXPECT_EQ(rep.J * rep.A, rep.A.transpose() * rep.J);
    EXPECT_EQ(rep.kappa, K == 0 ? 0u : inertia(rep.J).negative);
    MatRatFun Lhat = inverse_hat(L);
    auto chk = verify_representation(Lhat, rep);
    EXPECT_TRUE(chk.ok) << chk.reason;
    for (const auto& t : top_residue_checks(Lhat, rep)) EXPECT_TRUE(t.ok) << "top residue at " << t.alpha.to_string();
    // eigenvalues carrying a single block: the top residue is rank one with sign -eps
    for (const auto& b : rep.blocks) {
        auto same = std::count_if(rep.blocks.begin(), rep.blocks.end(), [&](const BlockSpec& x) { return x.alpha == b.alpha; });
        if (same != 1) continue;
        MatrixQ R(L.rows(), L.rows(), Q(0));
        for (std::size_t i = 0; i < L.rows(); ++i)
            for (std::size_t j = 0; j < L.rows(); ++j) {
                auto pp = principal_part(Lhat(i, j), b.alpha);
                ASSERT_LE(pp.size(), b.k);
                if (pp.size() == b.k) R(i, j) = pp.back();
            }
        EXPECT_EQ(oracle::plain_rank([&] {
                      std::vector<std::vector<GaussianRational>> rows(R.rows(), std::vector<GaussianRational>(R.cols()));
                      for (std::size_t i = 0; i < R.rows(); ++i)
                          for (std::size_t j = 0; j < R.cols(); ++j) rows[i][j] = R(i, j);
                      return rows;
                  }()),
                  1u);
        auto in = inertia(R);
        EXPECT_EQ(b.sign > 0 ? in.negative : in.positive, 1u);
    }
}

MatrixQ random_constant_invertible(oracle::Rng& rng, std::size_t n, bool gaussian) {
    MatrixQ U(n, n, Q(0));
    do {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                U(i, j) = gaussian ? I(rng.uniform(-2, 2), rng.uniform(-1, 1)) : Q(rng.uniform(-3, 3));
    } while (determinant(U).is_zero());
    return U;
}

/// U^T D conj(U) with a constant invertible U, so -L^{-1} stays proper.
MatPoly congruence(const MatrixQ& U, const MatPoly& D) {
    std::size_t n = U.rows();
    MatPoly Ut(n, n), Uc(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Ut(i, j) = PolyQ(U(j, i));
            Uc(i, j) = PolyQ(U(i, j).conj());
        }
    return Ut * D * Uc;
}

MatPoly representable_case(oracle::Rng& rng, int variant) {
    std::size_t n = 2;
    GaussianRational a = Q(rng.uniform(-4, 4), rng.uniform(1, 3)), b;
    do b = Q(rng.uniform(-4, 4), rng.uniform(1, 3));
    while (b == a);
    auto lin = [](const GaussianRational& x, int s) { return PolyQ(Q(s)) * PolyQ::linear_root(x); };
    int sa = rng.coin() ? 1 : -1, sb = rng.coin() ? 1 : -1;
    MatPoly D(n, n);
    switch (variant) {
        case 0:  // two simple real eigenvalues
            D(0, 0) = lin(a, sa);
            D(1, 1) = lin(b, sb);
            break;
        case 1:  // one size-2 block
            D(0, 0) = lin(a, sa) * lin(a, 1);
            D(1, 1) = lin(b, sb);
            break;
        default:  // repeated eigenvalue, two blocks
            D(0, 0) = lin(a, sa);
            D(1, 1) = lin(a, sb);
            break;
    }
    return congruence(random_constant_invertible(rng, n, rng.coin(0.3)), D);
}

}  // namespace

TEST(Representability, Checks) {
    EXPECT_NO_THROW(check_representability(hermitian2x2()));
    expect_error(divergent2x2(), ErrorKind::DivergentAtInfinity);
    EXPECT_NO_THROW(check_representability(nonzero_limit()));
    expect_error(cubic3x3(), ErrorKind::NotHermitian);
    expect_error(MatPoly{{P({1, 0, 1})}}, ErrorKind::NonRealSpectrum);
    expect_error(MatPoly{{P({-2, 0, 1})}}, ErrorKind::NonExactSpectrum);
    expect_error(MatPoly(2, 2), ErrorKind::NotInvertible);
}

TEST(Representability, Divergent2x2DegreeReport) {
    try {
        check_representability(divergent2x2());
        FAIL();
    } catch (const MathError& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DivergentAtInfinity);
    }
    auto r = degree_report(divergent2x2());
    EXPECT_EQ(r.det_degree, 2);
    EXPECT_EQ(r.nl, 6);
}

TEST(LimitAtInfinity, Examples) {
    EXPECT_EQ(limit_at_infinity_matrix(inverse_hat(hermitian2x2())), MQ({{0, 0}, {0, 0}}));
    EXPECT_EQ(limit_at_infinity_matrix(inverse_hat(nonzero_limit())), MQ({{0, 0}, {0, -1}}));
    EXPECT_EQ(limit_at_infinity_matrix(inverse_hat(identity(2))), MQ({{-1, 0}, {0, -1}}));
}

TEST(ChainLimit, Examples) {
    DiagForm f = diagonalize(hermitian2x2());
    EXPECT_EQ(chain_limit(hermitian2x2(), root_function(f, Q(0), 1)), Q(-1));
    EXPECT_EQ(chain_limit(hermitian2x2(), root_function(f, Q(1), 1)), Q(-1));
    MatPoly s{{P({0, 1})}};
    EXPECT_EQ(chain_limit(s, root_function(diagonalize(s), Q(0), 0)), Q(1));
}

TEST(AssembleAJ, Examples) {
    auto aj = assemble_AJ({{Q(0), 2, -1, 1}, {Q(1), 2, -1, 1}});
    EXPECT_EQ(aj.A, ref_A());
    EXPECT_EQ(aj.J, ref_J());
    EXPECT_EQ(aj.kappa, 2u);
    auto one = assemble_AJ({{Q(3, 2), 1, 1, 0}});
    EXPECT_EQ(one.A, MatrixQ{{Q(3, 2)}});
    EXPECT_EQ(one.J, MQ({{1}}));
    EXPECT_EQ(one.kappa, 0u);
    auto three = assemble_AJ({{Q(0), 3, 1, 0}});
    EXPECT_EQ(three.J, flip(3));
    EXPECT_EQ(three.kappa, 1u);
    auto in = inertia(three.J);
    EXPECT_EQ(in.positive, 2u);
    EXPECT_EQ(in.negative, 1u);
}

TEST(SipCounts, ClosedFormMatchesIndependentSignature) {
    for (std::size_t k = 1; k <= 9; ++k)
        for (int s : {1, -1}) {
            auto [pos, neg] = oracle::sip_signature(k, s);
            EXPECT_EQ(sip_negative_count(k, s), neg) << "k=" << k << " sign=" << s;
            EXPECT_EQ(sip_positive_count(k, s), pos) << "k=" << k << " sign=" << s;
            auto in = inertia(flip(k, s));
            EXPECT_EQ(in.negative, neg);
            EXPECT_EQ(in.positive, pos);
        }
}

TEST(Represent, Hermitian2x2) {
    auto r = represent(hermitian2x2());
    EXPECT_EQ(r.rep.A, ref_A());
    EXPECT_EQ(r.rep.J, ref_J());
    EXPECT_EQ(r.rep.kappa, 2u);
    EXPECT_EQ(r.rep.S_inf, MQ({{0, 0}, {0, 0}}));
    ASSERT_EQ(r.per_eigenvalue.size(), 2u);
    for (const auto& e : r.per_eigenvalue) {
        ASSERT_EQ(e.chain_limits.size(), 1u);
        EXPECT_EQ(e.chain_limits[0], Q(-1));
    }
    expect_structure(hermitian2x2(), r.rep);
}

TEST(Represent, ReferenceGammaVerifiesAndPerturbationFails) {
    Representation rep;
    rep.S_inf = MQ({{0, 0}, {0, 0}});
    rep.A = ref_A();
    rep.J = ref_J();
    rep.Gamma = ref_Gamma();
    MatRatFun Lhat = inverse_hat(hermitian2x2());
    EXPECT_TRUE(verify_representation(Lhat, rep).ok);
    rep.Gamma(0, 0) = Q(2);
    auto bad = verify_representation(Lhat, rep);
    EXPECT_FALSE(bad.ok);
    EXPECT_FALSE(bad.defect.is_zero());
}

TEST(Represent, NonzeroLimitAtInfinity) {
    auto r = represent(nonzero_limit());
    EXPECT_EQ(r.rep.S_inf, MQ({{0, 0}, {0, -1}}));
    EXPECT_EQ(r.rep.kappa, 0u);
    expect_structure(nonzero_limit(), r.rep);
}

TEST(Represent, ConstantIdentity) {
    auto r = represent(identity(2));
    EXPECT_EQ(r.rep.state_dim(), 0u);
    EXPECT_EQ(r.rep.S_inf, MQ({{-1, 0}, {0, -1}}));
    EXPECT_TRUE(verify_representation(r.Lhat, r.rep).ok);
}

TEST(Represent, ScalarLinear) {
    for (const auto& a : {Q(0), Q(2), Q(-3, 4)}) {
        MatPoly L{{PolyQ::linear_root(a)}};
        auto r = represent(L);
        EXPECT_EQ(r.rep.state_dim(), 1u);
        EXPECT_EQ(r.rep.A, MatrixQ{{a}});
        EXPECT_EQ(r.rep.J, MQ({{1}}));
        EXPECT_EQ(r.rep.Gamma, MQ({{1}}));
        EXPECT_EQ(r.rep.S_inf, MQ({{0}}));
        EXPECT_EQ(r.rep.kappa, 0u);
        expect_structure(L, r.rep);
    }
}

TEST(Represent, ScalarHigherOrder) {
    MatPoly c{{P({0, 0, 0, 1})}};
    auto r = represent(c);
    EXPECT_EQ(r.rep.kappa, 1u);
    expect_structure(c, r.rep);
    MatPoly m{{P({0, 0, 0, -1})}};
    auto s = represent(m);
    EXPECT_EQ(s.rep.kappa, 2u);
    expect_structure(m, s.rep);
}

TEST(Represent, TwoBlocksAtOneEigenvalue) {
    MatPoly L{{P({}), P({0, 1})}, {P({0, 1}), P({})}};
    auto r = represent(L);
    EXPECT_EQ(r.rep.blocks.size(), 2u);
    EXPECT_EQ(r.rep.kappa, 1u);
    expect_structure(L, r.rep);
}

TEST(Represent, GaussianEntries) {
    MatPoly L{{P({0, 1}), PolyQ(I(0, 1))}, {PolyQ(I(0, -1)), P({0, 1})}};
    auto r = represent(L);
    expect_structure(L, r.rep);
}

TEST(Represent, IrrationalNormalizationIsReported) {
    expect_error(MatPoly{{P({0, 3})}}, ErrorKind::IrrationalFactor);
}

TEST(Represent, RandomCongruenceFamilyRoundTrips) {
    oracle::Rng rng(71);
    for (int t = 0; t < 50; ++t) {
        MatPoly L = representable_case(rng, t % 3);
        ASSERT_TRUE(is_hermitian(L));
        try {
            auto r = represent(L);
            expect_structure(L, r.rep);
        } catch (const MathError& e) {
            ADD_FAILURE() << "case " << t << ": " << e.what();
        }
    }
}
