#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace fx;

namespace {

/// u(t) as complex numbers.
template <class F>
Eigen::VectorXcd evaluate(const SolutionTerm<F>& u, double t) {
    auto p = term_polynomial(u);
    std::complex<double> a = u.alpha.exact ? u.alpha.value.to_complex() : u.alpha.approx;
    Eigen::VectorXcd out(static_cast<long>(p.size()));
    for (std::size_t r = 0; r < p.size(); ++r) {
        std::complex<double> acc = 0.0;
        const auto& cs = p[r].coeffs();
        for (std::size_t k = cs.size(); k-- > 0;) acc = acc * t + ScalarTraits<F>::to_complex(cs[k]);
        out(static_cast<long>(r)) = acc * std::exp(a * t);
    }
    return out;
}

/// The term's polynomial part with t as variable, entry by entry.
std::vector<PolyQ> poly_part(const SolutionTermQ& u) { return term_polynomial(u); }

bool contains(const GeneralSolution& g, const std::vector<PolyQ>& p, const GaussianRational& alpha) {
    for (const auto& u : g.exact)
        if (u.alpha.value == alpha && poly_part(u) == p) return true;
    return false;
}

}  // namespace

TEST(GeneralSolution, Cubic3x3) {
    GeneralSolution g = general_solution(cubic3x3());
    EXPECT_EQ(g.dimension(), 4u);
    EXPECT_TRUE(g.independent);
    EXPECT_TRUE(contains(g, {P({}), P({1}), P({})}, Q(0)));
    EXPECT_TRUE(contains(g, {P({-1}), P({}), P({0, 1})}, Q(0)));
    EXPECT_TRUE(contains(g, {P({-1}), P({}), P({1})}, Q(1)));
    EXPECT_TRUE(contains(g, {P({}), P({}), P({1})}, Q(0)));
    for (const auto& u : g.exact) {
        auto chk = verify_solution(cubic3x3(), u);
        EXPECT_TRUE(chk.ok);
        for (const auto& r : chk.residual) EXPECT_TRUE(r.is_zero());
    }
}

TEST(VerifySolution, RejectsNonSolution) {
    SolutionTermQ u{RootSpec::exact_root(Q(0), 1), 0, {V({1, 0, 0})}};
    auto chk = verify_solution(cubic3x3(), u);
    EXPECT_FALSE(chk.ok);
    ASSERT_EQ(chk.residual.size(), 3u);
    EXPECT_TRUE(chk.residual[0].is_zero());
    EXPECT_EQ(chk.residual[1], P({1}));
    EXPECT_TRUE(chk.residual[2].is_zero());
}

TEST(GeneralSolution, ConstantBasisForZI) {
    GeneralSolution g = general_solution(zI(2));
    ASSERT_EQ(g.dimension(), 2u);
    EXPECT_TRUE(contains(g, {P({1}), P({})}, Q(0)));
    EXPECT_TRUE(contains(g, {P({}), P({1})}, Q(0)));
}

TEST(GeneralSolution, MatchesMatrixExponential) {
    oracle::Rng rng(53);
    for (int t = 0; t < 20; ++t) {
        // A = P J P^{-1} with a random integer P and a Jordan-type J
        MatrixQ Pm(3, 3, Q(0));
        do {
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j) Pm(i, j) = Q(rng.uniform(-2, 2));
        } while (determinant(Pm).is_zero());
        MatrixQ J(3, 3, Q(0));
        for (std::size_t i = 0; i < 3; ++i) J(i, i) = Q(rng.uniform(-2, 2), rng.uniform(1, 2));
        if (rng.coin()) {
            J(1, 1) = J(0, 0);
            J(0, 1) = Q(1);
        }
        MatrixQ A = Pm * J * *inverse(Pm);
        MatPoly L(3, 3);
        Eigen::MatrixXd Ad(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                L(i, j) = PolyQ(-A(i, j));
                if (i == j) L(i, j) += P({0, 1});
                Ad(static_cast<long>(i), static_cast<long>(j)) = A(i, j).re().get_d();
            }
        GeneralSolution g = general_solution(L);
        ASSERT_EQ(g.dimension(), 3u);
        EXPECT_TRUE(g.independent);
        for (const auto& u : g.exact) {
            Eigen::VectorXcd u0 = evaluate(u, 0.0);
            for (double tt : {0.0, 0.5, 1.0}) {
                Eigen::VectorXcd want = oracle::expm_apply(Ad, tt, u0);
                EXPECT_LT((evaluate(u, tt) - want).norm(), 1e-9 * (1.0 + want.norm()));
            }
        }
    }
}

TEST(GeneralSolution, RandomTermsSolveTheSystem) {
    oracle::Rng rng(59);
    int done = 0;
    while (done < 100) {
        std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
        MatPoly L = oracle::random_matpoly(rng, n, 2, -2, 2);
        PolyQ d = mat_det(L);
        if (d.is_zero()) continue;
        GeneralSolution g = general_solution(L);
        EXPECT_EQ(g.dimension(), static_cast<std::size_t>(d.degree()));
        EXPECT_TRUE(g.independent);
        for (const auto& u : g.exact) EXPECT_TRUE(verify_solution(L, u).ok);
        for (const auto& u : g.approx) EXPECT_TRUE(verify_solution(L, u).ok);
        ++done;
    }
}

TEST(Render, ReadableForms) {
    GeneralSolution g = general_solution(cubic3x3());
    for (const auto& u : g.exact) {
        EXPECT_FALSE(render_expanded(u).empty());
        EXPECT_FALSE(render_chain_form(u).empty());
        EXPECT_NE(render_latex(u).find("pmatrix"), std::string::npos);
    }
    SolutionTermQ e{RootSpec::exact_root(Q(1), 1), 2, {V({-1, 0, 1})}};
    EXPECT_NE(render_expanded(e).find("exp(t)"), std::string::npos);
}
