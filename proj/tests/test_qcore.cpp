#include <gtest/gtest.h>

#include <random>

#include "support/oracle.hpp"
#include "wpt/qcore.hpp"

using namespace wpt;

namespace {

ModeBasis abc() { return ModeBasis({"a", "b", "c"}); }

PureState random_pure(const ModeBasis& b, std::mt19937_64& rng) {
    return PureState(b, oracle::random_state(static_cast<int>(b.dimension()), rng));
}

}  // namespace

TEST(ModeBasis, RejectsBadLabels) {
    EXPECT_THROW(ModeBasis(std::vector<std::string>{}), structure_error);
    EXPECT_THROW(ModeBasis({"a", "a"}), mode_error);
    EXPECT_THROW(ModeBasis({""}), mode_error);
    EXPECT_THROW(ModeBasis({"a,b"}), mode_error);
    EXPECT_THROW(abc().index_of("z"), mode_error);
    EXPECT_EQ(abc().index_of("c"), 2U);
    EXPECT_FALSE(abc().contains("z"));
}

TEST(ModeBasis, ProductIsKroneckerOrderedAndAssociative) {
    const ModeBasis p = ModeBasis::product(ModeBasis({"V", "H"}), ModeBasis({"1", "2", "3"}));
    ASSERT_EQ(p.dimension(), 6U);
    EXPECT_EQ(p.label(0), "V,1");
    EXPECT_EQ(p.label(1), "V,2");
    EXPECT_EQ(p.label(3), "H,1");
    EXPECT_EQ(p.factor_count(), 2U);
    EXPECT_EQ(p.factor(1), ModeBasis({"1", "2", "3"}));
    EXPECT_EQ(p.factor_dimensions(), (std::vector<std::size_t>{2, 3}));
    EXPECT_THROW(p.factor(2), structure_error);

    const ModeBasis a({"x", "y"}), b({"u", "v"}), c({"s", "t"});
    EXPECT_EQ(ModeBasis::product(ModeBasis::product(a, b), c), ModeBasis::product(a, ModeBasis::product(b, c)));
}

TEST(PureState, ValidatesAmplitudes) {
    EXPECT_THROW(PureState(abc(), cvector::Zero(2)), structure_error);
    cvector v = cvector::Zero(3);
    v[1] = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(PureState(abc(), v), range_error);
    EXPECT_THROW(PureState(abc(), cvector::Zero(3)).normalized(), normalization_error);
    EXPECT_THROW(PureState::ket(abc(), "q"), mode_error);
}

TEST(PureState, TermsAndArithmetic) {
    const PureState s = PureState::from_terms(abc(), {{"a", 3.0}, {"c", amplitude(0, 4)}});
    EXPECT_DOUBLE_EQ(s.norm(), 5.0);
    EXPECT_NEAR(std::abs(s.normalized()["c"] - amplitude(0, 0.8)), 0.0, 1e-15);
    const PureState d = s - s;
    EXPECT_EQ(d.norm(), 0.0);
    EXPECT_THROW(s + PureState::ket(ModeBasis({"a", "b", "d"}), "a"), mode_error);
}

TEST(Tensor, MatchesKroneckerOracle) {
    std::mt19937_64 rng(3);
    const ModeBasis a({"V", "H"}), b({"1", "2", "3"});
    for (int trial = 0; trial < 20; ++trial) {
        const PureState x = random_pure(a, rng), y = random_pure(b, rng);
        const cvector k = oracle::kron(x.amplitudes(), y.amplitudes());
        EXPECT_LT((tensor(x, y).amplitudes() - k).cwiseAbs().maxCoeff(), 1e-15);
    }
}

TEST(InnerProduct, IsConjugateLinearInTheBra) {
    const PureState x = PureState::from_terms(abc(), {{"a", amplitude(0, 1)}});
    const PureState y = PureState::ket(abc(), "a");
    EXPECT_EQ(inner_product(x, y), amplitude(0, -1));
}

TEST(DensityMatrix, Validation) {
    cmatrix m = cmatrix::Identity(3, 3) / 3.0;
    EXPECT_NO_THROW(DensityMatrix(abc(), m));
    cmatrix nh = m;
    nh(0, 1) = 0.1;
    EXPECT_THROW(DensityMatrix(abc(), nh), structure_error);
    EXPECT_THROW(DensityMatrix(abc(), 2.0 * m), normalization_error);
    cmatrix neg = cmatrix::Zero(3, 3);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    EXPECT_THROW(DensityMatrix(abc(), neg), structure_error);
    const DensityMatrix p = DensityMatrix::pure(PureState::ket(abc(), "b"));
    EXPECT_NEAR(p.purity(), 1.0, 1e-15);
}

TEST(ElementUnitary, RejectsNonUnitaryAndInverts) {
    cmatrix bad = cmatrix::Identity(2, 2);
    bad(0, 1) = 0.1;
    EXPECT_THROW(ElementUnitary("bad", {"a", "b"}, bad), structure_error);
    EXPECT_THROW(ElementUnitary("dup", {"a", "a"}, cmatrix::Identity(2, 2)), mode_error);
    EXPECT_THROW(ElementUnitary("size", {"a"}, cmatrix::Identity(2, 2)), structure_error);

    std::mt19937_64 rng(5);
    const ElementUnitary u("U", {"a", "c"}, oracle::random_unitary(2, rng));
    const PureState s = random_pure(abc(), rng);
    const PureState back = apply_unitary(u.adjoint(), apply_unitary(u, s));
    EXPECT_LT((back.amplitudes() - s.amplitudes()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(ApplyUnitary, MatchesEmbeddedMatrixOracle) {
    std::mt19937_64 rng(7);
    const ModeBasis b({"m0", "m1", "m2", "m3", "m4"});
    for (int trial = 0; trial < 50; ++trial) {
        const cmatrix u2 = oracle::random_unitary(2, rng);
        std::uniform_int_distribution<int> pick(0, 4);
        int i = pick(rng), j = pick(rng);
        while (j == i) j = pick(rng);
        const PureState s = random_pure(b, rng);
        const PureState out = apply_unitary(
            ElementUnitary("U", {b.label(static_cast<std::size_t>(i)), b.label(static_cast<std::size_t>(j))}, u2), s);
        const cvector expected = oracle::embed(u2, i, j, 5) * s.amplitudes();
        EXPECT_LT((out.amplitudes() - expected).cwiseAbs().maxCoeff(), 1e-14);
        EXPECT_NEAR(out.norm(), 1.0, 1e-14);
    }
}

TEST(ApplyUnitary, RelabelingElementRenamesInPlace) {
    const ModeBasis pol({"V", "H"});
    const ElementUnitary map("map", {"V", "H"}, {"1", "2"}, cmatrix::Identity(2, 2));
    const PureState out = apply_unitary(map, PureState::from_terms(pol, {{"V", 0.6}, {"H", 0.8}}));
    EXPECT_EQ(out.basis(), ModeBasis({"1", "2"}));
    EXPECT_DOUBLE_EQ(out["2"].real(), 0.8);
}

TEST(ApplyToFactor, MatchesKroneckerOracle) {
    std::mt19937_64 rng(9);
    const ModeBasis a({"x", "y"}), b({"p", "q", "r"});
    const ModeBasis ab = ModeBasis::product(a, b);
    for (int trial = 0; trial < 20; ++trial) {
        const PureState s = random_pure(ab, rng);
        const cmatrix u = oracle::random_unitary(3, rng);
        const PureState out = apply_to_factor(ElementUnitary("U", b.labels(), u), s, 1);
        const cvector expected = oracle::kron(cmatrix(cmatrix::Identity(2, 2)), u) * s.amplitudes();
        EXPECT_LT((out.amplitudes() - expected).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(ApplyToFactor, AddsVacuumModesToTheFactor) {
    const ModeBasis a({"V", "H"});
    const ModeBasis ab = ModeBasis::product(a, ModeBasis({"V'", "H'"}));
    const PureState s = PureState::ket(ab, "V,V'");
    const ElementUnitary bs("BS", {"V", "e"}, oracle::hadamard());
    const PureState out = apply_to_factor(bs, s, 0);
    EXPECT_EQ(out.basis().factor(0), ModeBasis({"V", "H", "e"}));
    EXPECT_NEAR(std::abs(out["e,V'"]), 1 / std::sqrt(2.0), 1e-15);
}

TEST(Measure, PartitionsAndSums) {
    std::mt19937_64 rng(11);
    const PureState s = random_pure(abc(), rng);
    EXPECT_NEAR(measure_distribution(s).sum(), 1.0, 1e-14);
    const ProbabilityTable g = measure_distribution(s, {{"a", "c"}, {"b"}});
    EXPECT_NEAR(g[0], std::norm(s["a"]) + std::norm(s["c"]), 1e-15);
    EXPECT_THROW(measure_distribution(s, {{"a", "b"}, {"b", "c"}}), structure_error);
    EXPECT_THROW(measure_distribution(s, {{"a"}, {"b"}}), structure_error);
    const DensityMatrix rho = DensityMatrix::pure(s);
    const ProbabilityTable fromRho = measure_distribution(rho);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(fromRho[i], measure_distribution(s)[i], 1e-15);
}

TEST(Mix, ValidatesWeights) {
    const PureState a = PureState::ket(abc(), "a"), b = PureState::ket(abc(), "b");
    EXPECT_NO_THROW(mix({{a, 0.25}, {b, 0.75}}));
    EXPECT_THROW(mix({{a, 0.5}, {b, 0.6}}), normalization_error);
    EXPECT_THROW(mix({{a, -0.5}, {b, 1.5}}), normalization_error);
    EXPECT_THROW(mix({{a, 0.5}, {PureState::ket(ModeBasis({"z"}), "z"), 0.5}}), mode_error);
}

TEST(PartialTrace, ProductStateGivesFactor) {
    std::mt19937_64 rng(13);
    const ModeBasis a({"x", "y"}), b({"p", "q", "r"});
    const PureState x = random_pure(a, rng), y = random_pure(b, rng);
    const DensityMatrix rx = partial_trace(DensityMatrix::pure(tensor(x, y)), 0);
    const cmatrix expected = x.amplitudes() * x.amplitudes().adjoint();
    EXPECT_LT((rx.matrix() - expected).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_EQ(rx.basis(), a);

    const PureState s = random_pure(ModeBasis::product(a, b), rng);
    for (std::size_t k : {0U, 1U}) {
        const cmatrix full = partial_trace(DensityMatrix::pure(s), k).matrix();
        EXPECT_LT((reduced_state(s, k).matrix() - full).cwiseAbs().maxCoeff(), 1e-15);
    }
    EXPECT_THROW(partial_trace(DensityMatrix::pure(x), 0), structure_error);
}

TEST(FactorDistribution, IsTheReducedDiagonal) {
    std::mt19937_64 rng(17);
    const ModeBasis ab = ModeBasis::product(ModeBasis({"x", "y"}), ModeBasis({"p", "q", "r"}));
    const PureState s = random_pure(ab, rng);
    const ProbabilityTable f = factor_distribution(s, 1);
    const cmatrix r = reduced_state(s, 1).matrix();
    for (Eigen::Index i = 0; i < 3; ++i) EXPECT_NEAR(f[static_cast<std::size_t>(i)], r(i, i).real(), 1e-15);
}
