#include <gtest/gtest.h>

#include <numeric>

#include "wpt/shots.hpp"

using namespace wpt;

namespace {

TwoPhotonSettings balanced(double f1) {
    return {{pi / 4}, {f1, 0.0}, {0.0, 0.0}, MeasurementSetting::present(), MeasurementSetting::present()};
}

}  // namespace

TEST(Sampling, DeltaDistribution) {
    const std::vector<double> d = {1.0, 0.0, 0.0, 0.0};
    const CountTable c = sample_counts(d, 1234, 5);
    EXPECT_EQ(c.counts, (std::vector<std::uint64_t>{1234, 0, 0, 0}));
    EXPECT_EQ(c.total_shots, 1234U);
}

TEST(Sampling, UniformCountsWithinFiveSigma) {
    const std::vector<double> d(4, 0.25);
    const CountTable c = sample_counts(d, 100000, 77);
    const double sigma = std::sqrt(100000 * 0.25 * 0.75);
    for (auto k : c.counts) EXPECT_LT(std::abs(static_cast<double>(k) - 25000.0), 5 * sigma);
    EXPECT_EQ(std::accumulate(c.counts.begin(), c.counts.end(), std::uint64_t{0}), 100000U);
}

TEST(Sampling, SeedDeterminism) {
    const auto t = coincidence_probabilities(balanced(0.7));
    const CountTable a = sample_counts(t, 5000, 99), b = sample_counts(t, 5000, 99), c = sample_counts(t, 5000, 100);
    EXPECT_EQ(a.counts, b.counts);
    EXPECT_NE(a.counts, c.counts);
    EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
    EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
    EXPECT_EQ(derive_seed(1, 3), derive_seed(1, 3));
}

TEST(Sampling, RejectsInvalidInput) {
    EXPECT_THROW(sample_counts(std::vector<double>{0.5, 0.4}, 10, 1), range_error);
    EXPECT_THROW(sample_counts(std::vector<double>{1.2, -0.2}, 10, 1), range_error);
    EXPECT_THROW(sample_counts(std::vector<double>{1.0}, 0, 1), range_error);
    EXPECT_THROW(sample_counts(std::vector<double>{}, 10, 1), range_error);
}

TEST(Sampling, TotalVariationShrinksWithShots) {
    const auto p = detection_probabilities({0.5}, {1.0, 2.0}, MeasurementSetting::present()).p;
    double small = 0.0, large = 0.0;
    for (std::uint64_t s = 1; s <= 100; ++s) {
        small += total_variation(sample_counts(p, 2500, s), p);
        large += total_variation(sample_counts(p, 10000, s + 1000), p);
    }
    const double ratio = large / small;
    EXPECT_GT(ratio, 0.35);
    EXPECT_LT(ratio, 0.65);
}

TEST(PoissonError, SquareRootWithEmptyOutcomeConvention) {
    CountTable c{{10000, 0, 25, 1}, 10026, 0};
    const auto e = poisson_error(c);
    EXPECT_DOUBLE_EQ(e[0], 100.0);
    EXPECT_DOUBLE_EQ(e[1], 1.0);
    EXPECT_DOUBLE_EQ(e[2], 5.0);
    EXPECT_DOUBLE_EQ(e[3], 1.0);
    const auto est = probability_estimates(c);
    EXPECT_DOUBLE_EQ(est[0].error, 100.0 / 10026);
}

TEST(PoissonError, ThreeSigmaCoverage) {
    const std::vector<double> p = {0.4, 0.3, 0.2, 0.1};
    int covered = 0;
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
        const auto est = probability_estimates(sample_counts(p, 10000, derive_seed(2024, t)));
        bool all = true;
        for (std::size_t k = 0; k < 4; ++k) all = all && std::abs(est[k].value - p[k]) <= 3 * est[k].error;
        covered += all;
    }
    EXPECT_GE(covered, 990);
}

TEST(Noise, IdealModelIsIdentity) {
    const TwoPhotonSettings s = balanced(1.3);
    const auto ideal = coincidence_probabilities(s);
    const auto noisy = noisy_coincidence_probabilities(s, {});
    for (int n = 0; n < 4; ++n)
        for (int m = 0; m < 4; ++m) EXPECT_NEAR(noisy.p[n][m], ideal.p[n][m], 1e-15);
}

TEST(Noise, FullDephasingKillsBothWitnesses) {
    for (int k = 0; k <= 24; ++k) {
        const double f1 = k * 2 * pi / 24;
        const NoiseModel m{1.0, 1.0};
        EXPECT_LT(std::abs(entanglement_witness(noisy_coincidence_probabilities(balanced(f1), m))), 1e-12);
        for (double a : {0.0, pi / 8, pi / 4, 1.2}) {
            EXPECT_LT(coherence_witness(noisy_detection_probabilities({a}, {f1, 0.4}, MeasurementSetting::present(), m)),
                      1e-12);
        }
    }
}

TEST(Noise, VisibilityScalesWitnessesLinearly) {
    EXPECT_NEAR(entanglement_witness(noisy_coincidence_probabilities(balanced(0.0), {0.9, 0.0})), 0.225, 1e-12);
    for (double v : {0.0, 0.3, 0.77, 1.0}) {
        for (double f1 : {0.0, 1.0, 2.5}) {
            const double ideal = entanglement_witness(coincidence_probabilities(balanced(f1)));
            const auto t = noisy_coincidence_probabilities(balanced(f1), {v, 0.0});
            EXPECT_NEAR(entanglement_witness(t), v * ideal, 1e-12);
            EXPECT_NEAR(t.sum(), 1.0, 1e-12);
            const auto p1 = detection_probabilities({0.6}, {f1, 0.2}, MeasurementSetting::present());
            const auto pn = noisy_detection_probabilities({0.6}, {f1, 0.2}, MeasurementSetting::present(), {v, 0.0});
            EXPECT_NEAR(coherence_witness(pn), v * coherence_witness(p1), 1e-12);
            EXPECT_NEAR(pn.terms->ic, v * p1.terms->ic, 1e-15);
        }
    }
}

TEST(Noise, RangesAreEnforced) {
    EXPECT_THROW((NoiseModel{1.1, 0.0}.validate()), range_error);
    EXPECT_THROW((NoiseModel{0.5, -0.1}.validate()), range_error);
    EXPECT_THROW((NoiseModel{std::numeric_limits<double>::quiet_NaN(), 0.0}.validate()), range_error);
}

TEST(WitnessEstimate, ExactProportionsGiveExactValue) {
    const auto t = coincidence_probabilities(balanced(0.0));
    CountTable c;
    c.total_shots = 32000;
    for (double p : t.flattened()) c.counts.push_back(static_cast<std::uint64_t>(std::llround(p * 32000)));
    const Estimate e = estimate_witness(c, Witness::entanglement);
    EXPECT_DOUBLE_EQ(e.value, 0.25);
    EXPECT_DOUBLE_EQ(e.error, std::hypot(std::sqrt(9000.0), std::sqrt(1000.0)) / 32000);
}

TEST(WitnessEstimate, SampledValuesWithinThreeSigma) {
    for (double f1 : {0.0, pi / 2, pi}) {
        const auto t = coincidence_probabilities(balanced(f1));
        const Estimate e = estimate_witness(sample_counts(t, 100000, 11), Witness::entanglement);
        EXPECT_LT(std::abs(e.value - entanglement_witness(t)), 3 * e.error) << f1;
    }
    const auto mixed = noisy_coincidence_probabilities(balanced(0.0), {1.0, 1.0});
    const Estimate e = estimate_witness(sample_counts(mixed, 100000, 12), Witness::entanglement);
    EXPECT_LT(std::abs(e.value), 3 * e.error);

    const auto p = detection_probabilities({pi / 4}, {}, MeasurementSetting::present());
    const Estimate wc = estimate_witness(sample_counts(p, 100000, 13), Witness::coherence);
    EXPECT_LT(std::abs(wc.value - coherence_witness(p)), 3 * wc.error);
}

TEST(WitnessEstimate, RejectsEmptyOrMisshapenTables) {
    EXPECT_THROW(estimate_witness(CountTable{{0, 0, 0, 0}, 0, 0}, Witness::coherence), range_error);
    EXPECT_THROW(estimate_witness(CountTable{{1, 0, 0, 0}, 1, 0}, Witness::entanglement), structure_error);
}

TEST(WitnessEstimate, UnbiasedOverSeeds) {
    for (double f1 : {0.0, pi / 2, pi}) {
        const auto t = coincidence_probabilities(balanced(f1));
        std::vector<double> v;
        for (std::uint64_t s = 1; s <= 200; ++s)
            v.push_back(estimate_witness(sample_counts(t, 10000, derive_seed(s, 0)), Witness::entanglement).value);
        const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
        double var = 0.0;
        for (double x : v) var += (x - mean) * (x - mean);
        const double se = std::sqrt(var / (v.size() - 1) / v.size());
        EXPECT_LT(std::abs(mean - entanglement_witness(t)), 3 * se + 1e-15) << f1;
    }
}
