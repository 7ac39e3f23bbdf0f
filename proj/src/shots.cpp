#include "wpt/shots.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace wpt {

namespace {

constexpr double normalization_tol = 1e-9;

std::vector<double> as_vector(const CoincidenceTable& t) {
    const auto f = t.flattened();
    return {f.begin(), f.end()};
}

}  // namespace

double CountTable::frequency(std::size_t i) const {
    if (total_shots == 0) throw range_error("empty count table");
    return static_cast<double>(counts.at(i)) / static_cast<double>(total_shots);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

CountTable sample_counts(std::span<const double> dist, std::uint64_t n_shots, std::uint64_t seed) {
    if (n_shots == 0) throw range_error("n_shots must be at least 1");
    if (dist.empty()) throw range_error("empty distribution");
    double total = 0.0;
    for (double p : dist) {
        if (!std::isfinite(p) || p < -normalization_tol) throw range_error("distribution has a negative entry");
        total += p;
    }
    if (std::abs(total - 1.0) > normalization_tol)
        throw range_error("distribution is not normalized (sum = " + std::to_string(total) + ")");

    std::vector<double> cdf(dist.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        acc += std::max(0.0, dist[i]);
        cdf[i] = acc;
    }

    CountTable c;
    c.counts.assign(dist.size(), 0);
    c.total_shots = n_shots;
    c.seed = seed;
    std::mt19937_64 engine(seed);
    for (std::uint64_t s = 0; s < n_shots; ++s) {
        const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53 * acc;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const auto k = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), dist.size() - 1);
        ++c.counts[k];
    }
    return c;
}

CountTable sample_counts(const SingleProbabilities& dist, std::uint64_t n_shots, std::uint64_t seed) {
    return sample_counts(std::span<const double>(dist.p), n_shots, seed);
}

CountTable sample_counts(const CoincidenceTable& dist, std::uint64_t n_shots, std::uint64_t seed) {
    const auto v = as_vector(dist);
    return sample_counts(std::span<const double>(v), n_shots, seed);
}

std::vector<double> poisson_error(const CountTable& c) {
    std::vector<double> e(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        e[i] = c.counts[i] == 0 ? 1.0 : std::sqrt(static_cast<double>(c.counts[i]));
    return e;
}

std::vector<Estimate> probability_estimates(const CountTable& c) {
    if (c.total_shots == 0) throw range_error("empty count table");
    const auto e = poisson_error(c);
    const double n = static_cast<double>(c.total_shots);
    std::vector<Estimate> out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = {static_cast<double>(c.counts[i]) / n, e[i] / n};
    return out;
}

double total_variation(const CountTable& c, std::span<const double> dist) {
    if (dist.size() != c.size()) throw structure_error("count table and distribution differ in size");
    double tv = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) tv += std::abs(c.frequency(i) - dist[i]);
    return 0.5 * tv;
}

void NoiseModel::validate() const {
    if (!(visibility >= 0.0 && visibility <= 1.0)) throw range_error("visibility must lie in [0, 1]");
    if (!(dephase >= 0.0 && dephase <= 1.0)) throw range_error("dephase must lie in [0, 1]");
}

std::vector<double> apply_noise(std::span<const double> pure, std::span<const double> mixture, const NoiseModel& m) {
    m.validate();
    if (pure.size() != mixture.size()) throw structure_error("pure and mixture distributions differ in size");
    const double k = m.visibility * (1.0 - m.dephase);
    std::vector<double> out(pure.size());
    for (std::size_t i = 0; i < pure.size(); ++i) out[i] = mixture[i] + k * (pure[i] - mixture[i]);
    return out;
}

SingleProbabilities noisy_detection_probabilities(const PreparationAngle& alpha, const ToolboxPhases& phases,
                                                  const MeasurementSetting& setting, const NoiseModel& m) {
    const SingleProbabilities pure = detection_probabilities(alpha, phases, setting);
    const SingleProbabilities mixed = mixed_detection_probabilities(alpha, phases, setting);
    const auto v = apply_noise(pure.p, mixed.p, m);
    SingleProbabilities out;
    std::copy(v.begin(), v.end(), out.p.begin());
    if (pure.terms) {
        InterferenceTerms t = *pure.terms;
        const double k = m.visibility * (1.0 - m.dephase);
        t.ic *= k;
        t.is *= k;
        out.terms = t;
    }
    return out;
}

CoincidenceTable noisy_coincidence_probabilities(const TwoPhotonSettings& s, const NoiseModel& m) {
    const auto pure = as_vector(coincidence_probabilities(s));
    const auto mixed = as_vector(coincidence_table(two_photon_mixture(s)));
    const auto v = apply_noise(pure, mixed, m);
    CoincidenceTable out;
    for (std::size_t i = 0; i < 16; ++i) out.p[i / 4][i % 4] = v[i];
    return out;
}

Estimate estimate_witness(const CountTable& c, Witness w) {
    if (c.total_shots == 0) throw range_error("witness estimate needs at least one shot");
    const auto e = poisson_error(c);
    const double n = static_cast<double>(c.total_shots);
    std::size_t plus = 0, minus = 0;
    if (w == Witness::coherence) {
        if (c.size() != 4) throw structure_error("coherence witness needs a 4-outcome table");
        plus = 0;
        minus = 1;
    } else {
        if (c.size() != 16) throw structure_error("entanglement witness needs a 16-outcome table");
        plus = 4 * 1 + 1;   // (2, 2')
        minus = 4 * 1 + 0;  // (2, 1')
    }
    double value = (static_cast<double>(c.counts[plus]) - static_cast<double>(c.counts[minus])) / n;
    if (w == Witness::coherence) value = std::abs(value);
    return {value, std::hypot(e[plus], e[minus]) / n};
}

}  // namespace wpt
