// shots.hpp
// Finite-shot detector counts, Poissonian error bars and a visibility /
// dephasing noise model.
//
// Sampling uses std::mt19937_64 seeded with the 64-bit seed. Each shot draws
// u = (engine() >> 11) * 2^-53 in [0, 1) and picks the first outcome whose
// cumulative probability exceeds u. Independent tasks derive their seeds with
// derive_seed(seed, stream), a splitmix64 step, so no generator is shared.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wpt/entangle.hpp"
#include "wpt/toolbox.hpp"

namespace wpt {

struct CountTable {
    std::vector<std::uint64_t> counts;
    std::uint64_t total_shots = 0;
    std::uint64_t seed = 0;

    std::size_t size() const { return counts.size(); }
    double frequency(std::size_t i) const;
};

struct Estimate {
    double value = 0.0;
    double error = 0.0;
};

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// Throws range_error for n_shots == 0, negative entries or a sum off 1 by
// more than 1e-9.
CountTable sample_counts(std::span<const double> dist, std::uint64_t n_shots, std::uint64_t seed);
CountTable sample_counts(const SingleProbabilities& dist, std::uint64_t n_shots, std::uint64_t seed);
CountTable sample_counts(const CoincidenceTable& dist, std::uint64_t n_shots, std::uint64_t seed);

// sqrt(count) per outcome, 1 for an empty outcome.
std::vector<double> poisson_error(const CountTable& c);
// count / total with error poisson_error / total.
std::vector<Estimate> probability_estimates(const CountTable& c);

double total_variation(const CountTable& c, std::span<const double> dist);

// visibility scales interference terms; dephase interpolates from the pure
// state statistics (0) to the incoherent mixture (1).
struct NoiseModel {
    double visibility = 1.0;
    double dephase = 0.0;

    // Throws range_error outside [0, 1].
    void validate() const;
};

// baseline + visibility * (1 - dephase) * (pure - baseline), where baseline is
// the incoherent-mixture distribution.
std::vector<double> apply_noise(std::span<const double> pure, std::span<const double> mixture, const NoiseModel& m);

SingleProbabilities noisy_detection_probabilities(const PreparationAngle& alpha, const ToolboxPhases& phases,
                                                  const MeasurementSetting& setting, const NoiseModel& m);
CoincidenceTable noisy_coincidence_probabilities(const TwoPhotonSettings& s, const NoiseModel& m);

enum class Witness { coherence, entanglement };

// Plug-in witness from counts with quadrature-propagated Poisson errors.
// Coherence reads outcomes 1, 2 of a 4-outcome table; entanglement reads
// (2, 2') and (2, 1') of a 16-outcome table. Throws range_error on an empty
// table and structure_error on the wrong outcome count.
Estimate estimate_witness(const CountTable& c, Witness w);

}  // namespace wpt
