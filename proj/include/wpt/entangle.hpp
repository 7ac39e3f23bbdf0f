// entangle.hpp
// Several toolboxes in parallel, fed by polarization-entangled photons.
//
// Photon k uses the mode suffix of k primes: photon A paths are "1".."4",
// photon B paths "1'".."4'", a third photon "1''".."4''". Coincidence tables
// are indexed [n-1][n'-1] with photon A as rows.

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "wpt/parameters.hpp"
#include "wpt/qcore.hpp"
#include "wpt/toolbox.hpp"

namespace wpt {

struct TwoPhotonSettings {
    PreparationAngle alpha{pi / 4};
    ToolboxPhases phases_a{};
    ToolboxPhases phases_b{};
    MeasurementSetting beta_a = MeasurementSetting::present();
    MeasurementSetting beta_b = MeasurementSetting::present();
};

struct CoincidenceTable {
    std::array<std::array<double, 4>, 4> p{};

    // 1-based detector indices, as in P_nn'.
    double at(int n, int n_prime) const { return p.at(n - 1).at(n_prime - 1); }
    double sum() const;
    std::array<double, 4> row_marginal() const;     // photon A
    std::array<double, 4> column_marginal() const;  // photon B
    std::array<double, 16> flattened() const;       // row-major
};

std::string photon_suffix(std::size_t photon);

// cos(alpha)|VV'> + sin(alpha)|HH'>
PureState prepare_entangled_input(const PreparationAngle& alpha);
// (|VH'> + |HV'>)/sqrt2
PureState prepare_vh_input();

// cos(alpha) |wave>|wave'> + sin(alpha) |particle>|particle'>, with the
// components of each photon taken at its own measurement setting.
PureState two_photon_output(const TwoPhotonSettings& s);

// Propagates a two-photon polarization state through one toolbox circuit per
// photon. Defaults to prepare_entangled_input(s.alpha).
PureState propagate_two_photon(const TwoPhotonSettings& s, const PureState& input);
PureState propagate_two_photon(const TwoPhotonSettings& s);

// Closed forms: the sixteen-probability expressions when both settings insert
// BS4/BS5, the wave/particle/crossed products when both remove them, and the
// Born rule on two_photon_output otherwise.
CoincidenceTable coincidence_probabilities(const TwoPhotonSettings& s);

// Born rule on a state or mixture over the 16 path pairs.
CoincidenceTable coincidence_table(const PureState& two_photon);
CoincidenceTable coincidence_table(const DensityMatrix& two_photon);

// cos^2(alpha)|ww'><ww'| + sin^2(alpha)|pp'><pp'|
DensityMatrix two_photon_mixture(const TwoPhotonSettings& s);

// W_E = P_22' - P_21'
double entanglement_witness(const CoincidenceTable& t);

// Coefficients c_ij of a two-photon path state on {wave, particle}^2, rows
// for photon A. Throws structure_error for weight outside that sector.
cmatrix sector_coefficients(const PureState& two_photon, const TwoPhotonSettings& s);
// 4x4 sector density matrix in the order ww', wp', pw', pp'.
cmatrix sector_density_matrix(const DensityMatrix& two_photon, const TwoPhotonSettings& s);

// 2|c00 c11 - c01 c10| for a normalized 2x2 coefficient matrix.
double concurrence_pure(const cmatrix& coefficients);
// Spin-flip concurrence of a two-qubit density matrix.
double concurrence_mixed(const cmatrix& rho);

// Concurrence of two_photon_output(s) in the wave/particle basis.
double concurrence(const TwoPhotonSettings& s);

// (|wave>|particle'> + |particle>|wave'>)/sqrt2; s.alpha is ignored.
PureState vh_variant_output(const TwoPhotonSettings& s);

inline constexpr std::size_t max_ghz_photons = 8;

// Polarization GHZ input cos(alpha)|V...V> + sin(alpha)|H...H>.
PureState ghz_input(std::size_t photons, const PreparationAngle& alpha);
// cos(alpha)|wave>^n + sin(alpha)|particle>^n, all toolboxes sharing phases
// and setting. Throws range_error unless 1 <= photons <= max_ghz_photons.
PureState ghz_output(std::size_t photons, const PreparationAngle& alpha,
                     const ToolboxPhases& phases = {},
                     const MeasurementSetting& setting = MeasurementSetting::present());
PureState propagate_ghz(std::size_t photons, const PreparationAngle& alpha,
                        const ToolboxPhases& phases = {},
                        const MeasurementSetting& setting = MeasurementSetting::present());

// Probability of each wave/particle detector pattern. Detectors 1, 3 are the
// wave sector and 2, 4 the particle sector of each photon; bit k of the
// pattern index is set when photon k lands in its particle sector.
struct GhzSectorTable {
    std::size_t photons = 0;
    std::vector<double> by_pattern;

    double all_wave() const { return by_pattern.front(); }
    double all_particle() const { return by_pattern.back(); }
    double crossed() const;
    // "wpw" style name, photon 0 first.
    std::string pattern_name(std::size_t pattern) const;
};

GhzSectorTable sector_probabilities(const PureState& n_photon_paths, std::size_t photons);
GhzSectorTable ghz_sector_probabilities(std::size_t photons, const PreparationAngle& alpha = {pi / 4},
                                        const ToolboxPhases& phases = {},
                                        const MeasurementSetting& setting = MeasurementSetting::absent());

}  // namespace wpt
