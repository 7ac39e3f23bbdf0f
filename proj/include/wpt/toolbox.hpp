// toolbox.hpp
// Single-photon wave-particle toolbox: closed-form output states, detection
// probabilities and their decomposition, coherence and the coherence witness.
//
// Detector layout. With BS4/BS5 removed (beta = 0) outputs 1 and 3 close the
// wave-like MZI and outputs 2 and 4 are the particle-like arms. With BS4/BS5
// inserted (beta = pi/8) every output mixes both behaviours.

#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "wpt/optics.hpp"
#include "wpt/parameters.hpp"
#include "wpt/qcore.hpp"

namespace wpt {

struct InterferenceTerms {
    double pc = 0.0;   // wave/particle populations in outputs 1, 2
    double ps = 0.0;   // ... in outputs 3, 4
    double ic = 0.0;   // interference term in outputs 1, 2
    double is = 0.0;   // interference term in outputs 3, 4
};

struct SingleProbabilities {
    std::array<double, 4> p{};
    // Present only for beta = pi/8, where p = (pc+ic, pc-ic, ps+is, ps-is).
    std::optional<InterferenceTerms> terms;

    double sum() const { return p[0] + p[1] + p[2] + p[3]; }
};

PureState prepare_input(const PreparationAngle& alpha, std::string_view suffix = "");

// |wave> = e^{i phi1/2}/sqrt2 [cos(phi1/2)(|1>+|2>) - i sin(phi1/2)(|3>+|4>)]
PureState wave_state(double phi1, std::string_view suffix = "");
// |particle> = (|1> - |2> + e^{i phi2}|3> - e^{i phi2}|4>)/2
PureState particle_state(double phi2, std::string_view suffix = "");

// Wave and particle components at the detectors for a given setting. At
// beta = pi/8 these are wave_state/particle_state; at beta = 0 they are the
// stage components e^{i phi1/2}(cos(phi1/2)|1> - i sin(phi1/2)|3>) and
// (|2> + e^{i phi2}|4>)/sqrt2. Both pairs are orthonormal for every beta.
PureState wave_component(const ToolboxPhases& phases, const MeasurementSetting& setting,
                         std::string_view suffix = "");
PureState particle_component(const ToolboxPhases& phases, const MeasurementSetting& setting,
                             std::string_view suffix = "");

// cos(alpha) wave_component + sin(alpha) particle_component, in closed form.
PureState output_state(const PreparationAngle& alpha, const ToolboxPhases& phases,
                       const MeasurementSetting& setting, std::string_view suffix = "");

// The same state obtained by propagating prepare_input through toolbox_circuit.
PureState propagate_toolbox(const PreparationAngle& alpha, const ToolboxPhases& phases,
                            const MeasurementSetting& setting, std::string_view suffix = "");

InterferenceTerms interference_terms(const PreparationAngle& alpha, const ToolboxPhases& phases);

SingleProbabilities detection_probabilities(const PreparationAngle& alpha, const ToolboxPhases& phases,
                                            const MeasurementSetting& setting);

// cos^2(alpha)|wave><wave| + sin^2(alpha)|particle><particle| over the paths.
DensityMatrix mixed_output(const PreparationAngle& alpha, const ToolboxPhases& phases,
                           const MeasurementSetting& setting = MeasurementSetting::present());

SingleProbabilities mixed_detection_probabilities(const PreparationAngle& alpha,
                                                  const ToolboxPhases& phases,
                                                  const MeasurementSetting& setting);

// Sum of |rho_ij| over i != j.
double l1_coherence(const cmatrix& rho);

// A path-space density matrix expressed in the {wave, particle} basis (2x2).
// Throws structure_error if rho has weight outside that two-dimensional sector.
cmatrix wave_particle_matrix(const DensityMatrix& rho, const ToolboxPhases& phases,
                             const MeasurementSetting& setting);

// Coherence of a path-space state in the {wave, particle} basis.
double coherence(const DensityMatrix& rho, const ToolboxPhases& phases, const MeasurementSetting& setting);
// Coherence of the pure toolbox output; equals sin(2 alpha).
double coherence(const PreparationAngle& alpha);

// W_C = |P1 - P2|.
double coherence_witness(const SingleProbabilities& p);

std::array<double, 4> as_array(const ProbabilityTable& t);

}  // namespace wpt
