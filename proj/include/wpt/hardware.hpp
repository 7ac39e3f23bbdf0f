// hardware.hpp
// The bulk-optics implementation of the toolbox: beam displacers, half-wave
// plates and liquid-crystal phases acting on a polarization x spatial-mode
// basis, and an equivalence check against the conceptual network.
//
// Modes are labeled "V:m" / "H:m" for spatial positions m = 0..4. Jones
// matrices are written in the (V, H) order:
//
//     HWP(theta) = [[cos 2theta, sin 2theta], [sin 2theta, -cos 2theta]]
//
// Conventions fixed by the equivalence test:
//   BD1 displaces H by one position, BD2 displaces V by two, BD3 displaces V
//   by one. LC1 adds phi1 to V:0 and LC2 adds phi2 to H:1, both as e^{+i phi}.
//   Detectors: D1 = V:3, D2 = H:3, D3 = V:1, D4 = H:1.
// With these choices the detector amplitudes equal the conceptual ones up to
// one fixed sign per detector, so the distributions agree exactly.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wpt/optics.hpp"
#include "wpt/parameters.hpp"
#include "wpt/qcore.hpp"

namespace wpt {

inline constexpr int hardware_spatial_modes = 5;

std::string hardware_label(char polarization, int spatial_mode);
ModeBasis hardware_basis();

// Acts on the polarization rails of one spatial mode, or on the bare
// polarization basis {V, H} when spatial_mode < 0.
ElementUnitary hwp_jones(double theta, int spatial_mode = -1, std::string name = "HWP");

using ModeRoute = std::pair<std::string, std::string>;

// Permutation over `basis` that moves each routed label to its target. Labels
// without a route keep their position when it is free; the rest are paired
// with the unused targets in basis order, which only ever moves empty modes.
// Throws structure_error for non-injective or unknown routes.
ElementUnitary beam_displacer(const ModeBasis& basis, const std::vector<ModeRoute>& routes,
                              std::string name = "BD");

// Routes every `polarization` rail from m to m + shift (when m + shift exists).
std::vector<ModeRoute> displacement(char polarization, int shift);

struct HardwareStep {
    std::string name;
    std::string action;  // human-readable, angles in degrees, phases in radians
};

struct HardwareLayout {
    Circuit circuit{hardware_basis()};
    std::vector<HardwareStep> steps;
    // HWP1..HWP7, then HWP8 = beta; radians.
    std::array<double, 8> hwp_angles{};
    ToolboxPhases lc_phases{};
    MeasurementSetting beta{};
    std::array<std::string, 4> detectors{};

    // cos(alpha)|V:0> + sin(alpha)|H:0>
    PureState input(const PreparationAngle& alpha) const;
    PureState propagate(const PreparationAngle& alpha) const;
    std::array<amplitude, 4> detector_amplitudes(const PreparationAngle& alpha) const;
    std::array<double, 4> distribution(const PreparationAngle& alpha) const;

    std::string describe() const;
};

std::array<double, 7> default_hwp_angles();

// Throws range_error for a beta other than 0 or pi/8 when strict is set.
HardwareLayout build_hardware_layout(const ToolboxPhases& phases, const MeasurementSetting& beta,
                                     bool strict = false);

struct GridPoint {
    double alpha = 0.0;
    double phi1 = 0.0;
    double phi2 = 0.0;
};

// alpha uniform in [0, pi/2], phases uniform in [0, 2pi).
std::vector<GridPoint> random_grid(std::size_t points, std::uint64_t seed);

struct EquivalenceOptions {
    bool strict = true;
    // Also compare detector amplitudes after calibrating one phase per
    // detector at a generic reference point, up to a global phase per point.
    bool amplitudes = false;
};

struct EquivalenceReport {
    std::size_t points = 0;
    double max_distribution_deviation = 0.0;
    double max_amplitude_deviation = 0.0;  // 0 unless requested
    double max_unitarity_defect = 0.0;     // composed hardware matrix
};

// Distribution distance for one circuit pair at one alpha.
double distribution_deviation(const Circuit& conceptual, const HardwareLayout& hw,
                              const PreparationAngle& alpha);

EquivalenceReport equivalence_check(const std::vector<GridPoint>& grid, const MeasurementSetting& beta,
                                    const EquivalenceOptions& options = {});

}  // namespace wpt
