// verify.hpp
// Grid checks of closed forms against circuit propagation, and of the
// hardware layout against the conceptual network.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace wpt {

struct VerifyOptions {
    std::size_t single_grid = 21;        // points per axis of (alpha, phi1, phi2)
    std::size_t phase_grid = 9;          // phi1, phi1' points of the two-photon grid
    std::size_t inner_phase_grid = 5;    // phi2, phi2' points
    std::size_t two_photon_alphas = 5;   // extra alpha values on [0, pi/2]
    std::size_t hardware_points = 100;
    std::size_t ghz_max_photons = 4;
    std::uint64_t seed = 2024;
};

struct VerifyCheck {
    std::string name;
    std::size_t points = 0;
    double max_deviation = 0.0;
    double tolerance = 0.0;

    bool passed() const { return max_deviation < tolerance; }
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    double seconds = 0.0;

    bool passed() const;
    void print(std::ostream& os) const;
};

// Evenly spaced points on [from, to], both ends included.
std::vector<double> linspace(double from, double to, std::size_t steps);

VerifyReport run_verification(const VerifyOptions& options = {});

}  // namespace wpt
