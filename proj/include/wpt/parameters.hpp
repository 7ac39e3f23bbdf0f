#pragma once

#include <cmath>
#include <numbers>

namespace wpt {

inline constexpr double pi = std::numbers::pi;

// Polarization preparation angle: the input photon is cos(alpha)|V> + sin(alpha)|H>.
struct PreparationAngle {
    double alpha = 0.0;  // radians

    // The morphing domain [0, pi/2].
    bool canonical() const { return alpha >= 0.0 && alpha <= pi / 2; }

    // Reduces modulo pi, which only flips the global sign of the input state.
    // The result lies in [0, pi); values in (pi/2, pi) stay non-canonical.
    static PreparationAngle reduced(double radians) {
        double a = std::fmod(radians, pi);
        if (a < 0.0) a += pi;
        return PreparationAngle{a};
    }
};

// Internal phases of one toolbox: phi1 on path 3 (wave MZI), phi2 on path 4.
struct ToolboxPhases {
    double phi1 = 0.0;
    double phi2 = 0.0;
};

// Angle of the final wave plate. beta = 0 removes BS4/BS5, beta = pi/8
// (22.5 deg) inserts them; other values give a partial basis rotation.
struct MeasurementSetting {
    double beta = 0.0;

    static constexpr MeasurementSetting absent() { return MeasurementSetting{0.0}; }
    static constexpr MeasurementSetting present() { return MeasurementSetting{pi / 8}; }

    bool is_absent() const { return beta == 0.0; }
    bool is_present() const { return std::abs(beta - pi / 8) <= 1e-15; }
    // The two settings validated against closed forms.
    bool validated() const { return is_absent() || is_present(); }
};

inline double degrees(double radians) { return radians * 180.0 / pi; }
inline double radians(double degrees) { return degrees * pi / 180.0; }

}  // namespace wpt
