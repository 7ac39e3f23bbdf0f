// cli.hpp
// Table builders behind the wptoolbox subcommands. Angles are radians here;
// the command-line front end converts from degrees.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wpt/parameters.hpp"

namespace wpt {

enum class OutputFormat { csv, json };

enum exit_code : int { exit_ok = 0, exit_spec_error = 2, exit_verify_failed = 3, exit_io_error = 4 };

using Cell = std::variant<double, std::uint64_t, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

// Values of every sweepable parameter. Angles in radians.
struct ParameterValues {
    double alpha = pi / 4;
    double phi1 = 0.0;
    double phi1_prime = 0.0;
    double phi2 = 0.0;
    double phi2_prime = 0.0;
    double beta = pi / 8;
    double beta_prime = pi / 8;
    double visibility = 1.0;
    double dephase = 0.0;
};

struct Sweep {
    std::string parameter;  // alpha | phi1 | phi1_prime | phi2 | phi2_prime | beta | visibility | dephase
    double from = 0.0;
    double to = 0.0;
    std::size_t steps = 0;
};

struct SweepSpec {
    std::optional<Sweep> sweep;  // unset: a single row, or the command's default grid
    ParameterValues fixed;
    std::uint64_t shots = 0;     // 0 = analytic
    std::uint64_t seed = 1;
    bool mixed = false;          // incoherent mixture instead of the pure state
    std::size_t photons = 3;     // ghz only
};

bool is_angle_parameter(const std::string& name);

// Throws range_error for an unknown parameter, steps < 2, non-finite values,
// or visibility / dephase outside [0, 1].
void validate(const SweepSpec& spec);

// Parameter rows in sweep order.
std::vector<ParameterValues> expand(const SweepSpec& spec);

Sweep default_phase_sweep();  // phi1 over [0, 2pi], 25 points
Sweep default_alpha_sweep();  // alpha over [0, pi/2], 13 points

Table single_sweep_table(const SweepSpec& spec);
Table witness_coherence_table(const SweepSpec& spec);
// Without a sweep and with default_grid set, emits the four (phi1, phi1')
// corners {0, pi}^2 for beta = beta' = 0 and beta = beta' = 22.5 deg.
Table two_photon_table(const SweepSpec& spec, bool default_grid = false);
Table witness_entanglement_table(const SweepSpec& spec);
Table ghz_table(const SweepSpec& spec);

// 17 significant digits; CSV has a header line, JSON is an array of row objects.
std::string format_number(double v);
void write_table(const Table& t, OutputFormat format, std::ostream& os);

}  // namespace wpt
