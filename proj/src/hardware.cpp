#include "wpt/hardware.hpp"

#include <cmath>
#include <iomanip>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "wpt/parallel.hpp"
#include "wpt/toolbox.hpp"

namespace wpt {

namespace {

std::string fmt(double v, int precision = 6) {
    std::ostringstream os;
    os << std::setprecision(precision) << v;
    return os.str();
}

std::string deg(double radians_value) { return fmt(degrees(radians_value)) + " deg"; }

// Generic point where every detector amplitude is nonzero in both pictures.
constexpr GridPoint reference_point{0.7, 0.9, 1.3};

std::array<amplitude, 4> conceptual_amplitudes(const GridPoint& g, const MeasurementSetting& beta) {
    const PureState out = propagate_toolbox({g.alpha}, {g.phi1, g.phi2}, beta);
    std::array<amplitude, 4> a{};
    for (int n = 1; n <= 4; ++n) a[n - 1] = out[path_label(n)];
    return a;
}

}  // namespace

std::string hardware_label(char polarization, int spatial_mode) {
    return std::string(1, polarization) + ":" + std::to_string(spatial_mode);
}

ModeBasis hardware_basis() {
    std::vector<std::string> labels;
    for (int m = 0; m < hardware_spatial_modes; ++m) {
        labels.push_back(hardware_label('V', m));
        labels.push_back(hardware_label('H', m));
    }
    return ModeBasis(std::move(labels));
}

ElementUnitary hwp_jones(double theta, int spatial_mode, std::string name) {
    if (!std::isfinite(theta)) throw range_error(name + ": angle must be finite");
    const double c = std::cos(2 * theta), s = std::sin(2 * theta);
    cmatrix m(2, 2);
    m << c, s, s, -c;
    if (spatial_mode < 0) return ElementUnitary(std::move(name), {"V", "H"}, m);
    return ElementUnitary(std::move(name), {hardware_label('V', spatial_mode), hardware_label('H', spatial_mode)},
                          m);
}

ElementUnitary beam_displacer(const ModeBasis& basis, const std::vector<ModeRoute>& routes, std::string name) {
    const std::size_t d = basis.dimension();
    std::vector<std::optional<std::size_t>> target(d);
    std::set<std::size_t> used;
    for (const auto& [from, to] : routes) {
        const auto i = basis.find(from), j = basis.find(to);
        if (!i || !j) throw structure_error(name + ": route " + from + " -> " + to + " leaves the basis");
        if (target[*i]) throw structure_error(name + ": mode " + from + " is routed twice");
        if (!used.insert(*j).second) throw structure_error(name + ": two modes routed onto " + to);
        target[*i] = *j;
    }
    for (std::size_t i = 0; i < d; ++i) {
        if (!target[i] && !used.count(i)) {
            target[i] = i;
            used.insert(i);
        }
    }
    std::size_t next_free = 0;
    for (std::size_t i = 0; i < d; ++i) {
        if (target[i]) continue;
        while (used.count(next_free)) ++next_free;
        target[i] = next_free;
        used.insert(next_free);
    }

    cmatrix p = cmatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) p(static_cast<Eigen::Index>(*target[i]), static_cast<Eigen::Index>(i)) = 1.0;
    return ElementUnitary(std::move(name), basis.labels(), p);
}

std::vector<ModeRoute> displacement(char polarization, int shift) {
    std::vector<ModeRoute> routes;
    for (int m = 0; m < hardware_spatial_modes; ++m) {
        const int to = m + shift;
        if (to < 0 || to >= hardware_spatial_modes) continue;
        routes.emplace_back(hardware_label(polarization, m), hardware_label(polarization, to));
    }
    return routes;
}

std::array<double, 7> default_hwp_angles() {
    return {pi / 4, pi / 8, pi / 8, pi / 4, 0.0, 0.0, pi / 4};
}

HardwareLayout build_hardware_layout(const ToolboxPhases& phases, const MeasurementSetting& beta, bool strict) {
    if (!std::isfinite(phases.phi1) || !std::isfinite(phases.phi2) || !std::isfinite(beta.beta))
        throw range_error("hardware layout parameters must be finite");
    if (strict && !beta.validated())
        throw range_error("beta = " + deg(beta.beta) + " is not a validated setting (0 or 22.5 deg)");

    HardwareLayout hw;
    const ModeBasis basis = hardware_basis();
    const auto a = default_hwp_angles();
    std::copy(a.begin(), a.end(), hw.hwp_angles.begin());
    hw.hwp_angles[7] = beta.beta;
    hw.lc_phases = phases;
    hw.beta = beta;
    hw.detectors = {hardware_label('V', 3), hardware_label('H', 3), hardware_label('V', 1), hardware_label('H', 1)};

    Circuit& c = hw.circuit;
    const auto add = [&](const ElementUnitary& e, std::string action) {
        c = c.compose(e);
        hw.steps.push_back({e.name(), std::move(action)});
    };
    const auto plate = [&](int k, std::initializer_list<int> modes) {
        for (int m : modes) {
            add(hwp_jones(hw.hwp_angles[k - 1], m, "HWP" + std::to_string(k)),
                "theta = " + deg(hw.hwp_angles[k - 1]) + " on spatial mode " + std::to_string(m));
        }
    };

    add(beam_displacer(basis, displacement('H', 1), "BD1"), "H rails displaced by +1");
    plate(1, {1});
    plate(2, {0, 1});
    add(phase_shifter(hardware_label('V', 0), phases.phi1, "LC1"), "phi1 = " + fmt(phases.phi1, 17) + " rad on V:0");
    add(phase_shifter(hardware_label('H', 1), phases.phi2, "LC2"), "phi2 = " + fmt(phases.phi2, 17) + " rad on H:1");
    plate(3, {0});
    add(beam_displacer(basis, displacement('V', 2), "BD2"), "V rails displaced by +2");
    plate(4, {0});
    plate(5, {1});
    plate(6, {2});
    plate(7, {3});
    add(beam_displacer(basis, displacement('V', 1), "BD3"), "V rails displaced by +1");
    plate(8, {0, 1, 2, 3, 4});
    return hw;
}

PureState HardwareLayout::input(const PreparationAngle& alpha) const {
    if (!std::isfinite(alpha.alpha)) throw range_error("alpha must be finite");
    return PureState::from_terms(circuit.input_basis(), {{"V:0", std::cos(alpha.alpha)}, {"H:0", std::sin(alpha.alpha)}});
}

PureState HardwareLayout::propagate(const PreparationAngle& alpha) const { return circuit.propagate(input(alpha)); }

std::array<amplitude, 4> HardwareLayout::detector_amplitudes(const PreparationAngle& alpha) const {
    const PureState out = propagate(alpha);
    std::array<amplitude, 4> a{};
    for (std::size_t k = 0; k < 4; ++k) a[k] = out[detectors[k]];
    return a;
}

std::array<double, 4> HardwareLayout::distribution(const PreparationAngle& alpha) const {
    // The PBS separation sends every other rail to an unmonitored port; the
    // input never reaches those rails, so the four detector weights sum to 1.
    const auto a = detector_amplitudes(alpha);
    return {std::norm(a[0]), std::norm(a[1]), std::norm(a[2]), std::norm(a[3])};
}

std::string HardwareLayout::describe() const {
    std::ostringstream os;
    os << "hardware layout: " << steps.size() << " elements on " << hardware_spatial_modes
       << " spatial modes x {V, H}\n";
    os << "input: cos(alpha) V:0 + sin(alpha) H:0\n";
    for (std::size_t i = 0; i < steps.size(); ++i) {
        os << std::setw(3) << i + 1 << "  " << std::left << std::setw(5) << steps[i].name << std::right << "  "
           << steps[i].action << '\n';
    }
    os << "PBS separation: D1 = " << detectors[0] << ", D2 = " << detectors[1] << ", D3 = " << detectors[2]
       << ", D4 = " << detectors[3] << '\n';
    os << "wave plates (deg):";
    for (std::size_t k = 0; k < hwp_angles.size(); ++k) os << " HWP" << k + 1 << "=" << fmt(degrees(hwp_angles[k]));
    os << '\n';
    return os.str();
}

std::vector<GridPoint> random_grid(std::size_t points, std::uint64_t seed) {
    std::mt19937_64 engine(seed);
    const auto unit = [&] { return static_cast<double>(engine() >> 11) * 0x1.0p-53; };
    std::vector<GridPoint> grid(points);
    for (auto& g : grid) {
        g.alpha = unit() * pi / 2;
        g.phi1 = unit() * 2 * pi;
        g.phi2 = unit() * 2 * pi;
    }
    return grid;
}

double distribution_deviation(const Circuit& conceptual, const HardwareLayout& hw, const PreparationAngle& alpha) {
    const PureState c = conceptual.propagate(prepare_input(alpha));
    const auto h = hw.distribution(alpha);
    double worst = 0.0;
    for (int n = 1; n <= 4; ++n) worst = std::max(worst, std::abs(std::norm(c[path_label(n)]) - h[n - 1]));
    return worst;
}

EquivalenceReport equivalence_check(const std::vector<GridPoint>& grid, const MeasurementSetting& beta,
                                    const EquivalenceOptions& options) {
    if (options.strict && !beta.validated())
        throw range_error("beta = " + deg(beta.beta) + " is not a validated setting (0 or 22.5 deg)");

    std::array<amplitude, 4> calibration{1.0, 1.0, 1.0, 1.0};
    if (options.amplitudes) {
        const HardwareLayout ref = build_hardware_layout({reference_point.phi1, reference_point.phi2}, beta);
        const auto h = ref.detector_amplitudes({reference_point.alpha});
        const auto c = conceptual_amplitudes(reference_point, beta);
        for (std::size_t k = 0; k < 4; ++k) {
            const amplitude r = h[k] / c[k];
            calibration[k] = r / std::abs(r);
        }
    }

    std::vector<EquivalenceReport> per_point(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        const GridPoint& g = grid[i];
        const ToolboxPhases phases{g.phi1, g.phi2};
        const HardwareLayout hw = build_hardware_layout(phases, beta);
        EquivalenceReport& r = per_point[i];
        r.max_distribution_deviation = distribution_deviation(toolbox_circuit(phases, beta), hw, {g.alpha});
        r.max_unitarity_defect = unitarity_defect(hw.circuit.transfer().matrix());
        if (options.amplitudes) {
            const auto h = hw.detector_amplitudes({g.alpha});
            const auto c = conceptual_amplitudes(g, beta);
            amplitude overlap = 0.0;
            for (std::size_t k = 0; k < 4; ++k) overlap += std::conj(calibration[k] * c[k]) * h[k];
            const amplitude global = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : amplitude(1.0);
            for (std::size_t k = 0; k < 4; ++k)
                r.max_amplitude_deviation =
                    std::max(r.max_amplitude_deviation, std::abs(h[k] - global * calibration[k] * c[k]));
        }
    });

    EquivalenceReport total;
    total.points = grid.size();
    for (const auto& r : per_point) {
        total.max_distribution_deviation = std::max(total.max_distribution_deviation, r.max_distribution_deviation);
        total.max_amplitude_deviation = std::max(total.max_amplitude_deviation, r.max_amplitude_deviation);
        total.max_unitarity_defect = std::max(total.max_unitarity_defect, r.max_unitarity_defect);
    }
    return total;
}

}  // namespace wpt
