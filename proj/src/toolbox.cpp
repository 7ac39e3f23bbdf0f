#include "wpt/toolbox.hpp"

#include <cmath>
#include <string>

namespace wpt {

namespace {

const amplitude I{0.0, 1.0};

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw range_error(std::string(what) + " must be finite");
}

void require_finite(const PreparationAngle& a, const ToolboxPhases& p) {
    require_finite(a.alpha, "alpha");
    require_finite(p.phi1, "phi1");
    require_finite(p.phi2, "phi2");
}

// Applies the BS4/BS5 recombination for an arbitrary beta to a stage-level
// amplitude vector over paths 1..4.
cvector recombine(const cvector& stage, const MeasurementSetting& setting) {
    if (setting.is_absent()) return stage;
    cmatrix m(2, 2);
    if (setting.is_present()) {
        m = balanced_bs_matrix();
    } else {
        const double c = std::cos(2 * setting.beta), s = std::sin(2 * setting.beta);
        m << c, s, s, -c;
    }
    cvector out(4);
    out.segment(0, 2) = m * stage.segment(0, 2);
    out.segment(2, 2) = m * stage.segment(2, 2);
    return out;
}

cvector stage_wave(double phi1) {
    const amplitude g = std::polar(1.0, phi1 / 2);
    cvector v(4);
    v << g * std::cos(phi1 / 2), 0.0, -I * g * std::sin(phi1 / 2), 0.0;
    return v;
}

cvector stage_particle(double phi2) {
    cvector v(4);
    v << 0.0, 1.0, 0.0, std::polar(1.0, phi2);
    return v / std::sqrt(2.0);
}

}  // namespace

PureState prepare_input(const PreparationAngle& alpha, std::string_view suffix) {
    require_finite(alpha.alpha, "alpha");
    cvector v(2);
    v << std::cos(alpha.alpha), std::sin(alpha.alpha);
    return PureState(polarization_basis(suffix), v);
}

PureState wave_state(double phi1, std::string_view suffix) {
    require_finite(phi1, "phi1");
    const amplitude g = std::polar(1.0, phi1 / 2) / std::sqrt(2.0);
    const double c = std::cos(phi1 / 2), s = std::sin(phi1 / 2);
    cvector v(4);
    v << g * c, g * c, -I * g * s, -I * g * s;
    return PureState(path_basis(suffix), v);
}

PureState particle_state(double phi2, std::string_view suffix) {
    require_finite(phi2, "phi2");
    const amplitude e = std::polar(1.0, phi2);
    cvector v(4);
    v << 1.0, -1.0, e, -e;
    return PureState(path_basis(suffix), v / 2.0);
}

PureState wave_component(const ToolboxPhases& phases, const MeasurementSetting& setting,
                         std::string_view suffix) {
    require_finite(setting.beta, "beta");
    if (setting.is_present()) return wave_state(phases.phi1, suffix);
    require_finite(phases.phi1, "phi1");
    return PureState(path_basis(suffix), recombine(stage_wave(phases.phi1), setting));
}

PureState particle_component(const ToolboxPhases& phases, const MeasurementSetting& setting,
                             std::string_view suffix) {
    require_finite(setting.beta, "beta");
    if (setting.is_present()) return particle_state(phases.phi2, suffix);
    require_finite(phases.phi2, "phi2");
    return PureState(path_basis(suffix), recombine(stage_particle(phases.phi2), setting));
}

PureState output_state(const PreparationAngle& alpha, const ToolboxPhases& phases,
                       const MeasurementSetting& setting, std::string_view suffix) {
    require_finite(alpha, phases);
    return amplitude(std::cos(alpha.alpha)) * wave_component(phases, setting, suffix) +
           amplitude(std::sin(alpha.alpha)) * particle_component(phases, setting, suffix);
}

PureState propagate_toolbox(const PreparationAngle& alpha, const ToolboxPhases& phases,
                            const MeasurementSetting& setting, std::string_view suffix) {
    require_finite(alpha, phases);
    return toolbox_circuit(phases, setting, suffix).propagate(prepare_input(alpha, suffix));
}

InterferenceTerms interference_terms(const PreparationAngle& alpha, const ToolboxPhases& phases) {
    require_finite(alpha, phases);
    const double ca2 = std::pow(std::cos(alpha.alpha), 2);
    const double sa2 = std::pow(std::sin(alpha.alpha), 2);
    const double s2a = std::sin(2 * alpha.alpha);
    const double ch = std::cos(phases.phi1 / 2), sh = std::sin(phases.phi1 / 2);
    const double k = 1.0 / (2.0 * std::sqrt(2.0));
    return InterferenceTerms{
        .pc = 0.5 * ca2 * ch * ch + 0.25 * sa2,
        .ps = 0.5 * ca2 * sh * sh + 0.25 * sa2,
        .ic = k * s2a * ch * ch,
        .is = k * s2a * sh * std::sin(phases.phi1 / 2 - phases.phi2),
    };
}

SingleProbabilities detection_probabilities(const PreparationAngle& alpha, const ToolboxPhases& phases,
                                            const MeasurementSetting& setting) {
    require_finite(alpha, phases);
    require_finite(setting.beta, "beta");
    SingleProbabilities out;
    if (setting.is_present()) {
        const InterferenceTerms t = interference_terms(alpha, phases);
        out.p = {t.pc + t.ic, t.pc - t.ic, t.ps + t.is, t.ps - t.is};
        out.terms = t;
    } else if (setting.is_absent()) {
        const double ca2 = std::pow(std::cos(alpha.alpha), 2);
        const double sa2 = std::pow(std::sin(alpha.alpha), 2);
        const double ch = std::cos(phases.phi1 / 2), sh = std::sin(phases.phi1 / 2);
        out.p = {ca2 * ch * ch, 0.5 * sa2, ca2 * sh * sh, 0.5 * sa2};
    } else {
        out.p = as_array(measure_distribution(output_state(alpha, phases, setting)));
    }
    return out;
}

DensityMatrix mixed_output(const PreparationAngle& alpha, const ToolboxPhases& phases,
                           const MeasurementSetting& setting) {
    require_finite(alpha, phases);
    const double c = std::cos(alpha.alpha), s = std::sin(alpha.alpha);
    return mix({{wave_component(phases, setting), c * c}, {particle_component(phases, setting), s * s}});
}

SingleProbabilities mixed_detection_probabilities(const PreparationAngle& alpha,
                                                  const ToolboxPhases& phases,
                                                  const MeasurementSetting& setting) {
    SingleProbabilities out;
    out.p = as_array(measure_distribution(mixed_output(alpha, phases, setting)));
    if (setting.is_present()) {
        InterferenceTerms t = interference_terms(alpha, phases);
        t.ic = 0.0;
        t.is = 0.0;
        out.terms = t;
    }
    return out;
}

double l1_coherence(const cmatrix& rho) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
        for (Eigen::Index j = 0; j < rho.cols(); ++j) {
            if (i != j) sum += std::abs(rho(i, j));
        }
    }
    return sum;
}

cmatrix wave_particle_matrix(const DensityMatrix& rho, const ToolboxPhases& phases,
                             const MeasurementSetting& setting) {
    const ModeBasis& basis = rho.basis();
    const PureState w = embed(wave_component(phases, setting), basis);
    const PureState p = embed(particle_component(phases, setting), basis);
    cmatrix b(static_cast<Eigen::Index>(basis.dimension()), 2);
    b.col(0) = w.amplitudes();
    b.col(1) = p.amplitudes();
    cmatrix sector = b.adjoint() * rho.matrix() * b;
    if (std::abs(sector.trace().real() - 1.0) > analytic_tol)
        throw structure_error("state has weight outside the {wave, particle} sector");
    return sector;
}

double coherence(const DensityMatrix& rho, const ToolboxPhases& phases, const MeasurementSetting& setting) {
    return l1_coherence(wave_particle_matrix(rho, phases, setting));
}

double coherence(const PreparationAngle& alpha) {
    const ToolboxPhases phases{};
    const MeasurementSetting setting = MeasurementSetting::present();
    return coherence(DensityMatrix::pure(output_state(alpha, phases, setting)), phases, setting);
}

double coherence_witness(const SingleProbabilities& p) { return std::abs(p.p[0] - p.p[1]); }

std::array<double, 4> as_array(const ProbabilityTable& t) {
    if (t.size() != 4) throw structure_error("expected a four-outcome distribution");
    return {t.p[0], t.p[1], t.p[2], t.p[3]};
}

}  // namespace wpt
