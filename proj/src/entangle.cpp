#include "wpt/entangle.hpp"

#include <algorithm>
#include <cmath>

#include "wpt/optics.hpp"

namespace wpt {

namespace {

const std::string b_suffix = "'";

CoincidenceTable table_from_weights(const Eigen::VectorXd& w) {
    if (w.size() != 16) throw structure_error("expected a 16-outcome two-photon distribution");
    CoincidenceTable t;
    for (int n = 0; n < 4; ++n) {
        for (int m = 0; m < 4; ++m) t.p[n][m] = w[4 * n + m];
    }
    return t;
}

void require_ghz_range(std::size_t photons) {
    if (photons < 1 || photons > max_ghz_photons)
        throw range_error("photon count must lie in [1, " + std::to_string(max_ghz_photons) +
                          "]; the dense state is capped at 4^" + std::to_string(max_ghz_photons) +
                          " amplitudes");
}

cmatrix sector_basis(const TwoPhotonSettings& s) {
    const PureState wa = wave_component(s.phases_a, s.beta_a);
    const PureState pa = particle_component(s.phases_a, s.beta_a);
    const PureState wb = wave_component(s.phases_b, s.beta_b, b_suffix);
    const PureState pb = particle_component(s.phases_b, s.beta_b, b_suffix);
    cmatrix b(16, 4);
    b.col(0) = tensor(wa, wb).amplitudes();
    b.col(1) = tensor(wa, pb).amplitudes();
    b.col(2) = tensor(pa, wb).amplitudes();
    b.col(3) = tensor(pa, pb).amplitudes();
    return b;
}

CoincidenceTable sixteen_probabilities(const TwoPhotonSettings& s) {
    const double a = s.alpha.alpha;
    const double f1 = s.phases_a.phi1, f1p = s.phases_b.phi1;
    const double f2 = s.phases_a.phi2, f2p = s.phases_b.phi2;

    const double A = 0.25 * std::pow(std::cos(a), 2);
    const double B = std::pow(std::sin(a), 2) / 16.0;
    const double C = std::sin(2 * a) / 8.0;
    const double S = (f1 + f1p) / 2;
    const double ch = std::cos(f1 / 2), sh = std::sin(f1 / 2);
    const double chp = std::cos(f1p / 2), shp = std::sin(f1p / 2);

    const double cc = A * ch * ch * chp * chp + B, cs = A * ch * ch * shp * shp + B;
    const double sc = A * sh * sh * chp * chp + B, ss = A * sh * sh * shp * shp + B;
    const double t11 = C * ch * chp * std::cos(S);
    const double t13 = C * ch * shp * std::sin(f2p - S);
    const double t31 = C * sh * chp * std::sin(f2 - S);
    const double t33 = C * sh * shp * std::cos(f2 + f2p - S);

    CoincidenceTable t;
    t.p[0][0] = t.p[1][1] = cc + t11;
    t.p[0][1] = t.p[1][0] = cc - t11;
    t.p[0][2] = t.p[1][3] = cs - t13;
    t.p[0][3] = t.p[1][2] = cs + t13;
    t.p[2][0] = t.p[3][1] = sc - t31;
    t.p[2][1] = t.p[3][0] = sc + t31;
    t.p[2][2] = t.p[3][3] = ss - t33;
    t.p[2][3] = t.p[3][2] = ss + t33;
    return t;
}

CoincidenceTable stage_probabilities(const TwoPhotonSettings& s) {
    const double ca2 = std::pow(std::cos(s.alpha.alpha), 2);
    const double sa2 = std::pow(std::sin(s.alpha.alpha), 2);
    const double wa[2] = {std::pow(std::cos(s.phases_a.phi1 / 2), 2), std::pow(std::sin(s.phases_a.phi1 / 2), 2)};
    const double wb[2] = {std::pow(std::cos(s.phases_b.phi1 / 2), 2), std::pow(std::sin(s.phases_b.phi1 / 2), 2)};

    CoincidenceTable t;  // crossed entries stay zero
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            t.p[2 * i][2 * j] = ca2 * wa[i] * wb[j];
            t.p[2 * i + 1][2 * j + 1] = sa2 / 4.0;
        }
    }
    return t;
}

}  // namespace

double CoincidenceTable::sum() const {
    double total = 0.0;
    for (const auto& row : p) {
        for (double v : row) total += v;
    }
    return total;
}

std::array<double, 4> CoincidenceTable::row_marginal() const {
    std::array<double, 4> m{};
    for (int n = 0; n < 4; ++n) {
        for (int k = 0; k < 4; ++k) m[n] += p[n][k];
    }
    return m;
}

std::array<double, 4> CoincidenceTable::column_marginal() const {
    std::array<double, 4> m{};
    for (int n = 0; n < 4; ++n) {
        for (int k = 0; k < 4; ++k) m[k] += p[n][k];
    }
    return m;
}

std::array<double, 16> CoincidenceTable::flattened() const {
    std::array<double, 16> f{};
    for (int n = 0; n < 4; ++n) {
        for (int k = 0; k < 4; ++k) f[4 * n + k] = p[n][k];
    }
    return f;
}

std::string photon_suffix(std::size_t photon) { return std::string(photon, '\''); }

PureState prepare_entangled_input(const PreparationAngle& alpha) {
    if (!std::isfinite(alpha.alpha)) throw range_error("alpha must be finite");
    const ModeBasis basis = ModeBasis::product(polarization_basis(), polarization_basis(b_suffix));
    return PureState::from_terms(basis, {{"V,V'", std::cos(alpha.alpha)}, {"H,H'", std::sin(alpha.alpha)}});
}

PureState prepare_vh_input() {
    const ModeBasis basis = ModeBasis::product(polarization_basis(), polarization_basis(b_suffix));
    const double r = 1.0 / std::sqrt(2.0);
    return PureState::from_terms(basis, {{"V,H'", r}, {"H,V'", r}});
}

PureState two_photon_output(const TwoPhotonSettings& s) {
    const PureState ww = tensor(wave_component(s.phases_a, s.beta_a),
                                wave_component(s.phases_b, s.beta_b, b_suffix));
    const PureState pp = tensor(particle_component(s.phases_a, s.beta_a),
                                particle_component(s.phases_b, s.beta_b, b_suffix));
    return amplitude(std::cos(s.alpha.alpha)) * ww + amplitude(std::sin(s.alpha.alpha)) * pp;
}

PureState propagate_two_photon(const TwoPhotonSettings& s, const PureState& input) {
    const ElementUnitary ta = toolbox_circuit(s.phases_a, s.beta_a).transfer();
    const ElementUnitary tb = toolbox_circuit(s.phases_b, s.beta_b, b_suffix).transfer();
    return apply_to_factor(tb, apply_to_factor(ta, input, 0), 1);
}

PureState propagate_two_photon(const TwoPhotonSettings& s) {
    return propagate_two_photon(s, prepare_entangled_input(s.alpha));
}

CoincidenceTable coincidence_probabilities(const TwoPhotonSettings& s) {
    for (double v : {s.alpha.alpha, s.phases_a.phi1, s.phases_a.phi2, s.phases_b.phi1, s.phases_b.phi2,
                     s.beta_a.beta, s.beta_b.beta}) {
        if (!std::isfinite(v)) throw range_error("two-photon settings must be finite");
    }
    if (s.beta_a.is_present() && s.beta_b.is_present()) return sixteen_probabilities(s);
    if (s.beta_a.is_absent() && s.beta_b.is_absent()) return stage_probabilities(s);
    return coincidence_table(two_photon_output(s));
}

CoincidenceTable coincidence_table(const PureState& two_photon) {
    return table_from_weights(two_photon.amplitudes().cwiseAbs2());
}

CoincidenceTable coincidence_table(const DensityMatrix& two_photon) {
    return table_from_weights(two_photon.matrix().diagonal().real());
}

DensityMatrix two_photon_mixture(const TwoPhotonSettings& s) {
    const double c = std::cos(s.alpha.alpha), sn = std::sin(s.alpha.alpha);
    const PureState ww = tensor(wave_component(s.phases_a, s.beta_a),
                                wave_component(s.phases_b, s.beta_b, b_suffix));
    const PureState pp = tensor(particle_component(s.phases_a, s.beta_a),
                                particle_component(s.phases_b, s.beta_b, b_suffix));
    return mix({{ww, c * c}, {pp, sn * sn}});
}

double entanglement_witness(const CoincidenceTable& t) { return t.at(2, 2) - t.at(2, 1); }

cmatrix sector_coefficients(const PureState& two_photon, const TwoPhotonSettings& s) {
    if (two_photon.dimension() != 16) throw structure_error("expected a 16-dimensional two-photon state");
    const cmatrix b = sector_basis(s);
    const cvector c = b.adjoint() * two_photon.amplitudes();
    if (std::abs(c.squaredNorm() - two_photon.amplitudes().squaredNorm()) > analytic_tol)
        throw structure_error("state has weight outside the wave/particle sector");
    cmatrix out(2, 2);
    out << c[0], c[1], c[2], c[3];
    return out;
}

cmatrix sector_density_matrix(const DensityMatrix& two_photon, const TwoPhotonSettings& s) {
    if (two_photon.dimension() != 16) throw structure_error("expected a 16-dimensional two-photon state");
    const cmatrix b = sector_basis(s);
    cmatrix rho = b.adjoint() * two_photon.matrix() * b;
    if (std::abs(rho.trace().real() - 1.0) > analytic_tol)
        throw structure_error("state has weight outside the wave/particle sector");
    return rho;
}

double concurrence_pure(const cmatrix& c) {
    if (c.rows() != 2 || c.cols() != 2) throw structure_error("expected 2x2 coefficients");
    return 2.0 * std::abs(c(0, 0) * c(1, 1) - c(0, 1) * c(1, 0));
}

double concurrence_mixed(const cmatrix& rho) {
    if (rho.rows() != 4 || rho.cols() != 4) throw structure_error("expected a 4x4 density matrix");
    cmatrix flip = cmatrix::Zero(4, 4);  // sigma_y (x) sigma_y
    flip(0, 3) = -1.0;
    flip(1, 2) = 1.0;
    flip(2, 1) = 1.0;
    flip(3, 0) = -1.0;

    // rho = X X^dagger over the numerically nonzero spectrum; lambda are the singular values of X^dagger F X^*.
    Eigen::SelfAdjointEigenSolver<cmatrix> es(rho);
    const double cut = 1e-13 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    std::vector<Eigen::Index> kept;
    for (Eigen::Index i = 0; i < 4; ++i)
        if (es.eigenvalues()[i] > cut) kept.push_back(i);
    std::array<double, 4> lambda{};
    if (!kept.empty()) {
        cmatrix x(4, static_cast<Eigen::Index>(kept.size()));
        for (std::size_t j = 0; j < kept.size(); ++j)
            x.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(kept[j]) * std::sqrt(es.eigenvalues()[kept[j]]);
        const cmatrix tau = x.adjoint() * flip * x.conjugate();
        const Eigen::VectorXd sv = Eigen::JacobiSVD<cmatrix>(tau).singularValues();
        for (Eigen::Index i = 0; i < sv.size(); ++i) lambda[static_cast<std::size_t>(i)] = sv[i];
    }
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

double concurrence(const TwoPhotonSettings& s) {
    return concurrence_pure(sector_coefficients(two_photon_output(s), s));
}

PureState vh_variant_output(const TwoPhotonSettings& s) {
    const PureState wa = wave_component(s.phases_a, s.beta_a);
    const PureState pa = particle_component(s.phases_a, s.beta_a);
    const PureState wb = wave_component(s.phases_b, s.beta_b, b_suffix);
    const PureState pb = particle_component(s.phases_b, s.beta_b, b_suffix);
    return amplitude(1.0 / std::sqrt(2.0)) * (tensor(wa, pb) + tensor(pa, wb));
}

// ---------------------------------------------------------------------------

PureState ghz_input(std::size_t photons, const PreparationAngle& alpha) {
    require_ghz_range(photons);
    if (!std::isfinite(alpha.alpha)) throw range_error("alpha must be finite");
    std::optional<PureState> all_v, all_h;
    for (std::size_t k = 0; k < photons; ++k) {
        const ModeBasis pol = polarization_basis(photon_suffix(k));
        PureState v = PureState::ket(pol, "V" + photon_suffix(k));
        PureState h = PureState::ket(pol, "H" + photon_suffix(k));
        all_v = all_v ? tensor(*all_v, v) : v;
        all_h = all_h ? tensor(*all_h, h) : h;
    }
    return amplitude(std::cos(alpha.alpha)) * *all_v + amplitude(std::sin(alpha.alpha)) * *all_h;
}

PureState ghz_output(std::size_t photons, const PreparationAngle& alpha, const ToolboxPhases& phases,
                     const MeasurementSetting& setting) {
    require_ghz_range(photons);
    if (!std::isfinite(alpha.alpha)) throw range_error("alpha must be finite");
    std::optional<PureState> waves, particles;
    for (std::size_t k = 0; k < photons; ++k) {
        PureState w = wave_component(phases, setting, photon_suffix(k));
        PureState p = particle_component(phases, setting, photon_suffix(k));
        waves = waves ? tensor(*waves, w) : w;
        particles = particles ? tensor(*particles, p) : p;
    }
    return amplitude(std::cos(alpha.alpha)) * *waves + amplitude(std::sin(alpha.alpha)) * *particles;
}

PureState propagate_ghz(std::size_t photons, const PreparationAngle& alpha, const ToolboxPhases& phases,
                        const MeasurementSetting& setting) {
    PureState state = ghz_input(photons, alpha);
    for (std::size_t k = 0; k < photons; ++k) {
        state = apply_to_factor(toolbox_circuit(phases, setting, photon_suffix(k)).transfer(), state, k);
    }
    return state;
}

double GhzSectorTable::crossed() const {
    double total = 0.0;
    for (std::size_t i = 1; i + 1 < by_pattern.size(); ++i) total += by_pattern[i];
    return total;
}

std::string GhzSectorTable::pattern_name(std::size_t pattern) const {
    std::string name;
    for (std::size_t k = 0; k < photons; ++k) name += (pattern >> k) & 1U ? 'p' : 'w';
    return name;
}

GhzSectorTable sector_probabilities(const PureState& state, std::size_t photons) {
    require_ghz_range(photons);
    std::size_t expected = 1;
    for (std::size_t k = 0; k < photons; ++k) expected *= 4;
    if (state.dimension() != expected) throw structure_error("state dimension does not match 4^photons");

    GhzSectorTable t;
    t.photons = photons;
    t.by_pattern.assign(std::size_t{1} << photons, 0.0);
    for (std::size_t i = 0; i < expected; ++i) {
        std::size_t pattern = 0, rest = i;
        for (std::size_t k = photons; k-- > 0;) {
            // Path index 0..3 of photon k; paths 2 and 4 are the particle sector.
            if ((rest % 4) % 2 == 1) pattern |= std::size_t{1} << k;
            rest /= 4;
        }
        t.by_pattern[pattern] += std::norm(state.amplitudes()[static_cast<Eigen::Index>(i)]);
    }
    return t;
}

GhzSectorTable ghz_sector_probabilities(std::size_t photons, const PreparationAngle& alpha,
                                        const ToolboxPhases& phases, const MeasurementSetting& setting) {
    return sector_probabilities(ghz_output(photons, alpha, phases, setting), photons);
}

}  // namespace wpt
