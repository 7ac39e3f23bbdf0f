// qcore.hpp
// Dense complex linear algebra over small labeled Hilbert spaces.
//
// States live on a ModeBasis: an ordered list of explicit string labels
// ("V", "H", "1".."4", "1'".."4'", "V:0", ...). Tensor-product bases remember
// their factors so that local maps and partial traces can address a single
// subsystem. Product labels are the factor labels joined by ','; the first
// factor is the slowest-varying index (Kronecker order).

#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wpt/errors.hpp"

namespace wpt {

using amplitude = std::complex<double>;
using cvector = Eigen::VectorXcd;
using cmatrix = Eigen::MatrixXcd;

// Tolerance for analytic identities (norms, traces, unitarity).
inline constexpr double analytic_tol = 1e-12;
// Tolerance for eigenvalue non-negativity after Hermitian diagonalization.
inline constexpr double eigenvalue_tol = 1e-10;

class ModeBasis {
public:
    explicit ModeBasis(std::vector<std::string> labels);

    // Ordered Cartesian product; factors of either operand are flattened,
    // so product(product(a, b), c) == product(a, product(b, c)).
    static ModeBasis product(const ModeBasis& a, const ModeBasis& b);

    std::size_t dimension() const;
    const std::vector<std::string>& labels() const;
    const std::string& label(std::size_t i) const;

    std::optional<std::size_t> find(std::string_view label) const;
    // Throws mode_error for labels that are not part of the basis.
    std::size_t index_of(std::string_view label) const;
    bool contains(std::string_view label) const { return find(label).has_value(); }

    std::size_t factor_count() const;
    bool is_product() const { return factor_count() > 1; }
    // Primitive basis of subsystem k. A primitive basis is its own factor 0.
    ModeBasis factor(std::size_t k) const;
    std::vector<std::size_t> factor_dimensions() const;

    bool operator==(const ModeBasis& other) const;

private:
    struct Data;
    explicit ModeBasis(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
    std::shared_ptr<const Data> data_;
};

class PureState {
public:
    // Amplitudes are not normalized automatically; use normalized().
    PureState(ModeBasis basis, cvector amplitudes);

    static PureState ket(ModeBasis basis, std::string_view label);
    static PureState from_terms(
        ModeBasis basis,
        std::initializer_list<std::pair<std::string_view, amplitude>> terms);

    const ModeBasis& basis() const { return basis_; }
    const cvector& amplitudes() const { return amplitudes_; }
    std::size_t dimension() const { return basis_.dimension(); }
    amplitude operator[](std::string_view label) const;

    double norm() const { return amplitudes_.norm(); }
    // Throws normalization_error on the zero vector.
    PureState normalized() const;

    PureState operator+(const PureState& other) const;
    PureState operator-(const PureState& other) const;
    friend PureState operator*(amplitude c, const PureState& s);

private:
    ModeBasis basis_;
    cvector amplitudes_;
};

class DensityMatrix {
public:
    // Validates Hermiticity and unit trace within analytic_tol and
    // eigenvalues >= -eigenvalue_tol.
    DensityMatrix(ModeBasis basis, cmatrix matrix);

    static DensityMatrix pure(const PureState& s);

    const ModeBasis& basis() const { return basis_; }
    const cmatrix& matrix() const { return matrix_; }
    std::size_t dimension() const { return basis_.dimension(); }

    double trace() const { return matrix_.trace().real(); }
    double purity() const { return (matrix_ * matrix_).trace().real(); }

private:
    ModeBasis basis_;
    cmatrix matrix_;
};

// A linear optical element acting on named modes. Ordinary elements act on
// one mode list (in_modes == out_modes). An element may also rename its modes
// (e.g. polarization rails -> path rails): amplitude on in_modes[j] is moved
// through the matrix onto out_modes[k], which take the basis positions of
// the corresponding in_modes.
class ElementUnitary {
public:
    ElementUnitary(std::string name, std::vector<std::string> modes, cmatrix matrix);
    ElementUnitary(std::string name, std::vector<std::string> in_modes,
                   std::vector<std::string> out_modes, cmatrix matrix);

    const std::string& name() const { return name_; }
    const std::vector<std::string>& in_modes() const { return in_modes_; }
    const std::vector<std::string>& out_modes() const { return out_modes_; }
    // Alias for in_modes(); meaningful for non-relabeling elements.
    const std::vector<std::string>& modes() const { return in_modes_; }
    const cmatrix& matrix() const { return matrix_; }
    bool relabels() const { return in_modes_ != out_modes_; }

    ElementUnitary adjoint() const;

private:
    std::string name_;
    std::vector<std::string> in_modes_;
    std::vector<std::string> out_modes_;
    cmatrix matrix_;
};

// Maximum entry of |U^dagger U - I|.
double unitarity_defect(const cmatrix& u);

struct ProbabilityTable {
    std::vector<std::string> outcomes;
    std::vector<double> p;

    std::size_t size() const { return p.size(); }
    double operator[](std::size_t i) const { return p[i]; }
    double sum() const;
};

using LabelGroups = std::vector<std::vector<std::string>>;

PureState tensor(const PureState& a, const PureState& b);
amplitude inner_product(const PureState& bra, const PureState& ket);

// Zero-extends s onto a basis that contains all of its labels.
PureState embed(const PureState& s, const ModeBasis& target);

PureState apply_unitary(const ElementUnitary& u, const PureState& s);

// Applies u to subsystem `factor` of a product state. Factor labels that u
// does not touch pass through unchanged; u's in_modes missing from the factor
// are treated as empty (vacuum) modes and join the factor basis.
PureState apply_to_factor(const ElementUnitary& u, const PureState& s, std::size_t factor);

// Groups must partition the basis labels; one outcome per group.
ProbabilityTable measure_distribution(const PureState& s, const LabelGroups& groups);
ProbabilityTable measure_distribution(const DensityMatrix& rho, const LabelGroups& groups);
// One outcome per basis label.
ProbabilityTable measure_distribution(const PureState& s);
ProbabilityTable measure_distribution(const DensityMatrix& rho);

// Born-rule marginal over the labels of one subsystem.
ProbabilityTable factor_distribution(const PureState& s, std::size_t factor);

// Weights must be >= 0 and sum to 1 within analytic_tol; states share a basis.
DensityMatrix mix(std::span<const std::pair<PureState, double>> states);
DensityMatrix mix(std::initializer_list<std::pair<PureState, double>> states);

DensityMatrix partial_trace(const DensityMatrix& rho, std::size_t keep);
// Same as partial_trace(DensityMatrix::pure(s), keep) without the full matrix.
DensityMatrix reduced_state(const PureState& s, std::size_t keep);

}  // namespace wpt
