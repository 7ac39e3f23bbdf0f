#include "wpt/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace wpt {

namespace {

constexpr char product_separator = ',';

std::string join_labels(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += product_separator;
        out += parts[i];
    }
    return out;
}

void require_same_basis(const ModeBasis& a, const ModeBasis& b, const char* what) {
    if (!(a == b)) throw mode_error(std::string(what) + ": states live on different bases");
}

}  // namespace

struct ModeBasis::Data {
    std::vector<std::string> labels;
    std::vector<std::vector<std::string>> factors;
    std::unordered_map<std::string, std::size_t> index;
};

ModeBasis::ModeBasis(std::vector<std::string> labels) {
    if (labels.empty()) throw structure_error("mode basis needs at least one label");
    auto data = std::make_shared<Data>();
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const auto& l = labels[i];
        if (l.empty()) throw mode_error("empty mode label");
        if (l.find(product_separator) != std::string::npos)
            throw mode_error("mode label '" + l + "' contains the reserved ',' separator");
        if (!data->index.emplace(l, i).second) throw mode_error("duplicate mode label '" + l + "'");
    }
    data->factors.push_back(labels);
    data->labels = std::move(labels);
    data_ = std::move(data);
}

ModeBasis ModeBasis::product(const ModeBasis& a, const ModeBasis& b) {
    auto data = std::make_shared<Data>();
    data->factors = a.data_->factors;
    data->factors.insert(data->factors.end(), b.data_->factors.begin(), b.data_->factors.end());
    data->labels.reserve(a.dimension() * b.dimension());
    for (const auto& la : a.labels()) {
        for (const auto& lb : b.labels()) data->labels.push_back(la + product_separator + lb);
    }
    data->index.reserve(data->labels.size());
    for (std::size_t i = 0; i < data->labels.size(); ++i) {
        if (!data->index.emplace(data->labels[i], i).second)
            throw mode_error("duplicate product label '" + data->labels[i] + "'");
    }
    return ModeBasis(std::shared_ptr<const Data>(std::move(data)));
}

std::size_t ModeBasis::dimension() const { return data_->labels.size(); }
const std::vector<std::string>& ModeBasis::labels() const { return data_->labels; }
const std::string& ModeBasis::label(std::size_t i) const { return data_->labels.at(i); }
std::size_t ModeBasis::factor_count() const { return data_->factors.size(); }

std::optional<std::size_t> ModeBasis::find(std::string_view label) const {
    auto it = data_->index.find(std::string(label));
    if (it == data_->index.end()) return std::nullopt;
    return it->second;
}

std::size_t ModeBasis::index_of(std::string_view label) const {
    if (auto i = find(label)) return *i;
    throw mode_error("unknown mode '" + std::string(label) + "'");
}

ModeBasis ModeBasis::factor(std::size_t k) const {
    if (k >= factor_count()) throw structure_error("subsystem index out of range");
    return ModeBasis(data_->factors[k]);
}

std::vector<std::size_t> ModeBasis::factor_dimensions() const {
    std::vector<std::size_t> dims;
    for (const auto& f : data_->factors) dims.push_back(f.size());
    return dims;
}

bool ModeBasis::operator==(const ModeBasis& other) const {
    return data_ == other.data_ ||
           (data_->labels == other.data_->labels && data_->factors == other.data_->factors);
}

// ---------------------------------------------------------------------------

PureState::PureState(ModeBasis basis, cvector amplitudes)
    : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amplitudes_.size()) != basis_.dimension())
        throw structure_error("amplitude count does not match basis dimension");
    if (!amplitudes_.allFinite()) throw range_error("non-finite amplitude");
}

PureState PureState::ket(ModeBasis basis, std::string_view label) {
    cvector v = cvector::Zero(static_cast<Eigen::Index>(basis.dimension()));
    v[static_cast<Eigen::Index>(basis.index_of(label))] = 1.0;
    return PureState(std::move(basis), std::move(v));
}

PureState PureState::from_terms(
    ModeBasis basis, std::initializer_list<std::pair<std::string_view, amplitude>> terms) {
    cvector v = cvector::Zero(static_cast<Eigen::Index>(basis.dimension()));
    for (const auto& [label, a] : terms) v[static_cast<Eigen::Index>(basis.index_of(label))] += a;
    return PureState(std::move(basis), std::move(v));
}

amplitude PureState::operator[](std::string_view label) const {
    return amplitudes_[static_cast<Eigen::Index>(basis_.index_of(label))];
}

PureState PureState::normalized() const {
    const double n = norm();
    if (n == 0.0) throw normalization_error("cannot normalize the zero vector");
    return PureState(basis_, amplitudes_ / n);
}

PureState PureState::operator+(const PureState& other) const {
    require_same_basis(basis_, other.basis_, "state sum");
    return PureState(basis_, amplitudes_ + other.amplitudes_);
}

PureState PureState::operator-(const PureState& other) const {
    require_same_basis(basis_, other.basis_, "state difference");
    return PureState(basis_, amplitudes_ - other.amplitudes_);
}

PureState operator*(amplitude c, const PureState& s) {
    return PureState(s.basis_, c * s.amplitudes_);
}

// ---------------------------------------------------------------------------

DensityMatrix::DensityMatrix(ModeBasis basis, cmatrix matrix)
    : basis_(std::move(basis)), matrix_(std::move(matrix)) {
    const auto d = static_cast<Eigen::Index>(basis_.dimension());
    if (matrix_.rows() != d || matrix_.cols() != d)
        throw structure_error("density matrix shape does not match basis dimension");
    if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > analytic_tol)
        throw structure_error("density matrix is not Hermitian");
    if (std::abs(matrix_.trace() - amplitude(1.0)) > analytic_tol)
        throw normalization_error("density matrix trace differs from 1");
    Eigen::SelfAdjointEigenSolver<cmatrix> es(matrix_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -eigenvalue_tol)
        throw structure_error("density matrix has a negative eigenvalue");
}

DensityMatrix DensityMatrix::pure(const PureState& s) {
    return DensityMatrix(s.basis(), s.amplitudes() * s.amplitudes().adjoint());
}

// ---------------------------------------------------------------------------

ElementUnitary::ElementUnitary(std::string name, std::vector<std::string> modes, cmatrix matrix)
    : ElementUnitary(std::move(name), modes, modes, std::move(matrix)) {}

ElementUnitary::ElementUnitary(std::string name, std::vector<std::string> in_modes,
                               std::vector<std::string> out_modes, cmatrix matrix)
    : name_(std::move(name)),
      in_modes_(std::move(in_modes)),
      out_modes_(std::move(out_modes)),
      matrix_(std::move(matrix)) {
    const auto n = static_cast<Eigen::Index>(in_modes_.size());
    if (n == 0 || out_modes_.size() != in_modes_.size())
        throw structure_error(name_ + ": input and output mode lists must be non-empty and equal length");
    if (matrix_.rows() != n || matrix_.cols() != n)
        throw structure_error(name_ + ": matrix dimension does not match mode count");
    for (const auto* list : {&in_modes_, &out_modes_}) {
        std::unordered_set<std::string> seen;
        for (const auto& m : *list) {
            if (!seen.insert(m).second) throw mode_error(name_ + ": duplicate mode '" + m + "'");
        }
    }
    if (!matrix_.allFinite()) throw range_error(name_ + ": non-finite matrix entry");
    if (unitarity_defect(matrix_) > analytic_tol) throw structure_error(name_ + ": matrix is not unitary");
}

ElementUnitary ElementUnitary::adjoint() const {
    return ElementUnitary(name_ + "^dagger", out_modes_, in_modes_, matrix_.adjoint());
}

double unitarity_defect(const cmatrix& u) {
    return (u.adjoint() * u - cmatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

double ProbabilityTable::sum() const { return std::accumulate(p.begin(), p.end(), 0.0); }

// ---------------------------------------------------------------------------

PureState tensor(const PureState& a, const PureState& b) {
    ModeBasis basis = ModeBasis::product(a.basis(), b.basis());
    cvector v(static_cast<Eigen::Index>(basis.dimension()));
    const auto nb = b.amplitudes().size();
    for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) {
        v.segment(i * nb, nb) = a.amplitudes()[i] * b.amplitudes();
    }
    return PureState(std::move(basis), std::move(v));
}

amplitude inner_product(const PureState& bra, const PureState& ket) {
    require_same_basis(bra.basis(), ket.basis(), "inner product");
    return bra.amplitudes().dot(ket.amplitudes());
}

PureState embed(const PureState& s, const ModeBasis& target) {
    cvector v = cvector::Zero(static_cast<Eigen::Index>(target.dimension()));
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        v[static_cast<Eigen::Index>(target.index_of(s.basis().label(i)))] =
            s.amplitudes()[static_cast<Eigen::Index>(i)];
    }
    return PureState(target, std::move(v));
}

PureState apply_unitary(const ElementUnitary& u, const PureState& s) {
    const auto& basis = s.basis();
    std::vector<Eigen::Index> pos;
    pos.reserve(u.in_modes().size());
    for (const auto& m : u.in_modes()) {
        auto i = basis.find(m);
        if (!i) throw mode_error(u.name() + ": unknown mode '" + m + "'");
        pos.push_back(static_cast<Eigen::Index>(*i));
    }

    cvector local(static_cast<Eigen::Index>(pos.size()));
    for (std::size_t j = 0; j < pos.size(); ++j) local[static_cast<Eigen::Index>(j)] = s.amplitudes()[pos[j]];
    const cvector transformed = u.matrix() * local;

    cvector out = s.amplitudes();
    for (std::size_t k = 0; k < pos.size(); ++k) out[pos[k]] = transformed[static_cast<Eigen::Index>(k)];

    if (!u.relabels()) return PureState(basis, std::move(out));

    std::vector<std::string> labels = basis.labels();
    for (std::size_t k = 0; k < pos.size(); ++k) labels[static_cast<std::size_t>(pos[k])] = u.out_modes()[k];
    return PureState(ModeBasis(std::move(labels)), std::move(out));
}

PureState apply_to_factor(const ElementUnitary& u, const PureState& s, std::size_t factor) {
    const ModeBasis& basis = s.basis();
    const ModeBasis in_factor = basis.factor(factor);

    // Extended factor basis: current labels plus any vacuum modes u needs.
    std::vector<std::string> extended = in_factor.labels();
    for (const auto& m : u.in_modes()) {
        if (!in_factor.contains(m)) extended.push_back(m);
    }
    ModeBasis extended_basis(extended);

    const auto din = static_cast<Eigen::Index>(in_factor.dimension());
    const auto dout = static_cast<Eigen::Index>(extended.size());
    cmatrix local(dout, din);
    std::optional<ModeBasis> out_factor;
    for (Eigen::Index j = 0; j < din; ++j) {
        PureState column = apply_unitary(
            u, PureState::ket(extended_basis, in_factor.label(static_cast<std::size_t>(j))));
        local.col(j) = column.amplitudes();
        if (!out_factor) out_factor = column.basis();
    }

    // Rebuild the product basis with the new factor in place.
    std::optional<ModeBasis> new_basis;
    for (std::size_t k = 0; k < basis.factor_count(); ++k) {
        ModeBasis f = (k == factor) ? *out_factor : basis.factor(k);
        new_basis = new_basis ? ModeBasis::product(*new_basis, f) : f;
    }

    const auto dims = basis.factor_dimensions();
    Eigen::Index left = 1, right = 1;
    for (std::size_t k = 0; k < factor; ++k) left *= static_cast<Eigen::Index>(dims[k]);
    for (std::size_t k = factor + 1; k < dims.size(); ++k) right *= static_cast<Eigen::Index>(dims[k]);

    cvector out = cvector::Zero(left * dout * right);
    const cvector& in = s.amplitudes();
    for (Eigen::Index l = 0; l < left; ++l) {
        for (Eigen::Index j = 0; j < din; ++j) {
            for (Eigen::Index r = 0; r < right; ++r) {
                const amplitude a = in[(l * din + j) * right + r];
                if (a == amplitude(0.0)) continue;
                for (Eigen::Index i = 0; i < dout; ++i) out[(l * dout + i) * right + r] += local(i, j) * a;
            }
        }
    }
    return PureState(std::move(*new_basis), std::move(out));
}

namespace {

std::vector<std::size_t> partition_positions(const ModeBasis& basis, const LabelGroups& groups) {
    // Maps basis position -> group index, rejecting overlaps and gaps.
    std::vector<std::size_t> owner(basis.dimension(), groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g) {
        for (const auto& label : groups[g]) {
            const std::size_t i = basis.index_of(label);
            if (owner[i] != groups.size())
                throw structure_error("measurement groups overlap at '" + label + "'");
            owner[i] = g;
        }
    }
    for (std::size_t i = 0; i < owner.size(); ++i) {
        if (owner[i] == groups.size())
            throw structure_error("measurement groups do not cover '" + basis.label(i) + "'");
    }
    return owner;
}

std::string group_name(const std::vector<std::string>& group) { return join_labels(group); }

template <typename Weight>
ProbabilityTable grouped(const ModeBasis& basis, const LabelGroups& groups, Weight weight) {
    const auto owner = partition_positions(basis, groups);
    ProbabilityTable t;
    t.p.assign(groups.size(), 0.0);
    for (const auto& g : groups) t.outcomes.push_back(group_name(g));
    for (std::size_t i = 0; i < owner.size(); ++i) t.p[owner[i]] += weight(i);
    return t;
}

LabelGroups singletons(const ModeBasis& basis) {
    LabelGroups g;
    for (const auto& l : basis.labels()) g.push_back({l});
    return g;
}

}  // namespace

ProbabilityTable measure_distribution(const PureState& s, const LabelGroups& groups) {
    return grouped(s.basis(), groups,
                   [&](std::size_t i) { return std::norm(s.amplitudes()[static_cast<Eigen::Index>(i)]); });
}

ProbabilityTable measure_distribution(const DensityMatrix& rho, const LabelGroups& groups) {
    return grouped(rho.basis(), groups, [&](std::size_t i) {
        const auto k = static_cast<Eigen::Index>(i);
        return rho.matrix()(k, k).real();
    });
}

ProbabilityTable measure_distribution(const PureState& s) {
    return measure_distribution(s, singletons(s.basis()));
}

ProbabilityTable measure_distribution(const DensityMatrix& rho) {
    return measure_distribution(rho, singletons(rho.basis()));
}

ProbabilityTable factor_distribution(const PureState& s, std::size_t factor) {
    const ModeBasis f = s.basis().factor(factor);
    const auto dims = s.basis().factor_dimensions();
    std::size_t right = 1;
    for (std::size_t k = factor + 1; k < dims.size(); ++k) right *= dims[k];
    const std::size_t d = dims[factor];

    ProbabilityTable t;
    t.outcomes = f.labels();
    t.p.assign(d, 0.0);
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        t.p[(i / right) % d] += std::norm(s.amplitudes()[static_cast<Eigen::Index>(i)]);
    }
    return t;
}

DensityMatrix mix(std::span<const std::pair<PureState, double>> states) {
    if (states.empty()) throw normalization_error("mixture needs at least one state");
    const ModeBasis& basis = states.front().first.basis();
    double total = 0.0;
    const auto d = static_cast<Eigen::Index>(basis.dimension());
    cmatrix rho = cmatrix::Zero(d, d);
    for (const auto& [state, w] : states) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw normalization_error("mixture weight must be finite and >= 0");
        require_same_basis(basis, state.basis(), "mixture");
        total += w;
        rho += w * state.amplitudes() * state.amplitudes().adjoint();
    }
    if (std::abs(total - 1.0) > analytic_tol) throw normalization_error("mixture weights do not sum to 1");
    return DensityMatrix(basis, std::move(rho));
}

DensityMatrix mix(std::initializer_list<std::pair<PureState, double>> states) {
    return mix(std::span<const std::pair<PureState, double>>(states.begin(), states.size()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::size_t keep) {
    const ModeBasis& basis = rho.basis();
    if (!basis.is_product()) throw structure_error("partial trace needs a tensor-product basis");
    if (keep >= basis.factor_count()) throw structure_error("subsystem index out of range");

    const auto dims = basis.factor_dimensions();
    std::size_t left = 1, right = 1;
    for (std::size_t k = 0; k < keep; ++k) left *= dims[k];
    for (std::size_t k = keep + 1; k < dims.size(); ++k) right *= dims[k];
    const std::size_t d = dims[keep];

    const auto idx = [&](std::size_t l, std::size_t i, std::size_t r) {
        return static_cast<Eigen::Index>((l * d + i) * right + r);
    };
    cmatrix out = cmatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            amplitude acc = 0.0;
            for (std::size_t l = 0; l < left; ++l) {
                for (std::size_t r = 0; r < right; ++r) acc += rho.matrix()(idx(l, i, r), idx(l, j, r));
            }
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
        }
    }
    return DensityMatrix(basis.factor(keep), std::move(out));
}

DensityMatrix reduced_state(const PureState& s, std::size_t keep) {
    const ModeBasis& basis = s.basis();
    if (keep >= basis.factor_count()) throw structure_error("subsystem index out of range");
    const auto dims = basis.factor_dimensions();
    Eigen::Index left = 1, right = 1;
    for (std::size_t k = 0; k < keep; ++k) left *= static_cast<Eigen::Index>(dims[k]);
    for (std::size_t k = keep + 1; k < dims.size(); ++k) right *= static_cast<Eigen::Index>(dims[k]);
    const auto d = static_cast<Eigen::Index>(dims[keep]);

    cmatrix out = cmatrix::Zero(d, d);
    for (Eigen::Index l = 0; l < left; ++l) {
        // Column-major view: rows = kept index, columns = environment index r.
        cmatrix block(d, right);
        for (Eigen::Index i = 0; i < d; ++i) {
            for (Eigen::Index r = 0; r < right; ++r) block(i, r) = s.amplitudes()[(l * d + i) * right + r];
        }
        out += block * block.adjoint();
    }
    return DensityMatrix(basis.factor(keep), std::move(out));
}

}  // namespace wpt
