#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "wv/linalg.hpp"

namespace wv {

// One gate in a preparation sequence. Named single-qubit gates carry a
// target qubit (qubit 0 = least significant bit of the basis index);
// explicit unitaries carry a target list.
struct Gate {
    enum class Kind { H, X, Y, Z, S, T, Sdg, Tdg, Rx, Ry, Rz, Unitary };

    Kind kind = Kind::H;
    std::vector<std::size_t> targets;
    double angle = 0.0;      // Rx/Ry/Rz only
    ComplexMatrix matrix;    // Unitary only

    static Gate named(Kind k, std::size_t target);
    static Gate rotation(Kind k, std::size_t target, double angle);
    static Gate unitary(ComplexMatrix u, std::vector<std::size_t> targets);

    Gate adjointed() const;
    ComplexMatrix local_matrix() const;  // 2^k x 2^k matrix on the targets
};

using GateSequence = std::vector<Gate>;

Gate::Kind gate_kind_from_name(const std::string& name);
std::string gate_name(Gate::Kind k);

class PureState {
public:
    PureState() = default;

    std::size_t dim() const { return amplitudes_.size(); }
    const cvec& amplitudes() const { return amplitudes_; }
    const std::optional<GateSequence>& prep() const { return prep_; }

    friend PureState make_pure(cvec amplitudes, std::optional<GateSequence> prep);

private:
    cvec amplitudes_;
    std::optional<GateSequence> prep_;
};

// Three-band normalization rule: deviation ≤ 1e-9 accepted as-is,
// ≤ 1e-6 silently renormalized, beyond that rejected.
PureState make_pure(cvec amplitudes, std::optional<GateSequence> prep = std::nullopt);

struct Projector {
    ComplexMatrix matrix;
};

Projector projector_of(const PureState& psi);

class DensityMatrixState {
public:
    const ComplexMatrix& matrix() const { return matrix_; }
    std::size_t dim() const { return matrix_.dim(); }

    // Spectral decomposition, computed at most once.
    const EigenDecomposition& spectral() const;

    friend DensityMatrixState make_density(ComplexMatrix matrix);

private:
    ComplexMatrix matrix_;
    mutable std::shared_ptr<std::once_flag> once_ = std::make_shared<std::once_flag>();
    mutable std::shared_ptr<EigenDecomposition> spectral_cache_ =
        std::make_shared<EigenDecomposition>();
};

DensityMatrixState make_density(ComplexMatrix matrix);
DensityMatrixState mix(const std::vector<std::pair<double, PureState>>& pairs);

std::size_t qubit_count(std::size_t dim);  // throws NotPowerOfTwoDim

cvec apply_sequence_vec(const GateSequence& seq, const cvec& amplitudes);
PureState apply_sequence(const GateSequence& seq, const PureState& psi);
GateSequence invert_sequence(const GateSequence& seq);

// |⟨u|v⟩|² — fidelity for pure states, used for up-to-global-phase compares.
double fidelity(const cvec& u, const cvec& v);

PureState basis_state(std::size_t dim, std::size_t index);

} // namespace wv
