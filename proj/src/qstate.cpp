#include "wv/qstate.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace wv {

namespace {

constexpr cplx I{0.0, 1.0};
const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;

ComplexMatrix single_qubit_matrix(Gate::Kind k, double angle) {
    ComplexMatrix m(2);
    switch (k) {
        case Gate::Kind::H:
            m(0, 0) = inv_sqrt2; m(0, 1) = inv_sqrt2;
            m(1, 0) = inv_sqrt2; m(1, 1) = -inv_sqrt2;
            break;
        case Gate::Kind::X:
            m(0, 1) = 1.0; m(1, 0) = 1.0;
            break;
        case Gate::Kind::Y:
            m(0, 1) = -I; m(1, 0) = I;
            break;
        case Gate::Kind::Z:
            m(0, 0) = 1.0; m(1, 1) = -1.0;
            break;
        case Gate::Kind::S:
            m(0, 0) = 1.0; m(1, 1) = I;
            break;
        case Gate::Kind::Sdg:
            m(0, 0) = 1.0; m(1, 1) = -I;
            break;
        case Gate::Kind::T:
            m(0, 0) = 1.0; m(1, 1) = std::exp(I * (std::numbers::pi / 4.0));
            break;
        case Gate::Kind::Tdg:
            m(0, 0) = 1.0; m(1, 1) = std::exp(-I * (std::numbers::pi / 4.0));
            break;
        case Gate::Kind::Rx:
            m(0, 0) = std::cos(angle / 2); m(0, 1) = -I * std::sin(angle / 2);
            m(1, 0) = -I * std::sin(angle / 2); m(1, 1) = std::cos(angle / 2);
            break;
        case Gate::Kind::Ry:
            m(0, 0) = std::cos(angle / 2); m(0, 1) = -std::sin(angle / 2);
            m(1, 0) = std::sin(angle / 2); m(1, 1) = std::cos(angle / 2);
            break;
        case Gate::Kind::Rz:
            m(0, 0) = std::exp(-I * (angle / 2)); m(1, 1) = std::exp(I * (angle / 2));
            break;
        case Gate::Kind::Unitary:
            throw BadParameter("explicit unitary gate has no named matrix");
    }
    return m;
}

bool is_unitary(const ComplexMatrix& u, double tol) {
    const ComplexMatrix p = mul(adjoint(u), u);
    const ComplexMatrix dev = sub(p, ComplexMatrix::identity(u.dim()));
    return max_abs(dev) <= tol;
}

} // namespace

Gate Gate::named(Kind k, std::size_t target) {
    Gate g;
    g.kind = k;
    g.targets = {target};
    return g;
}

Gate Gate::rotation(Kind k, std::size_t target, double angle) {
    Gate g;
    g.kind = k;
    g.targets = {target};
    g.angle = angle;
    return g;
}

Gate Gate::unitary(ComplexMatrix u, std::vector<std::size_t> targets) {
    if (u.dim() != (std::size_t{1} << targets.size()))
        throw DimensionMismatch("explicit gate matrix dimension does not match target count");
    if (!is_unitary(u, 1e-9))
        throw NotUnitary("explicit gate matrix is not unitary within 1e-9");
    Gate g;
    g.kind = Kind::Unitary;
    g.targets = std::move(targets);
    g.matrix = std::move(u);
    return g;
}

Gate Gate::adjointed() const {
    Gate g = *this;
    switch (kind) {
        case Kind::H: case Kind::X: case Kind::Y: case Kind::Z:
            break;  // self-inverse
        case Kind::S: g.kind = Kind::Sdg; break;
        case Kind::Sdg: g.kind = Kind::S; break;
        case Kind::T: g.kind = Kind::Tdg; break;
        case Kind::Tdg: g.kind = Kind::T; break;
        case Kind::Rx: case Kind::Ry: case Kind::Rz:
            g.angle = -angle;
            break;
        case Kind::Unitary:
            g.matrix = adjoint(matrix);
            break;
    }
    return g;
}

ComplexMatrix Gate::local_matrix() const {
    if (kind == Kind::Unitary) return matrix;
    return single_qubit_matrix(kind, angle);
}

Gate::Kind gate_kind_from_name(const std::string& name) {
    if (name == "H" || name == "h") return Gate::Kind::H;
    if (name == "X" || name == "x") return Gate::Kind::X;
    if (name == "Y" || name == "y") return Gate::Kind::Y;
    if (name == "Z" || name == "z") return Gate::Kind::Z;
    if (name == "S" || name == "s") return Gate::Kind::S;
    if (name == "Sdg" || name == "sdg") return Gate::Kind::Sdg;
    if (name == "T" || name == "t") return Gate::Kind::T;
    if (name == "Tdg" || name == "tdg") return Gate::Kind::Tdg;
    if (name == "Rx" || name == "rx") return Gate::Kind::Rx;
    if (name == "Ry" || name == "ry") return Gate::Kind::Ry;
    if (name == "Rz" || name == "rz") return Gate::Kind::Rz;
    if (name == "unitary") return Gate::Kind::Unitary;
    throw ParseError("unknown gate name: " + name);
}

std::string gate_name(Gate::Kind k) {
    switch (k) {
        case Gate::Kind::H: return "H";
        case Gate::Kind::X: return "X";
        case Gate::Kind::Y: return "Y";
        case Gate::Kind::Z: return "Z";
        case Gate::Kind::S: return "S";
        case Gate::Kind::Sdg: return "Sdg";
        case Gate::Kind::T: return "T";
        case Gate::Kind::Tdg: return "Tdg";
        case Gate::Kind::Rx: return "Rx";
        case Gate::Kind::Ry: return "Ry";
        case Gate::Kind::Rz: return "Rz";
        case Gate::Kind::Unitary: return "unitary";
    }
    return "?";
}

std::size_t qubit_count(std::size_t dim) {
    std::size_t n = 0, d = 1;
    while (d < dim) { d <<= 1; ++n; }
    if (d != dim || dim == 0)
        throw NotPowerOfTwoDim("dimension is not a power of two");
    return n;
}

PureState make_pure(cvec amplitudes, std::optional<GateSequence> prep) {
    if (amplitudes.empty()) throw ZeroVector("state vector must have dimension >= 1");
    const double n2 = norm2(amplitudes);
    if (n2 == 0.0) throw ZeroVector("state vector is the zero vector");
    const double nrm = std::sqrt(n2);
    const double dev = std::abs(nrm - 1.0);
    if (dev > 1e-6) {
        std::ostringstream os;
        os << "state vector norm " << nrm << " deviates from 1 by more than 1e-6";
        throw NotNormalized(os.str());
    }
    if (dev > 1e-9)
        for (auto& z : amplitudes) z /= nrm;

    if (prep) {
        cvec zero(amplitudes.size());
        zero[0] = 1.0;
        const cvec prepared = apply_sequence_vec(*prep, zero);
        if (fidelity(prepared, amplitudes) < 1.0 - 1e-9)
            throw BadParameter("preparation sequence does not reproduce the amplitudes");
    }

    PureState s;
    s.amplitudes_ = std::move(amplitudes);
    s.prep_ = std::move(prep);
    return s;
}

Projector projector_of(const PureState& psi) {
    return {outer(psi.amplitudes(), psi.amplitudes())};
}

const EigenDecomposition& DensityMatrixState::spectral() const {
    std::call_once(*once_, [this] { *spectral_cache_ = eig_hermitian(matrix_); });
    return *spectral_cache_;
}

DensityMatrixState make_density(ComplexMatrix matrix) {
    if (!is_hermitian(matrix, 1e-10))
        throw NotDensityMatrix("density matrix is not Hermitian within 1e-10");
    const double tr_dev = std::abs(trace(matrix) - cplx{1.0});
    if (tr_dev > 1e-9) {
        std::ostringstream os;
        os << "density matrix trace deviates from 1 by " << tr_dev;
        throw NotDensityMatrix(os.str());
    }
    const EigenDecomposition ed = eig_hermitian(matrix);
    for (double lam : ed.eigenvalues)
        if (lam < -1e-10)
            throw NotDensityMatrix("density matrix has a negative eigenvalue");

    DensityMatrixState s;
    s.matrix_ = std::move(matrix);
    return s;
}

DensityMatrixState mix(const std::vector<std::pair<double, PureState>>& pairs) {
    if (pairs.empty()) throw BadProbabilities("mixture must have at least one component");
    double total = 0.0;
    for (const auto& [p, psi] : pairs) {
        if (p < 0.0) throw BadProbabilities("mixture probabilities must be non-negative");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw BadProbabilities("mixture probabilities must sum to 1 within 1e-9");

    const std::size_t d = pairs.front().second.dim();
    ComplexMatrix rho(d);
    for (const auto& [p, psi] : pairs) {
        if (psi.dim() != d) throw DimensionMismatch("mixture components have differing dimension");
        rho = add(rho, scale(p, projector_of(psi).matrix));
    }
    return make_density(std::move(rho));
}

namespace {

// Apply a 2^k x 2^k gate to the given target qubits of an n-qubit vector.
cvec apply_gate_vec(const Gate& g, const cvec& amps) {
    const std::size_t n = qubit_count(amps.size());
    for (std::size_t t : g.targets)
        if (t >= n) throw DimensionMismatch("gate target qubit out of range");

    const ComplexMatrix u = g.local_matrix();
    const std::size_t k = g.targets.size();
    const std::size_t sub = std::size_t{1} << k;

    cvec out(amps.size());
    std::vector<bool> is_target(n, false);
    for (std::size_t t : g.targets) is_target[t] = true;

    // iterate over basis states with target bits cleared
    for (std::size_t base = 0; base < amps.size(); ++base) {
        bool skip = false;
        for (std::size_t t : g.targets)
            if ((base >> t) & 1) { skip = true; break; }
        if (skip) continue;

        for (std::size_t row = 0; row < sub; ++row) {
            std::size_t idx_row = base;
            for (std::size_t b = 0; b < k; ++b)
                if ((row >> b) & 1) idx_row |= std::size_t{1} << g.targets[b];
            cplx acc = 0.0;
            for (std::size_t col = 0; col < sub; ++col) {
                std::size_t idx_col = base;
                for (std::size_t b = 0; b < k; ++b)
                    if ((col >> b) & 1) idx_col |= std::size_t{1} << g.targets[b];
                acc += u(row, col) * amps[idx_col];
            }
            out[idx_row] = acc;
        }
    }
    return out;
}

} // namespace

cvec apply_sequence_vec(const GateSequence& seq, const cvec& amplitudes) {
    cvec v = amplitudes;
    for (const Gate& g : seq) v = apply_gate_vec(g, v);
    return v;
}

PureState apply_sequence(const GateSequence& seq, const PureState& psi) {
    return make_pure(apply_sequence_vec(seq, psi.amplitudes()));
}

GateSequence invert_sequence(const GateSequence& seq) {
    GateSequence inv;
    inv.reserve(seq.size());
    for (auto it = seq.rbegin(); it != seq.rend(); ++it)
        inv.push_back(it->adjointed());
    return inv;
}

double fidelity(const cvec& u, const cvec& v) {
    return std::norm(inner(u, v));
}

PureState basis_state(std::size_t dim, std::size_t index) {
    cvec v(dim);
    v.at(index) = 1.0;
    return make_pure(std::move(v));
}

} // namespace wv
