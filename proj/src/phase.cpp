#include "wv/phase.hpp"

#include <cmath>
#include <sstream>

namespace wv {

namespace {

constexpr cplx I{0.0, 1.0};

ComplexMatrix pauli_1q(char c) {
    ComplexMatrix m(2);
    switch (c) {
        case 'I': m(0, 0) = 1.0; m(1, 1) = 1.0; break;
        case 'X': m(0, 1) = 1.0; m(1, 0) = 1.0; break;
        case 'Y': m(0, 1) = -I; m(1, 0) = I; break;
        case 'Z': m(0, 0) = 1.0; m(1, 1) = -1.0; break;
        default: throw ParseError(std::string("invalid Pauli character: ") + c);
    }
    return m;
}

// Tensor product with qubit 0 as the least significant bit: the leftmost
// string character acts on the highest qubit.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t da = a.dim(), db = b.dim();
    ComplexMatrix r(da * db);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j) {
            if (a(i, j) == cplx{}) continue;
            for (std::size_t k = 0; k < db; ++k)
                for (std::size_t l = 0; l < db; ++l)
                    r(i * db + k, j * db + l) = a(i, j) * b(k, l);
        }
    return r;
}

} // namespace

ComplexMatrix pauli_string_matrix(const std::string& s) {
    if (s.empty()) throw ParseError("empty Pauli string");
    ComplexMatrix m = pauli_1q(s[0]);
    for (std::size_t k = 1; k < s.size(); ++k) m = kron(m, pauli_1q(s[k]));
    return m;
}

HermitianSplit build_C(const ComplexMatrix& a, const PureState& psi) {
    if (!is_hermitian(a, 1e-10))
        throw NotHermitian("observable must be Hermitian within 1e-10");
    if (psi.dim() != a.dim())
        throw DimensionMismatch("state dimension does not match observable");

    HermitianSplit s;
    s.original = mul(a, projector_of(psi).matrix);
    const ComplexMatrix c_dag = adjoint(s.original);
    s.c_r = scale(0.5, add(s.original, c_dag));
    s.c_i = scale(cplx{0.0, -0.5}, sub(s.original, c_dag));
    return s;
}

PhaseReport recover_phase(const ComplexMatrix& a, const PureState& psi, const PureState& phi,
                          double epsilon_mag, double epsilon_orth) {
    const double overlap_sq = fidelity(phi.amplitudes(), psi.amplitudes());
    if (overlap_sq <= epsilon_orth) {
        std::ostringstream os;
        os << "pre- and post-selected states are (nearly) orthogonal: |<phi|psi>|^2 = "
           << overlap_sq;
        throw OrthogonalStates(os.str());
    }

    const HermitianSplit split = build_C(a, psi);
    PhaseReport r;
    r.x = sandwich(phi.amplitudes(), split.c_r, phi.amplitudes()).real();
    r.y = sandwich(phi.amplitudes(), split.c_i, phi.amplitudes()).real();
    r.overlap_sq = overlap_sq;
    if (std::hypot(r.x, r.y) <= epsilon_mag)
        throw PhaseUndefined("<phi|C|phi> is (nearly) zero; the weak value's phase is undefined");
    r.phase = std::atan2(r.y, r.x);
    r.weak_value_reconstructed = cplx{r.x, r.y} / overlap_sq;
    return r;
}

std::map<std::string, cplx> pauli_decompose(const ComplexMatrix& m) {
    const std::size_t n = qubit_count(m.dim());
    const double inv_dim = 1.0 / static_cast<double>(m.dim());
    static const char alphabet[] = {'I', 'X', 'Y', 'Z'};

    std::map<std::string, cplx> out;
    std::string label(n, 'I');
    const std::size_t count = std::size_t{1} << (2 * n);
    for (std::size_t code = 0; code < count; ++code) {
        for (std::size_t pos = 0; pos < n; ++pos)
            label[pos] = alphabet[(code >> (2 * (n - 1 - pos))) & 3];
        const ComplexMatrix p = pauli_string_matrix(label);
        // Paulis are Hermitian, so Tr(P†M) = Tr(PM)
        const cplx coeff = trace(mul(p, m)) * inv_dim;
        if (std::abs(coeff) > 1e-14) out[label] = coeff;
    }
    return out;
}

ComplexMatrix pauli_compose(const std::map<std::string, cplx>& coeffs) {
    if (coeffs.empty()) throw ParseError("empty Pauli coefficient map");
    const std::size_t n = coeffs.begin()->first.size();
    ComplexMatrix m(std::size_t{1} << n);
    for (const auto& [label, c] : coeffs) {
        if (label.size() != n)
            throw ParseError("Pauli strings in one map must share a length");
        m = add(m, scale(c, pauli_string_matrix(label)));
    }
    return m;
}

} // namespace wv
