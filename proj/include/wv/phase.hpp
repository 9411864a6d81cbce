#pragma once

#include <map>
#include <string>

#include "wv/weakcore.hpp"

namespace wv {

// C = APψ with its Hermitian / anti-Hermitian parts.
// c_r = ½{A, Pψ}, c_i = (1/2i)[A, Pψ], C = c_r + i·c_i.
struct HermitianSplit {
    ComplexMatrix original;  // C = A Pψ
    ComplexMatrix c_r;
    ComplexMatrix c_i;
};

// Output of the four-step phase protocol. phase lies in (−π, π].
struct PhaseReport {
    double x;  // ⟨φ|c_r|φ⟩
    double y;  // ⟨φ|c_i|φ⟩
    double phase;
    double overlap_sq;
    cplx weak_value_reconstructed;  // (x + iy)/overlap_sq
};

HermitianSplit build_C(const ComplexMatrix& a, const PureState& psi);

PhaseReport recover_phase(const ComplexMatrix& a, const PureState& psi, const PureState& phi,
                          double epsilon_mag = 1e-12,
                          double epsilon_orth = kDefaultEpsilonOrth);

// Pauli coefficients c_P = Tr(P M)/2^n over {I,X,Y,Z}^n, zero terms
// (|c| <= 1e-14) omitted. String position: qubit 0 is the rightmost char.
std::map<std::string, cplx> pauli_decompose(const ComplexMatrix& m);

// Σ c_P P for a coefficient map; n inferred from string length.
ComplexMatrix pauli_compose(const std::map<std::string, cplx>& coeffs);

ComplexMatrix pauli_string_matrix(const std::string& s);

} // namespace wv
