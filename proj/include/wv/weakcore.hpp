#pragma once

#include <optional>

#include "wv/qstate.hpp"

namespace wv {

constexpr double kDefaultEpsilonOrth = 1e-12;  // guard on |⟨φ|ψ⟩|²

// Forward/reverse weak values, their product, and the strong-expectation
// decomposition that produced them. All fields come from one evaluation of
// ⟨φ|A|ψ⟩ and ⟨φ|ψ⟩ so the internal identities hold by construction.
struct WeakValueReport {
    cplx forward;        // A_w(ψ→φ)
    cplx reverse;        // A_w(φ→ψ) = conj(forward) for Hermitian A
    cplx product;        // C_ψφ, real and non-negative
    double modulus;      // |A_w|
    double overlap_sq;   // |⟨φ|ψ⟩|²
    double numerator_sq; // |⟨φ|A|ψ⟩|²
    double re_from_mean; // (forward + reverse)/2
};

enum class BCase { eigenstate, superposition };

// Structure of B = APψA in the eigenbasis of A.
struct BStructure {
    BCase case_tag;
    std::optional<double> eigenvalue;  // set for the eigenstate case
    std::vector<double> basis_eigenvalues;
    cvec coefficients_in_basis;        // c_i = ⟨a_i|ψ⟩
    ComplexMatrix coefficient_matrix;  // (i,j) -> c_i c_j* a_i a_j
    EigenDecomposition basis;          // the eigenbasis used
};

cplx weak_value(const ComplexMatrix& a, const PureState& psi, const PureState& phi,
                double epsilon_orth = kDefaultEpsilonOrth);

WeakValueReport weak_value_product(const ComplexMatrix& a, const PureState& psi,
                                   const PureState& phi,
                                   double epsilon_orth = kDefaultEpsilonOrth);

// B = A Pψ A = |Aψ⟩⟨Aψ|
ComplexMatrix effective_operator(const ComplexMatrix& a, const PureState& psi);

// B_ρ = A ρ A
ComplexMatrix effective_operator_mixed(const ComplexMatrix& a, const DensityMatrixState& rho);

struct ExpectationIdentity {
    double lhs;    // ⟨φ|B|φ⟩
    double rhs;    // |⟨φ|A|ψ⟩|²
    double ratio;  // lhs / ⟨φ|Pψ|φ⟩
};

ExpectationIdentity expectation_identity_check(const ComplexMatrix& a, const PureState& psi,
                                               const PureState& phi,
                                               double epsilon_orth = kDefaultEpsilonOrth);

BStructure analyze_structure(const ComplexMatrix& a, const PureState& psi,
                             double eig_tol = 1e-10);

// Reassemble Σ_{ij} c_i c_j* a_i a_j |a_i⟩⟨a_j| from an analysis result.
ComplexMatrix reconstruct_from_structure(const BStructure& s);

} // namespace wv
