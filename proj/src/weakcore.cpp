#include "wv/weakcore.hpp"

#include <cmath>
#include <sstream>

namespace wv {

namespace {

void require_hermitian(const ComplexMatrix& a) {
    if (!is_hermitian(a, 1e-10))
        throw NotHermitian("observable must be Hermitian within 1e-10");
}

struct MatrixElements {
    cplx numerator;  // ⟨φ|A|ψ⟩
    cplx overlap;    // ⟨φ|ψ⟩
};

MatrixElements shared_elements(const ComplexMatrix& a, const PureState& psi,
                               const PureState& phi, double epsilon_orth) {
    require_hermitian(a);
    if (psi.dim() != a.dim() || phi.dim() != a.dim())
        throw DimensionMismatch("state dimension does not match observable");
    const cplx overlap = inner(phi.amplitudes(), psi.amplitudes());
    if (std::norm(overlap) <= epsilon_orth) {
        std::ostringstream os;
        os << "pre- and post-selected states are (nearly) orthogonal: |<phi|psi>|^2 = "
           << std::norm(overlap) << " <= " << epsilon_orth;
        throw OrthogonalStates(os.str());
    }
    return {sandwich(phi.amplitudes(), a, psi.amplitudes()), overlap};
}

} // namespace

cplx weak_value(const ComplexMatrix& a, const PureState& psi, const PureState& phi,
                double epsilon_orth) {
    const MatrixElements e = shared_elements(a, psi, phi, epsilon_orth);
    return e.numerator / e.overlap;
}

WeakValueReport weak_value_product(const ComplexMatrix& a, const PureState& psi,
                                   const PureState& phi, double epsilon_orth) {
    const MatrixElements e = shared_elements(a, psi, phi, epsilon_orth);
    WeakValueReport r;
    r.forward = e.numerator / e.overlap;
    r.reverse = std::conj(e.numerator) / std::conj(e.overlap);
    r.product = r.forward * r.reverse;
    r.overlap_sq = std::norm(e.overlap);
    r.numerator_sq = std::norm(e.numerator);
    r.modulus = std::sqrt(r.numerator_sq / r.overlap_sq);
    r.re_from_mean = 0.5 * (r.forward + r.reverse).real();
    return r;
}

ComplexMatrix effective_operator(const ComplexMatrix& a, const PureState& psi) {
    require_hermitian(a);
    if (psi.dim() != a.dim())
        throw DimensionMismatch("state dimension does not match observable");
    const cvec a_psi = apply(a, psi.amplitudes());
    return outer(a_psi, a_psi);
}

ComplexMatrix effective_operator_mixed(const ComplexMatrix& a, const DensityMatrixState& rho) {
    require_hermitian(a);
    if (rho.dim() != a.dim())
        throw DimensionMismatch("density matrix dimension does not match observable");
    return mul(a, mul(rho.matrix(), a));
}

ExpectationIdentity expectation_identity_check(const ComplexMatrix& a, const PureState& psi,
                                               const PureState& phi, double epsilon_orth) {
    const MatrixElements e = shared_elements(a, psi, phi, epsilon_orth);
    const ComplexMatrix b = effective_operator(a, psi);
    ExpectationIdentity out;
    out.lhs = sandwich(phi.amplitudes(), b, phi.amplitudes()).real();
    out.rhs = std::norm(e.numerator);
    out.ratio = out.lhs / std::norm(e.overlap);
    return out;
}

BStructure analyze_structure(const ComplexMatrix& a, const PureState& psi, double eig_tol) {
    require_hermitian(a);
    if (psi.dim() != a.dim())
        throw DimensionMismatch("state dimension does not match observable");

    const std::size_t d = a.dim();
    BStructure s;
    s.basis = eig_hermitian(a);
    s.basis_eigenvalues = s.basis.eigenvalues;

    s.coefficients_in_basis.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        cplx c = 0.0;
        for (std::size_t k = 0; k < d; ++k)
            c += std::conj(s.basis.eigenvectors(k, i)) * psi.amplitudes()[k];
        s.coefficients_in_basis[i] = c;
    }

    s.coefficient_matrix = ComplexMatrix(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            s.coefficient_matrix(i, j) = s.coefficients_in_basis[i] *
                                         std::conj(s.coefficients_in_basis[j]) *
                                         s.basis_eigenvalues[i] * s.basis_eigenvalues[j];

    // Weight per eigenvalue group; eigenvalues within 1e-9 count as one
    // eigenspace so the classification is basis-independent under degeneracy.
    s.case_tag = BCase::superposition;
    std::size_t i = 0;
    while (i < d) {
        std::size_t j = i;
        double weight = 0.0;
        while (j < d && std::abs(s.basis_eigenvalues[j] - s.basis_eigenvalues[i]) <= 1e-9) {
            weight += std::norm(s.coefficients_in_basis[j]);
            ++j;
        }
        if (weight > 1.0 - eig_tol) {
            s.case_tag = BCase::eigenstate;
            s.eigenvalue = s.basis_eigenvalues[i];
            break;
        }
        i = j;
    }
    return s;
}

ComplexMatrix reconstruct_from_structure(const BStructure& s) {
    const std::size_t d = s.coefficient_matrix.dim();
    ComplexMatrix b(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const cplx w = s.coefficient_matrix(i, j);
            if (w == cplx{}) continue;
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c)
                    b(r, c) += w * s.basis.eigenvectors(r, i) *
                               std::conj(s.basis.eigenvectors(c, j));
        }
    return b;
}

} // namespace wv
