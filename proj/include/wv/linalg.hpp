#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "wv/errors.hpp"

namespace wv {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

// Dense complex square matrix, row-major.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix from_rows(const std::vector<cvec>& rows);

    std::size_t dim() const { return dim_; }
    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }

    const std::vector<cplx>& data() const { return a_; }

    bool finite() const;

private:
    std::size_t dim_ = 0;
    std::vector<cplx> a_;
};

struct EigenDecomposition {
    std::vector<double> eigenvalues;   // ascending
    ComplexMatrix eigenvectors;        // column i pairs with eigenvalues[i]
};

// --- elementwise / norms ---
double max_abs(const ComplexMatrix& m);
double frobenius_norm(const ComplexMatrix& m);
cplx trace(const ComplexMatrix& m);

// --- algebra ---
ComplexMatrix add(const ComplexMatrix& m, const ComplexMatrix& n);
ComplexMatrix sub(const ComplexMatrix& m, const ComplexMatrix& n);
ComplexMatrix scale(cplx s, const ComplexMatrix& m);
ComplexMatrix mul(const ComplexMatrix& m, const ComplexMatrix& n);
ComplexMatrix adjoint(const ComplexMatrix& m);
cvec apply(const ComplexMatrix& m, const cvec& v);

// outer(u, v) = u v†
ComplexMatrix outer(const cvec& u, const cvec& v);

// sandwich(u, M, v) = u† M v
cplx sandwich(const cvec& u, const ComplexMatrix& m, const cvec& v);

cplx inner(const cvec& u, const cvec& v);  // u† v
double norm2(const cvec& v);               // Σ |v_i|²

bool is_hermitian(const ComplexMatrix& m, double tol);

// Cyclic Jacobi eigendecomposition of a Hermitian matrix.
// Off-diagonal Frobenius threshold 1e-14·dim (relative to input scale),
// capped at 100 sweeps.
EigenDecomposition eig_hermitian(const ComplexMatrix& m);

// Σ_i e^{scale·λ_i} v_i v_i† for Hermitian A.
ComplexMatrix exp_hermitian_times(const ComplexMatrix& a, cplx scale);

} // namespace wv
