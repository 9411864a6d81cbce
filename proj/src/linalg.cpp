#include "wv/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace wv {

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(const std::vector<cvec>& rows) {
    const std::size_t d = rows.size();
    ComplexMatrix m(d);
    for (std::size_t i = 0; i < d; ++i) {
        if (rows[i].size() != d)
            throw DimensionMismatch("matrix rows must all have length equal to the row count");
        for (std::size_t j = 0; j < d; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

bool ComplexMatrix::finite() const {
    for (const auto& z : a_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

double max_abs(const ComplexMatrix& m) {
    double mx = 0.0;
    for (const auto& z : m.data()) mx = std::max(mx, std::abs(z));
    return mx;
}

double frobenius_norm(const ComplexMatrix& m) {
    double s = 0.0;
    for (const auto& z : m.data()) s += std::norm(z);
    return std::sqrt(s);
}

cplx trace(const ComplexMatrix& m) {
    cplx t = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i) t += m(i, i);
    return t;
}

static void require_same_dim(const ComplexMatrix& m, const ComplexMatrix& n) {
    if (m.dim() != n.dim()) {
        std::ostringstream os;
        os << "dimension mismatch: " << m.dim() << " vs " << n.dim();
        throw DimensionMismatch(os.str());
    }
}

ComplexMatrix add(const ComplexMatrix& m, const ComplexMatrix& n) {
    require_same_dim(m, n);
    ComplexMatrix r(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) r(i, j) = m(i, j) + n(i, j);
    return r;
}

ComplexMatrix sub(const ComplexMatrix& m, const ComplexMatrix& n) {
    require_same_dim(m, n);
    ComplexMatrix r(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) r(i, j) = m(i, j) - n(i, j);
    return r;
}

ComplexMatrix scale(cplx s, const ComplexMatrix& m) {
    ComplexMatrix r(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) r(i, j) = s * m(i, j);
    return r;
}

ComplexMatrix mul(const ComplexMatrix& m, const ComplexMatrix& n) {
    require_same_dim(m, n);
    const std::size_t d = m.dim();
    ComplexMatrix r(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) {
            const cplx mik = m(i, k);
            if (mik == cplx{}) continue;
            for (std::size_t j = 0; j < d; ++j) r(i, j) += mik * n(k, j);
        }
    return r;
}

ComplexMatrix adjoint(const ComplexMatrix& m) {
    ComplexMatrix r(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) r(j, i) = std::conj(m(i, j));
    return r;
}

cvec apply(const ComplexMatrix& m, const cvec& v) {
    if (m.dim() != v.size()) throw DimensionMismatch("matrix-vector dimension mismatch");
    cvec r(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < m.dim(); ++j) s += m(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

ComplexMatrix outer(const cvec& u, const cvec& v) {
    if (u.size() != v.size()) throw DimensionMismatch("outer product dimension mismatch");
    ComplexMatrix r(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) r(i, j) = u[i] * std::conj(v[j]);
    return r;
}

cplx sandwich(const cvec& u, const ComplexMatrix& m, const cvec& v) {
    if (u.size() != m.dim() || v.size() != m.dim())
        throw DimensionMismatch("sandwich dimension mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i) {
        cplx row = 0.0;
        for (std::size_t j = 0; j < m.dim(); ++j) row += m(i, j) * v[j];
        s += std::conj(u[i]) * row;
    }
    return s;
}

cplx inner(const cvec& u, const cvec& v) {
    if (u.size() != v.size()) throw DimensionMismatch("inner product dimension mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
    return s;
}

double norm2(const cvec& v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return s;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    double dev = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = i; j < m.dim(); ++j)
            dev = std::max(dev, std::abs(m(i, j) - std::conj(m(j, i))));
    return dev <= tol * std::max(1.0, max_abs(m));
}

namespace {

double off_diagonal_norm(const ComplexMatrix& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            if (i != j) s += std::norm(m(i, j));
    return std::sqrt(s);
}

// Closed-form orthonormal eigenvectors of the Hermitian 2x2 block
// [[alpha, g],[conj(g), beta]], valid when |g| > 0.
struct Rotation2 {
    cplx u00, u01, u10, u11;  // columns are the eigenvectors
};

Rotation2 block_rotation(double alpha, double beta, cplx g) {
    // Shifts x = λ − α solve x² − (β−α)x − |g|² = 0. Take the
    // larger-magnitude root directly and the other via the product of
    // roots, which avoids cancellation when |g| is small.
    const double diff = beta - alpha;
    const double abs_g = std::abs(g);
    const double disc = std::hypot(diff, 2.0 * abs_g);
    const double x_big = (diff >= 0.0) ? 0.5 * (diff + disc) : 0.5 * (diff - disc);
    const double x_small = -(abs_g * abs_g) / x_big;
    const double x_lo = std::min(x_big, x_small);
    const double x_hi = std::max(x_big, x_small);

    cvec v1 = {g, cplx(x_lo, 0.0)};
    cvec v2 = {g, cplx(x_hi, 0.0)};
    const double n1 = std::sqrt(norm2(v1));
    const double n2 = std::sqrt(norm2(v2));
    return {v1[0] / n1, v2[0] / n2, v1[1] / n1, v2[1] / n2};
}

} // namespace

EigenDecomposition eig_hermitian(const ComplexMatrix& input) {
    if (!is_hermitian(input, 1e-10))
        throw NotHermitian("eig_hermitian requires a Hermitian matrix (tol 1e-10)");

    const std::size_t d = input.dim();
    ComplexMatrix m = input;
    ComplexMatrix v = ComplexMatrix::identity(d);

    const double scale = std::max(1.0, frobenius_norm(input));
    const double threshold = 1e-14 * static_cast<double>(d) * scale;
    const int max_sweeps = 100;

    bool converged = off_diagonal_norm(m) <= threshold;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                const cplx g = m(p, q);
                if (std::abs(g) <= threshold / static_cast<double>(d)) continue;

                const Rotation2 rot =
                    block_rotation(m(p, p).real(), m(q, q).real(), g);

                // M <- U† M U, columns then rows
                for (std::size_t i = 0; i < d; ++i) {
                    const cplx mp = m(i, p), mq = m(i, q);
                    m(i, p) = mp * rot.u00 + mq * rot.u10;
                    m(i, q) = mp * rot.u01 + mq * rot.u11;
                }
                for (std::size_t j = 0; j < d; ++j) {
                    const cplx mp = m(p, j), mq = m(q, j);
                    m(p, j) = std::conj(rot.u00) * mp + std::conj(rot.u10) * mq;
                    m(q, j) = std::conj(rot.u01) * mp + std::conj(rot.u11) * mq;
                }
                // V <- V U
                for (std::size_t i = 0; i < d; ++i) {
                    const cplx vp = v(i, p), vq = v(i, q);
                    v(i, p) = vp * rot.u00 + vq * rot.u10;
                    v(i, q) = vp * rot.u01 + vq * rot.u11;
                }
            }
        }
        converged = off_diagonal_norm(m) <= threshold;
    }
    if (!converged)
        throw NoConvergence("Jacobi eigendecomposition did not converge in 100 sweeps");

    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return m(a, a).real() < m(b, b).real(); });

    EigenDecomposition out;
    out.eigenvalues.resize(d);
    out.eigenvectors = ComplexMatrix(d);
    for (std::size_t k = 0; k < d; ++k) {
        out.eigenvalues[k] = m(order[k], order[k]).real();
        for (std::size_t i = 0; i < d; ++i) out.eigenvectors(i, k) = v(i, order[k]);
    }
    return out;
}

ComplexMatrix exp_hermitian_times(const ComplexMatrix& a, cplx scale) {
    const EigenDecomposition ed = eig_hermitian(a);
    const std::size_t d = a.dim();
    ComplexMatrix r(d);
    for (std::size_t k = 0; k < d; ++k) {
        const cplx f = std::exp(scale * ed.eigenvalues[k]);
        for (std::size_t i = 0; i < d; ++i) {
            const cplx fi = f * ed.eigenvectors(i, k);
            for (std::size_t j = 0; j < d; ++j)
                r(i, j) += fi * std::conj(ed.eigenvectors(j, k));
        }
    }
    return r;
}

} // namespace wv
