#include <doctest.h>

#include <numbers>

#include "test_util.hpp"
#include "wv/weakcore.hpp"

using namespace wv;
using testutil::pauli_x;
using testutil::pauli_z;

namespace {

const double r2 = 1.0 / std::numbers::sqrt2;

PureState plus_state() { return make_pure({r2, r2}); }

PureState appendix_phi() {
    return make_pure({std::cos(std::numbers::pi / 6), std::sin(std::numbers::pi / 6)});
}

} // namespace

TEST_CASE("weak_value with identical selection is the expectation value") {
    std::mt19937_64 rng(404);
    for (int rep = 0; rep < 20; ++rep) {
        const ComplexMatrix a = testutil::random_hermitian(4, rng);
        const PureState psi = testutil::random_state(4, rng);
        const cplx wvval = weak_value(a, psi, psi);
        const cplx expect = testutil::oracle_sandwich(psi.amplitudes(), a, psi.amplitudes());
        CHECK(std::abs(wvval - expect) <= 1e-10);
    }
}

TEST_CASE("weak value of the appendix setup is 2 - sqrt(3)") {
    const cplx w = weak_value(pauli_z(), plus_state(), appendix_phi());
    CHECK(w.real() == doctest::Approx(2.0 - std::sqrt(3.0)).epsilon(1e-12));
    CHECK(std::abs(w.imag()) <= 1e-12);
}

TEST_CASE("weak value can be purely imaginary") {
    const PureState phi = make_pure({r2, cplx{0.0, 1.0} * r2});
    const cplx w = weak_value(pauli_x(), basis_state(2, 0), phi);
    CHECK(std::abs(w - cplx{0.0, -1.0}) <= 1e-12);
}

TEST_CASE("orthogonal selections are rejected") {
    CHECK_THROWS_AS(weak_value(pauli_z(), basis_state(2, 0), basis_state(2, 1)),
                    OrthogonalStates);
}

TEST_CASE("non-Hermitian observables are rejected") {
    ComplexMatrix m(2);
    m(0, 1) = 1.0;
    CHECK_THROWS_AS(weak_value(m, basis_state(2, 0), basis_state(2, 0)), NotHermitian);
}

TEST_CASE("weak_value_product on the appendix configuration") {
    const WeakValueReport r = weak_value_product(pauli_z(), plus_state(), appendix_phi());
    const double s3 = std::sqrt(3.0);
    CHECK(r.product.real() == doctest::Approx((2.0 - s3) * (2.0 - s3)).epsilon(1e-12));
    CHECK(std::abs(r.product.imag()) <= 1e-12);
    CHECK(r.overlap_sq == doctest::Approx((2.0 + s3) / 4.0).epsilon(1e-12));
    CHECK(r.numerator_sq == doctest::Approx((2.0 - s3) / 4.0).epsilon(1e-12));
    CHECK(r.re_from_mean == doctest::Approx(r.forward.real()).epsilon(1e-12));
}

TEST_CASE("weak_value_product trivial and conjugate-pair cases") {
    const WeakValueReport eig = weak_value_product(pauli_z(), basis_state(2, 0),
                                                   basis_state(2, 0));
    CHECK(eig.product.real() == doctest::Approx(1.0).epsilon(1e-12));

    const PureState phi = make_pure({r2, cplx{0.0, 1.0} * r2});
    const WeakValueReport im = weak_value_product(pauli_x(), basis_state(2, 0), phi);
    CHECK(std::abs(im.forward - cplx{0.0, -1.0}) <= 1e-12);
    CHECK(std::abs(im.reverse - cplx{0.0, 1.0}) <= 1e-12);
    CHECK(im.product.real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("effective_operator worked examples") {
    const ComplexMatrix b0 = effective_operator(pauli_z(), basis_state(2, 0));
    CHECK(std::abs(b0(0, 0) - cplx{1.0}) <= 1e-15);
    CHECK(std::abs(b0(1, 1)) <= 1e-15);

    // Z|+> = |->, so B = |-><-|
    const ComplexMatrix bp = effective_operator(pauli_z(), plus_state());
    CHECK(bp(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(bp(0, 1).real() == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(bp(1, 0).real() == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(bp(1, 1).real() == doctest::Approx(0.5).epsilon(1e-12));

    const ComplexMatrix bx = effective_operator(pauli_x(), basis_state(2, 0));
    CHECK(std::abs(bx(0, 0)) <= 1e-15);
    CHECK(std::abs(bx(1, 1) - cplx{1.0}) <= 1e-15);
}

TEST_CASE("effective_operator is Hermitian PSD rank <= 1") {
    std::mt19937_64 rng(606);
    for (std::size_t d : {2, 4, 8}) {
        for (int rep = 0; rep < 10; ++rep) {
            const ComplexMatrix a = testutil::random_hermitian(d, rng);
            const PureState psi = testutil::random_state(d, rng);
            const ComplexMatrix b = effective_operator(a, psi);
            CHECK(is_hermitian(b, 1e-10));
            const EigenDecomposition ed = eig_hermitian(b);
            CHECK(ed.eigenvalues.front() >= -1e-10);
            // all but the largest eigenvalue vanish
            for (std::size_t i = 0; i + 1 < d; ++i)
                CHECK(std::abs(ed.eigenvalues[i]) <= 1e-10);
            // agrees with the loop oracle A P A
            const ComplexMatrix oracle =
                testutil::oracle_apa(a, projector_of(psi).matrix);
            CHECK(max_abs(sub(b, oracle)) <= 1e-10);
        }
    }
}

TEST_CASE("expectation identity on the appendix configuration") {
    const ExpectationIdentity id =
        expectation_identity_check(pauli_z(), plus_state(), appendix_phi());
    const double expect = (2.0 - std::sqrt(3.0)) / 4.0;
    CHECK(id.lhs == doctest::Approx(expect).epsilon(1e-12));
    CHECK(id.rhs == doctest::Approx(expect).epsilon(1e-12));
    CHECK(std::abs(id.lhs - id.rhs) <= 1e-10);
}

TEST_CASE("expectation identity vanishes when phi is orthogonal to A psi") {
    const ExpectationIdentity id =
        expectation_identity_check(pauli_z(), plus_state(), plus_state());
    CHECK(std::abs(id.lhs) <= 1e-12);
    CHECK(std::abs(id.rhs) <= 1e-12);
}

TEST_CASE("bidirectional identities hold for seeded random inputs") {
    std::mt19937_64 rng(4242);
    int accepted = 0;
    while (accepted < 60) {
        const std::size_t d = 2u << (rng() % 3);  // 2, 4, 8
        const ComplexMatrix a = testutil::random_hermitian(d, rng);
        const PureState psi = testutil::random_state(d, rng);
        const PureState phi = testutil::random_state(d, rng);
        if (std::norm(testutil::oracle_inner(phi.amplitudes(), psi.amplitudes())) <= 1e-6)
            continue;
        ++accepted;

        const WeakValueReport r = weak_value_product(a, psi, phi);
        const cplx w = testutil::oracle_weak_value(a, psi.amplitudes(), phi.amplitudes());
        CHECK(std::abs(r.forward - w) <= 1e-10);
        CHECK(std::abs(r.reverse - std::conj(r.forward)) <= 1e-10);
        CHECK(std::abs(r.product - std::norm(w)) <= 1e-10);
        CHECK(std::abs(r.product.imag()) <= 1e-10);
        CHECK(r.product.real() >= -1e-12);
        CHECK(std::abs(r.modulus * r.modulus * r.overlap_sq - r.numerator_sq) <= 1e-10);

        const ExpectationIdentity id = expectation_identity_check(a, psi, phi);
        CHECK(std::abs(id.lhs - id.rhs) <= 1e-10);
        CHECK(std::abs(id.ratio - r.product.real()) <= 1e-10);
    }
}

TEST_CASE("effective_operator_mixed on the appendix density matrix") {
    const DensityMatrixState rho =
        mix({{0.75, basis_state(2, 0)}, {0.25, basis_state(2, 1)}});
    const ComplexMatrix b = effective_operator_mixed(pauli_z(), rho);
    CHECK(b(0, 0).real() == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(b(1, 1).real() == doctest::Approx(0.25).epsilon(1e-12));

    const PureState phi = appendix_phi();
    const double exp_b = sandwich(phi.amplitudes(), b, phi.amplitudes()).real();
    CHECK(exp_b == doctest::Approx(0.625).epsilon(1e-12));
}

TEST_CASE("effective_operator_mixed reduces to the pure case") {
    std::mt19937_64 rng(9001);
    const PureState psi = testutil::random_state(4, rng);
    const ComplexMatrix a = testutil::random_hermitian(4, rng);
    const DensityMatrixState rho = make_density(projector_of(psi).matrix);
    CHECK(max_abs(sub(effective_operator_mixed(a, rho), effective_operator(a, psi))) <=
          1e-10);
}

TEST_CASE("effective_operator_mixed equals the incoherent average") {
    std::mt19937_64 rng(515);
    const ComplexMatrix a = testutil::random_hermitian(4, rng);
    const DensityMatrixState rho = mix({{0.2, basis_state(4, 0)},
                                        {0.3, basis_state(4, 1)},
                                        {0.5, basis_state(4, 3)}});
    const ComplexMatrix b_rho = effective_operator_mixed(a, rho);

    // linearity in rho, spectral side computed independently
    ComplexMatrix weighted(4);
    const EigenDecomposition& ed = rho.spectral();
    for (std::size_t k = 0; k < 4; ++k) {
        if (ed.eigenvalues[k] <= 1e-12) continue;
        cvec v(4);
        for (std::size_t i = 0; i < 4; ++i) v[i] = ed.eigenvectors(i, k);
        weighted = add(weighted,
                       scale(ed.eigenvalues[k], effective_operator(a, make_pure(v))));
    }
    CHECK(max_abs(sub(b_rho, weighted)) <= 1e-10);

    // <phi|B_rho|phi> is the weighted sum of squared transition amplitudes
    const PureState phi = testutil::random_state(4, rng);
    double rhs = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        if (ed.eigenvalues[k] <= 1e-12) continue;
        cvec v(4);
        for (std::size_t i = 0; i < 4; ++i) v[i] = ed.eigenvectors(i, k);
        rhs += ed.eigenvalues[k] *
               std::norm(testutil::oracle_sandwich(phi.amplitudes(), a, v));
    }
    CHECK(std::abs(sandwich(phi.amplitudes(), b_rho, phi.amplitudes()).real() - rhs) <=
          1e-10);
}

TEST_CASE("analyze_structure classifies eigenstates and superpositions") {
    const BStructure eig = analyze_structure(pauli_z(), basis_state(2, 0));
    CHECK(eig.case_tag == BCase::eigenstate);
    REQUIRE(eig.eigenvalue.has_value());
    CHECK(*eig.eigenvalue == doctest::Approx(1.0).epsilon(1e-10));

    const BStructure sup = analyze_structure(pauli_z(), plus_state());
    CHECK(sup.case_tag == BCase::superposition);
    CHECK(sup.coefficient_matrix(0, 0).real() == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(sup.coefficient_matrix(1, 1).real() == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(sup.coefficient_matrix(0, 1).real() == doctest::Approx(-0.5).epsilon(1e-10));
    CHECK(sup.coefficient_matrix(1, 0).real() == doctest::Approx(-0.5).epsilon(1e-10));
}

TEST_CASE("analyze_structure boundary behavior at the weight threshold") {
    const double eps = 1e-8;
    const double n = std::sqrt(1.0 + eps * eps);
    const BStructure s =
        analyze_structure(pauli_z(), make_pure({1.0 / n, eps / n}), 1e-10);
    // residual weight eps^2 = 1e-16 is below the 1e-10 threshold
    CHECK(s.case_tag == BCase::eigenstate);
}

TEST_CASE("eigenstate case gives B = a^2 P_psi") {
    std::mt19937_64 rng(321);
    for (int rep = 0; rep < 10; ++rep) {
        const ComplexMatrix a = testutil::random_hermitian(4, rng);
        const EigenDecomposition ed = eig_hermitian(a);
        for (std::size_t k = 0; k < 4; ++k) {
            cvec v(4);
            for (std::size_t i = 0; i < 4; ++i) v[i] = ed.eigenvectors(i, k);
            const PureState psi = make_pure(v);
            const BStructure s = analyze_structure(a, psi);
            CHECK(s.case_tag == BCase::eigenstate);
            const double lam = *s.eigenvalue;
            const ComplexMatrix expect = scale(lam * lam, projector_of(psi).matrix);
            CHECK(max_abs(sub(effective_operator(a, psi), expect)) <= 1e-10);
        }
    }
}

TEST_CASE("structure reconstruction equals the effective operator") {
    std::mt19937_64 rng(646);
    for (std::size_t d : {2, 4, 8}) {
        for (int rep = 0; rep < 8; ++rep) {
            const ComplexMatrix a = testutil::random_hermitian(d, rng);
            const PureState psi = testutil::random_state(d, rng);
            const BStructure s = analyze_structure(a, psi);
            CHECK(is_hermitian(s.coefficient_matrix, 1e-10));
            CHECK(max_abs(sub(reconstruct_from_structure(s),
                              effective_operator(a, psi))) <= 1e-10);
        }
    }
}
