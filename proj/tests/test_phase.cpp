#include <doctest.h>

#include <numbers>

#include "test_util.hpp"
#include "wv/phase.hpp"

using namespace wv;
using testutil::pauli_x;
using testutil::pauli_y;
using testutil::pauli_z;

namespace {

const double r2 = 1.0 / std::numbers::sqrt2;

PureState plus_state() { return make_pure({r2, r2}); }

PureState ry_state(double theta) {
    return make_pure({std::cos(theta / 2), std::sin(theta / 2)});
}

} // namespace

TEST_CASE("build_C for (Z, |+>) gives C = (Z + iY)/2") {
    const HermitianSplit s = build_C(pauli_z(), plus_state());
    CHECK(max_abs(sub(s.c_r, scale(0.5, pauli_z()))) <= 1e-12);
    CHECK(max_abs(sub(s.c_i, scale(0.5, pauli_y()))) <= 1e-12);
}

TEST_CASE("build_C with commuting A and P_psi is Hermitian") {
    const HermitianSplit s = build_C(pauli_z(), basis_state(2, 0));
    CHECK(std::abs(s.original(0, 0) - cplx{1.0}) <= 1e-12);
    CHECK(max_abs(s.c_i) <= 1e-12);
    CHECK(max_abs(sub(s.c_r, s.original)) <= 1e-12);
}

TEST_CASE("Hermitian split invariants for random inputs") {
    std::mt19937_64 rng(808);
    for (std::size_t d : {2, 4}) {
        for (int rep = 0; rep < 20; ++rep) {
            const ComplexMatrix a = testutil::random_hermitian(d, rng);
            const PureState psi = testutil::random_state(d, rng);
            const HermitianSplit s = build_C(a, psi);

            CHECK(is_hermitian(s.c_r, 1e-12));
            CHECK(is_hermitian(s.c_i, 1e-12));
            const ComplexMatrix rebuilt = add(s.c_r, scale(cplx{0.0, 1.0}, s.c_i));
            CHECK(max_abs(sub(rebuilt, s.original)) <= 1e-12);

            // anticommutator / commutator forms
            const ComplexMatrix p = projector_of(psi).matrix;
            const ComplexMatrix anti = scale(0.5, add(mul(a, p), mul(p, a)));
            const ComplexMatrix comm =
                scale(cplx{0.0, -0.5}, sub(mul(a, p), mul(p, a)));
            CHECK(max_abs(sub(s.c_r, anti)) <= 1e-12);
            CHECK(max_abs(sub(s.c_i, comm)) <= 1e-12);

            // CC' = (A P)(P A) = A P A = B ties the phase operator back to
            // the modulus operator
            const ComplexMatrix cct = mul(s.original, adjoint(s.original));
            CHECK(max_abs(sub(cct, effective_operator(a, psi))) <= 1e-10);
        }
    }
}

TEST_CASE("recover_phase for a purely imaginary weak value") {
    const PureState phi = make_pure({r2, cplx{0.0, 1.0} * r2});
    const PhaseReport r = recover_phase(pauli_x(), basis_state(2, 0), phi);
    CHECK(std::abs(r.x) <= 1e-12);
    CHECK(r.y == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(r.phase == doctest::Approx(-std::numbers::pi / 2).epsilon(1e-12));
    CHECK(std::abs(r.weak_value_reconstructed - cplx{0.0, -1.0}) <= 1e-10);
}

TEST_CASE("recover_phase on the appendix configuration") {
    const PhaseReport r =
        recover_phase(pauli_z(), plus_state(), ry_state(std::numbers::pi / 3));
    CHECK(r.x == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(std::abs(r.y) <= 1e-12);
    CHECK(std::abs(r.phase) <= 1e-12);
}

TEST_CASE("recover_phase with phi = Ry(-pi/3)|0>") {
    // Frozen from the arg(<phi|Z|psi>/<phi|psi>) oracle: both matrix elements
    // are positive reals here, so the weak value is +(2+sqrt(3)) and the
    // phase is 0, not pi.
    const PureState phi = ry_state(-std::numbers::pi / 3);
    const PureState psi = plus_state();
    const cplx oracle_w =
        testutil::oracle_weak_value(pauli_z(), psi.amplitudes(), phi.amplitudes());
    CHECK(oracle_w.real() == doctest::Approx(2.0 + std::sqrt(3.0)).epsilon(1e-12));
    CHECK(std::abs(oracle_w.imag()) <= 1e-12);

    const PhaseReport r = recover_phase(pauli_z(), psi, phi);
    CHECK(r.phase == doctest::Approx(std::arg(oracle_w)).epsilon(1e-12));
    CHECK(std::abs(r.weak_value_reconstructed - oracle_w) <= 1e-10);
}

TEST_CASE("a vanishing weak value has no phase") {
    // <+|Z|+> = 0 with psi = phi = |+>
    CHECK_THROWS_AS(recover_phase(pauli_z(), plus_state(), plus_state()), PhaseUndefined);
}

TEST_CASE("recovered phase matches arg of the weak value for random inputs") {
    std::mt19937_64 rng(1337);
    int accepted = 0;
    while (accepted < 60) {
        const std::size_t d = (rng() % 2) ? 2 : 4;
        const ComplexMatrix a = testutil::random_hermitian(d, rng);
        const PureState psi = testutil::random_state(d, rng);
        const PureState phi = testutil::random_state(d, rng);
        const cplx ov = testutil::oracle_inner(phi.amplitudes(), psi.amplitudes());
        if (std::norm(ov) <= 1e-6) continue;
        const cplx w = testutil::oracle_weak_value(a, psi.amplitudes(), phi.amplitudes());
        if (std::abs(w) <= 1e-6) continue;
        ++accepted;

        const PhaseReport r = recover_phase(a, psi, phi);
        CHECK(std::abs(r.phase - std::arg(w)) <= 1e-10);
        CHECK(std::abs(r.weak_value_reconstructed - w) <= 1e-10);
        CHECK(std::abs(cplx{r.x, r.y} -
                       testutil::oracle_sandwich(phi.amplitudes(),
                                                 mul(a, projector_of(psi).matrix),
                                                 phi.amplitudes())) <= 1e-12);
    }
}

TEST_CASE("pauli_decompose of the (Z, |+>) split") {
    const HermitianSplit s = build_C(pauli_z(), plus_state());

    const auto cr = pauli_decompose(s.c_r);
    REQUIRE(cr.size() == 1);
    CHECK(cr.count("Z") == 1);
    CHECK(std::abs(cr.at("Z") - cplx{0.5}) <= 1e-12);

    const auto ci = pauli_decompose(s.c_i);
    REQUIRE(ci.size() == 1);
    CHECK(ci.count("Y") == 1);
    CHECK(std::abs(ci.at("Y") - cplx{0.5}) <= 1e-12);
}

TEST_CASE("pauli_decompose of the identity") {
    const auto m = pauli_decompose(ComplexMatrix::identity(4));
    REQUIRE(m.size() == 1);
    CHECK(std::abs(m.at("II") - cplx{1.0}) <= 1e-12);
}

TEST_CASE("pauli_decompose rejects non power-of-two dimensions") {
    CHECK_THROWS_AS(pauli_decompose(ComplexMatrix(3)), NotPowerOfTwoDim);
}

TEST_CASE("pauli round trip for seeded random matrices") {
    std::mt19937_64 rng(90210);
    for (std::size_t n : {1, 2, 3}) {
        const std::size_t d = std::size_t{1} << n;
        for (int rep = 0; rep < 12; ++rep) {
            ComplexMatrix m(d);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) m(i, j) = testutil::random_cplx(rng);
            const auto coeffs = pauli_decompose(m);
            CHECK(max_abs(sub(pauli_compose(coeffs), m)) <= 1e-12);

            // Hermitian input -> real coefficients
            const ComplexMatrix h = testutil::random_hermitian(d, rng);
            for (const auto& [label, c] : pauli_decompose(h))
                CHECK(std::abs(c.imag()) <= 1e-12);
        }
    }
}
