#include "wv/noise.hpp"

#include <cmath>
#include <sstream>

namespace wv {

namespace {

void check_parameter(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        std::ostringstream os;
        os << name << " must lie in [0, 1], got " << p;
        throw BadParameter(os.str());
    }
}

void check_completeness(const KrausChannel& ch) {
    const double res = completeness_residual(ch);
    if (res > 1e-9) {
        std::ostringstream os;
        os << "Kraus set for '" << ch.label
           << "' is not trace preserving: max |sum K'K - I| = " << res;
        throw ChannelNotTracePreserving(os.str());
    }
}

} // namespace

double completeness_residual(const KrausChannel& ch) {
    const std::size_t d = ch.dim();
    ComplexMatrix sum(d);
    for (const auto& k : ch.kraus_ops) {
        if (k.dim() != d) throw DimensionMismatch("Kraus operators have differing dimension");
        sum = add(sum, mul(adjoint(k), k));
    }
    return max_abs(sub(sum, ComplexMatrix::identity(d)));
}

KrausChannel depolarizing(double epsilon) {
    check_parameter(epsilon, "depolarizing epsilon");
    std::ostringstream label;
    label << "depolarizing(" << epsilon << ")";
    if (epsilon == 0.0)
        return {{ComplexMatrix::identity(2)}, label.str()};

    const std::string paulis = "IXYZ";
    std::vector<ComplexMatrix> ops;
    for (std::size_t k = 0; k < 4; ++k) {
        const double w = (k == 0) ? 1.0 - 0.75 * epsilon : 0.25 * epsilon;
        ComplexMatrix m(2);
        switch (paulis[k]) {
            case 'I': m(0, 0) = 1.0; m(1, 1) = 1.0; break;
            case 'X': m(0, 1) = 1.0; m(1, 0) = 1.0; break;
            case 'Y': m(0, 1) = cplx{0.0, -1.0}; m(1, 0) = cplx{0.0, 1.0}; break;
            case 'Z': m(0, 0) = 1.0; m(1, 1) = -1.0; break;
        }
        ops.push_back(scale(std::sqrt(w), m));
    }
    return {std::move(ops), label.str()};
}

KrausChannel amplitude_damping(double gamma) {
    check_parameter(gamma, "amplitude damping gamma");
    ComplexMatrix k0(2), k1(2);
    k0(0, 0) = 1.0;
    k0(1, 1) = std::sqrt(1.0 - gamma);
    k1(0, 1) = std::sqrt(gamma);
    std::ostringstream label;
    label << "amplitude_damping(" << gamma << ")";
    return {{k0, k1}, label.str()};
}

KrausChannel phase_damping(double lambda) {
    check_parameter(lambda, "phase damping lambda");
    ComplexMatrix k0(2), k1(2);
    k0(0, 0) = 1.0;
    k0(1, 1) = std::sqrt(1.0 - lambda);
    k1(1, 1) = std::sqrt(lambda);
    std::ostringstream label;
    label << "phase_damping(" << lambda << ")";
    return {{k0, k1}, label.str()};
}

KrausChannel coherent_overrotation(const ComplexMatrix& a, double delta_theta) {
    std::ostringstream label;
    label << "overrotation(" << delta_theta << ")";
    return {{exp_hermitian_times(a, cplx{0.0, -delta_theta})}, label.str()};
}

KrausChannel explicit_channel(std::vector<ComplexMatrix> ops, std::string label) {
    if (ops.empty()) throw BadParameter("Kraus channel needs at least one operator");
    KrausChannel ch{std::move(ops), std::move(label)};
    check_completeness(ch);
    return ch;
}

KrausChannel ideal_gate(const ComplexMatrix& a, double theta) {
    std::ostringstream label;
    label << "ideal_gate(theta=" << theta << ")";
    return {{exp_hermitian_times(a, cplx{0.0, -theta})}, label.str()};
}

KrausChannel noisy_gate(const ComplexMatrix& a, double theta, const KrausChannel& noise) {
    const ComplexMatrix u = exp_hermitian_times(a, cplx{0.0, -theta});
    std::vector<ComplexMatrix> ops;
    ops.reserve(noise.kraus_ops.size());
    for (const auto& k : noise.kraus_ops) ops.push_back(mul(k, u));
    std::ostringstream label;
    label << noise.label << " after ideal_gate(theta=" << theta << ")";
    return {std::move(ops), label.str()};
}

DensityMatrixState apply_channel(const KrausChannel& ch, const DensityMatrixState& rho) {
    if (ch.dim() != rho.dim())
        throw DimensionMismatch("channel dimension does not match density matrix");
    check_completeness(ch);

    ComplexMatrix out(rho.dim());
    for (const auto& k : ch.kraus_ops)
        out = add(out, mul(k, mul(rho.matrix(), adjoint(k))));
    return make_density(std::move(out));
}

WitnessReport witness_run(const ComplexMatrix& a, const PureState& psi, double theta,
                          const KrausChannel& channel) {
    if (!is_hermitian(a, 1e-10))
        throw NotHermitian("gate generator must be Hermitian within 1e-10");
    if (psi.dim() != a.dim() || channel.dim() != a.dim())
        throw DimensionMismatch("witness inputs have inconsistent dimensions");

    WitnessReport r;
    r.theta = theta;
    r.channel_label = channel.label;
    r.witness = effective_operator(a, psi);

    const ComplexMatrix u = exp_hermitian_times(a, cplx{0.0, -theta});
    const cvec phi_ideal = apply(u, psi.amplitudes());
    r.ideal = sandwich(phi_ideal, r.witness, phi_ideal).real();

    const DensityMatrixState noisy =
        apply_channel(channel, make_density(projector_of(psi).matrix));
    r.real_val = trace(mul(r.witness, noisy.matrix())).real();

    r.delta = std::abs(r.ideal - r.real_val);
    const double d = static_cast<double>(a.dim());
    r.depolarizing_insensitive =
        std::abs(r.ideal - trace(r.witness).real() / d) <= 1e-10;
    return r;
}

std::vector<WitnessReport> witness_sweep(const ComplexMatrix& a, const PureState& psi,
                                         double theta,
                                         const std::function<KrausChannel(double)>& family,
                                         const std::vector<double>& grid) {
    std::vector<WitnessReport> out;
    out.reserve(grid.size());
    for (double p : grid) out.push_back(witness_run(a, psi, theta, family(p)));
    return out;
}

} // namespace wv
