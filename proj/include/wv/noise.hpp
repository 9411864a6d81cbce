#pragma once

#include <functional>
#include <string>

#include "wv/weakcore.hpp"

namespace wv {

struct KrausChannel {
    std::vector<ComplexMatrix> kraus_ops;
    std::string label;

    std::size_t dim() const { return kraus_ops.front().dim(); }
};

// Σ K†K − I residual, max entry. Used by the completeness check and the
// CLI's malformed-channel diagnostics.
double completeness_residual(const KrausChannel& ch);

// ρ → (1−ε)ρ + ε·I/2
KrausChannel depolarizing(double epsilon);
KrausChannel amplitude_damping(double gamma);
KrausChannel phase_damping(double lambda);

// Unitary channel {e^{−i·δθ·A}}.
KrausChannel coherent_overrotation(const ComplexMatrix& a, double delta_theta);

KrausChannel explicit_channel(std::vector<ComplexMatrix> ops, std::string label);

// noise ∘ ideal gate e^{−iθA}; the complete physical operation §5.1-style
// witness runs expect.
KrausChannel noisy_gate(const ComplexMatrix& a, double theta, const KrausChannel& noise);
KrausChannel ideal_gate(const ComplexMatrix& a, double theta);

DensityMatrixState apply_channel(const KrausChannel& ch, const DensityMatrixState& rho);

struct WitnessReport {
    ComplexMatrix witness;  // B = A Pψ A
    double ideal;
    double real_val;
    double delta;
    double theta;
    std::string channel_label;
    bool depolarizing_insensitive;  // |⟨B⟩_ideal − Tr(B)/d| <= 1e-10
};

WitnessReport witness_run(const ComplexMatrix& a, const PureState& psi, double theta,
                          const KrausChannel& channel);

std::vector<WitnessReport> witness_sweep(const ComplexMatrix& a, const PureState& psi,
                                         double theta,
                                         const std::function<KrausChannel(double)>& family,
                                         const std::vector<double>& grid);

} // namespace wv
