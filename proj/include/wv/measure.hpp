#pragma once

#include <cstdint>

#include "wv/weakcore.hpp"

namespace wv {

// One shot-based estimate, carrying enough to replay it exactly.
struct ShotEstimate {
    double mean = 0.0;
    std::uint64_t shots = 0;
    double std_error = 0.0;  // sample standard deviation / sqrt(shots)
    std::uint64_t seed = 0;
};

// Outcomes merged by eigenvalue (|λ_i − λ_j| <= 1e-9 is one label).
struct BornOutcome {
    double eigenvalue;
    double probability;
};

std::vector<BornOutcome> born_probabilities(const ComplexMatrix& observable,
                                            const PureState& phi);

// splitmix64 step; the fixed mixing function for per-component seed streams.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

ShotEstimate estimate_expectation(const ComplexMatrix& observable, const PureState& phi,
                                  std::uint64_t shots, std::uint64_t seed);

// The appendix circuit: (invert(φ_prep) ∘ A-as-gate ∘ ψ_prep)|0…0⟩, sampling
// the all-zeros outcome. Population value is |⟨φ|A|ψ⟩|². A must be unitary.
ShotEstimate amplitude_protocol(const ComplexMatrix& a, const GateSequence& psi_prep,
                                const GateSequence& phi_prep, std::uint64_t shots,
                                std::uint64_t seed);

// Classically weighted average of per-component amplitude_protocol runs;
// population value is ⟨φ|B_ρ|φ⟩.
ShotEstimate mixed_average_protocol(const ComplexMatrix& a,
                                    const std::vector<std::pair<double, GateSequence>>& components,
                                    const GateSequence& phi_prep,
                                    std::uint64_t shots_per_component, std::uint64_t seed);

} // namespace wv
