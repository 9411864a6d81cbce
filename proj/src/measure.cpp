#include "wv/measure.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace wv {

namespace {

// 53-bit uniform in [0, 1) from a raw 64-bit draw; identical on every
// platform for a given mt19937_64 stream.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

ShotEstimate sample_discrete(const std::vector<BornOutcome>& outcomes,
                             std::uint64_t shots, std::uint64_t seed) {
    std::vector<double> cumulative;
    cumulative.reserve(outcomes.size());
    double acc = 0.0;
    for (const auto& o : outcomes) {
        acc += o.probability;
        cumulative.push_back(acc);
    }

    std::mt19937_64 rng(seed);
    double sum = 0.0, sum_sq = 0.0;
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = uniform01(rng) * acc;
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        const std::size_t idx =
            std::min<std::size_t>(it - cumulative.begin(), outcomes.size() - 1);
        const double val = outcomes[idx].eigenvalue;
        sum += val;
        sum_sq += val * val;
    }

    ShotEstimate e;
    e.shots = shots;
    e.seed = seed;
    e.mean = sum / static_cast<double>(shots);
    if (shots > 1) {
        const double var =
            std::max(0.0, (sum_sq - sum * sum / static_cast<double>(shots)) /
                              static_cast<double>(shots - 1));
        e.std_error = std::sqrt(var / static_cast<double>(shots));
    }
    return e;
}

bool is_unitary(const ComplexMatrix& u, double tol) {
    const ComplexMatrix p = mul(adjoint(u), u);
    return max_abs(sub(p, ComplexMatrix::identity(u.dim()))) <= tol;
}

} // namespace

std::vector<BornOutcome> born_probabilities(const ComplexMatrix& observable,
                                            const PureState& phi) {
    if (!is_hermitian(observable, 1e-10))
        throw NotHermitian("observable must be Hermitian within 1e-10");
    if (phi.dim() != observable.dim())
        throw DimensionMismatch("state dimension does not match observable");

    const EigenDecomposition ed = eig_hermitian(observable);
    const std::size_t d = observable.dim();

    std::vector<BornOutcome> out;
    std::size_t i = 0;
    while (i < d) {
        std::size_t j = i;
        double p = 0.0;
        while (j < d && std::abs(ed.eigenvalues[j] - ed.eigenvalues[i]) <= 1e-9) {
            cplx amp = 0.0;
            for (std::size_t k = 0; k < d; ++k)
                amp += std::conj(ed.eigenvectors(k, j)) * phi.amplitudes()[k];
            p += std::norm(amp);
            ++j;
        }
        out.push_back({ed.eigenvalues[i], p});
        i = j;
    }
    return out;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 finalizer on seed ^ stream
    std::uint64_t z = (seed ^ stream) + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

ShotEstimate estimate_expectation(const ComplexMatrix& observable, const PureState& phi,
                                  std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) throw BadParameter("shots must be >= 1");
    return sample_discrete(born_probabilities(observable, phi), shots, seed);
}

ShotEstimate amplitude_protocol(const ComplexMatrix& a, const GateSequence& psi_prep,
                                const GateSequence& phi_prep, std::uint64_t shots,
                                std::uint64_t seed) {
    if (shots < 1) throw BadParameter("shots must be >= 1");
    if (!is_unitary(a, 1e-9))
        throw NotUnitaryObservable(
            "A is not unitary and cannot be applied as a gate in the amplitude "
            "protocol; estimate <phi|B|phi> via estimate_expectation on B instead");

    cvec state(a.dim());
    state[0] = 1.0;
    state = apply_sequence_vec(psi_prep, state);
    state = wv::apply(a, state);
    state = apply_sequence_vec(invert_sequence(phi_prep), state);

    const double p0 = std::min(1.0, std::norm(state[0]));

    std::mt19937_64 rng(seed);
    std::uint64_t hits = 0;
    for (std::uint64_t s = 0; s < shots; ++s)
        if (uniform01(rng) < p0) ++hits;

    ShotEstimate e;
    e.shots = shots;
    e.seed = seed;
    e.mean = static_cast<double>(hits) / static_cast<double>(shots);
    if (shots > 1) {
        const double var = e.mean * (1.0 - e.mean) * static_cast<double>(shots) /
                           static_cast<double>(shots - 1);
        e.std_error = std::sqrt(var / static_cast<double>(shots));
    }
    return e;
}

ShotEstimate mixed_average_protocol(const ComplexMatrix& a,
                                    const std::vector<std::pair<double, GateSequence>>& components,
                                    const GateSequence& phi_prep,
                                    std::uint64_t shots_per_component, std::uint64_t seed) {
    if (components.empty())
        throw BadProbabilities("mixture must have at least one component");
    double total = 0.0;
    for (const auto& [p, prep] : components) {
        if (p < 0.0) throw BadProbabilities("mixture probabilities must be non-negative");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw BadProbabilities("mixture probabilities must sum to 1 within 1e-9");

    // Combined in component order for reproducible summation.
    ShotEstimate out;
    out.shots = shots_per_component;
    out.seed = seed;
    double var_sum = 0.0;
    for (std::size_t k = 0; k < components.size(); ++k) {
        const ShotEstimate e = amplitude_protocol(a, components[k].second, phi_prep,
                                                  shots_per_component,
                                                  mix_seed(seed, k));
        out.mean += components[k].first * e.mean;
        var_sum += components[k].first * components[k].first * e.std_error * e.std_error;
    }
    out.std_error = std::sqrt(var_sum);
    return out;
}

} // namespace wv
