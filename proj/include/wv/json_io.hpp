#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "wv/measure.hpp"
#include "wv/noise.hpp"
#include "wv/phase.hpp"

namespace wv::io {

using json = nlohmann::ordered_json;

struct Options {
    double epsilon_orth = kDefaultEpsilonOrth;
    std::uint64_t seed = 42;
    std::uint64_t shots = 10000;
};

struct ChannelSpec {
    std::string type;                     // depolarizing | amplitude_damping |
                                          // phase_damping | overrotation | kraus | none
    double param = 0.0;
    std::vector<ComplexMatrix> kraus_ops; // type == kraus
    bool after_ideal_gate = true;

    KrausChannel build(const ComplexMatrix& a, double theta) const;
};

struct SweepSpec {
    std::string family;
    std::vector<double> grid;
    bool after_ideal_gate = true;
};

struct WitnessSpec {
    double theta = 0.0;
    std::optional<ChannelSpec> channel;
    std::optional<SweepSpec> sweep;
};

// Parsed problem document: observable, pre-/post-selection, options, and
// an optional witness block.
struct ProblemSpec {
    ComplexMatrix observable;

    bool preselect_mixed = false;
    std::optional<PureState> preselect_pure;
    std::optional<DensityMatrixState> preselect_rho;
    // preparation recipes for the shot-based mixed protocol, when given
    std::optional<std::vector<std::pair<double, GateSequence>>> mixture_preps;

    std::optional<PureState> postselect;

    Options options;
    std::optional<WitnessSpec> witness;
};

ProblemSpec parse_problem(const json& doc);
ProblemSpec load_problem(const std::string& path);

// --- JSON building blocks ---
json complex_to_json(cplx z);
json matrix_to_json(const ComplexMatrix& m);
cplx parse_complex(const json& j);
ComplexMatrix parse_matrix(const json& j);
GateSequence parse_gates(const json& j);

json report_to_json(const WeakValueReport& r);
json report_to_json(const PhaseReport& r);
json report_to_json(const WitnessReport& r);
json report_to_json(const ShotEstimate& e);
json structure_to_json(const BStructure& s);
json pauli_map_to_json(const std::map<std::string, cplx>& m);

// Serializes with every floating-point value at 17 significant digits.
std::string dump(const json& doc, int indent = 2);

std::string witness_csv(const std::vector<WitnessReport>& reports,
                        const std::vector<double>& params);

} // namespace wv::io
