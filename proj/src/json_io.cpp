#include "wv/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace wv::io {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ParseError(msg); }

const json& require(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        fail(std::string("missing required field '") + key + "'");
    return j.at(key);
}

double parse_real(const json& j, const char* what) {
    if (!j.is_number()) fail(std::string(what) + " must be a number");
    return j.get<double>();
}

} // namespace

cplx parse_complex(const json& j) {
    if (j.is_number()) return cplx{j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return cplx{j[0].get<double>(), j[1].get<double>()};
    fail("complex number must be a real number or a [re, im] pair");
}

ComplexMatrix parse_matrix(const json& j) {
    if (!j.is_array() || j.empty()) fail("matrix must be a non-empty array of rows");
    std::vector<cvec> rows;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != j.size())
            fail("matrix must be square (row-major nested arrays)");
        cvec r;
        for (const auto& entry : row) r.push_back(parse_complex(entry));
        rows.push_back(std::move(r));
    }
    ComplexMatrix m = ComplexMatrix::from_rows(rows);
    if (!m.finite()) fail("matrix entries must be finite");
    return m;
}

GateSequence parse_gates(const json& j) {
    if (!j.is_array()) fail("gate sequence must be an array");
    GateSequence seq;
    for (const auto& g : j) {
        const std::string name = require(g, "gate").get<std::string>();
        const Gate::Kind kind = gate_kind_from_name(name);
        if (kind == Gate::Kind::Unitary) {
            std::vector<std::size_t> targets;
            for (const auto& t : require(g, "targets")) targets.push_back(t.get<std::size_t>());
            seq.push_back(Gate::unitary(parse_matrix(require(g, "matrix")), std::move(targets)));
        } else if (kind == Gate::Kind::Rx || kind == Gate::Kind::Ry || kind == Gate::Kind::Rz) {
            seq.push_back(Gate::rotation(kind, require(g, "target").get<std::size_t>(),
                                         parse_real(require(g, "angle"), "gate angle")));
        } else {
            seq.push_back(Gate::named(kind, require(g, "target").get<std::size_t>()));
        }
    }
    return seq;
}

namespace {

cvec parse_vector(const json& j) {
    if (!j.is_array() || j.empty()) fail("state vector must be a non-empty array");
    cvec v;
    for (const auto& entry : j) v.push_back(parse_complex(entry));
    return v;
}

PureState parse_pure_state(const json& j, std::size_t dim) {
    if (j.contains("vector")) {
        cvec v = parse_vector(j.at("vector"));
        if (v.size() != dim) fail("state vector dimension does not match observable");
        return make_pure(std::move(v));
    }
    if (j.contains("gates")) {
        GateSequence seq = parse_gates(j.at("gates"));
        cvec zero(dim);
        zero[0] = 1.0;
        cvec amps = apply_sequence_vec(seq, zero);
        return make_pure(std::move(amps), std::move(seq));
    }
    fail("pure state spec needs 'vector' or 'gates'");
}

ChannelSpec parse_channel(const json& j) {
    ChannelSpec c;
    c.type = require(j, "type").get<std::string>();
    if (c.type == "kraus") {
        for (const auto& op : require(j, "ops")) c.kraus_ops.push_back(parse_matrix(op));
    } else if (c.type != "none") {
        c.param = parse_real(require(j, "param"), "channel param");
    }
    c.after_ideal_gate = j.value("after_ideal_gate", true);
    return c;
}

} // namespace

KrausChannel ChannelSpec::build(const ComplexMatrix& a, double theta) const {
    KrausChannel noise{{ComplexMatrix::identity(a.dim())}, "identity"};
    if (type == "depolarizing") noise = depolarizing(param);
    else if (type == "amplitude_damping") noise = amplitude_damping(param);
    else if (type == "phase_damping") noise = phase_damping(param);
    else if (type == "overrotation") noise = coherent_overrotation(a, param);
    else if (type == "kraus") noise = explicit_channel(kraus_ops, "explicit kraus");
    else if (type != "none") fail("unknown channel type: " + type);

    if (after_ideal_gate) return noisy_gate(a, theta, noise);
    return noise;
}

ProblemSpec parse_problem(const json& doc) {
    ProblemSpec spec;

    const json& obs = require(doc, "observable");
    if (obs.contains("matrix")) {
        spec.observable = parse_matrix(obs.at("matrix"));
    } else if (obs.contains("pauli")) {
        std::map<std::string, cplx> coeffs;
        for (const auto& [label, c] : obs.at("pauli").items())
            coeffs[label] = parse_complex(c);
        spec.observable = pauli_compose(coeffs);
    } else {
        fail("observable needs 'matrix' or 'pauli'");
    }
    const std::size_t dim = spec.observable.dim();

    const json& pre = require(doc, "preselect");
    int forms = int(pre.contains("vector")) + int(pre.contains("gates")) +
                int(pre.contains("density")) + int(pre.contains("mixture"));
    if (forms != 1) fail("preselect must carry exactly one of vector/gates/density/mixture");

    if (pre.contains("density")) {
        spec.preselect_mixed = true;
        ComplexMatrix rho = parse_matrix(pre.at("density"));
        if (rho.dim() != dim) fail("density matrix dimension does not match observable");
        spec.preselect_rho = make_density(std::move(rho));
    } else if (pre.contains("mixture")) {
        spec.preselect_mixed = true;
        std::vector<std::pair<double, PureState>> pairs;
        std::vector<std::pair<double, GateSequence>> preps;
        bool all_preps = true;
        for (const auto& comp : pre.at("mixture")) {
            const double p = parse_real(require(comp, "p"), "mixture probability");
            PureState s = parse_pure_state(require(comp, "state"), dim);
            if (s.prep())
                preps.emplace_back(p, *s.prep());
            else
                all_preps = false;
            pairs.emplace_back(p, std::move(s));
        }
        spec.preselect_rho = mix(pairs);
        if (all_preps) spec.mixture_preps = std::move(preps);
    } else {
        spec.preselect_pure = parse_pure_state(pre, dim);
    }

    if (doc.contains("postselect"))
        spec.postselect = parse_pure_state(doc.at("postselect"), dim);

    if (doc.contains("options")) {
        const json& opt = doc.at("options");
        spec.options.epsilon_orth = opt.value("epsilon_orth", kDefaultEpsilonOrth);
        spec.options.seed = opt.value("seed", std::uint64_t{42});
        spec.options.shots = opt.value("shots", std::uint64_t{10000});
    }

    if (doc.contains("witness")) {
        const json& w = doc.at("witness");
        WitnessSpec ws;
        ws.theta = parse_real(require(w, "theta"), "witness theta");
        if (w.contains("channel")) ws.channel = parse_channel(w.at("channel"));
        if (w.contains("sweep")) {
            const json& sw = w.at("sweep");
            SweepSpec ss;
            ss.family = require(sw, "family").get<std::string>();
            for (const auto& g : require(sw, "grid"))
                ss.grid.push_back(parse_real(g, "sweep grid value"));
            ss.after_ideal_gate = sw.value("after_ideal_gate", true);
            ws.sweep = std::move(ss);
        }
        if (!ws.channel && !ws.sweep) fail("witness block needs 'channel' or 'sweep'");
        spec.witness = std::move(ws);
    }

    return spec;
}

ProblemSpec load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open input file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
    return parse_problem(doc);
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json report_to_json(const WeakValueReport& r) {
    return {{"forward", complex_to_json(r.forward)},
            {"reverse", complex_to_json(r.reverse)},
            {"product", complex_to_json(r.product)},
            {"modulus", r.modulus},
            {"overlap_sq", r.overlap_sq},
            {"numerator_sq", r.numerator_sq},
            {"re_from_mean", r.re_from_mean}};
}

json report_to_json(const PhaseReport& r) {
    return {{"x", r.x},
            {"y", r.y},
            {"phase", r.phase},
            {"overlap_sq", r.overlap_sq},
            {"weak_value_reconstructed", complex_to_json(r.weak_value_reconstructed)}};
}

json report_to_json(const WitnessReport& r) {
    return {{"ideal", r.ideal},
            {"real", r.real_val},
            {"delta", r.delta},
            {"theta", r.theta},
            {"channel", r.channel_label},
            {"depolarizing_insensitive", r.depolarizing_insensitive}};
}

json report_to_json(const ShotEstimate& e) {
    return {{"mean", e.mean},
            {"shots", e.shots},
            {"std_error", e.std_error},
            {"seed", e.seed}};
}

json structure_to_json(const BStructure& s) {
    json populations = json::array();
    json coherences = json::array();
    const std::size_t d = s.coefficient_matrix.dim();
    for (std::size_t i = 0; i < d; ++i) {
        populations.push_back(s.coefficient_matrix(i, i).real());
        for (std::size_t j = 0; j < d; ++j)
            if (i != j && std::abs(s.coefficient_matrix(i, j)) > 1e-14)
                coherences.push_back({{"i", i},
                                      {"j", j},
                                      {"value", complex_to_json(s.coefficient_matrix(i, j))}});
    }
    json out = {{"case", s.case_tag == BCase::eigenstate ? "eigenstate" : "superposition"},
                {"eigenvalues", s.basis_eigenvalues},
                {"populations", populations},
                {"coherences", coherences}};
    if (s.eigenvalue) out["eigenvalue"] = *s.eigenvalue;
    return out;
}

json pauli_map_to_json(const std::map<std::string, cplx>& m) {
    json out = json::object();
    for (const auto& [label, c] : m) {
        if (std::abs(c.imag()) <= 1e-12)
            out[label] = c.real();
        else
            out[label] = complex_to_json(c);
    }
    return out;
}

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void dump_rec(const json& j, std::ostringstream& os, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) { os << "{}"; return; }
            os << "{\n";
            bool first = true;
            for (const auto& [k, v] : j.items()) {
                if (!first) os << ",\n";
                first = false;
                os << pad << json(k).dump() << ": ";
                dump_rec(v, os, indent, depth + 1);
            }
            os << "\n" << close_pad << "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) { os << "[]"; return; }
            os << "[\n";
            bool first = true;
            for (const auto& v : j) {
                if (!first) os << ",\n";
                first = false;
                os << pad;
                dump_rec(v, os, indent, depth + 1);
            }
            os << "\n" << close_pad << "]";
            return;
        }
        case json::value_t::number_float:
            os << format_double(j.get<double>());
            return;
        default:
            os << j.dump();
            return;
    }
}

} // namespace

std::string dump(const json& doc, int indent) {
    std::ostringstream os;
    dump_rec(doc, os, indent, 0);
    return os.str();
}

std::string witness_csv(const std::vector<WitnessReport>& reports,
                        const std::vector<double>& params) {
    std::ostringstream os;
    os << "param,ideal,real,delta,flags\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        os << format_double(params.at(i)) << "," << format_double(reports[i].ideal) << ","
           << format_double(reports[i].real_val) << "," << format_double(reports[i].delta)
           << "," << (reports[i].depolarizing_insensitive ? "depolarizing-insensitive" : "")
           << "\n";
    }
    return os.str();
}

} // namespace wv::io
