#pragma once

#include <stdexcept>
#include <string>

namespace wv {

// Base for all toolkit errors. `kind` separates malformed input,
// domain violations, and numerical failures for CLI exit-code mapping.
class Error : public std::runtime_error {
public:
    enum class Kind { input, domain, numeric };

    Error(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error(Kind::input, msg) {}
};

struct NotHermitian : Error {
    explicit NotHermitian(const std::string& msg) : Error(Kind::domain, msg) {}
};

struct NoConvergence : Error {
    explicit NoConvergence(const std::string& msg) : Error(Kind::numeric, msg) {}
};

struct ZeroVector : Error {
    explicit ZeroVector(const std::string& msg) : Error(Kind::input, msg) {}
};

struct NotNormalized : Error {
    explicit NotNormalized(const std::string& msg) : Error(Kind::input, msg) {}
};

struct NotUnitary : Error {
    explicit NotUnitary(const std::string& msg) : Error(Kind::input, msg) {}
};

struct NotDensityMatrix : Error {
    explicit NotDensityMatrix(const std::string& msg) : Error(Kind::input, msg) {}
};

struct BadProbabilities : Error {
    explicit BadProbabilities(const std::string& msg) : Error(Kind::input, msg) {}
};

struct OrthogonalStates : Error {
    explicit OrthogonalStates(const std::string& msg) : Error(Kind::domain, msg) {}
};

struct PhaseUndefined : Error {
    explicit PhaseUndefined(const std::string& msg) : Error(Kind::domain, msg) {}
};

struct NotPowerOfTwoDim : Error {
    explicit NotPowerOfTwoDim(const std::string& msg) : Error(Kind::input, msg) {}
};

struct BadParameter : Error {
    explicit BadParameter(const std::string& msg) : Error(Kind::input, msg) {}
};

struct ChannelNotTracePreserving : Error {
    explicit ChannelNotTracePreserving(const std::string& msg) : Error(Kind::input, msg) {}
};

struct NotUnitaryObservable : Error {
    explicit NotUnitaryObservable(const std::string& msg) : Error(Kind::domain, msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(Kind::input, msg) {}
};

struct MixedPhaseUnsupported : Error {
    explicit MixedPhaseUnsupported(const std::string& msg) : Error(Kind::domain, msg) {}
};

} // namespace wv
