// errors.hpp — exception types for numerical and configuration failures

#pragma once

#include <stdexcept>
#include <string>

namespace holo {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// expm_hermitian received a matrix whose asymmetry exceeds tolerance.
struct NonHermitianInput : Error {
    using Error::Error;
};

// Operator basis whose Gram matrix is numerically singular.
struct SingularBasis : Error {
    using Error::Error;
};

// Envelope calibration impossible (non-positive length or empty support).
struct DegenerateEnvelope : Error {
    using Error::Error;
};

// Propagator lost unitarity beyond tolerance (step too coarse).
struct NonUnitaryResult : Error {
    using Error::Error;
};

// Lindblad integration drifted in trace beyond tolerance.
struct StepTooCoarse : Error {
    using Error::Error;
};

// T1/T2 combination implies a negative dephasing rate.
struct InvalidNoiseModel : Error {
    using Error::Error;
};

// Tomography settings lost informational completeness.
struct ReconstructionSingular : Error {
    using Error::Error;
};

// Likelihood degenerate (e.g. empty or inconsistent records).
struct InfeasibleRecords : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

// Bloch export rejected an initial state with |e> population.
struct InitialStateLeaked : Error {
    using Error::Error;
};

// Config file parsing/validation failure, with line/field context.
struct ConfigError : Error {
    ConfigError(const std::string& message, int line, const std::string& field)
        : Error(format(message, line, field)), line_number(line), field_name(field) {}

    int line_number;
    std::string field_name;

  private:
    static std::string format(const std::string& message, int line, const std::string& field) {
        std::string out = "config error";
        if (line > 0) out += " (line " + std::to_string(line) + ")";
        if (!field.empty()) out += " [" + field + "]";
        return out + ": " + message;
    }
};

}  // namespace holo
