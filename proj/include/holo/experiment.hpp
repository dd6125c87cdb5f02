// experiment.hpp — config-driven reproduction runs: theta sweep, gate
// sequences, Bloch trajectories and record-file reconstruction

#pragma once

#include "holo/holonomy.hpp"
#include "holo/tomography.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace holo {

struct ExperimentConfig {
    struct Pulse {
        double sigma_ns = 10.0;
        double length_ns = 40.0;
        double dt_ns = kDefaultTimeStep;
    } pulse;

    struct Noise {
        bool enabled = true;
        double t1_us = 7.0;
        double t2_0e_us = 8.0;
        double t2_e1_us = 3.9;
    } noise;

    struct Tomography {
        std::optional<long> shots;  // nullopt: exact probabilities
        unsigned long seed = 42;
    } tomography;

    struct Sweep {
        std::vector<double> theta;  // defaults to 9 points on [0, pi/2]
        double phi = kPi;
    } sweep;

    std::vector<GateSpec> gates;  // defaults to {H, NOT}

    struct Bloch {
        std::string initial = "0";  // 0, 1, +, -, +i, -i
    } bloch;

    std::string output_dir = "out";

    ExperimentConfig();

    NoiseModel noise_model() const { return NoiseModel(noise.t1_us, noise.t2_0e_us, noise.t2_e1_us); }
    ShotSpec shot_spec() const {
        return tomography.shots ? ShotSpec::sampled(*tomography.shots, tomography.seed)
                                : ShotSpec::exact();
    }
};

// Flat INI-style sections; unknown keys are an error with line context.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

// Named gate from a label ("Z", "H", "NOT") or "theta:phi" pair.
GateSpec gate_from_token(const std::string& token, int line = 0);

struct SweepRow {
    double theta;
    double phi;
    // noiseless diagonals of the reduced chi
    double ideal_ii, ideal_xx, ideal_yy, ideal_zz;
    double ideal_trace;
    double ideal_fidelity;
    // noisy-sequence values (NaN when noise disabled)
    double noisy_ii, noisy_xx, noisy_yy, noisy_zz;
    double noisy_trace;
    double noisy_fidelity;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::string csv() const;
};

SweepResult run_sweep(const ExperimentConfig& config);

struct SequenceResult {
    std::string label;                     // e.g. "NOT*H"
    LogicalUnitary analytic;               // composite target
    ReducedProcessMatrix ideal_chi;        // noiseless pulsed tomography
    double ideal_fidelity;                 // vs analytic composite
    std::optional<ReducedProcessMatrix> noisy_chi;
    std::optional<double> noisy_fidelity;
    std::optional<double> overlap;         // both orderings, when 2 gates
    std::optional<double> reversed_ideal_fidelity;
    MeasurementRecord record;              // noisy record if noise enabled, else exact
    std::string csv() const;
};

SequenceResult run_sequence(const ExperimentConfig& config);

struct BlochSample {
    double time;
    double x, y, z;
};

struct BlochResult {
    std::vector<BlochSample> samples;
    Eigen::Vector3d endpoint;
    Eigen::Vector3d analytic_endpoint;
    std::string csv() const;
};

// Noiseless pulsed trajectory of the configured gate sequence from a
// logical initial state.
BlochResult export_bloch(const ExperimentConfig& config, const QutritState& initial);

QutritState bloch_initial_state(const std::string& token);

}  // namespace holo
