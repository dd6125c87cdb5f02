// tomography.hpp — full three-level process tomography: input-state
// preparation, state tomography, chi reconstruction (linear inversion and
// maximum likelihood), logical-subspace reduction, fidelity and leakage

#pragma once

#include "holo/evolution.hpp"
#include "holo/pulse.hpp"
#include "holo/qutrit.hpp"
#include "holo/types.hpp"

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace holo {

// One resonant single-transition rotation: a calibrated 40 ns pulse of the
// given area with drive phase selecting the rotation axis.
struct PreparationPulse {
    int transition;  // 0: |0><->|e| drive (a tone), 1: |e><->|1| drive (b tone)
    double area;     // rad: pi or pi/2
    double phase;    // drive phase, multiple of pi/2
};

using PulseRecipe = std::vector<PreparationPulse>;

// Ideal unitary of one pulse: exp(-i (area/2) (e^{i phase}|e><g| + h.c.)).
Matrix3c pulse_unitary(const PreparationPulse& p);
Matrix3c recipe_unitary(const PulseRecipe& recipe);

// The nine tomography input states
// {|0>, |e>, |1>, (|0>+|e>)/s2, (|0>+i|e>)/s2, (|0>+|1>)/s2, (|0>+i|1>)/s2,
//  (|e>+|1>)/s2, (|e>+i|1>)/s2}
// together with the <=2-pulse recipes preparing each from |0> (up to a
// global phase), found by enumerating the pulse grid.
class InputStateSet {
  public:
    static const InputStateSet& standard();

    const std::array<Vector3c, 9>& states() const { return states_; }
    const std::array<PulseRecipe, 9>& recipes() const { return recipes_; }
    Matrix3c projector(int index) const;

    // Exhaustive search over <=2-pulse sequences from the
    // {pi, pi/2} x {0, pi/2, pi, 3pi/2} grid on both transitions; returns
    // the first recipe (fewest pulses, grid order) reaching the target up
    // to global phase. Used to derive and cross-check the stored table.
    static std::optional<PulseRecipe> find_recipe(const Vector3c& target, double tol = 1e-10);

  private:
    InputStateSet();
    std::array<Vector3c, 9> states_;
    std::array<PulseRecipe, 9> recipes_;
};

// Measurement model: analysis rotation followed by projective population
// measurement in the (|0>, |e>, |1>) basis. Setting s applies the inverse
// of preparation recipe s, so outcome 0 of setting s projects onto input
// state s. Informational completeness is asserted on first use.
class TomographyDesign {
  public:
    static const TomographyDesign& standard();

    const Matrix3c& setting_unitary(int s) const { return settings_[static_cast<std::size_t>(s)]; }
    const PulseRecipe& setting_recipe(int s) const { return recipes_[static_cast<std::size_t>(s)]; }

    // Outcome probabilities (P0, Pe, P1) of a state under setting s.
    Eigen::Vector3d outcome_probabilities(const Matrix3c& rho, int s) const;

  private:
    TomographyDesign();
    std::array<Matrix3c, 9> settings_;
    std::array<PulseRecipe, 9> recipes_;
};

// Shot model: nullopt = exact probabilities, otherwise multinomial
// sampling with the given seed.
struct ShotSpec {
    std::optional<long> shots;
    unsigned long seed = 0;

    static ShotSpec exact() { return ShotSpec{std::nullopt, 0}; }
    static ShotSpec sampled(long shots, unsigned long seed) { return ShotSpec{shots, seed}; }
};

// Recorded tomography data: per (input, setting) the three outcome
// probabilities (exact mode) or counts (sampled mode).
struct MeasurementRecord {
    bool sampled = false;
    long shots = 0;
    unsigned long seed = 0;
    std::array<std::array<Eigen::Vector3d, 9>, 9> values{};

    // probabilities regardless of mode (counts normalized per setting)
    Eigen::Vector3d probabilities(int input, int setting) const;
};

// chi over the nine-operator basis: E(rho) = sum_mn chi_mn P_m rho P_n^dag.
struct ProcessMatrix {
    Matrix9c chi;

    double hermiticity() const;
    double min_eigenvalue() const;
    // || sum_mn chi_mn P_n^dag P_m - I ||_max, the trace-preservation residual
    double tp_residual() const;
};

// 4x4 block over the logical operators {I, X, Y~, Z}.
struct ReducedProcessMatrix {
    Matrix4c chi_tilde;

    double trace() const { return chi_tilde.trace().real(); }
    double leakage() const { return 1.0 - trace(); }
};

using Channel = std::function<Matrix3c(const Matrix3c&)>;

// --- preparation ---------------------------------------------------------

// Ideal mode: the exact pure input state.
DensityMatrix prepare_input(int index);

// Context for pulsed sequences: calibrated envelope, slot/gap timing and
// the noise model. Every slot is 40 ns; recipes shorter than two pulses
// are padded with leading idle slots so each prepare+gate+analyze
// sequence is five slots with four 2 ns gaps (208 ns total).
struct PulsedSequenceContext {
    GaussianEnvelope envelope;     // calibrated to area 2*pi
    double gap = 2.0;              // ns between slots
    double dt = kDefaultTimeStep;  // integrator step during pulses
    CollapseSet noise;

    static PulsedSequenceContext make(const NoiseModel& noise, double sigma = 10.0,
                                      double length = 40.0, double dt = kDefaultTimeStep);
    static PulsedSequenceContext noiseless(double sigma = 10.0, double length = 40.0,
                                           double dt = kDefaultTimeStep);

    // Lindblad evolution of one recipe pulse (area/2pi-scaled envelope).
    Matrix3c apply_pulse(const Matrix3c& rho, const PreparationPulse& p) const;
    Matrix3c idle_slot(const Matrix3c& rho) const;
    Matrix3c gap_evolve(const Matrix3c& rho) const;
};

// Pulsed mode: the recipe realized as calibrated single-transition pulses
// under the noise model (two slots plus the trailing gap).
DensityMatrix prepare_input(int index, const PulsedSequenceContext& ctx);

// --- state tomography ----------------------------------------------------

// Reconstruction from the 9 settings x 3 outcomes. Exact mode reproduces
// rho_true to numerical precision; sampled mode returns the least-squares
// estimate projected to the nearest PSD unit-trace matrix.
DensityMatrix state_tomography(const DensityMatrix& rho_true, const ShotSpec& shots);

// Least-squares state estimate from one input's probabilities.
Matrix3c reconstruct_state(const std::array<Eigen::Vector3d, 9>& probabilities,
                           bool project = false);

// Frobenius-nearest density matrix (PSD, unit trace).
Matrix3c project_to_density(const Matrix3c& m);

// --- process tomography --------------------------------------------------

// Records from running all nine inputs through a channel and measuring
// every setting (exact probabilities or seeded multinomial counts).
MeasurementRecord measure_channel(const Channel& channel, const ShotSpec& shots);

// Records of the hardware-style five-slot sequence
// [prep, prep, gate slots..., analyze, analyze] under the noise model.
// The gate may span several slots (one per composed pulse).
MeasurementRecord measure_pulsed_sequence(const std::vector<PulseSpec>& gate_pulses,
                                          const PulsedSequenceContext& ctx,
                                          const ShotSpec& shots);

// Linear inversion: per-input state reconstruction, then the exact linear
// solve for chi over the operator basis.
ProcessMatrix linear_inversion(const MeasurementRecord& record);

// chi of a channel: exact mode via linear inversion on exact records,
// sampled mode via maximum likelihood.
ProcessMatrix process_tomography(const Channel& channel, const ShotSpec& shots);

// --- maximum likelihood --------------------------------------------------

struct MleResult {
    ProcessMatrix chi;
    bool converged = false;
    long iterations = 0;
    double log_likelihood = 0.0;
};

// Iterative R rho R reconstruction on the Choi matrix with the
// trace-preservation constraint enforced every iteration, seeded from
// PSD-projected linear inversion. The log-likelihood is non-decreasing
// (diluted steps are taken whenever a full step would overshoot); pass
// ll_history to record the value at every iteration.
MleResult mle_reconstruct(const MeasurementRecord& record, long max_iterations = 100000,
                          double rel_tol = 1e-10, std::vector<double>* ll_history = nullptr);

// --- derived quantities ----------------------------------------------------

ReducedProcessMatrix reduce_chi(const ProcessMatrix& chi);

// tr(chi_exp chi_th); the imaginary residual must vanish.
double process_fidelity(const Eigen::MatrixXcd& chi_exp, const Eigen::MatrixXcd& chi_th);
double process_fidelity(const ProcessMatrix& chi_exp, const ProcessMatrix& chi_th);
double process_fidelity(const ReducedProcessMatrix& chi_exp, const ReducedProcessMatrix& chi_th);

// Analytic chi of a unitary channel rho -> u rho u^dag.
ProcessMatrix chi_of_unitary(const Matrix3c& u);

// Action of a chi matrix on a state.
Matrix3c apply_chi(const ProcessMatrix& chi, const Matrix3c& rho);

// Choi representation J = sum_ij |i><j| (x) E(|i><j|) and its chi relation
// J = V chi V^dag (V columns vectorize the basis operators).
Matrix9c choi_of_chi(const ProcessMatrix& chi);
ProcessMatrix chi_of_choi(const Matrix9c& choi);

}  // namespace holo
