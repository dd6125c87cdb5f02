#include "holo/evolution.hpp"

#include <Eigen/Dense>

namespace holo {

Matrix3c propagator(const PulseSpec& spec) {
    const InteractionHamiltonian h{spec.drive, spec.envelope};
    return propagate([&h](double t) { return h.at(t); }, 0.0, spec.envelope.total_length,
                     spec.time_step);
}

double parallel_transport_residual(const PulseSpec& spec, int samples) {
    if (samples < 2) samples = 2;
    const InteractionHamiltonian h{spec.drive, spec.envelope};
    return parallel_transport_residual([&h](double t) { return h.at(t); }, 0.0,
                                       spec.envelope.total_length, spec.time_step, samples);
}

NoiseModel::NoiseModel(double t1_us, double t2_0e_us, double t2_e1_us)
    : t1_us_(t1_us), t2_0e_us_(t2_0e_us), t2_e1_us_(t2_e1_us) {
    if (t1_us <= 0.0 || t2_0e_us <= 0.0 || t2_e1_us <= 0.0) {
        throw InvalidNoiseModel("NoiseModel: times must be positive");
    }
    const double us = 1000.0;  // 1 us = 1000 ns
    decay_rate_ = 1.0 / (t1_us * us);

    // Required pure-dephasing share of each coherence decay. The 0e
    // coherence loses 1/(2 T1) to relaxation of |e>; the e1 coherence
    // loses 1/T1 because both of its levels relax.
    const double phi_0e = 1.0 / (t2_0e_us * us) - 0.5 * decay_rate_;
    const double phi_e1 = 1.0 / (t2_e1_us * us) - decay_rate_;
    if (phi_0e < 0.0 || phi_e1 < 0.0) {
        throw InvalidNoiseModel("NoiseModel: T2 exceeds the relaxation-limited bound");
    }

    // L_0e = |e><e| - |0><0| dephases 0e at 2r and e1 at r/2 (and vice
    // versa for L_e1 = |1><1| - |e><e|):
    //   [2    1/2] [r_0e]   [phi_0e]
    //   [1/2  2  ] [r_e1] = [phi_e1]
    Eigen::Matrix2d a;
    a << 2.0, 0.5, 0.5, 2.0;
    const Eigen::Vector2d r = a.colPivHouseholderQr().solve(Eigen::Vector2d(phi_0e, phi_e1));
    deph_rate_0e_ = r(0);
    deph_rate_e1_ = r(1);
    if (deph_rate_0e_ < 0.0 || deph_rate_e1_ < 0.0) {
        throw InvalidNoiseModel("NoiseModel: dephasing-rate solve produced a negative rate");
    }
}

CollapseSet CollapseSet::from_noise(const NoiseModel& noise) {
    CollapseSet set;
    set.channels.push_back({ketbra(L0, LE), noise.decay_rate()});
    set.channels.push_back({ketbra(LE, L1), noise.decay_rate()});
    set.channels.push_back({ketbra(LE, LE) - ketbra(L0, L0), noise.dephasing_rate_0e()});
    set.channels.push_back({ketbra(L1, L1) - ketbra(LE, LE), noise.dephasing_rate_e1()});
    return set;
}

DensityMatrix lindblad_evolve(const DensityMatrix& rho0, const InteractionHamiltonian& h,
                              const CollapseSet& noise, double t_final, double dt) {
    const Matrix3c rho = lindblad_propagate(
        rho0.matrix(), [&h](double t) { return h.at(t); }, noise, 0.0, t_final, dt);
    // Positivity floor -1e-7; hermiticity/trace already bounded by the integrator check.
    return DensityMatrix(rho, 1e-8, 1e-6, -1e-7);
}

Matrix3c free_evolve(const Matrix3c& rho0, const CollapseSet& noise, double duration,
                     double dt) {
    if (duration <= 0.0) return rho0;
    if (noise.channels.empty()) return rho0;  // drive off, nothing to do
    return lindblad_propagate(rho0, [](double) { return Matrix3c::Zero(); }, noise, 0.0,
                              duration, std::min(dt, duration));
}

}  // namespace holo
