// evolution.hpp — two-tone Hamiltonian, time-ordered propagator and the
// Lindblad master equation with the device T1/T2 parameters

#pragma once

#include "holo/linalg.hpp"
#include "holo/pulse.hpp"
#include "holo/qutrit.hpp"
#include "holo/types.hpp"

#include <cmath>
#include <vector>

namespace holo {

// h(t) = (Omega(t)/2) (a |e><0| + b |e><1| + h.c.), hbar = 1, time in ns.
// The logical states couple only through |e>; <0|h|1> = 0 for all t.
struct InteractionHamiltonian {
    DriveConfig drive;
    GaussianEnvelope envelope;

    // Constant drive structure M with h(t) = Omega(t) * M.
    Matrix3c drive_matrix() const {
        Matrix3c m = Matrix3c::Zero();
        m(LE, L0) = 0.5 * drive.a;
        m(LE, L1) = 0.5 * drive.b;
        m(L0, LE) = 0.5 * std::conj(drive.a);
        m(L1, LE) = 0.5 * std::conj(drive.b);
        return m;
    }

    Matrix3c at(double t) const { return envelope.value(t) * drive_matrix(); }
};

inline Matrix3c hamiltonian_at(const InteractionHamiltonian& h, double t) { return h.at(t); }

// Generic time-ordered propagator on [t0, t1]: product of per-step
// unitaries exp(-i G_k) with the step generator taken as the Simpson
// average of h over the step. Each factor is exactly unitary; for a
// constant drive structure the factors commute and the product collapses
// to the single exponential of the Simpson-integrated envelope.
template <typename HamFn>
Matrix3c propagate(HamFn&& h, double t0, double t1, double dt,
                   double unitarity_tol = 1e-8) {
    long n = std::lround((t1 - t0) / dt);
    n = std::max<long>(n, 1);
    const double step = (t1 - t0) / static_cast<double>(n);
    Matrix3c u = Matrix3c::Identity();
    for (long k = 0; k < n; ++k) {
        const double a = t0 + static_cast<double>(k) * step;
        const Matrix3c gen =
            (step / 6.0) * (h(a) + 4.0 * h(a + 0.5 * step) + h(a + step));
        u = expm_hermitian(gen, 1.0) * u;
    }
    if (unitarity_error(u) > unitarity_tol) {
        throw NonUnitaryResult("propagate: unitarity deviation " +
                               std::to_string(unitarity_error(u)));
    }
    return u;
}

// Time-ordered propagator of the full pulse.
Matrix3c propagator(const PulseSpec& spec);

// max over sampled t and i,j in {0,1} of |<psi_i(t)| h(t) |psi_j(t)>| with
// |psi_i(t)> = U(t)|i>. Zero analytically whenever a/b is constant.
double parallel_transport_residual(const PulseSpec& spec, int samples);

// Diagnostic drive whose amplitude ratio is swept in time:
// a(t) ramps linearly from a0 to a1, b(t) = sqrt(1 - a(t)^2). Breaks the
// parallel-transport condition on purpose.
struct RampedDrive {
    GaussianEnvelope envelope;
    double a_start = 0.2;
    double a_end = 0.8;

    Matrix3c at(double t) const {
        const double tau = envelope.total_length;
        const double x = std::clamp(t / tau, 0.0, 1.0);
        const double a = a_start + (a_end - a_start) * x;
        const double b = std::sqrt(std::max(0.0, 1.0 - a * a));
        Matrix3c m = Matrix3c::Zero();
        m(LE, L0) = 0.5 * a;
        m(LE, L1) = 0.5 * b;
        m(L0, LE) = 0.5 * a;
        m(L1, LE) = 0.5 * b;
        return envelope.value(t) * m;
    }
};

// Residual for an arbitrary Hamiltonian callable (used by the ramp diagnostic).
template <typename HamFn>
double parallel_transport_residual(HamFn&& h, double t0, double t1, double dt, int samples) {
    Matrix3c u = Matrix3c::Identity();
    double residual = 0.0;
    const double sample_step = (t1 - t0) / static_cast<double>(samples - 1);
    double next_sample = t0;
    long n = std::lround((t1 - t0) / dt);
    n = std::max<long>(n, 1);
    const double step = (t1 - t0) / static_cast<double>(n);
    for (long k = 0; k <= n; ++k) {
        const double t = t0 + static_cast<double>(k) * step;
        if (t + 0.5 * step >= next_sample) {
            const Matrix3c ht = h(t);
            for (int i : {L0, L1}) {
                for (int j : {L0, L1}) {
                    const Complex v = (u.col(i).adjoint() * ht * u.col(j))(0, 0);
                    residual = std::max(residual, std::abs(v));
                }
            }
            next_sample += sample_step;
        }
        if (k < n) {
            const double a = t;
            const Matrix3c gen =
                (step / 6.0) * (h(a) + 4.0 * h(a + 0.5 * step) + h(a + step));
            u = expm_hermitian(gen, 1.0) * u;
        }
    }
    return residual;
}

// Relaxation/dephasing model built from the measured decay and Ramsey
// times (microseconds). Internally converted to 1/ns rates.
//
// Both excited states decay at 1/T1 (ladder operators |0><e| and |e><1|).
// Pure dephasing uses one diagonal operator per transition,
// |u><u| - |l><l|, with the two rates solved jointly so that the 0e and
// e1 coherences decay at exactly 1/T2^{0e} and 1/T2^{e1}. (Each operator
// also dephases the other transition at a quarter rate, and the e1
// coherence already decays at 1/T1 from relaxation of both of its levels,
// so the naive per-transition formula would overshoot.)
class NoiseModel {
  public:
    NoiseModel(double t1_us, double t2_0e_us, double t2_e1_us);

    static NoiseModel paper() { return NoiseModel(7.0, 8.0, 3.9); }

    double t1_us() const { return t1_us_; }
    double t2_0e_us() const { return t2_0e_us_; }
    double t2_e1_us() const { return t2_e1_us_; }

    double decay_rate() const { return decay_rate_; }            // 1/ns, each ladder channel
    double dephasing_rate_0e() const { return deph_rate_0e_; }   // 1/ns, operator |e><e|-|0><0|
    double dephasing_rate_e1() const { return deph_rate_e1_; }   // 1/ns, operator |1><1|-|e><e|

  private:
    double t1_us_, t2_0e_us_, t2_e1_us_;
    double decay_rate_, deph_rate_0e_, deph_rate_e1_;
};

// Lindblad collapse operators with nonnegative rate weights.
struct CollapseSet {
    struct Channel {
        Matrix3c op;
        double rate;  // 1/ns
    };
    std::vector<Channel> channels;

    static CollapseSet none() { return CollapseSet{}; }
    static CollapseSet from_noise(const NoiseModel& noise);
};

// RK4 integration of
//   drho/dt = -i [h(t), rho] + sum_k rate_k (L rho L^dag - {L^dag L, rho}/2)
// on [t0, t1]. Throws StepTooCoarse if the trace drifts beyond 1e-6.
template <typename HamFn>
Matrix3c lindblad_propagate(const Matrix3c& rho0, HamFn&& h, const CollapseSet& noise,
                            double t0, double t1, double dt) {
    auto rhs = [&noise](const Matrix3c& rho, const Matrix3c& ht) -> Matrix3c {
        Matrix3c out = -kI * (ht * rho - rho * ht);
        for (const auto& ch : noise.channels) {
            const Matrix3c ld = ch.op.adjoint();
            const Matrix3c ldl = ld * ch.op;
            out += ch.rate * (ch.op * rho * ld - 0.5 * (ldl * rho + rho * ldl));
        }
        return out;
    };
    long n = std::lround((t1 - t0) / dt);
    n = std::max<long>(n, 1);
    const double step = (t1 - t0) / static_cast<double>(n);
    Matrix3c rho = rho0;
    for (long k = 0; k < n; ++k) {
        const double t = t0 + static_cast<double>(k) * step;
        const Matrix3c h0 = h(t);
        const Matrix3c hm = h(t + 0.5 * step);
        const Matrix3c h1 = h(t + step);
        const Matrix3c k1 = rhs(rho, h0);
        const Matrix3c k2 = rhs(rho + 0.5 * step * k1, hm);
        const Matrix3c k3 = rhs(rho + 0.5 * step * k2, hm);
        const Matrix3c k4 = rhs(rho + step * k3, h1);
        rho += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    if (std::abs(rho.trace().real() - 1.0) > 1e-6 || std::abs(rho.trace().imag()) > 1e-6) {
        throw StepTooCoarse("lindblad_propagate: trace drift " +
                            std::to_string(std::abs(rho.trace().real() - 1.0)));
    }
    return rho;
}

// Master-equation evolution of the pulse Hamiltonian over [0, t_final].
DensityMatrix lindblad_evolve(const DensityMatrix& rho0, const InteractionHamiltonian& h,
                              const CollapseSet& noise, double t_final, double dt);

// Free (drive-off) evolution under the noise model.
Matrix3c free_evolve(const Matrix3c& rho0, const CollapseSet& noise, double duration,
                     double dt = 0.5);

}  // namespace holo
