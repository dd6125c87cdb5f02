#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "holo/evolution.hpp"
#include "holo/holonomy.hpp"
#include "test_support.hpp"

#include <random>

using namespace holo;
using test::max_abs_diff;

namespace {

PulseSpec paper_pulse(double gate_theta, double gate_phi) {
    return gate_pulse(gate_theta, gate_phi, 10.0, 40.0, kDefaultTimeStep);
}

// Independent fine-step oracle for the parallel-transport residual: RK4 on
// the basis-state trajectories, sampling <psi_i|h|psi_j>.
template <typename HamFn>
double residual_oracle(HamFn&& h, double t1, double dt, int samples) {
    Matrix3c u = Matrix3c::Identity();
    auto rhs = [&h](const Matrix3c& m, double t) -> Matrix3c { return -kI * (h(t) * m); };
    const long n = std::lround(t1 / dt);
    const double step = t1 / static_cast<double>(n);
    double residual = 0.0;
    const long stride = std::max<long>(1, n / (samples - 1));
    for (long k = 0; k <= n; ++k) {
        const double t = static_cast<double>(k) * step;
        if (k % stride == 0 || k == n) {
            const Matrix3c ht = h(t);
            for (int i : {L0, L1})
                for (int j : {L0, L1})
                    residual = std::max(residual,
                                        std::abs((u.col(i).adjoint() * ht * u.col(j))(0, 0)));
        }
        if (k < n) {
            const Matrix3c k1 = rhs(u, t);
            const Matrix3c k2 = rhs(u + 0.5 * step * k1, t + 0.5 * step);
            const Matrix3c k3 = rhs(u + 0.5 * step * k2, t + 0.5 * step);
            const Matrix3c k4 = rhs(u + step * k3, t + step);
            u += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
    }
    return residual;
}

}  // namespace

TEST_CASE("hamiltonian structure") {
    const PulseSpec spec = paper_pulse(kPi / 2.0, 0.0);
    const InteractionHamiltonian h{spec.drive, spec.envelope};

    CHECK(max_abs_diff(h.at(-5.0), Matrix3c::Zero()) == 0.0);
    CHECK(max_abs_diff(h.at(45.0), Matrix3c::Zero()) == 0.0);

    for (double t : {3.0, 11.0, 20.0, 37.5}) {
        const Matrix3c m = h.at(t);
        CHECK(hermiticity_error(m) < 1e-14);
        CHECK(std::abs(m(L0, L1)) == 0.0);  // no direct logical coupling
        CHECK(std::abs(m(L0, L0)) == 0.0);
        CHECK(std::abs(m(LE, LE)) == 0.0);
        CHECK(std::abs(m(L1, L1)) == 0.0);
    }

    // linear in the envelope
    const Matrix3c ratio =
        h.at(20.0) - (spec.envelope.value(20.0) / spec.envelope.value(10.0)) * h.at(10.0);
    CHECK(ratio.cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("single-drive hamiltonian at midpoint") {
    GaussianEnvelope env = calibrate_peak(10.0, 40.0);
    DriveConfig d = drive_from_angles(0.0, 0.0);  // a = 0, b = 1
    const InteractionHamiltonian h{d, env};
    const double half_omega = 0.5 * env.value(20.0);
    Matrix3c expected = Matrix3c::Zero();
    expected(LE, L1) = half_omega;
    expected(L1, LE) = half_omega;
    CHECK(max_abs_diff(h.at(20.0), expected) < 1e-15);
}

TEST_CASE("equal-amplitude drive annihilates the dark state") {
    GaussianEnvelope env = calibrate_peak(10.0, 40.0);
    const DriveConfig d = drive_from_angles(kPi / 2.0, 0.0);  // a = b = 1/sqrt(2)
    const InteractionHamiltonian h{d, env};
    Vector3c dark = Vector3c::Zero();
    dark(L0) = 1.0 / std::sqrt(2.0);
    dark(L1) = -1.0 / std::sqrt(2.0);
    CHECK((h.at(17.0) * dark).norm() < 1e-15);
}

TEST_CASE("zero envelope propagates to the identity") {
    PulseSpec spec;
    spec.envelope = GaussianEnvelope{10.0, 40.0, 0.0, true};
    spec.drive = drive_from_angles(kPi / 2.0, 0.0);
    CHECK(max_abs_diff(propagator(spec), Matrix3c::Identity()) < 1e-14);
}

TEST_CASE("theta = 0 gate is sigma_z on the logical pair") {
    const Matrix3c u = propagator(paper_pulse(0.0, 0.0));
    CHECK(std::abs(u(L0, L0) - 1.0) < 1e-10);
    CHECK(std::abs(u(L1, L1) + 1.0) < 1e-10);
    CHECK(std::abs(u(L0, L1)) < 1e-10);
    CHECK(std::abs(u(L1, L0)) < 1e-10);
    // |e> returns to |e> up to a phase
    CHECK(std::abs(std::abs(u(LE, LE)) - 1.0) < 1e-10);
    CHECK(std::abs(u(LE, L0)) < 1e-10);
    CHECK(std::abs(u(LE, L1)) < 1e-10);
}

TEST_CASE("propagator reproduces the analytic holonomy across angles") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> thetas(0.0, kPi);
    std::uniform_real_distribution<double> phis(0.0, kTwoPi);
    for (int trial = 0; trial < 8; ++trial) {
        const double theta = thetas(rng);
        const double phi = phis(rng);
        const Matrix3c u = propagator(paper_pulse(theta, phi));
        const LogicalUnitary target = analytic_unitary(GateSpec{theta, phi, ""});
        CHECK(max_abs_diff(logical_block(u), target) < 1e-8);
        CHECK(std::abs(u(LE, L0)) < 1e-8);
        CHECK(std::abs(u(LE, L1)) < 1e-8);
        CHECK(unitarity_error(u) < 1e-10);
    }
}

TEST_CASE("commuting-family shortcut equivalence") {
    const PulseSpec spec = paper_pulse(1.1, 2.0);
    const InteractionHamiltonian h{spec.drive, spec.envelope};
    const double area = pulse_area(spec.envelope, spec.time_step);
    const Matrix3c closed_form = expm_hermitian(h.drive_matrix(), area);
    CHECK(max_abs_diff(propagator(spec), closed_form) < 1e-8);
}

TEST_CASE("step-halving convergence on a non-commuting drive") {
    RampedDrive ramp;
    ramp.envelope = calibrate_peak(10.0, 40.0);
    auto h = [&ramp](double t) { return ramp.at(t); };
    const Matrix3c u1 = propagate(h, 0.0, 40.0, 0.4);
    const Matrix3c u2 = propagate(h, 0.0, 40.0, 0.2);
    const Matrix3c u3 = propagate(h, 0.0, 40.0, 0.1);
    const double d12 = max_abs_diff(u1, u2);
    const double d23 = max_abs_diff(u2, u3);
    // second-order stepping: the error ratio tends to 4 from below
    const double order = std::log2(d12 / d23);
    CHECK(order > 1.95);
}

TEST_CASE("parallel transport holds for constant amplitude ratio") {
    for (double theta : {0.3, kPi / 4.0, kPi / 2.0}) {
        const PulseSpec spec = paper_pulse(theta, kPi);
        const double residual = parallel_transport_residual(spec, 64);
        CHECK(residual < 1e-10 * spec.envelope.peak);
    }
    PulseSpec off;
    off.envelope = GaussianEnvelope{10.0, 40.0, 0.0, true};
    off.drive = drive_from_angles(1.0, 0.0);
    CHECK(parallel_transport_residual(off, 16) == 0.0);
}

TEST_CASE("parallel transport fails for a swept amplitude ratio") {
    RampedDrive ramp;
    ramp.envelope = calibrate_peak(10.0, 40.0);
    auto h = [&ramp](double t) { return ramp.at(t); };
    const double residual = parallel_transport_residual(h, 0.0, 40.0, kDefaultTimeStep, 64);
    CHECK(residual > 1e-3 * ramp.envelope.peak);

    const double oracle = residual_oracle(h, 40.0, kDefaultTimeStep / 10.0, 64);
    CHECK(oracle > 1e-3 * ramp.envelope.peak);
    CHECK(residual == doctest::Approx(oracle).epsilon(1e-3));
}

TEST_CASE("noise model realizes the quoted rates") {
    const NoiseModel noise = NoiseModel::paper();
    CHECK(noise.decay_rate() == doctest::Approx(1.0 / 7000.0));
    CHECK(noise.dephasing_rate_0e() >= 0.0);
    CHECK(noise.dephasing_rate_e1() >= 0.0);

    // total coherence decay rates implied by the collapse set
    const double g = noise.decay_rate();
    const double r0e = noise.dephasing_rate_0e();
    const double re1 = noise.dephasing_rate_e1();
    CHECK(0.5 * g + 2.0 * r0e + 0.5 * re1 == doctest::Approx(1.0 / 8000.0).epsilon(1e-12));
    CHECK(g + 0.5 * r0e + 2.0 * re1 == doctest::Approx(1.0 / 3900.0).epsilon(1e-12));

    CHECK_THROWS_AS(NoiseModel(7.0, 15.0, 3.9), InvalidNoiseModel);  // T2 > 2 T1
    CHECK_THROWS_AS(NoiseModel(7.0, 8.0, 7.5), InvalidNoiseModel);   // T2(e1) above the 1/T1 floor
    CHECK_THROWS_AS(NoiseModel(-1.0, 8.0, 3.9), InvalidNoiseModel);

    for (const auto& ch : CollapseSet::from_noise(noise).channels) {
        CHECK(ch.rate >= 0.0);
        CHECK(std::isfinite(ch.rate));
    }
}

TEST_CASE("T1 decay of the auxiliary state") {
    const CollapseSet noise = CollapseSet::from_noise(NoiseModel::paper());
    const DensityMatrix rho0 = DensityMatrix::pure(ket(LE));
    const InteractionHamiltonian off{drive_from_angles(0.0, 0.0),
                                     GaussianEnvelope{10.0, 0.0, 0.0, true}};
    const DensityMatrix rho = lindblad_evolve(rho0, off, noise, 7000.0, 1.0);
    CHECK(rho.population(LE) == doctest::Approx(std::exp(-1.0)).epsilon(0.01));
    CHECK(std::abs(rho.matrix().trace().real() - 1.0) < 1e-8);
}

TEST_CASE("Ramsey coherences decay at the configured T2") {
    const CollapseSet noise = CollapseSet::from_noise(NoiseModel::paper());
    const double s = 1.0 / std::sqrt(2.0);

    Matrix3c rho0 = (s * (ket(L0) + ket(LE))) * (s * (ket(L0) + ket(LE))).adjoint();
    Matrix3c rho = free_evolve(rho0, noise, 8000.0, 1.0);
    CHECK(std::abs(rho(L0, LE)) / 0.5 == doctest::Approx(std::exp(-1.0)).epsilon(0.02));

    rho0 = (s * (ket(LE) + ket(L1))) * (s * (ket(LE) + ket(L1))).adjoint();
    rho = free_evolve(rho0, noise, 3900.0, 1.0);
    CHECK(std::abs(rho(LE, L1)) / 0.5 == doctest::Approx(std::exp(-1.0)).epsilon(0.02));
}

TEST_CASE("noiseless master equation agrees with the propagator") {
    const PulseSpec spec = paper_pulse(kPi / 2.0, 0.0);  // NOT gate
    const InteractionHamiltonian h{spec.drive, spec.envelope};
    const DensityMatrix rho0 = DensityMatrix::pure(ket(L0));
    const DensityMatrix rho =
        lindblad_evolve(rho0, h, CollapseSet::none(), 40.0, kDefaultTimeStep);
    CHECK(rho.population(L1) == doctest::Approx(1.0).epsilon(1e-6));

    const Matrix3c u = propagator(spec);
    CHECK(max_abs_diff(rho.matrix(), Matrix3c(u * rho0.matrix() * u.adjoint())) < 1e-8);
}

TEST_CASE("noiseless gates leave |e> unpopulated from logical inputs") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> angles(0.0, kPi);
    for (int trial = 0; trial < 5; ++trial) {
        const PulseSpec spec = paper_pulse(angles(rng), 2.0 * angles(rng));
        const Matrix3c u = propagator(spec);
        for (Level l : {L0, L1}) {
            const Vector3c out = u * ket(l);
            CHECK(std::norm(out(LE)) < 1e-6);
        }
    }
}

TEST_CASE("positivity is preserved under the full noise model") {
    const CollapseSet noise = CollapseSet::from_noise(NoiseModel::paper());
    const PulseSpec spec = paper_pulse(kPi / 4.0, kPi);
    const InteractionHamiltonian h{spec.drive, spec.envelope};
    const double s = 1.0 / std::sqrt(2.0);
    const DensityMatrix rho0 = DensityMatrix::pure(Vector3c(s * (ket(L0) + kI * ket(L1))));
    const DensityMatrix rho = lindblad_evolve(rho0, h, noise, 40.0, kDefaultTimeStep);
    CHECK(hermitian_eigenvalues(rho.matrix()).minCoeff() > -1e-7);
    CHECK(std::abs(rho.matrix().trace().real() - 1.0) < 1e-8);
}

TEST_CASE("too coarse a step is reported, not silently fixed") {
    PulseSpec spec = paper_pulse(kPi / 2.0, 0.0);
    spec.envelope.peak *= 40.0;  // violent drive makes RK4 drift visibly
    const InteractionHamiltonian h{spec.drive, spec.envelope};
    const DensityMatrix rho0 = DensityMatrix::pure(ket(L0));
    CHECK_THROWS_AS(lindblad_evolve(rho0, h, CollapseSet::none(), 40.0, 1.0), StepTooCoarse);
}
