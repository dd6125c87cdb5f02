#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "holo/evolution.hpp"
#include "holo/holonomy.hpp"
#include "test_support.hpp"

#include <random>

using namespace holo;
using test::max_abs_diff;

namespace {

Matrix2c pauli_x() {
    Matrix2c m;
    m << 0, 1, 1, 0;
    return m;
}
Matrix2c pauli_y() {
    Matrix2c m;
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}
Matrix2c pauli_z() {
    Matrix2c m;
    m << 1, 0, 0, -1;
    return m;
}

}  // namespace

TEST_CASE("analytic unitaries of the named gates") {
    CHECK(max_abs_diff(analytic_unitary(GateSpec::z()), pauli_z()) < 1e-15);

    const Matrix2c h = (pauli_z() - pauli_x()) / std::sqrt(2.0);
    CHECK(max_abs_diff(analytic_unitary(GateSpec::hadamard()), h) < 1e-15);

    CHECK(max_abs_diff(analytic_unitary(GateSpec::not_gate()), pauli_x()) < 1e-15);
}

TEST_CASE("holonomies are hermitian involutions") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> thetas(0.0, kPi);
    std::uniform_real_distribution<double> phis(0.0, kTwoPi);
    for (int trial = 0; trial < 40; ++trial) {
        const LogicalUnitary u = analytic_unitary(GateSpec{thetas(rng), phis(rng), ""});
        CHECK(hermiticity_error(u) < 1e-12);
        CHECK(max_abs_diff(Matrix2c(u * u), Matrix2c::Identity()) < 1e-12);
        CHECK(unitarity_error(u) < 1e-12);
    }
}

TEST_CASE("embedding leaves |e> invariant") {
    CHECK(max_abs_diff(embed_logical(Matrix2c::Identity()), Matrix3c::Identity()) == 0.0);

    Matrix3c z3 = Matrix3c::Identity();
    z3(L1, L1) = -1.0;
    CHECK(max_abs_diff(embed_logical(pauli_z()), z3) == 0.0);

    const Matrix3c h3 = embed_logical(analytic_unitary(GateSpec::hadamard()));
    CHECK(h3(LE, LE) == Complex(1.0));
    CHECK(std::abs(h3(LE, L0)) == 0.0);
    CHECK(std::abs(h3(L0, LE)) == 0.0);
    CHECK((h3 * ket(LE) - ket(LE)).norm() == 0.0);
    CHECK(h3(L0, L0) == analytic_unitary(GateSpec::hadamard())(0, 0));
}

TEST_CASE("composition order matches the paper products") {
    const LogicalUnitary h = analytic_unitary(GateSpec::hadamard());
    const LogicalUnitary x = analytic_unitary(GateSpec::not_gate());

    // NOT . H (H first) = -(i sigma_y + 1)/sqrt(2)
    const Matrix2c not_h = compose(h, x);
    const Matrix2c expected_nh =
        -(Complex(0, 1) * pauli_y() + Matrix2c::Identity()) / std::sqrt(2.0);
    CHECK(max_abs_diff(not_h, expected_nh) < 1e-15);

    // H . NOT (NOT first) = (i sigma_y - 1)/sqrt(2)
    const Matrix2c h_not = compose(x, h);
    const Matrix2c expected_hn =
        (Complex(0, 1) * pauli_y() - Matrix2c::Identity()) / std::sqrt(2.0);
    CHECK(max_abs_diff(h_not, expected_hn) < 1e-15);
}

TEST_CASE("every holonomy squares to the identity under compose") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> thetas(0.0, kPi);
    std::uniform_real_distribution<double> phis(0.0, kTwoPi);
    for (int trial = 0; trial < 20; ++trial) {
        const LogicalUnitary u = analytic_unitary(GateSpec{thetas(rng), phis(rng), ""});
        CHECK(max_abs_diff(compose(u, u), Matrix2c::Identity()) < 1e-12);
    }
}

TEST_CASE("commutation overlap") {
    const LogicalUnitary h = analytic_unitary(GateSpec::hadamard());
    const LogicalUnitary x = analytic_unitary(GateSpec::not_gate());
    const LogicalUnitary z = analytic_unitary(GateSpec::z());

    CHECK(commutation_overlap(compose(h, x), compose(x, h)) < 1e-10);
    CHECK(commutation_overlap(h, h) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(commutation_overlap(z, x) < 1e-15);

    // invariant under a global phase
    const Matrix2c phased = std::exp(Complex(0.0, 0.83)) * h;
    CHECK(commutation_overlap(h, phased) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("axis-angle of the named gates") {
    const AxisAngle x = axis_angle(analytic_unitary(GateSpec::not_gate()));
    CHECK(x.angle == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(x.axis(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(x.axis(1)) < 1e-12);
    CHECK(std::abs(x.axis(2)) < 1e-12);

    const AxisAngle z = axis_angle(analytic_unitary(GateSpec::z()));
    CHECK(z.angle == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(z.axis(2) == doctest::Approx(1.0).epsilon(1e-12));

    // the Hadamard-variant holonomy rotates about (x - z)/sqrt(2)... with the
    // first-nonzero-nonnegative convention the axis is (1,0,-1)/sqrt(2)
    const AxisAngle h = axis_angle(analytic_unitary(GateSpec::hadamard()));
    CHECK(h.angle == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(h.axis(0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(h.axis(2) == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("composite rotations are opposite quarter turns about y") {
    const LogicalUnitary h = analytic_unitary(GateSpec::hadamard());
    const LogicalUnitary x = analytic_unitary(GateSpec::not_gate());

    const AxisAngle nh = axis_angle(compose(h, x));  // NOT . H
    const AxisAngle hn = axis_angle(compose(x, h));  // H . NOT
    CHECK(nh.angle == doctest::Approx(kPi / 2.0).epsilon(1e-12));
    CHECK(hn.angle == doctest::Approx(kPi / 2.0).epsilon(1e-12));
    CHECK(std::abs(nh.axis(1)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(hn.axis(1)) == doctest::Approx(1.0).epsilon(1e-12));
    // opposite senses
    CHECK((nh.axis + hn.axis).norm() < 1e-12);
    // concretely: NOT.H about -y, H.NOT about +y (z = +1 for |0>)
    CHECK(nh.axis(1) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(hn.axis(1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("degenerate rotation returns zero axis") {
    const AxisAngle id = axis_angle(Matrix2c::Identity());
    CHECK(id.angle == 0.0);
    CHECK(id.axis.norm() == 0.0);

    const AxisAngle phased = axis_angle(Matrix2c(std::exp(Complex(0, 1.1)) * Matrix2c::Identity()));
    CHECK(phased.angle == 0.0);
    CHECK(phased.axis.norm() == 0.0);
}

TEST_CASE("axis-angle round trip") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> angles(0.1, kPi - 0.1);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        Eigen::Vector3d axis(gauss(rng), gauss(rng), gauss(rng));
        axis.normalize();
        const double angle = angles(rng);
        const Matrix2c gen = axis(0) * pauli_x() + axis(1) * pauli_y() + axis(2) * pauli_z();
        const Matrix2c u = expm_hermitian(gen, 0.5 * angle);
        const AxisAngle aa = axis_angle(u);
        CHECK(aa.angle == doctest::Approx(angle).epsilon(1e-9));
        CHECK((aa.axis - axis).norm() < 1e-9);
    }
}

TEST_CASE("gate grid generates rotations about all three axes") {
    // products of two holonomies rotate about n1 x n2; a small (theta, phi)
    // grid already produces axes with dominant x, y and z components
    std::vector<LogicalUnitary> gates;
    for (double theta : {0.0, kPi / 4.0, kPi / 2.0}) {
        for (double phi : {0.0, kPi / 2.0, kPi}) {
            gates.push_back(analytic_unitary(GateSpec{theta, phi, ""}));
        }
    }
    bool x_axis = false, y_axis = false, z_axis = false;
    for (const auto& a : gates) {
        for (const auto& b : gates) {
            const AxisAngle aa = axis_angle(compose(a, b));
            if (aa.angle < 1e-9) continue;
            if (std::abs(aa.axis(0)) > 0.9) x_axis = true;
            if (std::abs(aa.axis(1)) > 0.9) y_axis = true;
            if (std::abs(aa.axis(2)) > 0.9) z_axis = true;
        }
    }
    CHECK(x_axis);
    CHECK(y_axis);
    CHECK(z_axis);
}

TEST_CASE("analytic holonomy matches the propagated gate on a grid") {
    // 25-point (theta, phi) grid, logical block agreement within 1e-8
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            const double theta = kPi * static_cast<double>(i) / 4.0;
            const double phi = kTwoPi * static_cast<double>(j) / 5.0;
            const PulseSpec spec = gate_pulse(theta, phi);
            const Matrix3c u = propagator(spec);
            CHECK(max_abs_diff(logical_block(u),
                               analytic_unitary(GateSpec{theta, phi, ""})) < 1e-8);
        }
    }
}

TEST_CASE("bloch vector conventions") {
    CHECK((bloch_vector(Matrix3c(ket(L0) * ket(L0).adjoint())) -
           Eigen::Vector3d(0, 0, 1)).norm() < 1e-15);
    CHECK((bloch_vector(Matrix3c(ket(L1) * ket(L1).adjoint())) -
           Eigen::Vector3d(0, 0, -1)).norm() < 1e-15);
    const Vector3c plus = (ket(L0) + ket(L1)) / std::sqrt(2.0);
    CHECK((bloch_vector(Matrix3c(plus * plus.adjoint())) -
           Eigen::Vector3d(1, 0, 0)).norm() < 1e-14);
    const Vector3c plus_i = (ket(L0) + kI * ket(L1)) / std::sqrt(2.0);
    CHECK((bloch_vector(Matrix3c(plus_i * plus_i.adjoint())) -
           Eigen::Vector3d(0, 1, 0)).norm() < 1e-14);
}
