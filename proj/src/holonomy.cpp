#include "holo/holonomy.hpp"

#include "holo/linalg.hpp"

#include <cmath>

namespace holo {

namespace {

Matrix2c pauli(int k) {
    Matrix2c m;
    switch (k) {
        case 0: m << 0, 1, 1, 0; break;                  // x
        case 1: m << 0, -kI, kI, 0; break;               // y
        default: m << 1, 0, 0, -1; break;                // z
    }
    return m;
}

}  // namespace

LogicalUnitary analytic_unitary(const GateSpec& g) {
    LogicalUnitary u;
    const Complex off = std::exp(Complex(0.0, g.phi)) * std::sin(g.theta);
    u << std::cos(g.theta), off, std::conj(off), -std::cos(g.theta);
    return u;
}

Matrix3c embed_logical(const LogicalUnitary& u) {
    Matrix3c out = Matrix3c::Identity();
    out(L0, L0) = u(0, 0);
    out(L0, L1) = u(0, 1);
    out(L1, L0) = u(1, 0);
    out(L1, L1) = u(1, 1);
    return out;
}

LogicalUnitary logical_block(const Matrix3c& u) {
    LogicalUnitary out;
    out << u(L0, L0), u(L0, L1), u(L1, L0), u(L1, L1);
    return out;
}

LogicalUnitary compose(const LogicalUnitary& g_first, const LogicalUnitary& g_second) {
    return g_second * g_first;
}

double commutation_overlap(const LogicalUnitary& u1, const LogicalUnitary& u2) {
    return 0.5 * std::abs((u1.adjoint() * u2).trace());
}

AxisAngle axis_angle(const LogicalUnitary& u) {
    // remove the global phase: v = u / sqrt(det u) lands in SU(2)
    const Complex det = u.determinant();
    Matrix2c v = u / std::sqrt(det);

    auto decompose_su2 = [](const Matrix2c& w) {
        const double c = 0.5 * w.trace().real();
        const double angle = 2.0 * std::acos(std::clamp(c, -1.0, 1.0));
        Eigen::Vector3d axis = Eigen::Vector3d::Zero();
        const double s = std::sin(0.5 * angle);
        if (s > 1e-12) {
            for (int k = 0; k < 3; ++k) {
                axis(k) = -0.5 * (w * pauli(k)).trace().imag() / s;
            }
        }
        return AxisAngle{axis, angle};
    };

    AxisAngle out = decompose_su2(v);
    if (out.angle > kPi) {
        // the other sign of sqrt(det) gives the representative with angle <= pi
        out = decompose_su2(-v);
    }
    if (out.angle < 1e-12 || out.axis.norm() < 1e-12) {
        return AxisAngle{Eigen::Vector3d::Zero(), 0.0};  // degenerate rotation
    }
    out.axis.normalize();
    if (std::abs(out.angle - kPi) < 1e-9) {
        // both axis signs are valid at angle pi; fix the first nonzero
        // component nonnegative
        for (int k = 0; k < 3; ++k) {
            if (std::abs(out.axis(k)) > 1e-9) {
                if (out.axis(k) < 0.0) out.axis = -out.axis;
                break;
            }
        }
    }
    return out;
}

Eigen::Vector3d bloch_vector(const Matrix2c& rho_logical) {
    Eigen::Vector3d v;
    v(0) = 2.0 * rho_logical(0, 1).real();
    v(1) = -2.0 * rho_logical(0, 1).imag();
    v(2) = rho_logical(0, 0).real() - rho_logical(1, 1).real();
    return v;
}

Eigen::Vector3d bloch_vector(const Matrix3c& rho) {
    Matrix2c block;
    block << rho(L0, L0), rho(L0, L1), rho(L1, L0), rho(L1, L1);
    return bloch_vector(block);
}

}  // namespace holo
