// holonomy.hpp — analytic holonomies, gate composition and the axis-angle
// Bloch decomposition

#pragma once

#include "holo/types.hpp"

#include <string>

namespace holo {

// Path parameters of one holonomic gate.
struct GateSpec {
    double theta;  // [0, pi]
    double phi;    // [0, 2 pi)
    std::string label;

    static GateSpec z() { return {0.0, 0.0, "Z"}; }
    static GateSpec hadamard() { return {kPi / 4.0, kPi, "H"}; }
    static GateSpec not_gate() { return {kPi / 2.0, 0.0, "NOT"}; }
};

// 2x2 unitary on the logical pair (|0>, |1>).
using LogicalUnitary = Matrix2c;

// U(C) = [[cos t, e^{i p} sin t], [e^{-i p} sin t, -cos t]].
// Hermitian and involutive: U = U^dag, U^2 = I.
LogicalUnitary analytic_unitary(const GateSpec& g);

// 3x3 embedding with <e|U|e> = 1, for ideal-process comparison.
Matrix3c embed_logical(const LogicalUnitary& u);

// Logical block of a 3x3 operator.
LogicalUnitary logical_block(const Matrix3c& u);

// Matrix product g_second * g_first: the first argument acts first.
LogicalUnitary compose(const LogicalUnitary& g_first, const LogicalUnitary& g_second);

// |tr(u1^dag u2)| / 2; equals 1 iff u1 == u2 up to global phase.
double commutation_overlap(const LogicalUnitary& u1, const LogicalUnitary& u2);

// SU(2) rotation data: u ~ exp(-i (angle/2) axis.sigma) up to global phase.
struct AxisAngle {
    Eigen::Vector3d axis;
    double angle;  // [0, pi]
};

// Decomposition with angle in [0, pi]. The global phase is removed by
// dividing by sqrt(det); for angle < pi the axis sign is then fixed by the
// angle range, for angle == pi (where both signs represent the same
// rotation) the first nonzero axis component is made nonnegative.
// u proportional to the identity yields angle 0 and a zero axis.
AxisAngle axis_angle(const LogicalUnitary& u);

// Logical Bloch coordinates with z = +1 for |0>.
Eigen::Vector3d bloch_vector(const Matrix2c& rho_logical);
Eigen::Vector3d bloch_vector(const Matrix3c& rho);

}  // namespace holo
