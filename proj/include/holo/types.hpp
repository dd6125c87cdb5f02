// types.hpp — dense complex matrix/vector aliases and the fixed level ordering

#pragma once

#include <Eigen/Dense>

#include <complex>

namespace holo {

template <typename Scalar> using Matrix2 = Eigen::Matrix<std::complex<Scalar>, 2, 2>;
template <typename Scalar> using Matrix3 = Eigen::Matrix<std::complex<Scalar>, 3, 3>;
template <typename Scalar> using Matrix4 = Eigen::Matrix<std::complex<Scalar>, 4, 4>;
template <typename Scalar> using Matrix9 = Eigen::Matrix<std::complex<Scalar>, 9, 9>;
template <typename Scalar> using Vector3 = Eigen::Matrix<std::complex<Scalar>, 3, 1>;
template <typename Scalar> using Vector9 = Eigen::Matrix<std::complex<Scalar>, 9, 1>;

using Complex  = std::complex<double>;
using Matrix2c = Matrix2<double>;
using Matrix3c = Matrix3<double>;
using Matrix4c = Matrix4<double>;
using Matrix9c = Matrix9<double>;
using Vector3c = Vector3<double>;
using Vector9c = Vector9<double>;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Level indices in the fixed (|0>, |e>, |1>) ladder ordering: ground,
// first excited (auxiliary), second excited. All 3x3 matrices in the
// project use this index order.
enum Level : int { L0 = 0, LE = 1, L1 = 2 };

// Default integrator step (ns).
inline constexpr double kDefaultTimeStep = 0.01;

}  // namespace holo
