// qutrit.hpp — three-level states, density matrices and the fixed operator bases

#pragma once

#include "holo/errors.hpp"
#include "holo/linalg.hpp"
#include "holo/types.hpp"

#include <array>
#include <string>

namespace holo {

inline Vector3c ket(Level l) {
    Vector3c v = Vector3c::Zero();
    v(static_cast<int>(l)) = 1.0;
    return v;
}

inline Matrix3c ketbra(Level a, Level b) {
    Matrix3c m = Matrix3c::Zero();
    m(static_cast<int>(a), static_cast<int>(b)) = 1.0;
    return m;
}

// Pure state of the three-level atom, amplitudes ordered (|0>, |e>, |1>).
class QutritState {
  public:
    explicit QutritState(const Vector3c& amplitudes, double tol = 1e-12)
        : amplitudes_(amplitudes) {
        if (std::abs(amplitudes_.squaredNorm() - 1.0) > tol) {
            throw Error("QutritState: norm deviates from 1 by " +
                        std::to_string(std::abs(amplitudes_.squaredNorm() - 1.0)));
        }
    }

    static QutritState basis(Level l) { return QutritState(ket(l)); }
    static QutritState normalized(const Vector3c& raw) {
        const double n = raw.norm();
        if (n == 0.0) throw Error("QutritState: zero vector");
        return QutritState(raw / n);
    }

    const Vector3c& amplitudes() const { return amplitudes_; }
    Complex amplitude(Level l) const { return amplitudes_(static_cast<int>(l)); }
    double population(Level l) const { return std::norm(amplitudes_(static_cast<int>(l))); }
    Matrix3c projector() const { return amplitudes_ * amplitudes_.adjoint(); }

  private:
    Vector3c amplitudes_;
};

// 3x3 density operator. Validates hermiticity, unit trace and an
// eigenvalue floor on construction.
class DensityMatrix {
  public:
    explicit DensityMatrix(const Matrix3c& m,
                           double herm_tol = 1e-12,
                           double trace_tol = 1e-12,
                           double eig_floor = -1e-10)
        : m_(0.5 * (m + m.adjoint())) {
        if (hermiticity_error(m) > herm_tol) {
            throw Error("DensityMatrix: hermiticity error " + std::to_string(hermiticity_error(m)));
        }
        if (std::abs(m.trace().real() - 1.0) > trace_tol || std::abs(m.trace().imag()) > trace_tol) {
            throw Error("DensityMatrix: trace deviates from 1");
        }
        if (hermitian_eigenvalues(m_).minCoeff() < eig_floor) {
            throw Error("DensityMatrix: negative eigenvalue " +
                        std::to_string(hermitian_eigenvalues(m_).minCoeff()));
        }
    }

    static DensityMatrix pure(const QutritState& psi) { return DensityMatrix(psi.projector()); }
    static DensityMatrix pure(const Vector3c& psi) {
        return pure(QutritState::normalized(psi));
    }

    const Matrix3c& matrix() const { return m_; }
    double population(Level l) const { return m_(l, l).real(); }

  private:
    Matrix3c m_;
};

// The nine process-tomography basis operators
// {I01, sx01, -i sy01, sz01, sx0e, -i sy0e, sx1e, -i sy1e, E}
// with I01 = |0><0| + |1><1| and E = |e><e|.
class OperatorBasis9 {
  public:
    static const OperatorBasis9& standard();

    explicit OperatorBasis9(const std::array<Matrix3c, 9>& ops,
                            const std::array<std::string, 9>& names);

    const std::array<Matrix3c, 9>& operators() const { return ops_; }
    const Matrix3c& op(int k) const { return ops_[static_cast<std::size_t>(k)]; }
    const std::array<std::string, 9>& names() const { return names_; }

    // Hilbert-Schmidt Gram matrix G_jk = tr(P_j^dag P_k).
    const Matrix9c& gram() const { return gram_; }

  private:
    std::array<Matrix3c, 9> ops_;
    std::array<std::string, 9> names_;
    Matrix9c gram_;
};

// Logical-subspace operator set {I, X, Y~, Z}; each annihilates |e>.
class LogicalBasis4 {
  public:
    static const LogicalBasis4& standard();
    const std::array<Matrix3c, 4>& operators() const { return ops_; }
    const std::array<std::string, 4>& names() const { return names_; }

  private:
    LogicalBasis4();
    std::array<Matrix3c, 4> ops_;
    std::array<std::string, 4> names_;
};

// Coefficients c with op = sum_k c_k P_k, solved through the Gram matrix
// (the listed operators are mutually orthogonal but not normalized, so a
// plain projection would misscale the E component).
Vector9c decompose(const Matrix3c& op, const OperatorBasis9& basis = OperatorBasis9::standard());

Matrix3c recompose(const Vector9c& coeffs,
                   const OperatorBasis9& basis = OperatorBasis9::standard());

}  // namespace holo
