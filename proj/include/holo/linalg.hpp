// linalg.hpp — small complex linear-algebra helpers shared by all modules

#pragma once

#include "holo/errors.hpp"
#include "holo/types.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace holo {

// Conjugate transpose as a plain value. dagger(dagger(m)) == m exactly.
template <typename Derived>
typename Derived::PlainObject dagger(const Eigen::MatrixBase<Derived>& m) {
    return m.adjoint();
}

template <typename Derived>
double hermiticity_error(const Eigen::MatrixBase<Derived>& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename DerivedA, typename DerivedB>
std::complex<double> hs_inner(const Eigen::MatrixBase<DerivedA>& a,
                              const Eigen::MatrixBase<DerivedB>& b) {
    return (a.adjoint() * b).trace();
}

template <typename Derived>
double unitarity_error(const Eigen::MatrixBase<Derived>& u) {
    using Plain = typename Derived::PlainObject;
    return (u.adjoint() * u - Plain::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
}

// exp(-i * s * h) for Hermitian h, via eigendecomposition. The result is
// unitary to machine precision independent of s.
template <typename Derived>
typename Derived::PlainObject expm_hermitian(const Eigen::MatrixBase<Derived>& h,
                                             double s = 1.0,
                                             double tol = 1e-10) {
    using Plain = typename Derived::PlainObject;
    if (hermiticity_error(h) > tol) {
        throw NonHermitianInput("expm_hermitian: asymmetry " +
                                std::to_string(hermiticity_error(h)) + " exceeds tolerance");
    }
    const Plain sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Plain> es(sym);
    const auto& vals = es.eigenvalues();
    Plain phases = Plain::Zero(h.rows(), h.cols());
    for (Eigen::Index k = 0; k < vals.size(); ++k) {
        phases(k, k) = std::exp(std::complex<double>(0.0, -s * vals(k)));
    }
    return es.eigenvectors() * phases * es.eigenvectors().adjoint();
}

// Eigenvalues of the Hermitian part, ascending.
template <typename Derived>
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixBase<Derived>& m) {
    using Plain = typename Derived::PlainObject;
    const Plain sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Plain> es(sym);
    return es.eigenvalues();
}

// Frobenius-nearest positive semidefinite matrix (negative eigenvalues clipped).
template <typename Derived>
typename Derived::PlainObject project_psd(const Eigen::MatrixBase<Derived>& m) {
    using Plain = typename Derived::PlainObject;
    const Plain sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Plain> es(sym);
    Eigen::VectorXd vals = es.eigenvalues();
    for (Eigen::Index k = 0; k < vals.size(); ++k) vals(k) = std::max(vals(k), 0.0);
    return es.eigenvectors() * vals.template cast<std::complex<double>>().asDiagonal() *
           es.eigenvectors().adjoint();
}

// Inverse square root of a positive definite Hermitian matrix.
template <typename Derived>
typename Derived::PlainObject inv_sqrt_hermitian(const Eigen::MatrixBase<Derived>& m,
                                                 double floor = 1e-14) {
    using Plain = typename Derived::PlainObject;
    const Plain sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Plain> es(sym);
    Eigen::VectorXd vals = es.eigenvalues();
    for (Eigen::Index k = 0; k < vals.size(); ++k) {
        vals(k) = 1.0 / std::sqrt(std::max(vals(k), floor));
    }
    return es.eigenvectors() * vals.template cast<std::complex<double>>().asDiagonal() *
           es.eigenvectors().adjoint();
}

}  // namespace holo
