#include "holo/qutrit.hpp"

#include <Eigen/LU>

namespace holo {

namespace {

std::array<Matrix3c, 9> standard_ops() {
    const Matrix3c i01 = ketbra(L0, L0) + ketbra(L1, L1);
    const Matrix3c sx01 = ketbra(L0, L1) + ketbra(L1, L0);
    const Matrix3c msy01 = -ketbra(L0, L1) + ketbra(L1, L0);  // -i sigma_y on (0,1)
    const Matrix3c sz01 = ketbra(L0, L0) - ketbra(L1, L1);
    const Matrix3c sx0e = ketbra(L0, LE) + ketbra(LE, L0);
    const Matrix3c msy0e = -ketbra(L0, LE) + ketbra(LE, L0);
    const Matrix3c sx1e = ketbra(L1, LE) + ketbra(LE, L1);
    const Matrix3c msy1e = -ketbra(L1, LE) + ketbra(LE, L1);
    const Matrix3c e = ketbra(LE, LE);
    return {i01, sx01, msy01, sz01, sx0e, msy0e, sx1e, msy1e, e};
}

constexpr std::array<const char*, 9> kNames = {"I01",  "X01",  "mY01", "Z01", "X0e",
                                               "mY0e", "X1e",  "mY1e", "E"};

}  // namespace

OperatorBasis9::OperatorBasis9(const std::array<Matrix3c, 9>& ops,
                               const std::array<std::string, 9>& names)
    : ops_(ops), names_(names) {
    for (int j = 0; j < 9; ++j) {
        for (int k = 0; k < 9; ++k) {
            gram_(j, k) = hs_inner(ops_[static_cast<std::size_t>(j)],
                                   ops_[static_cast<std::size_t>(k)]);
        }
    }
}

const OperatorBasis9& OperatorBasis9::standard() {
    static const OperatorBasis9 instance = [] {
        std::array<std::string, 9> names;
        for (std::size_t k = 0; k < 9; ++k) names[k] = kNames[k];
        return OperatorBasis9(standard_ops(), names);
    }();
    return instance;
}

LogicalBasis4::LogicalBasis4() {
    const auto& full = OperatorBasis9::standard();
    for (std::size_t k = 0; k < 4; ++k) {
        ops_[k] = full.operators()[k];
        names_[k] = full.names()[k];
    }
}

const LogicalBasis4& LogicalBasis4::standard() {
    static const LogicalBasis4 instance;
    return instance;
}

Vector9c decompose(const Matrix3c& op, const OperatorBasis9& basis) {
    Vector9c rhs;
    for (int k = 0; k < 9; ++k) rhs(k) = hs_inner(basis.op(k), op);
    Eigen::FullPivLU<Matrix9c> lu(basis.gram());
    if (!lu.isInvertible()) {
        throw SingularBasis("decompose: Gram matrix is numerically singular");
    }
    return lu.solve(rhs);
}

Matrix3c recompose(const Vector9c& coeffs, const OperatorBasis9& basis) {
    Matrix3c out = Matrix3c::Zero();
    for (int k = 0; k < 9; ++k) out += coeffs(k) * basis.op(k);
    return out;
}

}  // namespace holo
