#include "fefbound/linalg.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "fefbound/errors.hpp"

namespace fefbound {

namespace {

void require_square(const ComplexMatrix& a, const char* what) {
    if (a.rows() != a.cols()) {
        throw DimensionError(std::string(what) + ": expected a square matrix, got " +
                             std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    }
}

}  // namespace

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const Eigen::Index br = b.rows();
    const Eigen::Index bc = b.cols();
    ComplexMatrix out(a.rows() * br, a.cols() * bc);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * br, j * bc, br, bc) = a(i, j) * b;
        }
    }
    return out;
}

double frobenius_norm(const ComplexMatrix& a) { return a.norm(); }

double trace_norm(const ComplexMatrix& a) {
    require_square(a, "trace_norm");
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    return svd.singularValues().sum();
}

HermitianEigen hermitian_eigen(const ComplexMatrix& a) {
    require_square(a, "hermitian_eigen");
    const ComplexMatrix herm = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm);
    if (solver.info() != Eigen::Success) {
        throw Error("hermitian_eigen: eigensolver did not converge");
    }
    // Eigen returns ascending order.
    HermitianEigen out;
    out.values = solver.eigenvalues().reverse();
    out.vectors = solver.eigenvectors().rowwise().reverse();
    return out;
}

std::vector<double> hermitian_spectrum(const ComplexMatrix& a, double tol) {
    require_square(a, "hermitian_spectrum");
    const double residual = hermiticity_residual(a);
    if (!(residual <= tol)) {
        throw HermiticityError("hermitian_spectrum: ||A - A^dagger||_F = " +
                               std::to_string(residual) + " exceeds tolerance " +
                               std::to_string(tol));
    }
    const auto eig = hermitian_eigen(a);
    return {eig.values.data(), eig.values.data() + eig.values.size()};
}

PolarFactor unitary_polar_factor(const ComplexMatrix& g) {
    require_square(g, "unitary_polar_factor");
    Eigen::JacobiSVD<ComplexMatrix> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return {svd.matrixU() * svd.matrixV().adjoint(), svd.singularValues()};
}

ComplexMatrix nearest_unitary(const ComplexMatrix& g, double min_singular_value) {
    require_square(g, "nearest_unitary");
    auto polar = unitary_polar_factor(g);
    const auto& sv = polar.singular_values;
    const double smallest = sv.size() > 0 ? sv(sv.size() - 1) : 0.0;
    if (!(smallest > min_singular_value)) {
        throw SingularityError("nearest_unitary: smallest singular value " +
                               std::to_string(smallest) + " is not above " +
                               std::to_string(min_singular_value));
    }
    return std::move(polar.unitary);
}

double unitarity_residual(const ComplexMatrix& u) {
    require_square(u, "unitarity_residual");
    return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).norm();
}

double hermiticity_residual(const ComplexMatrix& a) {
    require_square(a, "hermiticity_residual");
    return (a - a.adjoint()).norm();
}

bool all_finite(const ComplexMatrix& a) {
    return a.unaryExpr([](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); })
        .all();
}

}  // namespace fefbound
