#pragma once

#include <complex>
#include <vector>

#include <Eigen/Core>

namespace fefbound {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Kronecker product. The first factor indexes the slow (outer) subsystem:
// entry ((a, b), (c, e)) with row a*B.rows()+b equals A(a, c) * B(b, e).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

double frobenius_norm(const ComplexMatrix& a);

// Sum of singular values (Ky Fan / nuclear norm). Throws DimensionError
// for non-square input.
double trace_norm(const ComplexMatrix& a);

// Real eigenvalues of a Hermitian matrix, largest first. The input must
// satisfy ||A - A^dagger||_F <= tol, otherwise HermiticityError.
std::vector<double> hermitian_spectrum(const ComplexMatrix& a, double tol = 1e-10);

struct HermitianEigen {
    Eigen::VectorXd values;   // descending
    ComplexMatrix vectors;    // column k belongs to values[k]
};

// Full eigendecomposition of the Hermitian part (A + A^dagger)/2, sorted
// descending. No hermiticity check; callers decide what residual is fine.
HermitianEigen hermitian_eigen(const ComplexMatrix& a);

struct PolarFactor {
    ComplexMatrix unitary;          // V * W^dagger
    Eigen::VectorXd singular_values;  // descending
};

// V*W^dagger from the SVD G = V*Sigma*W^dagger, with no rank requirement.
// For rank-deficient G this is one of several maximizers of
// Re tr(U^dagger G); the SVD routine fixes which one deterministically.
PolarFactor unitary_polar_factor(const ComplexMatrix& g);

// Unitary polar factor of a full-rank G. Maximizes Re tr(U^dagger G) over
// unitaries. Throws SingularityError when the smallest singular value is at
// or below min_singular_value.
ComplexMatrix nearest_unitary(const ComplexMatrix& g, double min_singular_value = 1e-12);

// ||U^dagger U - I||_F
double unitarity_residual(const ComplexMatrix& u);

// ||A - A^dagger||_F
double hermiticity_residual(const ComplexMatrix& a);

bool all_finite(const ComplexMatrix& a);

}  // namespace fefbound
