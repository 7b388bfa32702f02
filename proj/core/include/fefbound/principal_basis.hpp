#pragma once

#include <memory>
#include <vector>

#include "fefbound/linalg.hpp"

namespace fefbound {

// Reduce any integer into Z_d = {0, ..., d-1}.
inline int mod_d(long long value, int d) {
    const long long r = value % d;
    return static_cast<int>(r < 0 ? r + d : r);
}

// omega^k with omega = exp(2*pi*i/d). The exponent is reduced mod d first so
// that equal powers produce bit-identical values.
Complex root_of_unity_power(int d, long long k);

// A_ij = sum_m omega^(i*m) E_{m, m+j}, i.e. the clock power Z^i times the
// shift power X^j. Indices are reduced mod d. Throws DimensionError for d < 2.
ComplexMatrix principal_matrix(int d, int i, int j);

// Worst-case residuals of the algebraic identities of the principal basis,
// measured over every index pair.
struct PrincipalIdentityResiduals {
    double unitarity = 0.0;       // max ||A^dagger A - I||_F
    double orthogonality = 0.0;   // max |tr(A_ij A_kl^dagger) - d delta delta|
    double product_rule = 0.0;    // max ||A_ij A_kl - omega^(jk) A_{i+k, j+l}||_F
    double dagger_rule = 0.0;     // max ||A_ij^dagger - omega^(ij) A_{-i,-j}||_F
    double trace_rule = 0.0;      // max |tr(A_ij) - d delta_{i0} delta_{j0}|
    double dual_pairing = 0.0;    // max |tr(A_ij (omega^(ij)/d) A_{-i,-j}) - 1|

    double max() const;
};

PrincipalIdentityResiduals measure_principal_identities(int d, const std::vector<ComplexMatrix>& matrices);

// Immutable table of all d^2 principal matrices. Construction verifies every
// identity in PrincipalIdentityResiduals to 1e-10 and throws Error if one
// fails (which would indicate a construction bug, not bad input).
class PrincipalBasisTable {
public:
    explicit PrincipalBasisTable(int d);

    int dim() const { return d_; }
    Complex omega() const { return omega_; }
    const ComplexMatrix& at(int i, int j) const { return matrices_[index(i, j)]; }
    const PrincipalIdentityResiduals& residuals() const { return residuals_; }

    // The inverse Fourier relation: (1/d) sum_l omega^(-k l) A_{l j} = E_{k, k+j}.
    ComplexMatrix unit_from_principal(int k, int j) const;

private:
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(mod_d(i, d_)) * d_ + mod_d(j, d_);
    }

    int d_;
    Complex omega_;
    std::vector<ComplexMatrix> matrices_;
    PrincipalIdentityResiduals residuals_;
};

// Process-wide cache, one table per dimension. Safe for concurrent callers.
std::shared_ptr<const PrincipalBasisTable> principal_basis_table(int d);

// Generalized Gell-Mann matrices in the fixed order: d-1 diagonal (keyed by
// l = 0..d-2), then |j><k| + |k><j| for j < k lexicographic, then
// -i(|j><k| - |k><j|) in the same (j, k) order.
class GellMannBasis {
public:
    explicit GellMannBasis(int d);

    int dim() const { return d_; }
    std::size_t size() const { return matrices_.size(); }
    const ComplexMatrix& operator[](std::size_t n) const { return matrices_[n]; }
    const std::vector<ComplexMatrix>& matrices() const { return matrices_; }

private:
    int d_;
    std::vector<ComplexMatrix> matrices_;
};

std::shared_ptr<const GellMannBasis> gell_mann_basis(int d);

}  // namespace fefbound
