#pragma once

#include <utility>
#include <vector>

#include "fefbound/linalg.hpp"
#include "fefbound/states.hpp"

namespace fefbound {

// Coefficients of rho in the principal basis:
//
//   rho = (1/d^2) [ I(x)I + sum a_ij A_ij(x)I + sum b_ij I(x)A_ij
//                         + sum c_ij^kl A_ij(x)A_kl ]
//
// with a_ij = tr(rho (A_ij^dagger (x) I)) and so on. Entries with (i,j) or
// (k,l) equal to (0,0) are structurally zero.
class PrincipalCoefficients {
public:
    explicit PrincipalCoefficients(int d);

    int dim() const { return d_; }

    Complex a(int i, int j) const { return a_[pair(i, j)]; }
    Complex b(int i, int j) const { return b_[pair(i, j)]; }
    Complex c(int i, int j, int k, int l) const { return c_[pair(i, j) * n2() + pair(k, l)]; }

    // Setters reject the excluded (0,0) index with DimensionError.
    void set_a(int i, int j, Complex value);
    void set_b(int i, int j, Complex value);
    void set_c(int i, int j, int k, int l, Complex value);

private:
    std::size_t n2() const { return static_cast<std::size_t>(d_) * d_; }
    std::size_t pair(int i, int j) const;

    int d_;
    std::vector<Complex> a_;
    std::vector<Complex> b_;
    std::vector<Complex> c_;
};

PrincipalCoefficients principal_coefficients(const DensityState& rho);

ComplexMatrix principal_reconstruct(const PrincipalCoefficients& coeffs);

// Bloch (generalized Gell-Mann) coefficients:
//
//   rho = (1/d^2) I(x)I + (1/d) sum r_i l_i(x)I + (1/d) sum s_j I(x)l_j
//         + sum m_ij l_i(x)l_j
//
// r_i = tr(rho l_i(x)I)/2, s_j = tr(rho I(x)l_j)/2, m_ij = tr(rho l_i(x)l_j)/4.
struct BlochCoefficients {
    int d = 0;
    Eigen::VectorXd r;
    Eigen::VectorXd s;
    Eigen::MatrixXd m;  // correlation matrix M(rho)
    double max_imaginary_residual = 0.0;
};

inline constexpr double kBlochImaginaryTolerance = 1e-8;

// Throws HermiticityError when any extracted trace has an imaginary part
// above kBlochImaginaryTolerance.
BlochCoefficients bloch_coefficients(const DensityState& rho);

ComplexMatrix bloch_reconstruct(const BlochCoefficients& coeffs);

// Which second-factor partner accompanies A_ij in the expansion of P+.
//   negate_clock: A_ij (x) A_{-i, j}. This is the correct identity, since
//                 <phi+|X (x) Y|phi+> = tr(X Y^T)/d and A_kl^T ~ A_{k,-l}.
//   negate_both:  A_ij (x) A_{-i,-j}. Agrees with negate_clock only at d = 2.
enum class Pairing { negate_clock, negate_both };

std::pair<int, int> max_entangled_partner(int d, int i, int j, Pairing pairing);

// (1/d^2) (I (x) I + sum_{(i,j) != (0,0)} A_ij (x) partner(i, j)).
ComplexMatrix max_entangled_expansion(int d, Pairing pairing);

// Worst deviation of coeffs from the isotropic pattern: a = b = 0 and
// c_ij^kl = value when (k, l) is the partner of (i, j), zero otherwise.
double isotropic_pattern_residual(const PrincipalCoefficients& coeffs, Complex value, Pairing pairing);

// T with tr(rho (X (x) Y)) = tr(T Y) for every d x d matrix Y. Costs d^4,
// after which each Y costs d^2.
ComplexMatrix contract_first_factor(const ComplexMatrix& rho, int d, const ComplexMatrix& x);

// tr(rho (X (x) Y)) evaluated directly.
Complex local_expectation(const ComplexMatrix& rho, int d, const ComplexMatrix& x, const ComplexMatrix& y);

}  // namespace fefbound
