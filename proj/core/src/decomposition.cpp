#include "fefbound/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "fefbound/errors.hpp"
#include "fefbound/principal_basis.hpp"

namespace fefbound {

PrincipalCoefficients::PrincipalCoefficients(int d) : d_(d) {
    if (d < 2) throw DimensionError("PrincipalCoefficients: dimension must be at least 2");
    a_.assign(n2(), Complex(0.0));
    b_.assign(n2(), Complex(0.0));
    c_.assign(n2() * n2(), Complex(0.0));
}

std::size_t PrincipalCoefficients::pair(int i, int j) const {
    return static_cast<std::size_t>(mod_d(i, d_)) * d_ + mod_d(j, d_);
}

void PrincipalCoefficients::set_a(int i, int j, Complex value) {
    if (pair(i, j) == 0) throw DimensionError("PrincipalCoefficients: a_00 is excluded");
    a_[pair(i, j)] = value;
}

void PrincipalCoefficients::set_b(int i, int j, Complex value) {
    if (pair(i, j) == 0) throw DimensionError("PrincipalCoefficients: b_00 is excluded");
    b_[pair(i, j)] = value;
}

void PrincipalCoefficients::set_c(int i, int j, int k, int l, Complex value) {
    if (pair(i, j) == 0 || pair(k, l) == 0) {
        throw DimensionError("PrincipalCoefficients: c with a (0,0) index is excluded");
    }
    c_[pair(i, j) * n2() + pair(k, l)] = value;
}

ComplexMatrix contract_first_factor(const ComplexMatrix& rho, int d, const ComplexMatrix& x) {
    ComplexMatrix t = ComplexMatrix::Zero(d, d);
    for (int a = 0; a < d; ++a) {
        for (int c = 0; c < d; ++c) {
            const Complex xca = x(c, a);
            if (xca == Complex(0.0)) continue;
            t += xca * rho.block(a * d, c * d, d, d);
        }
    }
    return t;
}

Complex local_expectation(const ComplexMatrix& rho, int d, const ComplexMatrix& x, const ComplexMatrix& y) {
    return (contract_first_factor(rho, d, x) * y).trace();
}

PrincipalCoefficients principal_coefficients(const DensityState& state) {
    const int d = state.dim();
    const auto table = principal_basis_table(d);
    const ComplexMatrix& rho = state.matrix();

    PrincipalCoefficients out(d);
    // T_ij[b, e] = sum_{a,c} rho[(a,b),(c,e)] (A_ij^dagger)[c, a]
    std::vector<ComplexMatrix> contracted;
    contracted.reserve(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            contracted.push_back(contract_first_factor(rho, d, table->at(i, j).adjoint()));
        }
    }
    const auto t_at = [&](int i, int j) -> const ComplexMatrix& {
        return contracted[static_cast<std::size_t>(i) * d + j];
    };

    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            if (i == 0 && j == 0) continue;
            // t_at(0, 0) is the contraction with A_00 = I, i.e. the reduced state of the second factor.
            out.set_a(i, j, t_at(i, j).trace());
            out.set_b(i, j, (t_at(0, 0) * table->at(i, j).adjoint()).trace());
            for (int k = 0; k < d; ++k) {
                for (int l = 0; l < d; ++l) {
                    if (k == 0 && l == 0) continue;
                    out.set_c(i, j, k, l, (t_at(i, j) * table->at(k, l).adjoint()).trace());
                }
            }
        }
    }
    return out;
}

ComplexMatrix principal_reconstruct(const PrincipalCoefficients& coeffs) {
    const int d = coeffs.dim();
    const auto table = principal_basis_table(d);
    const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
    const ComplexMatrix identity = ComplexMatrix::Identity(d, d);

    ComplexMatrix out = ComplexMatrix::Identity(n, n);
    ComplexMatrix b_sum = ComplexMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            if (i == 0 && j == 0) continue;
            // Second factor of every A_ij (x) ... term, gathered by bilinearity.
            ComplexMatrix second = coeffs.a(i, j) * identity;
            for (int k = 0; k < d; ++k) {
                for (int l = 0; l < d; ++l) {
                    if (k == 0 && l == 0) continue;
                    second += coeffs.c(i, j, k, l) * table->at(k, l);
                }
            }
            out += kron(table->at(i, j), second);
            b_sum += coeffs.b(i, j) * table->at(i, j);
        }
    }
    out += kron(identity, b_sum);
    return out / static_cast<double>(n);
}

std::pair<int, int> max_entangled_partner(int d, int i, int j, Pairing pairing) {
    return {mod_d(-i, d), mod_d(pairing == Pairing::negate_both ? -j : j, d)};
}

ComplexMatrix max_entangled_expansion(int d, Pairing pairing) {
    const auto table = principal_basis_table(d);
    const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
    ComplexMatrix sum = ComplexMatrix::Identity(n, n);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            if (i == 0 && j == 0) continue;
            const auto [k, l] = max_entangled_partner(d, i, j, pairing);
            sum += kron(table->at(i, j), table->at(k, l));
        }
    }
    return sum / static_cast<double>(n);
}

double isotropic_pattern_residual(const PrincipalCoefficients& coeffs, Complex value, Pairing pairing) {
    const int d = coeffs.dim();
    double worst = 0.0;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            if (i == 0 && j == 0) continue;
            worst = std::max({worst, std::abs(coeffs.a(i, j)), std::abs(coeffs.b(i, j))});
            const auto partner = max_entangled_partner(d, i, j, pairing);
            for (int k = 0; k < d; ++k) {
                for (int l = 0; l < d; ++l) {
                    if (k == 0 && l == 0) continue;
                    const Complex expected = partner == std::pair{k, l} ? value : Complex(0.0);
                    worst = std::max(worst, std::abs(coeffs.c(i, j, k, l) - expected));
                }
            }
        }
    }
    return worst;
}

BlochCoefficients bloch_coefficients(const DensityState& state) {
    const int d = state.dim();
    const auto basis = gell_mann_basis(d);
    const ComplexMatrix& rho = state.matrix();
    const auto count = static_cast<Eigen::Index>(basis->size());

    BlochCoefficients out;
    out.d = d;
    out.r.resize(count);
    out.s.resize(count);
    out.m.resize(count, count);

    double worst = 0.0;
    const auto keep_real = [&worst](Complex z) {
        worst = std::max(worst, std::abs(z.imag()));
        return z.real();
    };

    const ComplexMatrix reduced_second = contract_first_factor(rho, d, ComplexMatrix::Identity(d, d));
    for (Eigen::Index i = 0; i < count; ++i) {
        const ComplexMatrix& li = (*basis)[static_cast<std::size_t>(i)];
        const ComplexMatrix t = contract_first_factor(rho, d, li);
        out.r(i) = keep_real(t.trace()) / 2.0;
        out.s(i) = keep_real((reduced_second * li).trace()) / 2.0;
        for (Eigen::Index j = 0; j < count; ++j) {
            out.m(i, j) = keep_real((t * (*basis)[static_cast<std::size_t>(j)]).trace()) / 4.0;
        }
    }
    out.max_imaginary_residual = worst;
    if (!(worst <= kBlochImaginaryTolerance)) {
        std::ostringstream msg;
        msg << "bloch_coefficients: imaginary residual " << worst << " exceeds " << kBlochImaginaryTolerance
            << "; input is not Hermitian";
        throw HermiticityError(msg.str());
    }
    return out;
}

ComplexMatrix bloch_reconstruct(const BlochCoefficients& coeffs) {
    const int d = coeffs.d;
    const auto basis = gell_mann_basis(d);
    const auto count = static_cast<Eigen::Index>(basis->size());
    if (coeffs.r.size() != count || coeffs.s.size() != count || coeffs.m.rows() != count ||
        coeffs.m.cols() != count) {
        throw DimensionError("bloch_reconstruct: coefficient arrays must have length d^2-1");
    }
    const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
    const ComplexMatrix identity = ComplexMatrix::Identity(d, d);
    const double dd = d;

    ComplexMatrix out = ComplexMatrix::Identity(n, n) / (dd * dd);
    ComplexMatrix s_sum = ComplexMatrix::Zero(d, d);
    for (Eigen::Index i = 0; i < count; ++i) {
        const ComplexMatrix& li = (*basis)[static_cast<std::size_t>(i)];
        ComplexMatrix second = (coeffs.r(i) / dd) * identity;
        for (Eigen::Index j = 0; j < count; ++j) second += coeffs.m(i, j) * (*basis)[static_cast<std::size_t>(j)];
        out += kron(li, second);
        s_sum += (coeffs.s(i) / dd) * li;
    }
    out += kron(identity, s_sum);
    return out;
}

}  // namespace fefbound
