#include "fefbound/states.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "fefbound/errors.hpp"
#include "fefbound/random.hpp"

namespace fefbound {

namespace {

void require_dimension(int d, const char* what) {
    if (d < 2) {
        throw DimensionError(std::string(what) + ": dimension must be at least 2, got " +
                             std::to_string(d));
    }
}

void require_shape(int d, const ComplexMatrix& m) {
    require_dimension(d, "DensityState");
    const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
    if (m.rows() != n || m.cols() != n) {
        throw DimensionError("DensityState: expected a " + std::to_string(n) + "x" + std::to_string(n) +
                             " matrix for d=" + std::to_string(d) + ", got " + std::to_string(m.rows()) +
                             "x" + std::to_string(m.cols()));
    }
    if (!all_finite(m)) throw Error("DensityState: matrix has non-finite entries");
}

}  // namespace

DensityValidation validate_density(const ComplexMatrix& m) {
    DensityValidation v;
    v.hermiticity_residual = hermiticity_residual(m);
    v.trace = m.trace();
    const auto eig = hermitian_eigen(m);
    v.min_eigenvalue = eig.values.size() > 0 ? eig.values(eig.values.size() - 1) : 0.0;
    return v;
}

bool is_physical(const DensityValidation& v) {
    return v.hermiticity_residual <= kHermiticityTolerance && std::abs(v.trace - 1.0) <= kTraceTolerance &&
           v.min_eigenvalue >= -kPsdTolerance;
}

DensityState DensityState::physical(int d, ComplexMatrix matrix) {
    require_shape(d, matrix);
    const auto v = validate_density(matrix);
    if (!is_physical(v)) {
        std::ostringstream msg;
        msg << "not a density matrix: hermiticity residual " << v.hermiticity_residual << ", trace "
            << v.trace.real() << (v.trace.imag() < 0 ? "-" : "+") << std::abs(v.trace.imag())
            << "i, minimum eigenvalue " << v.min_eigenvalue;
        throw PhysicalityError(msg.str());
    }
    return DensityState(d, std::move(matrix), v);
}

DensityState DensityState::unchecked(int d, ComplexMatrix matrix) {
    require_shape(d, matrix);
    const auto v = validate_density(matrix);
    return DensityState(d, std::move(matrix), v);
}

ComplexVector max_entangled_vector(int d) {
    require_dimension(d, "max_entangled_vector");
    ComplexVector phi = ComplexVector::Zero(static_cast<Eigen::Index>(d) * d);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (int i = 0; i < d; ++i) phi(i * d + i) = amp;
    return phi;
}

DensityState max_entangled_projector(int d) {
    require_dimension(d, "max_entangled_projector");
    const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
    ComplexMatrix p = ComplexMatrix::Zero(n, n);
    const double w = 1.0 / d;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) p(i * d + i, j * d + j) = w;
    }
    return DensityState::physical(d, std::move(p));
}

DensityState isotropic_state(int d, double p) {
    require_dimension(d, "isotropic_state");
    const double lo = -1.0 / (static_cast<double>(d) * d - 1.0);
    if (!(p >= lo && p <= 1.0)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "isotropic_state: p=" << p << " outside the admissible interval [" << lo << ", 1] for d=" << d;
        throw ParameterError(msg.str());
    }
    const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
    ComplexMatrix rho = ComplexMatrix::Identity(n, n) * ((1.0 - p) / static_cast<double>(n));
    rho += p * max_entangled_projector(d).matrix();
    return DensityState::physical(d, std::move(rho));
}

ComplexMatrix swap_operator(int d) {
    require_dimension(d, "swap_operator");
    const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
    ComplexMatrix p = ComplexMatrix::Zero(n, n);
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) p(b * d + a, a * d + b) = 1.0;
    }
    return p;
}

DensityState werner_state(int d, WernerVariant variant) {
    require_dimension(d, "werner_state");
    const double dd = d;
    const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
    const ComplexMatrix flip =
        variant == WernerVariant::swap ? swap_operator(d) : ComplexMatrix(dd * max_entangled_projector(d).matrix());
    ComplexMatrix rho = ComplexMatrix::Identity(n, n) * ((dd + 1.0) / (dd * dd * dd)) - flip / (dd * dd);
    if (variant == WernerVariant::swap) return DensityState::physical(d, std::move(rho));
    return DensityState::unchecked(d, std::move(rho));
}

DensityState horodecki_state(double a) {
    if (!(a >= 0.0 && a <= 1.0)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "horodecki_state: a=" << a << " outside the admissible interval [0, 1]";
        throw ParameterError(msg.str());
    }
    ComplexMatrix m = ComplexMatrix::Zero(9, 9);
    // Positions below are 0-indexed.
    for (int k : {0, 1, 2, 3, 4, 5, 7}) m(k, k) = a;
    for (auto [r, c] : {std::pair{0, 4}, {0, 8}, {4, 0}, {4, 8}, {8, 0}, {8, 4}}) m(r, c) = a;
    m(6, 6) = (1.0 + a) / 2.0;
    m(8, 8) = (1.0 + a) / 2.0;
    const double off = std::sqrt(1.0 - a * a) / 2.0;
    m(6, 8) = off;
    m(8, 6) = off;
    m /= 8.0 * a + 1.0;
    return DensityState::physical(3, std::move(m));
}

DensityState random_density_state(int d, std::uint64_t seed) {
    require_dimension(d, "random_density_state");
    Rng rng(seed);
    const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
    const ComplexMatrix g = ginibre_matrix(n, n, rng);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    // Hermitian part removes rounding asymmetry from the product.
    ComplexMatrix herm = 0.5 * (rho + rho.adjoint());
    return DensityState::physical(d, std::move(herm));
}

}  // namespace fefbound
