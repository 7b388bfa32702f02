#include "fefbound/principal_basis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "fefbound/errors.hpp"

namespace fefbound {

namespace {

constexpr double kIdentityTolerance = 1e-10;

void require_dimension(int d, const char* what) {
    if (d < 2) {
        throw DimensionError(std::string(what) + ": dimension must be at least 2, got " +
                             std::to_string(d));
    }
}

template <typename T>
std::shared_ptr<const T> cached(int d) {
    static std::mutex mutex;
    static std::map<int, std::shared_ptr<const T>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[d];
    if (!slot) slot = std::make_shared<const T>(d);
    return slot;
}

}  // namespace

Complex root_of_unity_power(int d, long long k) {
    const int r = mod_d(k, d);
    if (r == 0) return {1.0, 0.0};
    return std::polar(1.0, 2.0 * std::numbers::pi * r / d);
}

ComplexMatrix principal_matrix(int d, int i, int j) {
    require_dimension(d, "principal_matrix");
    i = mod_d(i, d);
    j = mod_d(j, d);
    ComplexMatrix a = ComplexMatrix::Zero(d, d);
    for (int m = 0; m < d; ++m) {
        a(m, mod_d(m + j, d)) = root_of_unity_power(d, static_cast<long long>(i) * m);
    }
    return a;
}

double PrincipalIdentityResiduals::max() const {
    return std::max({unitarity, orthogonality, product_rule, dagger_rule, trace_rule, dual_pairing});
}

PrincipalIdentityResiduals measure_principal_identities(int d, const std::vector<ComplexMatrix>& matrices) {
    require_dimension(d, "measure_principal_identities");
    if (matrices.size() != static_cast<std::size_t>(d) * d) {
        throw DimensionError("measure_principal_identities: expected d^2 matrices");
    }
    const auto at = [&](int i, int j) -> const ComplexMatrix& {
        return matrices[static_cast<std::size_t>(mod_d(i, d)) * d + mod_d(j, d)];
    };
    const ComplexMatrix identity = ComplexMatrix::Identity(d, d);

    PrincipalIdentityResiduals r;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const ComplexMatrix& aij = at(i, j);
            const Complex wij = root_of_unity_power(d, static_cast<long long>(i) * j);
            r.unitarity = std::max(r.unitarity, (aij.adjoint() * aij - identity).norm());
            r.dagger_rule = std::max(r.dagger_rule, (aij.adjoint() - wij * at(-i, -j)).norm());
            const Complex expected_trace = (i == 0 && j == 0) ? Complex(d) : Complex(0.0);
            r.trace_rule = std::max(r.trace_rule, std::abs(aij.trace() - expected_trace));
            const Complex pairing = (aij * (wij / static_cast<double>(d)) * at(-i, -j)).trace();
            r.dual_pairing = std::max(r.dual_pairing, std::abs(pairing - 1.0));

            for (int k = 0; k < d; ++k) {
                for (int l = 0; l < d; ++l) {
                    const ComplexMatrix& akl = at(k, l);
                    const Complex gram = (aij * akl.adjoint()).trace();
                    const Complex expected = (i == k && j == l) ? Complex(d) : Complex(0.0);
                    r.orthogonality = std::max(r.orthogonality, std::abs(gram - expected));
                    const Complex wjk = root_of_unity_power(d, static_cast<long long>(j) * k);
                    r.product_rule =
                        std::max(r.product_rule, (aij * akl - wjk * at(i + k, j + l)).norm());
                }
            }
        }
    }
    return r;
}

PrincipalBasisTable::PrincipalBasisTable(int d) : d_(d), omega_(0.0, 0.0) {
    require_dimension(d, "PrincipalBasisTable");
    omega_ = root_of_unity_power(d, 1);
    matrices_.reserve(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) matrices_.push_back(principal_matrix(d, i, j));
    }
    residuals_ = measure_principal_identities(d, matrices_);
    if (!(residuals_.max() <= kIdentityTolerance)) {
        throw Error("PrincipalBasisTable: identity residual " + std::to_string(residuals_.max()) +
                    " exceeds " + std::to_string(kIdentityTolerance) + " at d=" + std::to_string(d));
    }
}

ComplexMatrix PrincipalBasisTable::unit_from_principal(int k, int j) const {
    ComplexMatrix out = ComplexMatrix::Zero(d_, d_);
    for (int l = 0; l < d_; ++l) {
        out += root_of_unity_power(d_, -static_cast<long long>(k) * l) * at(l, j);
    }
    return out / static_cast<double>(d_);
}

std::shared_ptr<const PrincipalBasisTable> principal_basis_table(int d) {
    require_dimension(d, "principal_basis_table");
    return cached<PrincipalBasisTable>(d);
}

GellMannBasis::GellMannBasis(int d) : d_(d) {
    require_dimension(d, "gell_mann_basis");
    matrices_.reserve(static_cast<std::size_t>(d) * d - 1);

    for (int l = 0; l + 2 <= d; ++l) {
        ComplexMatrix m = ComplexMatrix::Zero(d, d);
        for (int a = 0; a <= l; ++a) m(a, a) = 1.0;
        m(l + 1, l + 1) = -(l + 1.0);
        matrices_.push_back(std::sqrt(2.0 / ((l + 1.0) * (l + 2.0))) * m);
    }
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            ComplexMatrix m = ComplexMatrix::Zero(d, d);
            m(j, k) = 1.0;
            m(k, j) = 1.0;
            matrices_.push_back(std::move(m));
        }
    }
    const Complex i_unit(0.0, 1.0);
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            ComplexMatrix m = ComplexMatrix::Zero(d, d);
            m(j, k) = -i_unit;
            m(k, j) = i_unit;
            matrices_.push_back(std::move(m));
        }
    }
}

std::shared_ptr<const GellMannBasis> gell_mann_basis(int d) {
    require_dimension(d, "gell_mann_basis");
    return cached<GellMannBasis>(d);
}

}  // namespace fefbound
