#include "fefbound/fef.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fefbound/decomposition.hpp"
#include "fefbound/errors.hpp"
#include "fefbound/principal_basis.hpp"
#include "fefbound/random.hpp"

namespace fefbound {

namespace {

constexpr double kUnitarityTolerance = 1e-8;

// |phi_U>[(i, k)] = U(k, i) / sqrt(d)
ComplexVector rotated_max_entangled(const ComplexMatrix& u) {
    const auto d = u.rows();
    ComplexVector phi(d * d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index k = 0; k < d; ++k) phi(i * d + k) = u(k, i) * scale;
    }
    return phi;
}

double objective_unchecked(const ComplexMatrix& rho, const ComplexMatrix& u) {
    const ComplexVector phi = rotated_max_entangled(u);
    return phi.dot(rho * phi).real();
}

// G[k, i] = sqrt(d) v[(i, k)], the inverse of rotated_max_entangled.
ComplexMatrix reshape_to_operator(const ComplexVector& v, int d) {
    ComplexMatrix g(d, d);
    const double scale = std::sqrt(static_cast<double>(d));
    for (int i = 0; i < d; ++i) {
        for (int k = 0; k < d; ++k) g(k, i) = v(i * d + k) * scale;
    }
    return g;
}

double frobenius_factor(const DensityState& rho, double multiplier) {
    const double d = rho.dim();
    return 1.0 / (d * d) + multiplier * frobenius_norm(rho.matrix());
}

constexpr double kRankTolerance = 1e-12;

bool rank_deficient(const PolarFactor& polar) {
    const auto& sv = polar.singular_values;
    return sv.size() == 0 || sv(sv.size() - 1) <= kRankTolerance;
}

struct Ascent {
    double value;
    ComplexMatrix unitary;
    int iterations = 0;
    int rank_deficient_steps = 0;
    bool stalled = false;
};

Ascent ascend(const ComplexMatrix& rho, int d, ComplexMatrix u, const OptimizerOptions& opts) {
    Ascent best{objective_unchecked(rho, u), u};
    double current = best.value;
    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        const ComplexVector v = rho * rotated_max_entangled(u);
        if (!(v.norm() > kRankTolerance)) {
            best.stalled = true;
            break;
        }
        PolarFactor polar = unitary_polar_factor(reshape_to_operator(v, d));
        if (rank_deficient(polar)) ++best.rank_deficient_steps;
        const double value = objective_unchecked(rho, polar.unitary);
        best.iterations = iter + 1;
        const double change = std::abs(value - current);
        u = std::move(polar.unitary);
        current = value;
        if (value > best.value) {
            best.value = value;
            best.unitary = u;
        }
        if (change < opts.tolerance) break;
    }
    return best;
}

}  // namespace

const char* to_string(RestartKind kind) {
    switch (kind) {
        case RestartKind::identity: return "identity";
        case RestartKind::principal: return "principal";
        case RestartKind::top_eigenvector: return "top_eigenvector";
        case RestartKind::haar: return "haar";
    }
    return "unknown";
}

double fef_objective(const DensityState& rho, const ComplexMatrix& u) {
    const int d = rho.dim();
    if (u.rows() != d || u.cols() != d) {
        throw DimensionError("fef_objective: U must be " + std::to_string(d) + "x" + std::to_string(d));
    }
    const double residual = unitarity_residual(u);
    if (!(residual <= kUnitarityTolerance)) {
        std::ostringstream msg;
        msg << "fef_objective: ||U^dagger U - I||_F = " << residual << " exceeds " << kUnitarityTolerance;
        throw UnitarityError(msg.str());
    }
    return objective_unchecked(rho.matrix(), u);
}

double theorem1_bound(const DensityState& rho) {
    const double d = rho.dim();
    return frobenius_factor(rho, (d - 1.0) / d);
}

double hoelder_sum_bound(const DensityState& rho) {
    const double d = rho.dim();
    return frobenius_factor(rho, (d * d - 1.0) / d);
}

double lm_bound(const DensityState& rho) {
    const int d = rho.dim();
    const auto m_rho = bloch_coefficients(rho).m;
    const auto m_plus = bloch_coefficients(max_entangled_projector(d)).m;
    const ComplexMatrix product = (m_rho.transpose() * m_plus).cast<Complex>();
    return 1.0 / (static_cast<double>(d) * d) + 4.0 * trace_norm(product);
}

double spectral_bound(const DensityState& rho) {
    return hermitian_eigen(rho.matrix()).values(0);
}

double horodecki_printed_bound(double a) {
    return 1.0 / 9.0 + std::sqrt(30.0 * a * a + 4.0 * a + 2.0) / (24.0 * a + 3.0);
}

double isotropic_fef_reference(int d, double p) {
    if (d < 2) throw DimensionError("isotropic_fef_reference: dimension must be at least 2");
    const double n = static_cast<double>(d) * d;
    const double lo = -1.0 / (n - 1.0);
    if (!(p >= lo && p <= 1.0)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "isotropic_fef_reference: p=" << p << " outside the admissible interval [" << lo << ", 1]";
        throw ParameterError(msg.str());
    }
    const double mixed = (1.0 - p) / n;
    return p >= 0.0 ? p + mixed : mixed;
}

FefEstimate fef_lower_estimate(const DensityState& state, const OptimizerOptions& opts) {
    if (opts.restarts < 1) throw ParameterError("fef_lower_estimate: restarts must be positive");
    if (opts.max_iterations < 1) throw ParameterError("fef_lower_estimate: max_iterations must be positive");

    const int d = state.dim();
    const ComplexMatrix& rho = state.matrix();
    const auto table = principal_basis_table(d);
    Rng rng(opts.seed);

    FefEstimate out;
    out.value = -std::numeric_limits<double>::infinity();

    const int principal_count = d * d - 1;
    for (int r = 0; r < opts.restarts; ++r) {
        RestartRecord record;
        record.index = r;
        ComplexMatrix start;
        if (r == 0) {
            record.kind = RestartKind::identity;
            start = ComplexMatrix::Identity(d, d);
        } else if (r <= principal_count) {
            record.kind = RestartKind::principal;
            start = table->at(r / d, r % d);
        } else if (r == principal_count + 1) {
            record.kind = RestartKind::top_eigenvector;
            const auto eig = hermitian_eigen(rho);
            PolarFactor polar = unitary_polar_factor(reshape_to_operator(eig.vectors.col(0), d));
            record.rank_deficient_start = rank_deficient(polar);
            start = std::move(polar.unitary);
        } else {
            record.kind = RestartKind::haar;
            start = haar_unitary(d, rng);
        }

        record.start_value = objective_unchecked(rho, start);
        const Ascent result = ascend(rho, d, std::move(start), opts);
        record.final_value = result.value;
        record.iterations = result.iterations;
        record.rank_deficient_steps = result.rank_deficient_steps;
        record.stalled = result.stalled;
        if (result.value > out.value) {
            out.value = result.value;
            out.unitary = result.unitary;
        }
        out.restarts.push_back(std::move(record));
    }
    return out;
}

bool BoundReport::flagged(const std::string& bound) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.bound == bound; });
}

BoundReport bound_audit(const DensityState& rho, const OptimizerOptions& opts, std::string label) {
    BoundReport report;
    report.state_label = std::move(label);
    report.d = rho.dim();
    report.bounds[kTheorem1Bound] = theorem1_bound(rho);
    report.bounds[kHoelderSumBound] = hoelder_sum_bound(rho);
    report.bounds[kLmBound] = lm_bound(rho);
    report.bounds[kSpectralBound] = spectral_bound(rho);

    auto estimate = fef_lower_estimate(rho, opts);
    report.fef_lower = estimate.value;
    report.best_unitary = std::move(estimate.unitary);
    report.restarts = std::move(estimate.restarts);

    for (const auto& [name, value] : report.bounds) {
        if (report.fef_lower > value + kViolationTolerance) {
            report.violations.push_back({name, report.fef_lower - value});
        }
    }
    return report;
}

}  // namespace fefbound
