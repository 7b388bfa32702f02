#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fefbound/linalg.hpp"
#include "fefbound/states.hpp"

namespace fefbound {

// <phi_U| rho |phi_U> with |phi_U> = (I (x) U)|phi+>. U must be d x d and
// unitary to 1e-8 (UnitarityError otherwise).
double fef_objective(const DensityState& rho, const ComplexMatrix& u);

// 1/d^2 + ((d-1)/d) ||rho||_F, exactly as stated by the published theorem.
// Known to undercut the true FEF on some states (e.g. P+); see bound_audit.
double theorem1_bound(const DensityState& rho);

// 1/d^2 + ((d^2-1)/d) ||rho||_F: the Hoelder argument summed over all
// d^2 - 1 nonidentity terms with ||A_ij||_F = sqrt(d) for every (i, j).
// Valid, frequently above 1.
double hoelder_sum_bound(const DensityState& rho);

// 1/d^2 + 4 ||M(rho)^T M(P+)||_KF with M the Gell-Mann correlation matrix.
double lm_bound(const DensityState& rho);

// Largest eigenvalue of rho. Valid because |phi_U> is a unit vector.
double spectral_bound(const DensityState& rho);

// The printed closed form for the 3x3 Horodecki family:
// 1/9 + sqrt(30a^2 + 4a + 2)/(24a + 3).
double horodecki_printed_bound(double a);

// Exact FEF of the isotropic family: p + (1-p)/d^2 for p >= 0 and (1-p)/d^2
// for p < 0. ParameterError outside the PSD window.
double isotropic_fef_reference(int d, double p);

struct OptimizerOptions {
    int restarts = 32;
    int max_iterations = 500;
    double tolerance = 1e-10;  // stop once the objective moves by less than this
    std::uint64_t seed = 1;
};

enum class RestartKind { identity, principal, top_eigenvector, haar };

struct RestartRecord {
    RestartKind kind = RestartKind::identity;
    int index = 0;                // position in the restart schedule
    double start_value = 0.0;
    double final_value = 0.0;
    int iterations = 0;
    // The polar step used a rank-deficient G (smallest singular value
    // <= 1e-12). The completed factor from the SVD is still a maximizer of
    // the linearized objective, so the ascent continues.
    bool rank_deficient_start = false;
    int rank_deficient_steps = 0;
    bool stalled = false;         // rho |phi_U> vanished; no ascent direction
};

struct FefEstimate {
    double value = 0.0;           // objective at `unitary`; a lower bound on F(rho)
    ComplexMatrix unitary;
    std::vector<RestartRecord> restarts;
};

// Projected power iteration over U(d): v = rho |phi_U>, G[k, i] = sqrt(d)
// v[(i, k)], U <- polar factor of G, until the objective moves by less than
// opts.tolerance or opts.max_iterations is hit. For PSD rho each step is
// non-decreasing. The restart schedule is, in order:
// identity, the principal unitaries A_ij with (i,j) != (0,0), the polar
// projection of the reshaped top eigenvector of rho, then Haar-random
// unitaries drawn from Rng(opts.seed). The first opts.restarts entries are
// used, so a larger budget always contains the smaller one.
FefEstimate fef_lower_estimate(const DensityState& rho, const OptimizerOptions& opts = {});

inline constexpr double kViolationTolerance = 1e-8;

struct Violation {
    std::string bound;
    double gap = 0.0;  // fef_lower - bound value
};

struct BoundReport {
    std::string state_label;
    int d = 0;
    std::map<std::string, double> bounds;
    double fef_lower = 0.0;
    ComplexMatrix best_unitary;
    std::vector<Violation> violations;
    std::vector<RestartRecord> restarts;

    bool flagged(const std::string& bound) const;
};

// Bound names used as keys in BoundReport::bounds.
inline constexpr const char* kTheorem1Bound = "theorem1_bound";
inline constexpr const char* kHoelderSumBound = "hoelder_sum_bound";
inline constexpr const char* kLmBound = "lm_bound";
inline constexpr const char* kSpectralBound = "spectral_bound";

// Evaluates every bound plus the optimizer and lists each bound that the
// lower estimate exceeds by more than kViolationTolerance. Violations are
// data; this never throws on them.
BoundReport bound_audit(const DensityState& rho, const OptimizerOptions& opts = {},
                        std::string label = {});

const char* to_string(RestartKind kind);

}  // namespace fefbound
