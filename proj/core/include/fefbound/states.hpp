#pragma once

#include <cstdint>

#include "fefbound/linalg.hpp"

namespace fefbound {

struct DensityValidation {
    double hermiticity_residual = 0.0;  // ||M - M^dagger||_F
    Complex trace{0.0, 0.0};
    double min_eigenvalue = 0.0;        // of the Hermitian part (M + M^dagger)/2
};

// Tolerances a physical state must meet.
inline constexpr double kHermiticityTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-9;

// Reports, never rejects. Throws DimensionError only for a non-square input.
DensityValidation validate_density(const ComplexMatrix& m);

bool is_physical(const DensityValidation& v);

// An operator on H (x) H with H = C^d. Basis order |a b> = |a> (x) |b>,
// row index a*d + b, so I (x) U acts on the second factor.
//
// Build through physical() when the matrix must be a density matrix, or
// through unchecked() to carry an arbitrary operator with its diagnostics.
class DensityState {
public:
    static DensityState physical(int d, ComplexMatrix matrix);
    static DensityState unchecked(int d, ComplexMatrix matrix);

    int dim() const { return d_; }
    const ComplexMatrix& matrix() const { return matrix_; }
    const DensityValidation& validation() const { return validation_; }
    bool physical() const { return is_physical(validation_); }

private:
    DensityState(int d, ComplexMatrix matrix, DensityValidation validation)
        : d_(d), matrix_(std::move(matrix)), validation_(validation) {}

    int d_;
    ComplexMatrix matrix_;
    DensityValidation validation_;
};

// P+ = |phi+><phi+| with |phi+> = d^(-1/2) sum_i |ii>.
DensityState max_entangled_projector(int d);

// ((1 - p)/d^2) I + p P+. Physical for p in [-1/(d^2 - 1), 1]; other p
// raise ParameterError.
DensityState isotropic_state(int d, double p);

enum class WernerVariant {
    swap,   // flip operator P|ab> = |ba>; a genuine state
    paper,  // P = sum_ij E_ij (x) E_ij = d P+ as printed; not PSD
};

// ((d+1)/d^3) I - (1/d^2) P. The paper variant is returned unchecked.
DensityState werner_state(int d, WernerVariant variant);

// The 3x3 Horodecki bound-entangled family rho(a), a in [0, 1].
DensityState horodecki_state(double a);

// G G^dagger / tr(G G^dagger) with G a d^2 x d^2 Ginibre matrix drawn from
// Rng seeded with `seed`.
DensityState random_density_state(int d, std::uint64_t seed);

// Flip operator sum_ij E_ij (x) E_ji on C^d (x) C^d.
ComplexMatrix swap_operator(int d);

// The vector |phi+> of length d^2.
ComplexVector max_entangled_vector(int d);

}  // namespace fefbound
