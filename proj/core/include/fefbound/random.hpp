#pragma once

#include <cstdint>
#include <random>

#include "fefbound/linalg.hpp"

namespace fefbound {

// Every randomized routine draws from this engine (64-bit Mersenne twister)
// seeded with the caller's integer. Normal variates come from
// std::normal_distribution, so streams are reproducible for a given
// standard library build.
using Rng = std::mt19937_64;

// Matrix of independent standard complex Gaussians: real and imaginary
// parts each N(0, 1), drawn real-then-imaginary in row-major order.
ComplexMatrix ginibre_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);

// Haar-distributed unitary: QR of a Ginibre matrix with the phases of
// diag(R) folded back into Q.
ComplexMatrix haar_unitary(int n, Rng& rng);

}  // namespace fefbound
