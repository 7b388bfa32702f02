#include <doctest.h>

#include <cmath>

#include "fefbound/errors.hpp"
#include "fefbound/linalg.hpp"
#include "fefbound/states.hpp"
#include "support/oracles.hpp"

using namespace fefbound;

TEST_CASE("kron: identities and unit matrices") {
    CHECK((kron(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)) - ComplexMatrix::Identity(4, 4))
              .norm() == 0.0);

    const ComplexMatrix k = kron(oracle::unit(2, 0, 1), oracle::unit(2, 1, 0));
    REQUIRE(k.rows() == 4);
    REQUIRE(k.cols() == 4);
    CHECK(k(1, 2) == Complex(1.0));
    CHECK(oracle::sum_of_squares(k) == 1.0);
}

TEST_CASE("kron: matches the double-loop oracle") {
    const ComplexMatrix xz = kron(oracle::pauli_x(), oracle::pauli_z());
    CHECK((xz - oracle::kron(oracle::pauli_x(), oracle::pauli_z())).norm() == 0.0);
    // X (x) Z = [[0, Z], [Z, 0]]
    CHECK((xz.block(0, 2, 2, 2) - oracle::pauli_z()).norm() == 0.0);
    CHECK(xz.block(0, 0, 2, 2).norm() == 0.0);

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto a = oracle::random_matrix(2 + seed % 3, 3, seed);
        const auto b = oracle::random_matrix(3, 1 + seed % 4, seed + 100);
        CHECK((kron(a, b) - oracle::kron(a, b)).norm() == doctest::Approx(0.0));
    }
}

TEST_CASE("frobenius_norm") {
    for (int d = 2; d <= 6; ++d) {
        CHECK(frobenius_norm(ComplexMatrix::Identity(d, d)) == doctest::Approx(std::sqrt(d)).epsilon(1e-15));
    }
    CHECK(frobenius_norm(max_entangled_projector(3).matrix()) == doctest::Approx(1.0).epsilon(1e-14));

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto a = oracle::random_matrix(4, 4, seed);
        CHECK(std::abs(frobenius_norm(a) - std::sqrt((a.adjoint() * a).trace().real())) <= 1e-12);
    }
}

TEST_CASE("frobenius_norm of the Horodecki matrix matches the entry-count oracle") {
    for (int step = 0; step <= 10; ++step) {
        const double a = step / 10.0;
        // 13 entries a, two (1+a)/2, two sqrt(1-a^2)/2, all over 8a+1.
        const double squares = 13 * a * a + 2 * std::pow((1 + a) / 2, 2) + 2 * (1 - a * a) / 4;
        const double oracle_norm = std::sqrt(squares) / (8 * a + 1);
        CHECK(std::abs(frobenius_norm(horodecki_state(a).matrix()) - oracle_norm) <= 1e-12);
        CHECK(std::abs(oracle_norm - std::sqrt(13 * a * a + a + 1) / (8 * a + 1)) <= 1e-15);
    }
}

TEST_CASE("trace_norm") {
    ComplexMatrix psd = oracle::random_matrix(4, 4, 7);
    psd = psd * psd.adjoint();
    CHECK(trace_norm(psd) == doctest::Approx(psd.trace().real()).epsilon(1e-12));

    ComplexMatrix diag = ComplexMatrix::Zero(2, 2);
    diag(0, 0) = 1.0;
    diag(1, 1) = -1.0;
    CHECK(trace_norm(diag) == doctest::Approx(2.0).epsilon(1e-15));

    // M^T(iso, p=1) M(P+) at d=2 is diag(1/16, 1/16, 1/16).
    ComplexMatrix product = ComplexMatrix::Identity(3, 3) / 16.0;
    CHECK(trace_norm(product) == doctest::Approx(3.0 / 16.0).epsilon(1e-15));

    CHECK_THROWS_AS(trace_norm(ComplexMatrix::Zero(2, 3)), DimensionError);

    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto a = oracle::random_matrix(5, 5, seed);
        CHECK(trace_norm(a) >= std::abs(a.trace()) - 1e-10);
    }
}

TEST_CASE("hermitian_spectrum") {
    const auto ones = hermitian_spectrum(ComplexMatrix::Identity(3, 3));
    REQUIRE(ones.size() == 3);
    for (double v : ones) CHECK(v == doctest::Approx(1.0));

    const auto plus = hermitian_spectrum(max_entangled_projector(2).matrix());
    CHECK(plus[0] == doctest::Approx(1.0).epsilon(1e-14));
    for (int k = 1; k < 4; ++k) CHECK(std::abs(plus[k]) <= 1e-14);

    // (1-p)/d^2 + p once, (1-p)/d^2 three times.
    const auto iso = hermitian_spectrum(isotropic_state(2, 0.5).matrix());
    CHECK(iso[0] == doctest::Approx(5.0 / 8.0).epsilon(1e-14));
    for (int k = 1; k < 4; ++k) CHECK(iso[k] == doctest::Approx(1.0 / 8.0).epsilon(1e-14));

    ComplexMatrix skew = ComplexMatrix::Zero(2, 2);
    skew(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_spectrum(skew), HermiticityError);
    CHECK_THROWS_AS(hermitian_spectrum(ComplexMatrix::Zero(2, 3)), DimensionError);
}

TEST_CASE("hermitian_spectrum is descending and reconstructs") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        ComplexMatrix h = oracle::random_matrix(6, 6, seed);
        h = (h + h.adjoint()).eval();
        const auto eig = hermitian_eigen(h);
        for (Eigen::Index k = 1; k < eig.values.size(); ++k) CHECK(eig.values(k - 1) >= eig.values(k));
        const ComplexMatrix rebuilt = eig.vectors * eig.values.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
        CHECK((rebuilt - h).norm() <= 1e-10 * h.norm());
    }
}

TEST_CASE("hermitian_spectrum of density matrices sums to one") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto rho = random_density_state(2 + static_cast<int>(seed % 3), seed);
        double sum = 0.0;
        for (double v : hermitian_spectrum(rho.matrix())) sum += v;
        CHECK(std::abs(sum - 1.0) <= 1e-9);
    }
}

TEST_CASE("nearest_unitary: fixed points and scaling") {
    const auto u = oracle::random_unitary(4, 3);
    CHECK((nearest_unitary(u) - u).norm() <= 1e-10);
    CHECK((nearest_unitary(2.0 * ComplexMatrix::Identity(3, 3)) - ComplexMatrix::Identity(3, 3)).norm() <= 1e-10);
    CHECK_THROWS_AS(nearest_unitary(ComplexMatrix::Zero(3, 3)), SingularityError);

    ComplexMatrix rank_one = ComplexMatrix::Zero(2, 2);
    rank_one(0, 0) = 1.0;
    CHECK_THROWS_AS(nearest_unitary(rank_one), SingularityError);
    // The unchecked polar factor still yields a unitary.
    CHECK(unitarity_residual(unitary_polar_factor(rank_one).unitary) <= 1e-12);
}

TEST_CASE("nearest_unitary maximizes Re tr(U^dagger G) against random unitaries") {
    const auto g = oracle::random_matrix(3, 3, 11);
    const auto u = nearest_unitary(g);
    CHECK(unitarity_residual(u) <= 1e-10);
    const double best = (u.adjoint() * g).trace().real();
    int beaten = 0;
    for (std::uint64_t s = 0; s < 1000; ++s) {
        const auto v = oracle::random_unitary(3, 5000 + s);
        if ((v.adjoint() * g).trace().real() > best + 1e-12) ++beaten;
    }
    CHECK(beaten == 0);
}

TEST_CASE("properties on random inputs") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto a = oracle::random_matrix(2 + seed % 3, 2 + seed % 2, seed);
        const auto b = oracle::random_matrix(3, 1 + seed % 3, seed + 1);
        CHECK(std::abs(frobenius_norm(kron(a, b)) - frobenius_norm(a) * frobenius_norm(b)) <= 1e-10);

        const auto g = oracle::random_matrix(4, 4, seed + 2);
        const auto once = nearest_unitary(g);
        CHECK((nearest_unitary(once) - once).norm() <= 1e-10);
    }
}
