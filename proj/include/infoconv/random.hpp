#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include <Eigen/Dense>

#include "infoconv/hermitian.hpp"
#include "infoconv/spectrum.hpp"

namespace infoconv {

using Rng = std::mt19937_64;

/// Generator for instance `index` of stream `tag`, derived from `seed` with
/// splitmix64 so that instances are independent of evaluation order.
Rng instance_rng(std::uint64_t seed, std::string_view tag, std::uint64_t index);

/// Gaussian Hermitian ensemble: (G + G^dagger) / 2 with standard complex normal G.
HermitianOperator random_hermitian(Eigen::Index dim, Rng& rng);

/// Normalized Wishart density operator G G^dagger / Tr.
HermitianOperator random_density(Eigen::Index dim, Rng& rng);

/// Diagonal density operator with a uniformly random probability vector.
HermitianOperator random_diagonal_density(Eigen::Index dim, Rng& rng);

/// Unitary from the QR decomposition of a complex Gaussian matrix, phases fixed.
Eigen::MatrixXcd random_unitary(Eigen::Index dim, Rng& rng);

/// U diag(u) U^dagger with u_i uniform in [0, 1].
Contraction<std::complex<double>> random_contraction(Eigen::Index dim, Rng& rng);

/// CPTP map with `kraus_count` operators cut from a random isometry.
TPMap<std::complex<double>> random_cptp(Eigen::Index dim, Eigen::Index kraus_count, Rng& rng);

/// Mixture of `count` random unitary conjugations (unital CPTP).
TPMap<std::complex<double>> random_unital_cptp(Eigen::Index dim, Eigen::Index count, Rng& rng);

/// Column-stochastic matrix with independent Dirichlet(1) columns.
Eigen::MatrixXd random_stochastic(Eigen::Index dim, Rng& rng);

/// Convex combination of random permutation matrices.
Eigen::MatrixXd random_doubly_stochastic(Eigen::Index dim, Rng& rng);

/// Probability vector of length `size` drawn uniformly from the simplex.
Eigen::VectorXd random_probability_vector(Eigen::Index size, Rng& rng);

/// Spectrum with between 1 and `max_atoms` atoms and multiplicities up to `max_mult`.
Spectrum random_spectrum(int max_atoms, int max_mult, Rng& rng);

}  // namespace infoconv
