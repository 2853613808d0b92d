#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sostar/antisym.hpp"

namespace sostar {

using Rng = std::mt19937_64;

CMatrix random_gaussian_matrix(int rows, int cols, Rng& rng);

// Haar-distributed unitary (QR of a Ginibre matrix with the phase fix).
CMatrix random_unitary(int n, Rng& rng);

// Unitary polar factor of an invertible matrix.
CMatrix polar_unitary(const CMatrix& m);

// Element of Sp(2m, C) intersected with U(2m), in the pairing of the
// canonical form (blocks sigma along the diagonal).
CMatrix random_compact_symplectic(int m, Rng& rng);

// U M U^t with Haar U and the given singular pairs; lambdas.size() <= n/2.
AntisymMatrix antisym_from_pairs(const std::vector<double>& lambdas, const CMatrix& u);
AntisymMatrix random_antisym_with_pairs(int n, const std::vector<double>& lambdas, Rng& rng);

// Generic in-domain label: Gaussian antisymmetric matrix rescaled so that the
// largest eigenvalue of z^* z equals lambda1_sq.
AntisymMatrix random_in_domain(int n, double lambda1_sq, Rng& rng);

}  // namespace sostar
