#pragma once

#include "qht/states.hpp"

#include <random>

namespace qht {

using Rng = std::mt19937_64;

Mat ginibre(int rows, int cols, Rng& rng);
Mat random_unitary(int dim, Rng& rng);
Vec random_pure_vector(int dim, Rng& rng);
Mat random_hermitian(int dim, Rng& rng);            // GUE draw
Mat random_traceless_hermitian(int dim, Rng& rng);  // GUE, traceless, unit operator norm

// Wishart draw mixed with the identity so that every eigenvalue is >= min_eig.
DensityMatrix random_density(int dim, Rng& rng, double min_eig = 0.01);

RMat random_orthogonal(int dim, Rng& rng);           // Haar on SO(dim)

}  // namespace qht
