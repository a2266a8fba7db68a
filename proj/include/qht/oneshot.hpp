#pragma once

#include "qht/states.hpp"

#include <array>

namespace qht {

// Coefficients on (σ¹, σ², σ³, 1).  States: ρ = ½ a·σ.  Tests: A = c·σ.
using BlochFourVector = std::array<double, 4>;

struct ErrorPair {
  double alpha = 0;  // Tr ρ(1 − A)
  double beta = 0;   // Tr σ A
};

BlochFourVector bloch_of(const DensityMatrix& rho);
Mat operator_of(const BlochFourVector& c);
DensityMatrix state_of(const BlochFourVector& a);
double bloch_dot(const BlochFourVector& a, const BlochFourVector& c);
bool is_valid_test(const BlochFourVector& c, double tol = 1e-12);

ErrorPair test_errors(const DensityMatrix& rho, const DensityMatrix& sigma, const Mat& a);

struct SymmetricOneShot {
  Mat A;
  BlochFourVector c;
  double combined_error;  // ½(α + β)
};
SymmetricOneShot symmetric_oneshot_qubit(const DensityMatrix& rho, const DensityMatrix& sigma);

struct NeymanPearsonResult {
  Mat A;
  double beta_star = 0;
  double alpha = 0;
  double t = 0;      // multiplier of σ in ρ − tσ
  double gamma = 0;  // weight on the kernel of ρ − tσ
};
NeymanPearsonResult neyman_pearson(const DensityMatrix& rho, const DensityMatrix& sigma,
                                   double epsilon);
double hypothesis_testing_relent(const DensityMatrix& rho, const DensityMatrix& sigma,
                                 double epsilon);

}  // namespace qht
