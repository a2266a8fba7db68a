#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace qht {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr double kEigenFloor = 1e-14;     // below this an eigenvalue counts as kernel
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a function that is singular at 0 (log, negative powers) meets a kernel.
class SupportViolation : public Error {
 public:
  SupportViolation(const std::string& what, double ev) : Error(what), eigenvalue(ev) {}
  double eigenvalue;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

struct Spectral {
  RVec values;   // ascending
  Mat vectors;   // columns; first nonzero component of each made real positive
};

double max_asymmetry(const Mat& m);
void require_hermitian(const Mat& m, double tol = kHermitianTol);

Spectral eig_hermitian(const Mat& m, double tol = kHermitianTol);
Mat reconstruct(const Spectral& s);
void fix_column_phases(Mat& vectors);

// U f(λ) U†.  Eigenvalues strictly below `floor` raise SupportViolation.
Mat matrix_function(const Spectral& s, const std::function<double(double)>& f,
                    double floor = -kInf);
Mat matrix_function(const Mat& m, const std::function<double(double)>& f,
                    double floor = -kInf);

// Orthonormal basis of span{columns}; singular values below rel_threshold·σ_max are
// discarded.  rel_threshold < 0 selects max(rows, cols)·machine-epsilon.
Mat orthonormal_span(const Mat& columns, double rel_threshold = -1.0);
Mat rank_revealing_projector(const Mat& columns, double rel_threshold = -1.0);

double normal_cdf(double x);
double normal_quantile(double p);

double adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                           double abs_tol);

}  // namespace qht
