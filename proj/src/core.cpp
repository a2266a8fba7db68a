#include "qht/core.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <sstream>

namespace qht {

double max_asymmetry(const Mat& m) {
  if (m.rows() != m.cols()) return kInf;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

void require_hermitian(const Mat& m, double tol) {
  if (m.rows() != m.cols()) throw InvalidArgument("matrix is not square");
  if (m.size() == 0) return;
  const double asym = max_asymmetry(m);
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (asym > tol * scale) {
    std::ostringstream os;
    os << "matrix is not Hermitian: max |M - M^dagger| = " << asym;
    throw InvalidArgument(os.str());
  }
}

void fix_column_phases(Mat& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    const double norm = vectors.col(c).norm();
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      const cplx x = vectors(r, c);
      if (std::abs(x) > 1e-12 * norm) {
        vectors.col(c) *= std::conj(x) / std::abs(x);
        vectors(r, c) = std::abs(x);
        break;
      }
    }
  }
}

Spectral eig_hermitian(const Mat& m, double tol) {
  require_hermitian(m, tol);
  const Mat h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  if (es.info() != Eigen::Success) throw Error("Hermitian eigensolver failed");
  Spectral s{es.eigenvalues(), es.eigenvectors()};
  fix_column_phases(s.vectors);
  return s;
}

Mat reconstruct(const Spectral& s) {
  return s.vectors * s.values.cast<cplx>().asDiagonal() * s.vectors.adjoint();
}

Mat matrix_function(const Spectral& s, const std::function<double(double)>& f, double floor) {
  RVec fv(s.values.size());
  for (Eigen::Index i = 0; i < s.values.size(); ++i) {
    if (s.values[i] < floor) {
      std::ostringstream os;
      os << "support violation: eigenvalue " << s.values[i] << " below floor " << floor;
      throw SupportViolation(os.str(), s.values[i]);
    }
    fv[i] = f(s.values[i]);
  }
  return s.vectors * fv.cast<cplx>().asDiagonal() * s.vectors.adjoint();
}

Mat matrix_function(const Mat& m, const std::function<double(double)>& f, double floor) {
  return matrix_function(eig_hermitian(m), f, floor);
}

Mat orthonormal_span(const Mat& columns, double rel_threshold) {
  const Eigen::Index n = columns.rows(), k = columns.cols();
  if (k == 0 || n == 0) return Mat(n, 0);
  if (rel_threshold < 0)
    rel_threshold = static_cast<double>(std::max(n, k)) * std::numeric_limits<double>::epsilon();
  Eigen::BDCSVD<Mat> svd(columns, Eigen::ComputeThinU);
  const RVec& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] == 0.0) return Mat(n, 0);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv[rank] > rel_threshold * sv[0]) ++rank;
  return svd.matrixU().leftCols(rank);
}

Mat rank_revealing_projector(const Mat& columns, double rel_threshold) {
  const Mat q = orthonormal_span(columns, rel_threshold);
  return q * q.adjoint();
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("normal_quantile: p must lie in (0,1)");
  if (p == 0.5) return 0.0;
  double x = -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * p);
  // One Newton step on Φ(x) = p to polish the last bits.
  const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
  if (pdf > 0) x -= (normal_cdf(x) - p) / pdf;
  return x;
}

double adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                           double abs_tol) {
  using boost::math::quadrature::gauss_kronrod;
  double err = 0, l1 = 0;
  gauss_kronrod<double, 31>::integrate(f, a, b, 8, 1e-6, &err, &l1);
  const double rel = std::max(abs_tol / std::max(l1, 1e-300), 1e-15);
  const double value = gauss_kronrod<double, 31>::integrate(f, a, b, 30, rel, &err, &l1);
  if (!(err <= abs_tol) && err > 1e-15 * l1 * 10) {
    std::ostringstream os;
    os << "adaptive_quadrature did not converge: residual estimate " << err;
    throw Error(os.str());
  }
  return value;
}

}  // namespace qht
