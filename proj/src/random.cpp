#include "qht/random.hpp"

#include <cmath>

namespace qht {

Mat ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = g(rng);
      const double im = g(rng);
      m(i, j) = cplx(re, im) / std::sqrt(2.0);
    }
  return m;
}

Mat random_unitary(int dim, Rng& rng) {
  Eigen::HouseholderQR<Mat> qr(ginibre(dim, dim, rng));
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR();
  for (int i = 0; i < dim; ++i) {
    const cplx d = r(i, i);
    if (std::abs(d) > 0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

Vec random_pure_vector(int dim, Rng& rng) {
  Vec v = ginibre(dim, 1, rng).col(0);
  return v / v.norm();
}

Mat random_hermitian(int dim, Rng& rng) {
  const Mat g = ginibre(dim, dim, rng);
  return 0.5 * (g + g.adjoint());
}

Mat random_traceless_hermitian(int dim, Rng& rng) {
  Mat h = random_hermitian(dim, rng);
  h -= (h.trace() / static_cast<double>(dim)) * Mat::Identity(dim, dim);
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  const double norm = es.eigenvalues().cwiseAbs().maxCoeff();
  return norm > 0 ? Mat(h / norm) : h;
}

DensityMatrix random_density(int dim, Rng& rng, double min_eig) {
  const Mat g = ginibre(dim, 2 * dim, rng);
  Mat w = g * g.adjoint();
  w /= w.trace().real();
  const double t = min_eig * dim;
  if (t >= 1.0) throw InvalidArgument("random_density: min_eig too large for dimension");
  Mat rho = (1.0 - t) * w + min_eig * Mat::Identity(dim, dim);
  return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

RMat random_orthogonal(int dim, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  RMat a(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) a(i, j) = g(rng);
  Eigen::HouseholderQR<RMat> qr(a);
  RMat q = qr.householderQ();
  const RMat r = qr.matrixQR();
  for (int i = 0; i < dim; ++i)
    if (r(i, i) < 0) q.col(i) *= -1.0;
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

}  // namespace qht
