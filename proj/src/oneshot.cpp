#include "qht/oneshot.hpp"

#include <algorithm>
#include <cmath>

namespace qht {

namespace {

const std::array<Mat, 4>& paulis() {
  static const std::array<Mat, 4> p = [] {
    std::array<Mat, 4> m;
    for (auto& x : m) x = Mat::Zero(2, 2);
    m[0] << 0, 1, 1, 0;
    m[1] << 0, cplx(0, -1), cplx(0, 1), 0;
    m[2] << 1, 0, 0, -1;
    m[3] << 1, 0, 0, 1;
    return m;
  }();
  return p;
}

void require_qubit(const DensityMatrix& r) {
  if (r.dim() != 2) throw InvalidArgument("Bloch representation needs a qubit (dim 2)");
}

}  // namespace

BlochFourVector bloch_of(const DensityMatrix& rho) {
  require_qubit(rho);
  BlochFourVector a{};
  for (int i = 0; i < 4; ++i) a[i] = (rho.matrix() * paulis()[i]).trace().real();
  return a;
}

Mat operator_of(const BlochFourVector& c) {
  Mat a = Mat::Zero(2, 2);
  for (int i = 0; i < 4; ++i) a += c[i] * paulis()[i];
  return a;
}

DensityMatrix state_of(const BlochFourVector& a) { return DensityMatrix(0.5 * operator_of(a)); }

double bloch_dot(const BlochFourVector& a, const BlochFourVector& c) {
  return a[0] * c[0] + a[1] * c[1] + a[2] * c[2] + a[3] * c[3];
}

bool is_valid_test(const BlochFourVector& c, double tol) {
  const double r = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
  return c[3] >= -tol && c[3] <= 1 + tol && r <= std::min(c[3], 1 - c[3]) + tol;
}

ErrorPair test_errors(const DensityMatrix& rho, const DensityMatrix& sigma, const Mat& a) {
  ErrorPair e;
  e.alpha = 1.0 - (rho.matrix() * a).trace().real();
  e.beta = (sigma.matrix() * a).trace().real();
  return e;
}

SymmetricOneShot symmetric_oneshot_qubit(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const BlochFourVector a = bloch_of(rho), b = bloch_of(sigma);
  const double dist = std::sqrt(std::pow(b[0] - a[0], 2) + std::pow(b[1] - a[1], 2) +
                                std::pow(b[2] - a[2], 2));
  if (dist < 1e-12) throw InvalidArgument("identical states cannot be discriminated");
  SymmetricOneShot out;
  out.c = {(a[0] - b[0]) / (2 * dist), (a[1] - b[1]) / (2 * dist), (a[2] - b[2]) / (2 * dist), 0.5};
  out.A = operator_of(out.c);
  const ErrorPair e = test_errors(rho, sigma, out.A);
  out.combined_error = 0.5 * (e.alpha + e.beta);
  return out;
}

NeymanPearsonResult neyman_pearson(const DensityMatrix& rho, const DensityMatrix& sigma,
                                   double epsilon) {
  if (!(epsilon > 0 && epsilon < 1)) throw InvalidArgument("neyman_pearson: epsilon must lie in (0,1)");
  if (rho.dim() != sigma.dim()) throw InvalidArgument("states have different dimensions");
  const int d = rho.dim();

  // Breakpoints t of ρ − tσ from M = ρ + σ: on supp M, ρ − tσ is congruent to
  // X − t(1 − X) with X = M^{-1/2} ρ M^{-1/2}, singular exactly at t = x/(1 − x).
  const Spectral ms = eig_hermitian(rho.matrix() + sigma.matrix());
  std::vector<int> keep;
  for (int k = 0; k < d; ++k)
    if (ms.values[k] > kEigenFloor) keep.push_back(k);
  const int m = static_cast<int>(keep.size());
  Mat b(d, m);
  for (int k = 0; k < m; ++k) b.col(k) = ms.vectors.col(keep[k]) / std::sqrt(ms.values[keep[k]]);
  const Mat x = b.adjoint() * rho.matrix() * b;
  Eigen::SelfAdjointEigenSolver<Mat> xs(0.5 * (x + x.adjoint()), Eigen::EigenvaluesOnly);
  std::vector<double> ts;
  for (int k = 0; k < m; ++k) {
    const double xv = xs.eigenvalues()[k];
    if (xv > 1e-13 && xv < 1 - 1e-13) ts.push_back(xv / (1 - xv));
  }
  std::sort(ts.begin(), ts.end());
  std::vector<double> uniq;
  for (double t : ts)
    if (uniq.empty() || t - uniq.back() > 1e-9 * (1 + t)) uniq.push_back(t);

  struct Split {
    Mat pplus, pzero;
  };
  auto split_at = [&](double t) {
    const Spectral s = eig_hermitian(rho.matrix() - t * sigma.matrix());
    const double thr = 1e-10 * (1 + t);
    Split sp{Mat::Zero(d, d), Mat::Zero(d, d)};
    for (int k = 0; k < d; ++k) {
      const Mat proj = s.vectors.col(k) * s.vectors.col(k).adjoint();
      if (s.values[k] > thr) sp.pplus += proj;
      else if (s.values[k] >= -thr) sp.pzero += proj;
    }
    return sp;
  };

  NeymanPearsonResult res;
  for (double t : uniq) {
    const Split sp = split_at(t);
    const double hi = 1 - (rho.matrix() * sp.pplus).trace().real();
    if (hi < epsilon - 1e-14) continue;
    const double w0 = (rho.matrix() * sp.pzero).trace().real();
    const double gamma = w0 > 0 ? std::clamp((hi - epsilon) / w0, 0.0, 1.0) : 0.0;
    res.A = sp.pplus + gamma * sp.pzero;
    res.t = t;
    res.gamma = gamma;
    const ErrorPair e = test_errors(rho, sigma, res.A);
    res.alpha = e.alpha;
    res.beta_star = std::max(0.0, e.beta);
    return res;
  }
  // α never reaches ε: beyond the last breakpoint only the part of supp ρ outside
  // supp σ is accepted, which already gives β = 0.
  const double t = uniq.empty() ? 1.0 : 2 * uniq.back() + 1;
  res.A = split_at(t).pplus;
  res.t = t;
  const ErrorPair e = test_errors(rho, sigma, res.A);
  res.alpha = e.alpha;
  res.beta_star = std::max(0.0, e.beta);
  return res;
}

double hypothesis_testing_relent(const DensityMatrix& rho, const DensityMatrix& sigma,
                                 double epsilon) {
  const double b = neyman_pearson(rho, sigma, epsilon).beta_star;
  return b > 1e-300 ? -std::log(b) : kInf;
}

}  // namespace qht
