#include "qht/divergences.hpp"

#include <cmath>
#include <sstream>

namespace qht {

namespace {

RMat overlap_weights(const DensityMatrix& rho, const DensityMatrix& sigma) {
  // |⟨r_i|s_j⟩|²
  const Mat o = rho.spectral().vectors.adjoint() * sigma.spectral().vectors;
  return o.cwiseAbs2();
}

// Tr ρ P_ker(σ)
double kernel_weight(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const Spectral& s = sigma.spectral();
  double w = 0;
  for (Eigen::Index k = 0; k < s.values.size(); ++k)
    if (s.values[k] <= 0.0)
      w += (s.vectors.col(k).adjoint() * rho.matrix() * s.vectors.col(k))(0, 0).real();
  return w;
}

void require_same_dim(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("states have different dimensions");
}

double xlogx(double x) { return x > 0 ? x * std::log(x) : 0.0; }

Mat log_on_support(const Spectral& s) {
  return matrix_function(s, [](double x) { return x > 0 ? std::log(x) : 0.0; });
}

// log Tr (σ^γ ρ σ^γ)^α with γ = (1-α)/2α
double log_sandwiched_trace(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha) {
  const double gamma = (1.0 - alpha) / (2.0 * alpha);
  const Mat sg = psd_power(sigma.spectral(), gamma);
  const Mat m = sg * rho.matrix() * sg;
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  double tr = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double x = es.eigenvalues()[i];
    if (x > 0) tr += std::pow(x, alpha);
  }
  return std::log(tr);
}

}  // namespace

Mat psd_power(const Spectral& s, double x) {
  return matrix_function(s, [x](double l) {
    if (l <= 0) return 0.0;
    return x == 0.0 ? 1.0 : std::pow(l, x);
  });
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma);
  if (kernel_weight(rho, sigma) > 1e-12) return kInf;
  double s = 0;
  for (Eigen::Index i = 0; i < rho.eigenvalues().size(); ++i) s += xlogx(rho.eigenvalues()[i]);
  const Spectral& ss = sigma.spectral();
  for (Eigen::Index k = 0; k < ss.values.size(); ++k) {
    if (ss.values[k] <= 0) continue;
    const double w = (ss.vectors.col(k).adjoint() * rho.matrix() * ss.vectors.col(k))(0, 0).real();
    s -= w * std::log(ss.values[k]);
  }
  return std::max(s, 0.0);
}

double relative_entropy_variance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma);
  const double t = kernel_weight(rho, sigma);
  if (t > 1e-12 && t < 1.0 - 1e-12) {
    std::ostringstream os;
    os << "relative_entropy_variance: rho has weight " << t << " on ker(sigma)";
    throw SupportViolation(os.str(), t);
  }
  const Mat x = log_on_support(rho.spectral()) - log_on_support(sigma.spectral());
  const Mat sqrt_rho = psd_power(rho.spectral(), 0.5);
  const double mean = (rho.matrix() * x).trace().real();
  const Mat centered = (x - mean * Mat::Identity(rho.dim(), rho.dim())) * sqrt_rho;
  return centered.squaredNorm();
}

double petz_renyi(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha) {
  require_same_dim(rho, sigma);
  if (!(alpha > 0) || alpha == 1.0) throw InvalidArgument("petz_renyi: alpha must be > 0 and != 1");
  if (alpha > 1 && kernel_weight(rho, sigma) > 1e-12) return kInf;
  const RMat w = overlap_weights(rho, sigma);
  const RVec& r = rho.eigenvalues();
  const RVec& s = sigma.eigenvalues();
  double q = 0;
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    if (r[i] <= 0) continue;
    for (Eigen::Index j = 0; j < s.size(); ++j)
      if (s[j] > 0) q += std::pow(r[i], alpha) * std::pow(s[j], 1.0 - alpha) * w(i, j);
  }
  if (q <= 0) return kInf;
  return std::log(q) / (alpha - 1.0);
}

double sandwiched_renyi(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha) {
  require_same_dim(rho, sigma);
  if (!(alpha > 0) || alpha == 1.0)
    throw InvalidArgument("sandwiched_renyi: alpha must be > 0 and != 1");
  if (alpha > 1 && kernel_weight(rho, sigma) > 1e-12) return kInf;
  const double lt = log_sandwiched_trace(rho, sigma, alpha);
  if (!std::isfinite(lt)) return kInf;
  return lt / (alpha - 1.0);
}

double chernoff_Qs(const DensityMatrix& rho, const DensityMatrix& sigma, double s) {
  require_same_dim(rho, sigma);
  const RMat w = overlap_weights(rho, sigma);
  const RVec& r = rho.eigenvalues();
  const RVec& g = sigma.eigenvalues();
  double q = 0;
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    if (r[i] <= 0) continue;
    const double ri = s == 0.0 ? 1.0 : std::pow(r[i], s);
    for (Eigen::Index j = 0; j < g.size(); ++j) {
      if (g[j] <= 0) continue;
      const double gj = s == 1.0 ? 1.0 : std::pow(g[j], 1.0 - s);
      q += ri * gj * w(i, j);
    }
  }
  return q;
}

ChernoffResult chernoff_information(const DensityMatrix& rho, const DensityMatrix& sigma) {
  auto f = [&](double s) { return chernoff_Qs(rho, sigma, s); };
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = 0, b = 1;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > 1e-10) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - phi * (b - a); fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + phi * (b - a); fd = f(d);
    }
  }
  ChernoffResult res;
  res.s_star = 0.5 * (a + b);
  res.Q = f(res.s_star);
  for (double s : {0.0, 1.0}) {
    const double q = f(s);
    if (q < res.Q) {
      res.Q = q;
      res.s_star = s;
    }
  }
  res.Q = std::min(res.Q, 1.0);
  res.neg_log_Q = res.Q > 0 ? -std::log(res.Q) : kInf;
  return res;
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma);
  const Mat d = rho.matrix() - sigma.matrix();
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (d + d.adjoint()), Eigen::EigenvaluesOnly);
  return std::min(1.0, 0.5 * es.eigenvalues().cwiseAbs().sum());
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma);
  const Mat m = psd_power(rho.spectral(), 0.5) * psd_power(sigma.spectral(), 0.5);
  Eigen::JacobiSVD<Mat> svd(m);
  return std::min(1.0, svd.singularValues().sum());
}

double capacity_of_entanglement(const DensityMatrix& rho) {
  double m1 = 0;
  for (Eigen::Index i = 0; i < rho.eigenvalues().size(); ++i)
    m1 += xlogx(rho.eigenvalues()[i]);
  // Tr ρ (log ρ − m1)² avoids the cancellation in Tr ρ log²ρ − m1².
  double c = 0;
  for (Eigen::Index i = 0; i < rho.eigenvalues().size(); ++i) {
    const double r = rho.eigenvalues()[i];
    if (r > 0) c += r * (std::log(r) - m1) * (std::log(r) - m1);
  }
  return c;
}

bool vanishing_variance_predicate(const DensityMatrix& rho, const DensityMatrix& sigma,
                                  double tol) {
  require_same_dim(rho, sigma);
  const Spectral& s = rho.spectral();
  Mat psupp = Mat::Zero(rho.dim(), rho.dim());
  for (Eigen::Index k = 0; k < s.values.size(); ++k)
    if (s.values[k] > 0) psupp += s.vectors.col(k) * s.vectors.col(k).adjoint();
  const Mat pker = Mat::Identity(rho.dim(), rho.dim()) - psupp;
  // (i) σ does not connect ker ρ with its complement.
  if ((pker * sigma.matrix() * psupp).cwiseAbs().maxCoeff() > tol) return false;
  // (ii) σ restricted to supp ρ is proportional to ρ.
  const Mat block = psupp * sigma.matrix() * psupp;
  const double c = block.trace().real();
  return (block - c * rho.matrix()).cwiseAbs().maxCoeff() <= tol;
}

double refined_renyi(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha) {
  const double h = 1e-4;
  auto g = [&](double a) { return log_sandwiched_trace(rho, sigma, a) / a; };
  auto d1 = [&](double step) { return (g(alpha + step) - g(alpha - step)) / (2 * step); };
  const double deriv = (4 * d1(h) - d1(2 * h)) / 3;
  return alpha * alpha * deriv;
}

double variance_from_refined(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const double h = 1e-4;
  auto g = [&](double a) { return log_sandwiched_trace(rho, sigma, a) / a; };
  const double g0 = g(1.0);
  auto d1 = [&](double step) { return (g(1 + step) - g(1 - step)) / (2 * step); };
  auto d2 = [&](double step) { return (g(1 + step) - 2 * g0 + g(1 - step)) / (step * step); };
  const double gp = (4 * d1(h) - d1(2 * h)) / 3;
  const double gpp = (4 * d2(h) - d2(2 * h)) / 3;
  // d/dα [α² g'(α)] at α = 1
  return 2 * gp + gpp;
}

}  // namespace qht
