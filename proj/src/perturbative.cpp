#include "qht/perturbative.hpp"

#include "qht/divergences.hpp"

#include <cmath>

namespace qht {

namespace {

constexpr double kDegenerate = 1e-10;

bool degenerate(double a, double b) { return std::abs(a - b) < kDegenerate * std::max(a, b); }

const Spectral& full_rank_spectrum(const DensityMatrix& sigma) {
  const Spectral& s = sigma.spectral();
  if (s.values.size() && s.values[0] <= 0.0)
    throw SupportViolation("perturbative expansion needs a full-rank sigma", s.values[0]);
  return s;
}

}  // namespace

PerturbativeFamily::PerturbativeFamily(DensityMatrix s, Mat r1, double lam)
    : sigma(std::move(s)), rho1(std::move(r1)), lambda(lam) {
  require_hermitian(rho1, 1e-12);
  if (rho1.rows() != sigma.dim()) throw InvalidArgument("rho1 has the wrong dimension");
  if (std::abs(rho1.trace()) > 1e-12) throw InvalidArgument("rho1 must be traceless");
  if (eig_hermitian(sigma.matrix() + lambda * rho1).values.minCoeff() < -1e-12)
    throw InvalidArgument("sigma + lambda rho1 is not positive semidefinite");
}

DensityMatrix PerturbativeFamily::rho() const { return DensityMatrix(sigma.matrix() + lambda * rho1); }

double b_function(double x) {
  if (std::abs(x - 1.0) < 1e-8) return 2.0 + (x - 1.0) * (x - 1.0) / 6.0;
  return (x + 1.0) * std::log(x) / (x - 1.0);
}

Mat log_derivative(const PerturbativeFamily& f) {
  const Spectral& s = full_rank_spectrum(f.sigma);
  const Mat r = s.vectors.adjoint() * f.rho1 * s.vectors;
  Mat l(r.rows(), r.cols());
  for (Eigen::Index i = 0; i < r.rows(); ++i)
    for (Eigen::Index j = 0; j < r.cols(); ++j) {
      const double li = s.values[i], lj = s.values[j];
      const double k = degenerate(li, lj) ? 2.0 / (li + lj)
                                          : (std::log(li) - std::log(lj)) / (li - lj);
      l(i, j) = k * r(i, j);
    }
  return s.vectors * l * s.vectors.adjoint();
}

double s2(const PerturbativeFamily& f) { return (f.rho1 * log_derivative(f)).trace().real(); }

double v2(const PerturbativeFamily& f) {
  const Mat l = log_derivative(f);
  return 2.0 * (f.sigma.matrix() * l * l).trace().real();
}

SldResult sld_fisher(const PerturbativeFamily& f) {
  const Spectral& s = full_rank_spectrum(f.sigma);
  const Mat r = s.vectors.adjoint() * f.rho1 * s.vectors;
  Mat l(r.rows(), r.cols());
  for (Eigen::Index i = 0; i < r.rows(); ++i)
    for (Eigen::Index j = 0; j < r.cols(); ++j)
      l(i, j) = 2.0 / (s.values[i] + s.values[j]) * r(i, j);
  SldResult out;
  out.L = s.vectors * l * s.vectors.adjoint();
  out.fisher = (f.rho1 * out.L).trace().real();
  return out;
}

PerturbativeReport perturbative_report(const PerturbativeFamily& f) {
  PerturbativeReport rep;
  const Mat l = log_derivative(f);
  rep.s2 = (f.rho1 * l).trace().real();
  rep.v2 = 2.0 * (f.sigma.matrix() * l * l).trace().real();
  rep.fisher = sld_fisher(f).fisher;
  rep.ratio = rep.s2 > 0 ? rep.v2 / rep.s2 : 0.0;
  rep.commutator_norm = (f.sigma.matrix() * f.rho1 - f.rho1 * f.sigma.matrix()).norm();
  return rep;
}

ThermalPerturbationReport thermal_perturbation_report(const Mat& h, double beta1, double beta2) {
  if (!(beta1 > 0 && beta2 > 0)) throw InvalidArgument("inverse temperatures must be positive");
  const DensityMatrix r1 = thermal_state(h, beta1);
  const DensityMatrix r2 = thermal_state(h, beta2);
  ThermalPerturbationReport rep;
  rep.S = relative_entropy(r2, r1);
  rep.V = relative_entropy_variance(r2, r1);
  const Mat& p2 = r2.matrix();
  const double e = (p2 * h).trace().real();
  const Mat hc = h - e * Mat::Identity(h.rows(), h.cols());
  rep.heat_capacity = beta2 * beta2 * (p2 * hc * hc).trace().real();
  rep.V_formula = std::pow(1.0 - beta1 / beta2, 2) * rep.heat_capacity;
  // dρ/dβ at β₁ = −½{H − ⟨H⟩, ρ₁}, which commutes with ρ₁.
  const double e1 = (r1.matrix() * h).trace().real();
  const Mat h1 = h - e1 * Mat::Identity(h.rows(), h.cols());
  Mat dir = -0.5 * (h1 * r1.matrix() + r1.matrix() * h1);
  dir -= (dir.trace() / static_cast<double>(h.rows())) * Mat::Identity(h.rows(), h.cols());
  const PerturbativeFamily fam(r1, 0.5 * (dir + dir.adjoint()), 0.0);
  const PerturbativeReport pr = perturbative_report(fam);
  rep.perturbative_ratio = pr.ratio;
  return rep;
}

double second_order_alpha_estimate(double e2, double lambda, double v2) {
  if (!(e2 < 0)) throw InvalidArgument("second_order_alpha_estimate is restricted to E2 < 0");
  if (!(lambda > 0) || !(v2 > 0)) throw InvalidArgument("lambda and v2 must be positive");
  return 0.5 * lambda * std::sqrt(v2 / (M_PI * e2 * e2)) *
         std::exp(-e2 * e2 / (lambda * lambda * v2));
}

PerturbativeFamily random_family(int dim, Rng& rng, bool commuting) {
  DensityMatrix sigma = random_density(dim, rng, 0.01);
  Mat rho1;
  if (commuting) {
    std::normal_distribution<double> g(0.0, 1.0);
    RVec d(dim);
    for (int i = 0; i < dim; ++i) d[i] = g(rng);
    d.array() -= d.mean();
    const double norm = d.cwiseAbs().maxCoeff();
    if (norm > 0) d /= norm;
    const Mat& u = sigma.spectral().vectors;
    rho1 = u * d.cast<cplx>().asDiagonal() * u.adjoint();
  } else {
    rho1 = random_traceless_hermitian(dim, rng);
  }
  rho1 = 0.5 * (rho1 + rho1.adjoint());
  rho1 -= (rho1.trace() / static_cast<double>(dim)) * Mat::Identity(dim, dim);
  const double lam = 0.5 * sigma.eigenvalues()[0];
  return PerturbativeFamily(std::move(sigma), rho1, lam);
}

std::vector<PerturbativeReport> perturbative_ensemble(const std::vector<int>& dims,
                                                      std::uint64_t seed, bool commuting,
                                                      par::Exec exec) {
  std::vector<PerturbativeReport> out(dims.size());
  par::for_each_index(static_cast<std::int64_t>(dims.size()), exec, [&](std::int64_t i) {
    std::seed_seq seq{seed, static_cast<std::uint64_t>(i)};
    Rng rng(seq);
    out[i] = perturbative_report(random_family(dims[i], rng, commuting));
  });
  return out;
}

}  // namespace qht
