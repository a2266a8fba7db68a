#pragma once

#include "qht/parallel.hpp"
#include "qht/random.hpp"
#include "qht/states.hpp"

#include <vector>

namespace qht {

// ρ(λ) = σ + λ ρ⁽¹⁾.
struct PerturbativeFamily {
  DensityMatrix sigma;
  Mat rho1;
  double lambda = 0;

  PerturbativeFamily(DensityMatrix s, Mat r1, double lam);
  DensityMatrix rho() const;
};

struct PerturbativeReport {
  double s2 = 0;
  double v2 = 0;
  double fisher = 0;
  double ratio = 0;
  double commutator_norm = 0;
};

// ℒ_ij = (log λ_i − log λ_j)/(λ_i − λ_j) ρ⁽¹⁾_ij in σ's eigenbasis, returned in the
// original coordinates.
Mat log_derivative(const PerturbativeFamily& f);
double s2(const PerturbativeFamily& f);
double v2(const PerturbativeFamily& f);

struct SldResult {
  Mat L;
  double fisher;
};
SldResult sld_fisher(const PerturbativeFamily& f);

PerturbativeReport perturbative_report(const PerturbativeFamily& f);

struct ThermalPerturbationReport {
  double S = 0;              // S(ρ₂‖ρ₁), ρ_i ∝ exp(−β_i H)
  double V = 0;              // V(ρ₂‖ρ₁)
  double V_formula = 0;      // (1 − β₁/β₂)² C(β₂)
  double heat_capacity = 0;  // C(β₂) = β₂² Var_{β₂}(H)
  double perturbative_ratio = 0;  // v2/s2 for the β-direction family at β₁
};
ThermalPerturbationReport thermal_perturbation_report(const Mat& h, double beta1, double beta2);

// α* ≈ (λ/2)√(V⁽²⁾/(π E₂²)) exp(−E₂²/(λ² V⁽²⁾)), E₂ < 0.
double second_order_alpha_estimate(double e2, double lambda, double v2);

// B(x) = (x + 1) log x / (x − 1), B(1) = 2.
double b_function(double x);

// Random families: σ Wishart with min eigenvalue ≥ 0.01, ρ⁽¹⁾ traceless GUE with unit
// operator norm, λ = half the smallest eigenvalue of σ.  Commuting families draw
// ρ⁽¹⁾ diagonal in σ's eigenbasis.
PerturbativeFamily random_family(int dim, Rng& rng, bool commuting = false);

// Ensemble of reports for families of the given dimensions; sample i uses an
// independent stream seeded from (seed, i), so results do not depend on scheduling.
std::vector<PerturbativeReport> perturbative_ensemble(const std::vector<int>& dims,
                                                      std::uint64_t seed, bool commuting,
                                                      par::Exec exec);

}  // namespace qht
