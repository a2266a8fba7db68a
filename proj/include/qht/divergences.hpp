#pragma once

#include "qht/states.hpp"

namespace qht {

struct ChernoffResult {
  double s_star = 0;
  double neg_log_Q = 0;
  double Q = 1;
};

// S(ρ‖σ); +inf when supp ρ ⊄ supp σ.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

// V(ρ‖σ) = Tr ρ(ΔK − S)².  When ρ lies entirely in ker σ the divergent part of ΔK
// is a constant on supp ρ and drops out of the variance; a partial overlap with
// ker σ raises SupportViolation.
double relative_entropy_variance(const DensityMatrix& rho, const DensityMatrix& sigma);

double petz_renyi(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha);
double sandwiched_renyi(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha);

// Q_s = Tr ρ^s σ^{1-s}; ρ^0 is the support projector.
double chernoff_Qs(const DensityMatrix& rho, const DensityMatrix& sigma, double s);
ChernoffResult chernoff_information(const DensityMatrix& rho, const DensityMatrix& sigma);

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

double capacity_of_entanglement(const DensityMatrix& rho);

bool vanishing_variance_predicate(const DensityMatrix& rho, const DensityMatrix& sigma,
                                  double tol = 1e-9);

// S̃_α = α² ∂_α((α−1)/α · D̃_α) and V = ∂_α S̃_α at α = 1, by central differences
// (h = 1e-4) with one Richardson step.
double refined_renyi(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha);
double variance_from_refined(const DensityMatrix& rho, const DensityMatrix& sigma);

// Power of a PSD spectrum with the kernel convention 0^x = 0 (x > 0), 0^0 = 0
// (support projector) and SupportViolation for x < 0 on a kernel that ρ sees.
Mat psd_power(const Spectral& s, double x);

}  // namespace qht
