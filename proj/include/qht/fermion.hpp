#pragma once

#include "qht/states.hpp"

#include <vector>

namespace qht {

// Thermal two-point function of the infinite XY (hopping) chain,
// C_ij = (1/π)∫₀^π cos(q(i−j)) / (e^{β cos q} + 1) dq.
RMat xy_correlation(double beta, const std::vector<int>& sites);

// A = log((1 − C) C⁻¹) for a real symmetric C with spectrum in (0, 1).
RMat modular_matrix_from_C(const RMat& c);
RMat correlation_from_modular(const RMat& a);  // inverse map, 1/(1 + e^A)
// log Z = −Σ log(1 − c_i).
double partition_log(const RMat& c);

// Jordan–Wigner annihilators on 2^ℓ Fock space; site 0 is the most significant bit.
std::vector<RMat> fock_annihilators(int ell);
// K = Σ c†_i A_ij c_j + ½ Σ (c†_i B_ij c†_j − c_i B_ij c_j) on Fock space.
RMat fock_quadratic(const RMat& a, const RMat& b);
// σ = e^{−K}/Z for K = Σ A_ij c†_i c_j, ℓ ≤ 6.
DensityMatrix dense_rdm(const RMat& a);
// ⟨c†_i c_j⟩ of a Fock-space density matrix.
RMat dense_correlation(const DensityMatrix& rho);

// S(ρ∥σ) and V(ρ∥σ) for Gaussian states; C belongs to σ, Ct to ρ.
double fermion_relative_entropy(const RMat& c, const RMat& ct);
double fermion_variance(const RMat& c, const RMat& ct);
// Commuting case, mode energies E (σ) and Et (ρ) paired index by index.
double fermion_relative_entropy_commuting(const RVec& e, const RVec& et);
double fermion_variance_commuting(const RVec& e, const RVec& et);

// Rows v_k, u_k with (A+B)v_k = E_k u_k and (A−B)u_k = E_k v_k.
struct BogoliubovPair {
  RMat v, u;
  RVec energies;
};
BogoliubovPair bogoliubov_diagonalize(const RMat& a, const RMat& b);
BogoliubovPair bogoliubov_diagonalize(const RMat& a);

// ⟨E_I|Ẽ_J⟩ = det (v ṽᵀ)[I, J] for number-conserving modes (0 when |I| ≠ |J|).
double free_overlap(const RMat& v, const RMat& vt, const std::vector<int>& i,
                    const std::vector<int>& j);

// W = ½[[v+u, v−u], [v−u, v+u]] maps (c; c†) to quasi-particles (b; b†).
RMat bogoliubov_matrix(const RMat& v, const RMat& u);
// T = W̃ Wᵀ, so that (b̃; b̃†) = T (b; b†).
RMat wick_transformation(const RMat& v, const RMat& u, const RMat& vt, const RMat& ut);

// ⟨E_I|Ẽ_J⟩ with ⟨E_I| = ⟨vac| b_{i_k} … b_{i_1} and
// |Ẽ_J⟩ = b̃†_{j_1} … b̃†_{j_m} |ṽac⟩, index lists increasing.  The vacuum overlap is
// taken as +|det T₁₁|^{1/2}.  Throws when the vacua are orthogonal.
double wick_overlap(const RMat& t, const std::vector<int>& creation,
                    const std::vector<int>& annihilation);

// Dense reference for the same overlap: builds both quasi-particle vacua on Fock
// space (ℓ ≤ 6), fixing the relative sign so that ⟨vac|ṽac⟩ > 0.
double dense_bogoliubov_overlap(const RMat& v, const RMat& u, const RMat& vt, const RMat& ut,
                                const std::vector<int>& creation,
                                const std::vector<int>& annihilation);

struct TwoFermionSetup {
  double angle = 0;      // φ − φ̃
  bool commuting = true;
  RMat rotation;         // v ṽᵀ after matching
};
TwoFermionSetup two_fermion_optimal_setup(const RMat& c, const RMat& ct);

// ⌈n(Ẽ)·Δ̃/Δ + (Ẽ₀ − E₀)n/Δ + n𝓔/Δ⌉
int two_fermion_lrt_threshold(double e0, double et0, double delta, double deltat, int n,
                              int n_tilde, double threshold);

}  // namespace qht
