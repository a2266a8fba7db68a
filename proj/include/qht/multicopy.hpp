#pragma once

#include "qht/oneshot.hpp"
#include "qht/parallel.hpp"
#include "qht/states.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qht {

enum class ThresholdMode { Optimal, Classical };
std::string to_string(ThresholdMode m);
ThresholdMode threshold_mode_from_string(const std::string& s);

struct AcceptanceThreshold {
  double value = 0;  // nats per copy
  double epsilon = 0.5;
  int n = 1;
  ThresholdMode mode = ThresholdMode::Optimal;
  double S = 0, V = 0;  // divergences that produced the value
};

// Single-copy pair expressed in σ's spectral frame.  σ eigenvectors are ordered by
// ascending modular energy (descending eigenvalue); inside degenerate σ eigenspaces
// the basis diagonalizes the compression of ρ, so commuting pairs share one basis.
struct TestingFrame {
  int dim = 0;
  Mat sigma_basis;      // columns |E_k⟩
  RVec sigma_eigs;      // s_k
  RVec energies;        // E_k = −log s_k (+inf on ker σ)
  Mat rho_basis;        // columns |Ẽ_j⟩
  RVec rho_eigs;        // r_j
  RVec rho_energies;    // Ẽ_j
  Mat overlap;          // ⟨E_k|Ẽ_j⟩
  Mat rho_in_sigma;     // ⟨E_k|ρ|E_l⟩
  RVec rho_diag;        // ⟨E_k|ρ|E_k⟩
  bool commuting = false;
};
TestingFrame make_frame(const DensityMatrix& rho, const DensityMatrix& sigma);

// Invariant block of the collective (spin-J, N = 2J) decomposition of (C²)^{⊗n}:
// basis rows are indexed by the weight w = 0..N of the symmetric basis state.
struct SpinBlock {
  int N = 0;
  std::int64_t multiplicity = 0;
  Mat basis;  // (N+1) × r, orthonormal columns
};

struct NCopyProjector {
  enum class Kind { Labels, Dense, Spin };
  Kind kind = Kind::Labels;
  int n = 0;
  int dim = 0;
  std::vector<std::uint8_t> accepted;  // Labels: one flag per σ-product label
  Mat basis;                           // Dense: orthonormal columns in the σ-product basis
  std::vector<SpinBlock> blocks;       // Spin
  std::int64_t rank = 0;

  double total_dim() const;
};

struct ProjectorOptions {
  int budget_log2 = kDefaultBudgetLog2;
  std::int64_t dense_cap = 2048;      // generic optimal builder, product dimension
  std::int64_t symmetric_cap = 4096;  // dense positive-part diagonalization
  double rel_threshold = -1.0;        // rank-revealing cutoff, <0 → dim·eps
  par::Exec exec = par::Exec::Parallel;
  bool collective = true;             // qubits: use the spin-block decomposition
};

AcceptanceThreshold acceptance_threshold(const DensityMatrix& rho, const DensityMatrix& sigma,
                                         int n, double epsilon, ThresholdMode mode);

ErrorPair errors(const DensityMatrix& rho, const DensityMatrix& sigma, const NCopyProjector& p,
                 const ProjectorOptions& opt = {});

NCopyProjector build_optimal_projector(const DensityMatrix& rho, const DensityMatrix& sigma,
                                       int n, const AcceptanceThreshold& threshold,
                                       const ProjectorOptions& opt = {});
NCopyProjector build_lrt_projector(const DensityMatrix& rho, const DensityMatrix& sigma, int n,
                                   const AcceptanceThreshold& threshold,
                                   const ProjectorOptions& opt = {});
// Projector onto the strictly positive part of κρ^{⊗n} − (1−κ)σ^{⊗n}.
NCopyProjector symmetric_projector(const DensityMatrix& rho, const DensityMatrix& sigma, int n,
                                   double kappa, const ProjectorOptions& opt = {});

ErrorPair independent_baseline(const DensityMatrix& rho, const DensityMatrix& sigma, int n,
                               const Mat& b);

double min_acceptance_dimension(const NCopyProjector& p, double total_dim);
double min_acceptance_dimension(const NCopyProjector& p);

// Dense n-copy projector in the σ-product basis (tests and small cases only).
Mat materialize(const NCopyProjector& p, const DensityMatrix& rho, const DensityMatrix& sigma);

struct SteinRow {
  int n = 0;
  ThresholdMode mode = ThresholdMode::Optimal;
  double epsilon = 0;
  double threshold = 0;
  double alpha = 0;
  double beta = 0;
  double neg_log_beta_over_n = 0;
  double min_acc_dim = 0;
};
std::vector<SteinRow> stein_exponent_table(const DensityMatrix& rho, const DensityMatrix& sigma,
                                           double epsilon, const std::vector<int>& n_list,
                                           ThresholdMode mode, const ProjectorOptions& opt = {});

// Label-set kernels, exposed for the serial/parallel comparison.
struct LabelResult {
  std::vector<std::uint8_t> accepted;
  std::int64_t rank = 0;
  double alpha = 0, beta = 0;
};
// Accepts label E iff Σ score[E_i] ≥ bound (closed, with a relative tie tolerance
// of 1e-11) or > bound when strict.
LabelResult evaluate_labels(const RVec& score, const RVec& rho_weights, const RVec& sigma_weights,
                            int n, double bound, bool strict, par::Exec exec);

// Wigner-type matrix of M^{⊗N} on the symmetric subspace, weight basis.
Mat symmetric_power(const Mat& m2, int N);

}  // namespace qht
