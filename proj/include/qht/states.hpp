#pragma once

#include "qht/core.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace qht {

// Hermitian, PSD, unit-trace matrix.  The spectral decomposition is computed once
// at construction; eigenvalues below the floor are clamped to zero and the rest
// renormalized, so pure states have an exact (0,...,0,1) spectrum.
class DensityMatrix {
 public:
  explicit DensityMatrix(const Mat& m, double tol = 1e-10);
  static DensityMatrix normalized(const Mat& m);
  static DensityMatrix pure(const Vec& psi);
  static DensityMatrix maximally_mixed(int dim);

  const Mat& matrix() const { return m_; }
  const Spectral& spectral() const { return s_; }
  const RVec& eigenvalues() const { return s_.values; }
  int dim() const { return static_cast<int>(m_.rows()); }
  int rank() const;

 private:
  Mat m_;
  Spectral s_;
};

using TensorBasisLabel = std::vector<int>;

inline constexpr int kDefaultBudgetLog2 = 24;

// Throws BudgetExceeded when dim^n exceeds 2^budget_log2.
void check_budget(int dim, int n, int budget_log2 = kDefaultBudgetLog2);
std::uint64_t ipow(std::uint64_t base, int exp);

DensityMatrix thermal_state(const Mat& h, double beta);
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& dims,
                            const std::vector<int>& keep);
Mat partial_trace(const Mat& m, const std::vector<int>& dims, const std::vector<int>& keep);
DensityMatrix pinch_diagonal(const DensityMatrix& rho, const Spectral& basis);

// Single-copy modular energies -log λ in the order of rho's spectral basis
// (+inf on the kernel).
RVec modular_energies(const DensityMatrix& rho);

// Visits all dim^n labels in lexicographic order (first index most significant),
// passing the average modular energy |E| = (1/n) Σ E_i.  Digit values index ρ's
// eigenvalues in ascending order.
void tensor_power_spectrum(const DensityMatrix& rho, int n,
                           const std::function<void(const TensorBasisLabel&, double)>& visit,
                           int budget_log2 = kDefaultBudgetLog2);

Mat modular_hamiltonian(const DensityMatrix& rho);

Mat kron(const Mat& a, const Mat& b);

// Complex matrices as nested arrays of [re, im] pairs.
nlohmann::json matrix_to_json(const Mat& m);
Mat matrix_from_json(const nlohmann::json& j);
DensityMatrix load_density_matrix(const std::string& path);

}  // namespace qht
