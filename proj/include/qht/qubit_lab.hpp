#pragma once

#include "qht/multicopy.hpp"
#include "qht/states.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace qht {

// σ = diag(1−p, p); ρ has the same spectrum in the rotated basis
// |0̃⟩ = cos θ|0⟩ − sin θ|1⟩, |1̃⟩ = sin θ|0⟩ + cos θ|1⟩.
struct QubitPair {
  double p = 0;      // σ's excited weight
  double q = 0;      // excited weight of ρ pinched in σ's basis
  double theta = 0;
};
QubitPair qubit_pair(double theta, double p);

struct QubitStates {
  DensityMatrix rho, sigma;
};
QubitStates qubit_states(double theta, double p);
Mat rotation_matrix(double theta);  // columns |0̃⟩, |1̃⟩

struct BitString {
  std::uint64_t bits = 0;
  int n = 0;
  int weight() const;
};

enum class QubitThresholdForm {
  Printed,  // ⌈nq + sign(q−p)·√(q(1−q)/n)·Φ⁻¹(ε)⌉
  Derived   // ⌈nq + sign(q−p)·√(n q(1−q))·Φ⁻¹(ε)⌉, the count form of the classical threshold
};
// Integer count threshold in [0, n+1].
int lrt_threshold_qubit(const QubitPair& pair, int n, double epsilon,
                        QubitThresholdForm form = QubitThresholdForm::Printed);

// Binary Krawtchouk polynomial: coefficient of x^k in (1+x)^{n−X}(1−x)^X.
std::int64_t krawtchouk(int k, int x, int n);

// Threshold on n(E) as a function of the ρ-label weight n(Ẽ).
using WeightThreshold = std::function<int(int)>;

// ⟨ξ(Ẽ₁)|ξ(Ẽ₂)⟩ at θ = π/4: 2⁻ⁿ Σ_{m ≥ n_*} K_m(|Ẽ₁ ⊕ Ẽ₂|; n), with
// n_* = max(n_*(Ẽ₁), n_*(Ẽ₂)).
double gram_entry(int n, const WeightThreshold& nstar, const BitString& e1, const BitString& e2);

// Same overlap by explicit expansion over all 2ⁿ strings (reference).
double gram_entry_direct(int n, const WeightThreshold& nstar, const BitString& e1,
                         const BitString& e2);

// Coefficients x_{ij}^t with G = Σ x_{ij}^t M_{ij}^t, indexed [i][j][t].
using TerwilligerTable = std::vector<std::vector<std::vector<double>>>;
TerwilligerTable terwilliger_coefficients(int n, const WeightThreshold& nstar,
                                          par::Exec exec = par::Exec::Parallel);
RMat gram_from_terwilliger(int n, const TerwilligerTable& x);

// Statevector run of the unary-register circuit: n pairs prepared in V|00⟩, an
// (n+1)-qubit register |1⟩|0…0⟩ advanced cyclically once per control qubit in |1⟩;
// returns the weight of configurations whose first n_* register qubits are |0⟩.
// n ≤ 7 (3n+1 qubits).
double simulate_lrt_circuit(const Mat& v, int n, int nstar);
// Tr ρ_V^{⊗n} P_{n(E) ≥ n_*} computed directly.
double lrt_circuit_reference(const Mat& v, int n, int nstar);

struct ComparisonRow {
  int n = 0;
  double beta_opt = 0, beta_lrt = 0;
  double alpha_opt = 0, alpha_lrt = 0;
  double dim_opt = 0, dim_lrt = 0;
};
std::vector<ComparisonRow> comparison_experiment(double theta, double p, double epsilon,
                                                 int n_max, const ProjectorOptions& opt = {});

}  // namespace qht
