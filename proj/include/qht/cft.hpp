#pragma once

namespace qht {

// Thermal states of a 2d CFT restricted to an interval of length ℓ; ρ at β₁, σ at β₂.
struct CftThermalPair {
  double c = 1;
  double ell = 1;
  double beta1 = 1;
  double beta2 = 1;
};

double cft_relative_entropy(const CftThermalPair& pair);

enum class CftLeadingForm {
  Printed,  // (1 − β₁/β₂)²
  Derived   // (1 − β₁²/β₂²)², the x⁴ term of cft_relative_entropy
};

struct CftSmallInterval {
  double S_leading = 0;  // cπ⁴/540 · f(β₁/β₂) (ℓ/β₁)⁴
  double V_leading = 0;  // cπ⁴/162 · f(β₁/β₂) (ℓ/β₁)⁴
  double ratio = 0;      // V/S at leading order
  bool satisfies_lower_bound = false;
};
CftSmallInterval cft_small_interval(const CftThermalPair& pair,
                                    CftLeadingForm form = CftLeadingForm::Derived);

double cft_entanglement_entropy(double c, double ell, double beta, double eps_uv, double g_a,
                                double g_b);

}  // namespace qht
