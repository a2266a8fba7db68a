#include "qht/cft.hpp"

#include "qht/core.hpp"

#include <cmath>

namespace qht {

namespace {

void validate(const CftThermalPair& p) {
  if (!(p.c > 0 && p.ell > 0 && p.beta1 > 0 && p.beta2 > 0))
    throw InvalidArgument("CFT parameters must be positive");
}

// x coth x, stable near 0
double x_coth_x(double x) { return std::abs(x) < 1e-6 ? 1.0 + x * x / 3.0 : x / std::tanh(x); }

// log(sinh x / x), stable for small and large x
double log_sinhc(double x) {
  if (x < 1e-4) return x * x / 6.0;
  if (x > 20) return x - std::log(2 * x) + std::log1p(-std::exp(-2 * x));
  return std::log(std::sinh(x) / x);
}

}  // namespace

double cft_relative_entropy(const CftThermalPair& p) {
  validate(p);
  const double x1 = M_PI * p.ell / p.beta1, x2 = M_PI * p.ell / p.beta2;
  const double r = p.beta1 / p.beta2;
  // β₁ sinh x₁ / (β₂ sinh x₂) = (sinh x₁/x₁)/(sinh x₂/x₂)
  return p.c / 6.0 * (1 - r * r) * (1 - x_coth_x(x1)) +
         p.c / 3.0 * (log_sinhc(x1) - log_sinhc(x2));
}

CftSmallInterval cft_small_interval(const CftThermalPair& p, CftLeadingForm form) {
  validate(p);
  const double pi4 = std::pow(M_PI, 4);
  const double r = p.beta1 / p.beta2;
  const double f = form == CftLeadingForm::Printed ? 1 - r : 1 - r * r;
  const double k = f * f * std::pow(p.ell / p.beta1, 4);
  CftSmallInterval out;
  out.S_leading = p.c * pi4 / 540.0 * k;
  out.V_leading = p.c * pi4 / 162.0 * k;
  out.ratio = 10.0 / 3.0;
  out.satisfies_lower_bound = out.ratio >= 2.0;
  return out;
}

double cft_entanglement_entropy(double c, double ell, double beta, double eps_uv, double g_a,
                                double g_b) {
  if (!(c > 0 && ell > 0 && beta > 0 && eps_uv > 0))
    throw InvalidArgument("CFT parameters must be positive");
  const double x = M_PI * ell / beta;
  // (β/πε) sinh x = (ℓ/ε) · sinh x / x
  return c / 3.0 * (std::log(ell / eps_uv) + log_sinhc(x)) + g_a + g_b;
}

}  // namespace qht
