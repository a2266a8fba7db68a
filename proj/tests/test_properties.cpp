// Randomized property checks.  Each generator draws from a fixed-seed stream, so a
// failure reproduces exactly; the case index is reported through doctest's CAPTURE.
#include "qht/divergences.hpp"
#include "qht/oneshot.hpp"
#include "qht/perturbative.hpp"
#include "qht/random.hpp"

#include <doctest.h>

#include <cmath>

using namespace qht;

namespace {

// Full-rank or rank-deficient state with uniformly random dimension in [lo, hi].
struct StateGen {
  Rng rng;
  int lo, hi;
  StateGen(std::uint64_t seed, int lo_, int hi_) : rng(seed), lo(lo_), hi(hi_) {}
  int dim() { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  DensityMatrix full(int d) { return random_density(d, rng); }
  DensityMatrix deficient(int d) {
    const int r = std::uniform_int_distribution<int>(1, d - 1)(rng);
    const Mat g = ginibre(d, r, rng);
    return DensityMatrix::normalized(g * g.adjoint());
  }
  // Random two-outcome measurement: A = U diag(u) U†, u ∈ [0, 1].
  Mat test(int d) {
    std::uniform_real_distribution<double> u(0, 1);
    RVec w(d);
    for (int i = 0; i < d; ++i) w[i] = u(rng);
    const Mat q = random_unitary(d, rng);
    return q * w.cast<cplx>().asDiagonal() * q.adjoint();
  }
};

double binary_relent(double p, double q) {
  auto term = [](double a, double b) { return a > 0 ? a * std::log(a / b) : 0.0; };
  return term(p, q) + term(1 - p, 1 - q);
}

}  // namespace

TEST_CASE("divergences are non-negative and bounded") {
  StateGen g(101, 2, 6);
  for (int i = 0; i < 200; ++i) {
    CAPTURE(i);
    const int d = g.dim();
    const auto rho = g.full(d), sigma = g.full(d);
    CHECK(relative_entropy(rho, sigma) >= -1e-12);
    CHECK(relative_entropy_variance(rho, sigma) >= -1e-12);
    const double t = trace_distance(rho, sigma), f = fidelity(rho, sigma);
    CHECK(t >= -1e-12);
    CHECK(t <= 1 + 1e-12);
    CHECK(f >= -1e-12);
    CHECK(f <= 1 + 1e-12);
  }
}

TEST_CASE("Chernoff exponent sits below both relative entropies and above the trace bound") {
  StateGen g(102, 2, 5);
  for (int i = 0; i < 60; ++i) {
    CAPTURE(i);
    const int d = g.dim();
    const auto rho = g.full(d), sigma = g.full(d);
    const auto c = chernoff_information(rho, sigma);
    CHECK(c.neg_log_Q >= -1e-12);
    CHECK(c.neg_log_Q <= relative_entropy(rho, sigma) + 1e-9);
    CHECK(c.neg_log_Q <= relative_entropy(sigma, rho) + 1e-9);
    // ½(1 − T) ≤ ½ Q
    CHECK(1 - trace_distance(rho, sigma) <= c.Q + 1e-9);
    for (double s : {0.2, 0.5, 0.8}) CHECK(chernoff_Qs(rho, sigma, s) >= c.Q - 1e-9);
  }
}

TEST_CASE("data processing under partial trace") {
  StateGen g(103, 2, 3);
  for (int i = 0; i < 60; ++i) {
    CAPTURE(i);
    const int da = g.dim(), db = g.dim();
    const auto rho = g.full(da * db), sigma = g.full(da * db);
    const auto ra = partial_trace(rho, {da, db}, {0}), sa = partial_trace(sigma, {da, db}, {0});
    CHECK(relative_entropy(ra, sa) <= relative_entropy(rho, sigma) + 1e-10);
    CHECK(trace_distance(ra, sa) <= trace_distance(rho, sigma) + 1e-10);
    for (double s : {0.3, 0.5, 0.7})
      CHECK(chernoff_Qs(ra, sa, s) >= chernoff_Qs(rho, sigma, s) - 1e-10);
    CHECK(petz_renyi(ra, sa, 0.5) <= petz_renyi(rho, sigma, 0.5) + 1e-10);
    CHECK(sandwiched_renyi(ra, sa, 2.0) <= sandwiched_renyi(rho, sigma, 2.0) + 1e-10);
  }
}

TEST_CASE("pinching in the eigenbasis of sigma cannot increase distinguishability") {
  StateGen g(104, 2, 6);
  for (int i = 0; i < 100; ++i) {
    CAPTURE(i);
    const int d = g.dim();
    const auto rho = g.full(d), sigma = g.full(d);
    const auto p = pinch_diagonal(rho, sigma.spectral());
    CHECK(relative_entropy(p, sigma) <= relative_entropy(rho, sigma) + 1e-10);
    CHECK(trace_distance(p, sigma) <= trace_distance(rho, sigma) + 1e-10);
    CHECK(fidelity(p, sigma) >= fidelity(rho, sigma) - 1e-10);
  }
}

TEST_CASE("error trade-off of arbitrary measurements") {
  StateGen g(105, 2, 5);
  for (int i = 0; i < 200; ++i) {
    CAPTURE(i);
    const int d = g.dim();
    const auto rho = g.full(d), sigma = i % 3 ? g.full(d) : g.deficient(d);
    const Mat a = g.test(d);
    const auto e = test_errors(rho, sigma, a);
    CHECK(e.alpha >= -1e-12);
    CHECK(e.beta >= -1e-12);
    // the two-outcome classical divergence is bounded by the quantum one
    const double s = relative_entropy(rho, sigma);
    if (std::isfinite(s)) CHECK(binary_relent(1 - e.alpha, e.beta) <= s + 1e-9);
    // and no test beats the Neyman–Pearson optimum at its own type-I error
    if (e.alpha > 1e-3 && e.alpha < 1 - 1e-3)
      CHECK(neyman_pearson(rho, sigma, e.alpha).beta_star <= e.beta + 1e-9);
    // symmetric error is bounded below by the Helstrom value
    CHECK(0.5 * (e.alpha + e.beta) >= 0.5 * (1 - trace_distance(rho, sigma)) - 1e-10);
  }
}

TEST_CASE("perturbative chain: Fisher <= S2 <= V2/2") {
  Rng rng(106);
  for (int i = 0; i < 200; ++i) {
    CAPTURE(i);
    const int d = 2 + i % 6;
    const auto f = random_family(d, rng, i % 4 == 0);
    const auto r = perturbative_report(f);
    CHECK(r.fisher >= -1e-12);
    CHECK(r.fisher <= r.s2 + 1e-10 * (1 + r.s2));
    CHECK(r.v2 >= 2 * r.s2 - 1e-10 * (1 + r.v2));
  }
}

TEST_CASE("B(x) is symmetric under inversion and at least 2") {
  Rng rng(107);
  std::uniform_real_distribution<double> u(-8, 8);
  for (int i = 0; i < 1000; ++i) {
    const double x = std::exp(u(rng));
    CHECK(b_function(x) >= 2 - 1e-12);
    CHECK(b_function(x) == doctest::Approx(b_function(1 / x)).epsilon(1e-10));
  }
}
