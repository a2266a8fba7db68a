#include "qht/qubit_lab.hpp"

#include "qht/core.hpp"

#include <algorithm>
#include <cmath>

namespace qht {

namespace {

std::int64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

int BitString::weight() const { return __builtin_popcountll(bits); }

Mat rotation_matrix(double theta) {
  Mat r(2, 2);
  r << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
  return r;
}

QubitPair qubit_pair(double theta, double p) {
  if (!(p > 0 && p < 1)) throw InvalidArgument("qubit_pair: p must lie in (0,1)");
  QubitPair q;
  q.p = p;
  q.theta = theta;
  const double s = std::sin(theta), c = std::cos(theta);
  q.q = (1 - p) * s * s + p * c * c;
  return q;
}

QubitStates qubit_states(double theta, double p) {
  if (!(p > 0 && p < 1)) throw InvalidArgument("qubit_states: p must lie in (0,1)");
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 1 - p;
  d(1, 1) = p;
  const Mat r = rotation_matrix(theta);
  return {DensityMatrix(r * d * r.adjoint()), DensityMatrix(d)};
}

int lrt_threshold_qubit(const QubitPair& pair, int n, double epsilon, QubitThresholdForm form) {
  if (std::abs(pair.q - pair.p) == 0.0) throw InvalidArgument("lrt_threshold_qubit: p = q");
  if (n < 1) throw InvalidArgument("lrt_threshold_qubit: n must be positive");
  const double sign = pair.q > pair.p ? 1.0 : -1.0;
  const double var = pair.q * (1 - pair.q);
  const double width = form == QubitThresholdForm::Printed ? std::sqrt(var / n) : std::sqrt(n * var);
  const double x = n * pair.q + sign * width * normal_quantile(epsilon);
  return static_cast<int>(std::clamp(std::ceil(x), 0.0, n + 1.0));
}

std::int64_t krawtchouk(int k, int x, int n) {
  if (n < 0 || k < 0 || k > n || x < 0 || x > n)
    throw InvalidArgument("krawtchouk: indices out of range");
  std::int64_t s = 0;
  for (int m = 0; m <= std::min(k, x); ++m) s += (m % 2 ? -1 : 1) * binom(x, m) * binom(n - x, k - m);
  return s;
}

double gram_entry(int n, const WeightThreshold& nstar, const BitString& e1, const BitString& e2) {
  const int ns = std::max(nstar(e1.weight()), nstar(e2.weight()));
  const int x = __builtin_popcountll(e1.bits ^ e2.bits);
  std::int64_t s = 0;
  for (int m = std::max(ns, 0); m <= n; ++m) s += krawtchouk(m, x, n);
  return std::ldexp(static_cast<double>(s), -n);
}

double gram_entry_direct(int n, const WeightThreshold& nstar, const BitString& e1,
                         const BitString& e2) {
  // ⟨a|ã⟩ at θ = π/4: ⟨1|0̃⟩ = −1/√2, all others +1/√2.
  const Mat r = rotation_matrix(M_PI / 4);
  auto amplitude = [&](std::uint64_t e, const BitString& t) {
    double a = 1;
    for (int i = 0; i < n; ++i) a *= r((e >> i) & 1, (t.bits >> i) & 1).real();
    return a;
  };
  const int t1 = nstar(e1.weight()), t2 = nstar(e2.weight());
  double s = 0;
  for (std::uint64_t e = 0; e < (1ull << n); ++e) {
    const int w = __builtin_popcountll(e);
    if (w < t1 || w < t2) continue;
    s += amplitude(e, e1) * amplitude(e, e2);
  }
  return s;
}

TerwilligerTable terwilliger_coefficients(int n, const WeightThreshold& nstar, par::Exec exec) {
  TerwilligerTable x(n + 1, std::vector<std::vector<double>>(n + 1, std::vector<double>(n + 1, 0.0)));
  par::for_each_index((n + 1) * (n + 1), exec, [&](std::int64_t idx) {
    const int i = static_cast<int>(idx / (n + 1)), j = static_cast<int>(idx % (n + 1));
    const int ns = std::max({nstar(i), nstar(j), 0});
    for (int t = 0; t <= std::min(i, j); ++t) {
      if (i + j - t > n) continue;
      std::int64_t s = 0;
      for (int m = ns; m <= n; ++m) s += krawtchouk(m, i + j - 2 * t, n);
      x[i][j][t] = std::ldexp(static_cast<double>(s), -n);
    }
  });
  return x;
}

RMat gram_from_terwilliger(int n, const TerwilligerTable& x) {
  const std::uint64_t dim = 1ull << n;
  RMat g(dim, dim);
  for (std::uint64_t a = 0; a < dim; ++a)
    for (std::uint64_t b = 0; b < dim; ++b)
      g(a, b) = x[__builtin_popcountll(a)][__builtin_popcountll(b)][__builtin_popcountll(a & b)];
  return g;
}

double simulate_lrt_circuit(const Mat& v, int n, int nstar) {
  if (v.rows() != 4 || v.cols() != 4) throw InvalidArgument("simulate_lrt_circuit: V must be 4x4");
  if ((v.adjoint() * v - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() > 1e-10)
    throw InvalidArgument("simulate_lrt_circuit: V is not unitary");
  if (n < 1 || n > 7) throw BudgetExceeded("simulate_lrt_circuit: supports 1 <= n <= 7");
  const int nq = 3 * n + 1;
  const std::uint64_t dim = 1ull << nq;
  // qubit k ↔ bit (nq − 1 − k) of the index; pair i uses qubits 2i, 2i+1,
  // the register occupies qubits 2n … 3n.
  auto bit = [nq](int qubit) { return std::uint64_t{1} << (nq - 1 - qubit); };

  std::vector<cplx> psi(dim, 0.0);
  const Vec pair_state = v.col(0);
  const std::uint64_t reg_init = bit(2 * n);
  for (std::uint64_t c = 0; c < (1ull << (2 * n)); ++c) {
    cplx a = 1.0;
    for (int i = 0; i < n; ++i) a *= pair_state[(c >> (2 * (n - 1 - i))) & 3];
    psi[(c << (n + 1)) | reg_init] = a;
  }

  const std::uint64_t reg_mask = (1ull << (n + 1)) - 1;
  for (int i = 0; i < n; ++i) {
    const std::uint64_t ctl = bit(2 * i);
    std::vector<cplx> next(dim, 0.0);
    for (std::uint64_t idx = 0; idx < dim; ++idx) {
      if (psi[idx] == 0.0) continue;
      std::uint64_t out = idx;
      if (idx & ctl) {
        // register qubit k moves to k+1 (mod n+1): in index bits that is a right rotation.
        const std::uint64_t r = idx & reg_mask;
        const std::uint64_t rot = (r >> 1) | ((r & 1) << n);
        out = (idx & ~reg_mask) | rot;
      }
      next[out] += psi[idx];
    }
    psi.swap(next);
  }

  if (nstar <= 0) nstar = 0;
  if (nstar > n + 1) return 0.0;
  std::uint64_t prefix = 0;
  for (int k = 0; k < nstar; ++k) prefix |= bit(2 * n + k);
  double acc = 0;
  for (std::uint64_t idx = 0; idx < dim; ++idx)
    if (!(idx & prefix)) acc += std::norm(psi[idx]);
  return acc;
}

double lrt_circuit_reference(const Mat& v, int n, int nstar) {
  const Vec s = v.col(0);
  const double p1 = std::norm(s[2]) + std::norm(s[3]);  // ⟨1|ρ_V|1⟩
  double acc = 0;
  for (int w = std::max(nstar, 0); w <= n; ++w)
    acc += static_cast<double>(binom(n, w)) * std::pow(p1, w) * std::pow(1 - p1, n - w);
  return acc;
}

std::vector<ComparisonRow> comparison_experiment(double theta, double p, double epsilon,
                                                 int n_max, const ProjectorOptions& opt) {
  if (n_max < 1 || n_max > 14) throw InvalidArgument("comparison_experiment: 1 <= n_max <= 14");
  const QubitStates st = qubit_states(theta, p);
  std::vector<ComparisonRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    const auto t_opt = acceptance_threshold(st.rho, st.sigma, n, epsilon, ThresholdMode::Optimal);
    const auto t_lrt = acceptance_threshold(st.rho, st.sigma, n, epsilon, ThresholdMode::Classical);
    const NCopyProjector po = build_optimal_projector(st.rho, st.sigma, n, t_opt, opt);
    const NCopyProjector pl = build_lrt_projector(st.rho, st.sigma, n, t_lrt, opt);
    const ErrorPair eo = errors(st.rho, st.sigma, po, opt);
    const ErrorPair el = errors(st.rho, st.sigma, pl, opt);
    ComparisonRow r;
    r.n = n;
    r.beta_opt = eo.beta;
    r.beta_lrt = el.beta;
    r.alpha_opt = eo.alpha;
    r.alpha_lrt = el.alpha;
    r.dim_opt = min_acceptance_dimension(po);
    r.dim_lrt = min_acceptance_dimension(pl);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace qht
