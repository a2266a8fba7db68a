#include "qht/multicopy.hpp"

#include "qht/core.hpp"
#include "qht/divergences.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qht {

namespace {

constexpr double kTieTol = 1e-11;

double tie_tol(double bound) { return kTieTol * std::max(1.0, std::abs(bound)); }

std::int64_t binom_i(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double binom_d(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

cplx cpow_int(cplx z, int k) {
  cplx r = 1.0;
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

// c0·e0 + c1·e1 with the convention 0·∞ = 0.
double energy_sum(double e0, double e1, int c0, int c1) {
  return (c0 ? c0 * e0 : 0.0) + (c1 ? c1 * e1 : 0.0);
}

double pow_count(double x, int k) { return k == 0 ? 1.0 : std::pow(x, k); }

// Reorders columns inside degenerate eigenvalue groups so that `other` is diagonal
// on each group (descending weight).
void refine_degenerate(Mat& basis, const RVec& values, const Mat& other) {
  const Eigen::Index d = values.size();
  Eigen::Index start = 0;
  while (start < d) {
    Eigen::Index end = start + 1;
    while (end < d && std::abs(values[end] - values[start]) <=
                          1e-10 * std::max(values[start], values[end]) + 1e-15)
      ++end;
    if (end - start > 1) {
      const Mat b = basis.middleCols(start, end - start);
      const Mat c = b.adjoint() * other * b;
      Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (c + c.adjoint()));
      Mat v = es.eigenvectors().rowwise().reverse();
      Mat nb = b * v;
      fix_column_phases(nb);
      basis.middleCols(start, end - start) = nb;
    }
    start = end;
  }
}

struct DigitDecoder {
  int d, n;
  void operator()(std::uint64_t idx, int* digits) const {
    for (int i = n - 1; i >= 0; --i) {
      digits[i] = static_cast<int>(idx % d);
      idx /= d;
    }
  }
};

RVec label_log_scores(const RVec& energies, const RVec& rho_diag) {
  RVec s(energies.size());
  for (Eigen::Index k = 0; k < s.size(); ++k)
    s[k] = rho_diag[k] > 0 ? energies[k] + std::log(rho_diag[k]) : -kInf;
  return s;
}

NCopyProjector label_projector(const TestingFrame& f, int n, const RVec& score, double bound,
                               bool strict, const ProjectorOptions& opt) {
  check_budget(f.dim, n, opt.budget_log2);
  LabelResult lr = evaluate_labels(score, f.rho_diag, f.sigma_eigs, n, bound, strict, opt.exec);
  NCopyProjector p;
  p.kind = NCopyProjector::Kind::Labels;
  p.n = n;
  p.dim = f.dim;
  p.accepted = std::move(lr.accepted);
  p.rank = lr.rank;
  return p;
}

// Matrices of ρ^{⊗n} and σ^{⊗n} on the weight basis of the spin block N.
struct BlockOps {
  Mat dw;        // Sym^N(overlap)
  RVec rho_w;    // ρ eigen-weights per ρ-weight w̃
  RVec sigma_w;  // σ weights per σ-weight w
};

BlockOps block_ops(const TestingFrame& f, int n, int N) {
  const int h = (n - N) / 2;
  BlockOps b;
  b.dw = symmetric_power(f.overlap, N);
  b.rho_w.resize(N + 1);
  b.sigma_w.resize(N + 1);
  for (int w = 0; w <= N; ++w) {
    b.rho_w[w] = pow_count(f.rho_eigs[0], N - w + h) * pow_count(f.rho_eigs[1], w + h);
    b.sigma_w[w] = pow_count(f.sigma_eigs[0], N - w + h) * pow_count(f.sigma_eigs[1], w + h);
  }
  return b;
}

std::vector<int> block_sizes(int n) {
  std::vector<int> ns;
  for (int N = n % 2; N <= n; N += 2) ns.push_back(N);
  return ns;
}

NCopyProjector spin_optimal(const TestingFrame& f, int n, double bound,
                            const ProjectorOptions& opt) {
  if (n > 60) throw BudgetExceeded("collective qubit decomposition supports n <= 60");
  const std::vector<int> ns = block_sizes(n);
  NCopyProjector p;
  p.kind = NCopyProjector::Kind::Spin;
  p.n = n;
  p.dim = 2;
  p.blocks.resize(ns.size());
  const double tol = tie_tol(bound);
  par::for_each_index(static_cast<std::int64_t>(ns.size()), opt.exec, [&](std::int64_t bi) {
    const int N = ns[bi];
    const int h = (n - N) / 2;
    const Mat dw = symmetric_power(f.overlap, N);
    Mat x(N + 1, 0);
    std::vector<Vec> cols;
    for (int wt = 0; wt <= N; ++wt) {
      const double et = energy_sum(f.rho_energies[0], f.rho_energies[1], n - wt - h, wt + h);
      if (!std::isfinite(et)) continue;
      Vec c = dw.col(wt);
      for (int w = 0; w <= N; ++w) {
        const double e = energy_sum(f.energies[0], f.energies[1], n - w - h, w + h);
        if (!(e - et >= bound - tol)) c[w] = 0.0;
      }
      cols.push_back(c);
    }
    x.resize(N + 1, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) x.col(k) = cols[k];
    SpinBlock blk;
    blk.N = N;
    blk.multiplicity = binom_i(n, h) - binom_i(n, h - 1);
    blk.basis = orthonormal_span(x, opt.rel_threshold);
    p.blocks[bi] = std::move(blk);
  });
  for (const auto& b : p.blocks) p.rank += b.multiplicity * b.basis.cols();
  return p;
}

NCopyProjector dense_optimal(const TestingFrame& f, int n, double bound,
                             const ProjectorOptions& opt) {
  check_budget(f.dim, n, opt.budget_log2);
  const std::uint64_t total = ipow(f.dim, n);
  if (static_cast<std::int64_t>(total) > opt.dense_cap) {
    std::ostringstream os;
    os << "dense optimal builder: product dimension " << total << " exceeds cap " << opt.dense_cap;
    throw BudgetExceeded(os.str());
  }
  const DigitDecoder dec{f.dim, n};
  std::vector<double> esum(total), etsum(total);
  std::vector<int> digits(n);
  for (std::uint64_t i = 0; i < total; ++i) {
    dec(i, digits.data());
    double a = 0, b = 0;
    for (int k = 0; k < n; ++k) {
      a += f.energies[digits[k]];
      b += f.rho_energies[digits[k]];
    }
    esum[i] = a;
    etsum[i] = b;
  }
  std::vector<std::uint64_t> live;
  for (std::uint64_t j = 0; j < total; ++j)
    if (std::isfinite(etsum[j])) live.push_back(j);
  const double tol = tie_tol(bound);
  Mat x = Mat::Zero(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(live.size()));
  par::for_each_index(static_cast<std::int64_t>(live.size()), opt.exec, [&](std::int64_t c) {
    std::vector<int> dj(n), di(n);
    dec(live[c], dj.data());
    for (std::uint64_t i = 0; i < total; ++i) {
      if (!(esum[i] - etsum[live[c]] >= bound - tol)) continue;
      dec(i, di.data());
      cplx amp = 1.0;
      for (int k = 0; k < n; ++k) amp *= f.overlap(di[k], dj[k]);
      x(static_cast<Eigen::Index>(i), c) = amp;
    }
  });
  NCopyProjector p;
  p.kind = NCopyProjector::Kind::Dense;
  p.n = n;
  p.dim = f.dim;
  p.basis = orthonormal_span(x, opt.rel_threshold);
  p.rank = p.basis.cols();
  return p;
}

// Applies R^{⊗n} (σ-product basis) to every column of q.
Mat apply_tensor_power(const Mat& r, int n, const Mat& q) {
  const int d = static_cast<int>(r.rows());
  Mat out = q;
  const std::int64_t total = out.rows();
  for (int pos = 0; pos < n; ++pos) {
    const std::int64_t stride = static_cast<std::int64_t>(ipow(d, n - 1 - pos));
    Mat next(out.rows(), out.cols());
    for (std::int64_t base = 0; base < total; ++base) {
      if ((base / stride) % d != 0) continue;
      for (int a = 0; a < d; ++a) {
        auto row = next.row(base + a * stride);
        row.setZero();
        for (int b = 0; b < d; ++b) row += r(a, b) * out.row(base + b * stride);
      }
    }
    out.swap(next);
  }
  return out;
}

RVec product_weights(const RVec& w, int n) {
  const int d = static_cast<int>(w.size());
  const std::uint64_t total = ipow(d, n);
  RVec out(static_cast<Eigen::Index>(total));
  std::vector<int> digits(n);
  const DigitDecoder dec{d, n};
  for (std::uint64_t i = 0; i < total; ++i) {
    dec(i, digits.data());
    double p = 1;
    for (int k = 0; k < n; ++k) p *= w[digits[k]];
    out[static_cast<Eigen::Index>(i)] = p;
  }
  return out;
}

// Orthonormal basis of the lowest-weight vectors of spin block N inside (C²)^{⊗n}
// (weight h = (n−N)/2, annihilated by the collective lowering operator).
Mat lowest_weight_vectors(int n, int N) {
  const int h = (n - N) / 2;
  const std::uint64_t total = 1ull << n;
  std::vector<std::uint64_t> src, dst;
  for (std::uint64_t i = 0; i < total; ++i) {
    const int w = __builtin_popcountll(i);
    if (w == h) src.push_back(i);
    if (w == h - 1) dst.push_back(i);
  }
  if (dst.empty()) {
    return Mat::Identity(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(total))(
        Eigen::all, std::vector<Eigen::Index>(src.begin(), src.end()));
  }
  RMat y = RMat::Zero(static_cast<Eigen::Index>(dst.size()), static_cast<Eigen::Index>(src.size()));
  for (std::size_t c = 0; c < src.size(); ++c)
    for (int q = 0; q < n; ++q)
      if (src[c] >> q & 1ull) {
        const auto it = std::lower_bound(dst.begin(), dst.end(), src[c] & ~(1ull << q));
        y(it - dst.begin(), static_cast<Eigen::Index>(c)) += 1.0;
      }
  Eigen::JacobiSVD<RMat> svd(y, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Eigen::Index r = 0;
  while (r < sv.size() && sv[r] > 1e-9) ++r;
  const RMat null = svd.matrixV().rightCols(y.cols() - r);
  Mat out = Mat::Zero(static_cast<Eigen::Index>(total), null.cols());
  for (std::size_t c = 0; c < src.size(); ++c) out.row(static_cast<Eigen::Index>(src[c])) = null.row(c).cast<cplx>();
  return out;
}

Mat raise_collective(const Mat& v, int n) {
  // X = Σ |1⟩⟨0| on each qubit; bit q of the index is qubit (n−1−q).
  Mat out = Mat::Zero(v.rows(), v.cols());
  for (Eigen::Index i = 0; i < v.rows(); ++i)
    for (int q = 0; q < n; ++q)
      if (!(static_cast<std::uint64_t>(i) >> q & 1ull)) out.row(i | (1ll << q)) += v.row(i);
  return out;
}

}  // namespace

std::string to_string(ThresholdMode m) { return m == ThresholdMode::Optimal ? "optimal" : "classical"; }

ThresholdMode threshold_mode_from_string(const std::string& s) {
  if (s == "optimal") return ThresholdMode::Optimal;
  if (s == "classical" || s == "lrt") return ThresholdMode::Classical;
  throw InvalidArgument("unknown threshold mode '" + s + "'");
}

double NCopyProjector::total_dim() const { return std::pow(static_cast<double>(dim), n); }

TestingFrame make_frame(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw InvalidArgument("states have different dimensions");
  TestingFrame f;
  f.dim = rho.dim();
  const int d = f.dim;
  f.sigma_basis = sigma.spectral().vectors(Eigen::all, Eigen::seq(d - 1, 0, Eigen::fix<-1>));
  f.sigma_eigs = sigma.eigenvalues().reverse();
  f.rho_basis = rho.spectral().vectors(Eigen::all, Eigen::seq(d - 1, 0, Eigen::fix<-1>));
  f.rho_eigs = rho.eigenvalues().reverse();
  refine_degenerate(f.sigma_basis, f.sigma_eigs, rho.matrix());
  refine_degenerate(f.rho_basis, f.rho_eigs, sigma.matrix());
  f.energies.resize(d);
  f.rho_energies.resize(d);
  for (int k = 0; k < d; ++k) {
    f.energies[k] = f.sigma_eigs[k] > 0 ? -std::log(f.sigma_eigs[k]) : kInf;
    f.rho_energies[k] = f.rho_eigs[k] > 0 ? -std::log(f.rho_eigs[k]) : kInf;
  }
  f.overlap = f.sigma_basis.adjoint() * f.rho_basis;
  f.rho_in_sigma = f.sigma_basis.adjoint() * rho.matrix() * f.sigma_basis;
  f.rho_in_sigma = 0.5 * (f.rho_in_sigma + f.rho_in_sigma.adjoint()).eval();
  f.rho_diag = f.rho_in_sigma.diagonal().real().cwiseMax(0.0);

  const Mat comm = rho.matrix() * sigma.matrix() - sigma.matrix() * rho.matrix();
  if (comm.norm() <= 1e-12) {
    std::vector<int> perm(d);
    std::vector<bool> used(d, false);
    bool ok = true;
    for (int k = 0; k < d && ok; ++k) {
      Eigen::Index j;
      f.overlap.row(k).cwiseAbs().maxCoeff(&j);
      if (used[j] || std::abs(f.overlap(k, j)) < 1 - 1e-8) ok = false;
      else {
        used[j] = true;
        perm[k] = static_cast<int>(j);
      }
    }
    if (ok) {
      f.commuting = true;
      for (int k = 0; k < d; ++k) f.rho_diag[k] = f.rho_eigs[perm[k]];
    }
  }
  return f;
}

AcceptanceThreshold acceptance_threshold(const DensityMatrix& rho, const DensityMatrix& sigma,
                                         int n, double epsilon, ThresholdMode mode) {
  AcceptanceThreshold t;
  t.epsilon = epsilon;
  t.n = n;
  t.mode = mode;
  if (mode == ThresholdMode::Optimal) {
    t.S = relative_entropy(rho, sigma);
    t.V = t.S < kInf ? relative_entropy_variance(rho, sigma) : kInf;
  } else {
    const DensityMatrix rd = pinch_diagonal(rho, Spectral{RVec(), make_frame(rho, sigma).sigma_basis});
    t.S = relative_entropy(rd, sigma);
    t.V = t.S < kInf ? relative_entropy_variance(rd, sigma) : kInf;
  }
  if (!std::isfinite(t.S) || !std::isfinite(t.V))
    throw InvalidArgument("acceptance threshold undefined: relative entropy or variance infinite");
  t.value = t.S + std::sqrt(std::max(t.V, 0.0) / n) * normal_quantile(epsilon);
  return t;
}

LabelResult evaluate_labels(const RVec& score, const RVec& rho_weights, const RVec& sigma_weights,
                            int n, double bound, bool strict, par::Exec exec) {
  const int d = static_cast<int>(score.size());
  const std::uint64_t total = ipow(d, n);
  LabelResult r;
  r.accepted.assign(total, 0);
  const double tol = tie_tol(bound);
  const DigitDecoder dec{d, n};
  const auto sums = par::chunked_sum<3>(total, exec, [&](std::uint64_t i, std::array<double, 3>& acc) {
    int digits[64];
    dec(i, digits);
    double s = 0, pr = 1, ps = 1;
    for (int k = 0; k < n; ++k) {
      s += score[digits[k]];
      pr *= rho_weights[digits[k]];
      ps *= sigma_weights[digits[k]];
    }
    const bool acc_ok = strict ? (s > bound + tol) : (s >= bound - tol);
    if (acc_ok) {
      r.accepted[i] = 1;
      acc[0] += 1;
      acc[2] += ps;
    } else {
      acc[1] += pr;
    }
  });
  r.rank = static_cast<std::int64_t>(sums[0]);
  r.alpha = sums[1];
  r.beta = sums[2];
  return r;
}

Mat symmetric_power(const Mat& m, int N) {
  Mat d(N + 1, N + 1);
  const cplx m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
  for (int w = 0; w <= N; ++w)
    for (int wp = 0; wp <= N; ++wp) {
      cplx sum = 0;
      for (int j = std::max(0, w + wp - N); j <= std::min(w, wp); ++j)
        sum += binom_d(wp, j) * binom_d(N - wp, w - j) * cpow_int(m11, j) * cpow_int(m01, wp - j) *
               cpow_int(m10, w - j) * cpow_int(m00, N - wp - w + j);
      d(w, wp) = std::sqrt(binom_d(N, wp) / binom_d(N, w)) * sum;
    }
  return d;
}

NCopyProjector build_lrt_projector(const DensityMatrix& rho, const DensityMatrix& sigma, int n,
                                   const AcceptanceThreshold& threshold,
                                   const ProjectorOptions& opt) {
  const TestingFrame f = make_frame(rho, sigma);
  return label_projector(f, n, label_log_scores(f.energies, f.rho_diag), n * threshold.value,
                         false, opt);
}

NCopyProjector build_optimal_projector(const DensityMatrix& rho, const DensityMatrix& sigma,
                                       int n, const AcceptanceThreshold& threshold,
                                       const ProjectorOptions& opt) {
  const TestingFrame f = make_frame(rho, sigma);
  const double bound = n * threshold.value;
  if (f.commuting)
    return label_projector(f, n, label_log_scores(f.energies, f.rho_diag), bound, false, opt);
  if (f.dim == 2 && opt.collective) return spin_optimal(f, n, bound, opt);
  return dense_optimal(f, n, bound, opt);
}

NCopyProjector symmetric_projector(const DensityMatrix& rho, const DensityMatrix& sigma, int n,
                                   double kappa, const ProjectorOptions& opt) {
  if (!(kappa > 0 && kappa < 1)) throw InvalidArgument("symmetric_projector: kappa must lie in (0,1)");
  const TestingFrame f = make_frame(rho, sigma);
  const double bound = std::log((1 - kappa) / kappa);
  if (f.commuting) {
    RVec score(f.dim);
    for (int k = 0; k < f.dim; ++k) {
      if (f.rho_diag[k] <= 0) score[k] = -kInf;
      else if (f.sigma_eigs[k] <= 0) score[k] = kInf;
      else score[k] = std::log(f.rho_diag[k]) - std::log(f.sigma_eigs[k]);
    }
    return label_projector(f, n, score, bound, true, opt);
  }
  NCopyProjector p;
  p.n = n;
  p.dim = f.dim;
  // Eigenvalues count as positive above 1e-12 of the largest |eigenvalue| of L.
  using Solver = Eigen::SelfAdjointEigenSolver<Mat>;
  auto positive_part = [](const Solver& es, double scale) {
    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
      if (es.eigenvalues()[k] > 1e-12 * scale) keep.push_back(k);
    return Mat(es.eigenvectors()(Eigen::all, keep));
  };
  if (f.dim == 2 && opt.collective) {
    p.kind = NCopyProjector::Kind::Spin;
    std::vector<Solver> solvers;
    double scale = 0;
    for (int N : block_sizes(n)) {
      const BlockOps b = block_ops(f, n, N);
      const Mat rn = b.dw * b.rho_w.cast<cplx>().asDiagonal() * b.dw.adjoint();
      const Mat l = kappa * rn - (1 - kappa) * Mat(b.sigma_w.cast<cplx>().asDiagonal());
      solvers.emplace_back(0.5 * (l + l.adjoint()));
      scale = std::max(scale, solvers.back().eigenvalues().cwiseAbs().maxCoeff());
    }
    const std::vector<int> ns = block_sizes(n);
    for (std::size_t k = 0; k < ns.size(); ++k) {
      SpinBlock blk;
      blk.N = ns[k];
      blk.multiplicity = binom_i(n, (n - ns[k]) / 2) - binom_i(n, (n - ns[k]) / 2 - 1);
      blk.basis = positive_part(solvers[k], scale);
      p.rank += blk.multiplicity * blk.basis.cols();
      p.blocks.push_back(std::move(blk));
    }
    return p;
  }
  check_budget(f.dim, n, opt.budget_log2);
  const std::uint64_t total = ipow(f.dim, n);
  if (static_cast<std::int64_t>(total) > opt.symmetric_cap)
    throw BudgetExceeded("symmetric_projector: product dimension exceeds dense cap");
  Mat rn = f.rho_in_sigma;
  for (int k = 1; k < n; ++k) rn = kron(rn, f.rho_in_sigma);
  const RVec sn = product_weights(f.sigma_eigs, n);
  const Mat l = kappa * rn - (1 - kappa) * Mat(sn.cast<cplx>().asDiagonal());
  p.kind = NCopyProjector::Kind::Dense;
  const Solver es(0.5 * (l + l.adjoint()));
  p.basis = positive_part(es, es.eigenvalues().cwiseAbs().maxCoeff());
  p.rank = p.basis.cols();
  return p;
}

ErrorPair errors(const DensityMatrix& rho, const DensityMatrix& sigma, const NCopyProjector& p,
                 const ProjectorOptions& opt) {
  const TestingFrame f = make_frame(rho, sigma);
  if (f.dim != p.dim) throw InvalidArgument("projector built for a different dimension");
  ErrorPair e;
  switch (p.kind) {
    case NCopyProjector::Kind::Labels: {
      check_budget(f.dim, p.n, opt.budget_log2);
      const std::uint64_t total = ipow(f.dim, p.n);
      const DigitDecoder dec{f.dim, p.n};
      const auto s = par::chunked_sum<2>(total, opt.exec, [&](std::uint64_t i, std::array<double, 2>& acc) {
        int digits[64];
        dec(i, digits);
        double pr = 1, ps = 1;
        for (int k = 0; k < p.n; ++k) {
          pr *= f.rho_diag[digits[k]];
          ps *= f.sigma_eigs[digits[k]];
        }
        if (p.accepted[i]) acc[1] += ps;
        else acc[0] += pr;
      });
      e.alpha = s[0];
      e.beta = s[1];
      break;
    }
    case NCopyProjector::Kind::Dense: {
      const RVec sw = product_weights(f.sigma_eigs, p.n);
      e.beta = (sw.asDiagonal() * p.basis.cwiseAbs2()).sum();
      const Mat rq = apply_tensor_power(f.rho_in_sigma, p.n, p.basis);
      e.alpha = 1.0 - (p.basis.adjoint() * rq).trace().real();
      break;
    }
    case NCopyProjector::Kind::Spin: {
      for (const auto& blk : p.blocks) {
        const BlockOps b = block_ops(f, p.n, blk.N);
        const Mat rn = b.dw * b.rho_w.cast<cplx>().asDiagonal() * b.dw.adjoint();
        const double m = static_cast<double>(blk.multiplicity);
        const double acc = (blk.basis.adjoint() * rn * blk.basis).trace().real();
        e.alpha += m * (b.rho_w.sum() - acc);
        e.beta += m * (b.sigma_w.asDiagonal() * blk.basis.cwiseAbs2()).sum();
      }
      break;
    }
  }
  e.alpha = std::clamp(e.alpha, 0.0, 1.0);
  e.beta = std::clamp(e.beta, 0.0, 1.0);
  return e;
}

ErrorPair independent_baseline(const DensityMatrix& rho, const DensityMatrix& sigma, int n,
                               const Mat& b) {
  if (b.rows() != rho.dim()) throw InvalidArgument("B has the wrong dimension");
  const Spectral s = eig_hermitian(b);
  if (s.values.size() && (s.values[0] < -1e-12 || s.values[s.values.size() - 1] > n + 1e-12))
    throw InvalidArgument("independent_baseline: need 0 <= B/n <= 1");
  ErrorPair e;
  e.alpha = 1.0 - std::pow(1.0 - (rho.matrix() * b).trace().real() / n, n);
  e.beta = std::pow(1.0 - (sigma.matrix() * b).trace().real() / n, n);
  return e;
}

double min_acceptance_dimension(const NCopyProjector& p, double total_dim) {
  const double r = static_cast<double>(p.rank);
  return std::min(r, total_dim - r);
}

double min_acceptance_dimension(const NCopyProjector& p) {
  return min_acceptance_dimension(p, p.total_dim());
}

Mat materialize(const NCopyProjector& p, const DensityMatrix& rho, const DensityMatrix& sigma) {
  const std::uint64_t total = ipow(p.dim, p.n);
  if (total > 4096) throw BudgetExceeded("materialize: product dimension too large");
  const auto t = static_cast<Eigen::Index>(total);
  switch (p.kind) {
    case NCopyProjector::Kind::Labels: {
      Mat m = Mat::Zero(t, t);
      for (Eigen::Index i = 0; i < t; ++i) m(i, i) = p.accepted[i] ? 1.0 : 0.0;
      return m;
    }
    case NCopyProjector::Kind::Dense:
      return p.basis * p.basis.adjoint();
    case NCopyProjector::Kind::Spin: {
      (void)rho;
      (void)sigma;
      Mat m = Mat::Zero(t, t);
      for (const auto& blk : p.blocks) {
        const Mat low = lowest_weight_vectors(p.n, blk.N);
        // columns |N, w⟩ ⊗ u_m for w = 0..N
        std::vector<Mat> ladder{low};
        for (int w = 1; w <= blk.N; ++w) ladder.push_back(raise_collective(ladder.back(), p.n));
        for (auto& l : ladder)
          for (Eigen::Index c = 0; c < l.cols(); ++c) l.col(c).normalize();
        const Mat pb = blk.basis * blk.basis.adjoint();
        for (int w = 0; w <= blk.N; ++w)
          for (int wp = 0; wp <= blk.N; ++wp)
            if (std::abs(pb(w, wp)) > 0) m += pb(w, wp) * ladder[w] * ladder[wp].adjoint();
      }
      return m;
    }
  }
  return Mat();
}

std::vector<SteinRow> stein_exponent_table(const DensityMatrix& rho, const DensityMatrix& sigma,
                                           double epsilon, const std::vector<int>& n_list,
                                           ThresholdMode mode, const ProjectorOptions& opt) {
  std::vector<SteinRow> rows;
  for (int n : n_list) {
    const AcceptanceThreshold t = acceptance_threshold(rho, sigma, n, epsilon, mode);
    const NCopyProjector p = mode == ThresholdMode::Optimal
                                 ? build_optimal_projector(rho, sigma, n, t, opt)
                                 : build_lrt_projector(rho, sigma, n, t, opt);
    const ErrorPair e = errors(rho, sigma, p, opt);
    SteinRow r;
    r.n = n;
    r.mode = mode;
    r.epsilon = epsilon;
    r.threshold = t.value;
    r.alpha = e.alpha;
    r.beta = e.beta;
    r.neg_log_beta_over_n = e.beta > 0 ? -std::log(e.beta) / n : kInf;
    r.min_acc_dim = min_acceptance_dimension(p);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace qht
