#include "qht/fermion.hpp"

#include "qht/core.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace qht {

namespace {

using RSolver = Eigen::SelfAdjointEigenSolver<RMat>;

void require_symmetric(const RMat& m, const char* what) {
  if (m.rows() != m.cols()) throw InvalidArgument(std::string(what) + " must be square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw InvalidArgument(std::string(what) + " must be symmetric");
}

RSolver correlation_spectrum(const RMat& c) {
  require_symmetric(c, "correlation matrix");
  RSolver es(0.5 * (c + c.transpose()));
  const RVec& ev = es.eigenvalues();
  if (ev.size() && (ev[0] <= 0.0 || ev[ev.size() - 1] >= 1.0))
    throw InvalidArgument("correlation matrix eigenvalues must lie strictly inside (0,1)");
  return es;
}

RMat spectral_apply(const RSolver& es, double (*f)(double)) {
  const RVec d = es.eigenvalues().unaryExpr(f);
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

double log_odds(double c) { return std::log((1 - c) / c); }
double fermi(double a) { return 1.0 / (1.0 + std::exp(a)); }

void fix_row_signs(RMat& rows) {
  for (Eigen::Index k = 0; k < rows.rows(); ++k)
    for (Eigen::Index j = 0; j < rows.cols(); ++j)
      if (std::abs(rows(k, j)) > 1e-12) {
        if (rows(k, j) < 0) rows.row(k) *= -1.0;
        break;
      }
}

RMat quasi_particle(const std::vector<RMat>& c, const RMat& v, const RMat& u, int k) {
  const Eigen::Index dim = c[0].rows();
  RMat b = RMat::Zero(dim, dim);
  for (std::size_t j = 0; j < c.size(); ++j) {
    const double x = 0.5 * (v(k, j) + u(k, j)), y = 0.5 * (v(k, j) - u(k, j));
    if (x != 0) b += x * c[j];
    if (y != 0) b += y * c[j].transpose();
  }
  return b;
}

RVec quasi_vacuum(const std::vector<RMat>& b) {
  RMat n = RMat::Zero(b[0].rows(), b[0].cols());
  for (const auto& op : b) n += op.transpose() * op;
  RSolver es(n);
  if (es.eigenvalues()[0] > 1e-9) throw Error("quasi-particle vacuum not found");
  return es.eigenvectors().col(0);
}

}  // namespace

RMat xy_correlation(double beta, const std::vector<int>& sites) {
  if (!(beta >= 0)) throw InvalidArgument("xy_correlation: beta must be non-negative");
  const auto n = static_cast<Eigen::Index>(sites.size());
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < i; ++j)
      if (sites[i] == sites[j]) throw InvalidArgument("xy_correlation: sites must be distinct");
  std::map<int, double> cache;
  auto entry = [&](int r) {
    r = std::abs(r);
    auto it = cache.find(r);
    if (it != cache.end()) return it->second;
    const double v = adaptive_quadrature(
                         [&](double q) { return std::cos(q * r) / (std::exp(beta * std::cos(q)) + 1.0); },
                         0.0, M_PI, 1e-12) /
                     M_PI;
    cache.emplace(r, v);
    return v;
  };
  RMat c(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) c(i, j) = entry(sites[i] - sites[j]);
  return c;
}

RMat modular_matrix_from_C(const RMat& c) { return spectral_apply(correlation_spectrum(c), log_odds); }

RMat correlation_from_modular(const RMat& a) {
  require_symmetric(a, "modular matrix");
  return spectral_apply(RSolver(0.5 * (a + a.transpose())), fermi);
}

double partition_log(const RMat& c) {
  const RSolver es = correlation_spectrum(c);
  return -(1.0 - es.eigenvalues().array()).log().sum();
}

std::vector<RMat> fock_annihilators(int ell) {
  if (ell < 1 || ell > 10) throw InvalidArgument("fock_annihilators: 1 <= ell <= 10");
  const Eigen::Index dim = Eigen::Index{1} << ell;
  std::vector<RMat> c(ell, RMat::Zero(dim, dim));
  for (int i = 0; i < ell; ++i) {
    const int bit = ell - 1 - i;
    for (Eigen::Index s = 0; s < dim; ++s) {
      if (!(s >> bit & 1)) continue;
      const int before = __builtin_popcountll(static_cast<unsigned long long>(s) >> (bit + 1));
      c[i](s & ~(Eigen::Index{1} << bit), s) = before % 2 ? -1.0 : 1.0;
    }
  }
  return c;
}

RMat fock_quadratic(const RMat& a, const RMat& b) {
  require_symmetric(a, "A");
  const int ell = static_cast<int>(a.rows());
  const auto c = fock_annihilators(ell);
  const Eigen::Index dim = c[0].rows();
  RMat k = RMat::Zero(dim, dim);
  for (int i = 0; i < ell; ++i)
    for (int j = 0; j < ell; ++j) {
      if (a(i, j) != 0) k += a(i, j) * c[i].transpose() * c[j];
      if (b.size() && b(i, j) != 0)
        k += 0.5 * b(i, j) * (c[i].transpose() * c[j].transpose() - c[i] * c[j]);
    }
  return k;
}

DensityMatrix dense_rdm(const RMat& a) {
  if (a.rows() > 6) throw BudgetExceeded("dense_rdm: ell <= 6");
  RSolver es(fock_quadratic(a, RMat()));
  const double e0 = es.eigenvalues().minCoeff();
  const RVec w = (-(es.eigenvalues().array() - e0)).exp();
  const RMat m = es.eigenvectors() * (w / w.sum()).asDiagonal() * es.eigenvectors().transpose();
  return DensityMatrix(m.cast<cplx>());
}

RMat dense_correlation(const DensityMatrix& rho) {
  const int ell = static_cast<int>(std::lround(std::log2(rho.dim())));
  const auto c = fock_annihilators(ell);
  RMat out(ell, ell);
  for (int i = 0; i < ell; ++i)
    for (int j = 0; j < ell; ++j)
      out(i, j) = (rho.matrix() * (c[i].transpose() * c[j]).cast<cplx>()).trace().real();
  return out;
}

double fermion_relative_entropy(const RMat& c, const RMat& ct) {
  const RSolver s = correlation_spectrum(c), st = correlation_spectrum(ct);
  const RMat d = spectral_apply(s, log_odds) - spectral_apply(st, log_odds);
  return (d * ct).trace() + (1.0 - st.eigenvalues().array()).log().sum() -
         (1.0 - s.eigenvalues().array()).log().sum();
}

double fermion_variance(const RMat& c, const RMat& ct) {
  const RSolver s = correlation_spectrum(c), st = correlation_spectrum(ct);
  const RMat d = spectral_apply(s, log_odds) - spectral_apply(st, log_odds);
  const RMat one = RMat::Identity(c.rows(), c.cols());
  return (d * (one - ct) * d * ct).trace();
}

double fermion_relative_entropy_commuting(const RVec& e, const RVec& et) {
  if (e.size() != et.size()) throw InvalidArgument("mode lists differ in length");
  double s = 0;
  for (Eigen::Index k = 0; k < e.size(); ++k)
    s += (e[k] - et[k]) / (1 + std::exp(et[k])) +
         std::log1p(std::exp(-e[k])) - std::log1p(std::exp(-et[k]));
  return s;
}

double fermion_variance_commuting(const RVec& e, const RVec& et) {
  if (e.size() != et.size()) throw InvalidArgument("mode lists differ in length");
  double v = 0;
  for (Eigen::Index k = 0; k < e.size(); ++k) {
    const double ch = std::cosh(et[k] / 2);
    v += 0.25 * (et[k] - e[k]) * (et[k] - e[k]) / (ch * ch);
  }
  return v;
}

BogoliubovPair bogoliubov_diagonalize(const RMat& a) {
  require_symmetric(a, "A");
  RSolver es(0.5 * (a + a.transpose()));
  BogoliubovPair p;
  p.energies = es.eigenvalues();
  p.v = es.eigenvectors().transpose();
  fix_row_signs(p.v);
  p.u = p.v;
  return p;
}

BogoliubovPair bogoliubov_diagonalize(const RMat& a, const RMat& b) {
  require_symmetric(a, "A");
  if (b.rows() != a.rows() || b.cols() != a.cols()) throw InvalidArgument("B has the wrong shape");
  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  if ((b + b.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw InvalidArgument("B must be antisymmetric");
  if (b.cwiseAbs().maxCoeff() == 0.0) return bogoliubov_diagonalize(a);
  Eigen::JacobiSVD<RMat> svd(a + b, Eigen::ComputeFullU | Eigen::ComputeFullV);
  BogoliubovPair p;
  p.energies = svd.singularValues().reverse();
  p.v = svd.matrixV().rowwise().reverse().transpose();
  p.u = svd.matrixU().rowwise().reverse().transpose();
  for (Eigen::Index k = 0; k < p.v.rows(); ++k)
    for (Eigen::Index j = 0; j < p.v.cols(); ++j)
      if (std::abs(p.v(k, j)) > 1e-12) {
        if (p.v(k, j) < 0) {
          p.v.row(k) *= -1.0;
          p.u.row(k) *= -1.0;
        }
        break;
      }
  return p;
}

double free_overlap(const RMat& v, const RMat& vt, const std::vector<int>& i,
                    const std::vector<int>& j) {
  if (i.size() != j.size()) return 0.0;
  if (i.empty()) return 1.0;
  const RMat r = v * vt.transpose();
  for (int x : i)
    if (x < 0 || x >= r.rows()) throw InvalidArgument("free_overlap: index out of range");
  for (int x : j)
    if (x < 0 || x >= r.cols()) throw InvalidArgument("free_overlap: index out of range");
  const auto ii = std::vector<Eigen::Index>(i.begin(), i.end());
  const auto jj = std::vector<Eigen::Index>(j.begin(), j.end());
  return RMat(r(ii, jj)).determinant();
}

RMat bogoliubov_matrix(const RMat& v, const RMat& u) {
  const Eigen::Index l = v.rows();
  RMat w(2 * l, 2 * l);
  w.topLeftCorner(l, l) = 0.5 * (v + u);
  w.topRightCorner(l, l) = 0.5 * (v - u);
  w.bottomLeftCorner(l, l) = 0.5 * (v - u);
  w.bottomRightCorner(l, l) = 0.5 * (v + u);
  return w;
}

RMat wick_transformation(const RMat& v, const RMat& u, const RMat& vt, const RMat& ut) {
  return bogoliubov_matrix(vt, ut) * bogoliubov_matrix(v, u).transpose();
}

double wick_overlap(const RMat& t, const std::vector<int>& creation,
                    const std::vector<int>& annihilation) {
  if (t.rows() != t.cols() || t.rows() % 2) throw InvalidArgument("T must be 2l x 2l");
  const Eigen::Index l = t.rows() / 2;
  const RMat t11 = t.topLeftCorner(l, l), t12 = t.topRightCorner(l, l);
  const double scale = std::max(1.0, t.cwiseAbs().maxCoeff());
  if ((t.bottomRightCorner(l, l) - t11).cwiseAbs().maxCoeff() > 1e-10 * scale ||
      (t.bottomLeftCorner(l, l) - t12).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw InvalidArgument("T must have the block form [[T11, T12], [T12, T11]]");
  for (int x : creation)
    if (x < 0 || x >= l) throw InvalidArgument("wick_overlap: index out of range");
  for (int x : annihilation)
    if (x < 0 || x >= l) throw InvalidArgument("wick_overlap: index out of range");
  if ((creation.size() + annihilation.size()) % 2) return 0.0;
  const double det = t11.determinant();
  if (std::abs(det) < 1e-12) throw Error("wick_overlap: the two vacua are orthogonal");

  const RMat inv = t11.inverse();
  const RMat zz = inv * t12;  // ⟨b_a b_b⟩
  const RMat yy = t12 * inv;  // ⟨b̃†_j b̃†_k⟩
  struct Op {
    bool ket;
    int idx;
  };
  std::vector<Op> ops;
  for (auto it = annihilation.rbegin(); it != annihilation.rend(); ++it) ops.push_back({false, *it});
  for (int j : creation) ops.push_back({true, j});
  auto contract = [&](const Op& x, const Op& y) {
    if (!x.ket && !y.ket) return zz(x.idx, y.idx);
    if (!x.ket && y.ket) return inv(x.idx, y.idx);
    if (x.ket && y.ket) return yy(x.idx, y.idx);
    return 0.0;
  };

  const int m = static_cast<int>(ops.size());
  std::unordered_map<std::uint32_t, double> memo;
  std::function<double(std::uint32_t)> pf = [&](std::uint32_t mask) -> double {
    if (mask == 0) return 1.0;
    if (auto it = memo.find(mask); it != memo.end()) return it->second;
    const int first = __builtin_ctz(mask);
    double s = 0;
    int between = 0;
    for (int k = first + 1; k < m; ++k) {
      if (!(mask >> k & 1)) continue;
      const double c = contract(ops[first], ops[k]);
      if (c != 0.0) s += (between % 2 ? -1.0 : 1.0) * c * pf(mask & ~(1u << first) & ~(1u << k));
      ++between;
    }
    memo.emplace(mask, s);
    return s;
  };
  return std::sqrt(std::abs(det)) * pf(m ? (m == 32 ? ~0u : (1u << m) - 1) : 0u);
}

double dense_bogoliubov_overlap(const RMat& v, const RMat& u, const RMat& vt, const RMat& ut,
                                const std::vector<int>& creation,
                                const std::vector<int>& annihilation) {
  const int ell = static_cast<int>(v.rows());
  if (ell > 6) throw BudgetExceeded("dense_bogoliubov_overlap: ell <= 6");
  const auto c = fock_annihilators(ell);
  std::vector<RMat> b, bt;
  for (int k = 0; k < ell; ++k) {
    b.push_back(quasi_particle(c, v, u, k));
    bt.push_back(quasi_particle(c, vt, ut, k));
  }
  const RVec vac = quasi_vacuum(b);
  RVec vact = quasi_vacuum(bt);
  const double ov = vac.dot(vact);
  if (std::abs(ov) < 1e-12) throw Error("dense_bogoliubov_overlap: the two vacua are orthogonal");
  if (ov < 0) vact = -vact;
  RVec bra = vac;
  for (auto it = annihilation.rbegin(); it != annihilation.rend(); ++it) bra = b[*it].transpose() * bra;
  RVec ket = vact;
  for (auto it = creation.rbegin(); it != creation.rend(); ++it) ket = bt[*it].transpose() * ket;
  return bra.dot(ket);
}

TwoFermionSetup two_fermion_optimal_setup(const RMat& c, const RMat& ct) {
  if (c.rows() != 2 || ct.rows() != 2) throw InvalidArgument("two_fermion_optimal_setup: ell must be 2");
  const RSolver s = correlation_spectrum(c), st = correlation_spectrum(ct);
  TwoFermionSetup out;
  out.rotation = RMat::Identity(2, 2);
  auto degenerate = [](const RVec& e) { return std::abs(e[1] - e[0]) < 1e-10; };
  if (degenerate(s.eigenvalues()) || degenerate(st.eigenvalues())) return out;
  // rows ordered by ascending mode energy log((1−c)/c), i.e. descending c
  const RMat v = s.eigenvectors().rowwise().reverse().transpose();
  RMat vt = st.eigenvectors().rowwise().reverse().transpose();
  if (std::abs(v.row(0).dot(vt.row(1))) > std::abs(v.row(0).dot(vt.row(0)))) vt.row(0).swap(vt.row(1));
  for (int k = 0; k < 2; ++k)
    if (v.row(k).dot(vt.row(k)) < 0) vt.row(k) *= -1.0;
  out.rotation = v * vt.transpose();
  out.angle = std::atan2(out.rotation(1, 0), out.rotation(0, 0));
  out.commuting = std::abs(out.angle) < 1e-10;
  return out;
}

int two_fermion_lrt_threshold(double e0, double et0, double delta, double deltat, int n,
                              int n_tilde, double threshold) {
  if (!(delta > 0)) throw InvalidArgument("two_fermion_lrt_threshold: Delta must be positive");
  const double x = (n_tilde * deltat + (et0 - e0) * n + n * threshold) / delta;
  return static_cast<int>(std::ceil(x - 1e-11 * std::max(1.0, std::abs(x))));
}

}  // namespace qht
