#include "qht/states.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace qht {

DensityMatrix::DensityMatrix(const Mat& m, double tol) : m_(m) {
  require_hermitian(m, 1e-10);
  m_ = 0.5 * (m + m.adjoint());
  const double tr = m_.trace().real();
  if (std::abs(tr - 1.0) > tol) {
    std::ostringstream os;
    os << "density matrix trace " << tr << " differs from 1";
    throw InvalidArgument(os.str());
  }
  s_ = eig_hermitian(m_);
  if (s_.values.size() > 0 && s_.values[0] < -std::max(1e-12, tol)) {
    std::ostringstream os;
    os << "density matrix has negative eigenvalue " << s_.values[0];
    throw InvalidArgument(os.str());
  }
  double sum = 0;
  for (Eigen::Index i = 0; i < s_.values.size(); ++i) {
    if (s_.values[i] < kEigenFloor) s_.values[i] = 0.0;
    sum += s_.values[i];
  }
  s_.values /= sum;
}

DensityMatrix DensityMatrix::normalized(const Mat& m) {
  const double tr = (0.5 * (m + m.adjoint())).trace().real();
  if (!(tr > 0)) throw InvalidArgument("cannot normalize a matrix with non-positive trace");
  return DensityMatrix(m / tr);
}

DensityMatrix DensityMatrix::pure(const Vec& psi) {
  const Vec v = psi / psi.norm();
  return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  return DensityMatrix(Mat::Identity(dim, dim) / static_cast<double>(dim));
}

int DensityMatrix::rank() const {
  return static_cast<int>((s_.values.array() > 0.0).count());
}

std::uint64_t ipow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

void check_budget(int dim, int n, int budget_log2) {
  if (n < 1) throw InvalidArgument("number of copies must be positive");
  if (n * std::log2(static_cast<double>(dim)) > budget_log2 + 1e-9) {
    std::ostringstream os;
    os << "label budget exceeded: " << dim << "^" << n << " > 2^" << budget_log2;
    throw BudgetExceeded(os.str());
  }
}

DensityMatrix thermal_state(const Mat& h, double beta) {
  if (beta < 0) throw InvalidArgument("thermal_state: beta must be >= 0");
  const Spectral s = eig_hermitian(h);
  const double e0 = s.values.size() ? s.values[0] : 0.0;
  Mat rho = matrix_function(s, [&](double x) { return std::exp(-beta * (x - e0)); });
  return DensityMatrix::normalized(rho);
}

Mat partial_trace(const Mat& m, const std::vector<int>& dims, const std::vector<int>& keep) {
  std::int64_t total = 1;
  for (int d : dims) total *= d;
  if (total != m.rows() || m.rows() != m.cols())
    throw InvalidArgument("partial_trace: subsystem dimensions do not match matrix");
  const int k = static_cast<int>(dims.size());
  std::vector<bool> kept(k, false);
  for (int i : keep) {
    if (i < 0 || i >= k) throw InvalidArgument("partial_trace: keep index out of range");
    kept[i] = true;
  }
  std::int64_t dk = 1, dt = 1;
  for (int i = 0; i < k; ++i) (kept[i] ? dk : dt) *= dims[i];
  // Split a full index into (kept index, traced index).
  auto split = [&](std::int64_t idx, std::int64_t& a, std::int64_t& b) {
    std::vector<int> digit(k);
    for (int i = k - 1; i >= 0; --i) {
      digit[i] = static_cast<int>(idx % dims[i]);
      idx /= dims[i];
    }
    a = 0;
    b = 0;
    for (int i = 0; i < k; ++i) {
      if (kept[i]) a = a * dims[i] + digit[i];
      else b = b * dims[i] + digit[i];
    }
  };
  std::vector<std::int64_t> ka(total), tb(total);
  for (std::int64_t i = 0; i < total; ++i) split(i, ka[i], tb[i]);
  Mat out = Mat::Zero(dk, dk);
  for (std::int64_t i = 0; i < total; ++i)
    for (std::int64_t j = 0; j < total; ++j)
      if (tb[i] == tb[j]) out(ka[i], ka[j]) += m(i, j);
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& dims,
                            const std::vector<int>& keep) {
  return DensityMatrix(partial_trace(rho.matrix(), dims, keep));
}

DensityMatrix pinch_diagonal(const DensityMatrix& rho, const Spectral& basis) {
  if (basis.vectors.rows() != rho.dim()) throw InvalidArgument("pinch_diagonal: dimension mismatch");
  const Mat& u = basis.vectors;
  RVec d(u.cols());
  for (Eigen::Index k = 0; k < u.cols(); ++k)
    d[k] = (u.col(k).adjoint() * rho.matrix() * u.col(k))(0, 0).real();
  return DensityMatrix(u * d.cast<cplx>().asDiagonal() * u.adjoint());
}

RVec modular_energies(const DensityMatrix& rho) {
  RVec e(rho.dim());
  for (int i = 0; i < rho.dim(); ++i) {
    const double l = rho.eigenvalues()[i];
    e[i] = l > 0 ? -std::log(l) : kInf;
  }
  return e;
}

void tensor_power_spectrum(const DensityMatrix& rho, int n,
                           const std::function<void(const TensorBasisLabel&, double)>& visit,
                           int budget_log2) {
  const int d = rho.dim();
  check_budget(d, n, budget_log2);
  const RVec e = modular_energies(rho);
  TensorBasisLabel label(n, 0);
  const std::uint64_t total = ipow(d, n);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    double sum = 0;
    for (int i = 0; i < n; ++i) sum += e[label[i]];
    visit(label, sum / n);
    for (int i = n - 1; i >= 0; --i) {
      if (++label[i] < d) break;
      label[i] = 0;
    }
  }
}

Mat modular_hamiltonian(const DensityMatrix& rho) {
  return matrix_function(rho.spectral(), [](double x) { return -std::log(x); }, kEigenFloor);
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

nlohmann::json matrix_to_json(const Mat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

Mat matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw InvalidArgument("matrix JSON must be a non-empty array");
  const auto n = static_cast<Eigen::Index>(j.size());
  Mat m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
      throw InvalidArgument("matrix JSON must be square");
    for (Eigen::Index c = 0; c < n; ++c) {
      const auto& e = row[c];
      if (e.is_number()) m(r, c) = e.get<double>();
      else if (e.is_array() && e.size() == 2) m(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
      else throw InvalidArgument("matrix entries must be numbers or [re, im] pairs");
    }
  }
  return m;
}

DensityMatrix load_density_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open matrix file " + path);
  nlohmann::json j;
  in >> j;
  return DensityMatrix(matrix_from_json(j));
}

}  // namespace qht
