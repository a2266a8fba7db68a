#include "qht/random.hpp"
#include "qht/states.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

using namespace qht;

namespace {

Mat diag(std::initializer_list<double> d) {
  Mat m = Mat::Zero(d.size(), d.size());
  int i = 0;
  for (double x : d) m(i, i) = x, ++i;
  return m;
}

std::int64_t choose(int n, int k) {
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("DensityMatrix validation") {
  CHECK_THROWS_AS(DensityMatrix(diag({0.5, 0.4})), InvalidArgument);
  CHECK_THROWS_AS(DensityMatrix(diag({1.2, -0.2})), InvalidArgument);
  Mat nh = diag({0.5, 0.5});
  nh(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix{nh}, InvalidArgument);
  const auto r = DensityMatrix(diag({1 - 1e-16, 1e-16}));
  CHECK(r.rank() == 1);
  CHECK(r.eigenvalues().sum() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("thermal_state") {
  Rng rng(2);
  const Mat h = random_hermitian(5, rng);
  const auto m = thermal_state(h, 0.0);
  CHECK((m.matrix() - Mat::Identity(5, 5) / 5.0).norm() < 1e-14);

  const auto q = thermal_state(diag({0, 1}), std::log(3.0));
  CHECK((q.matrix() - diag({0.75, 0.25})).norm() < 1e-14);

  const auto t = thermal_state(h, 2.0);
  const RVec lam = eig_hermitian(h).values;
  double z = 0;
  for (int i = 0; i < 5; ++i) z += std::exp(-2 * lam[i]);
  for (int i = 0; i < 5; ++i) CHECK(t.eigenvalues()[i] == doctest::Approx(std::exp(-2 * lam[4 - i]) / z));
  CHECK_THROWS_AS(thermal_state(h, -1), InvalidArgument);
}

TEST_CASE("partial_trace") {
  Rng rng(8);
  const auto a = random_density(2, rng), b = random_density(3, rng);
  const auto ab = DensityMatrix(kron(a.matrix(), b.matrix()));
  CHECK((partial_trace(ab, {2, 3}, {0}).matrix() - a.matrix()).norm() < 1e-14);
  CHECK((partial_trace(ab, {2, 3}, {1}).matrix() - b.matrix()).norm() < 1e-14);

  Vec chi = Vec::Zero(4);
  chi[1] = chi[2] = chi[3] = 1 / std::sqrt(3.0);
  Mat expect(2, 2);
  expect << 1, 1, 1, 2;
  CHECK((partial_trace(DensityMatrix::pure(chi), {2, 2}, {0}).matrix() - expect / 3.0).norm() < 1e-14);

  Vec bell = Vec::Zero(4);
  bell[0] = bell[3] = 1 / std::sqrt(2.0);
  for (int k : {0, 1})
    CHECK((partial_trace(DensityMatrix::pure(bell), {2, 2}, {k}).matrix() - Mat::Identity(2, 2) / 2.0).norm() < 1e-14);
  CHECK_THROWS_AS(partial_trace(ab, {2, 2}, {0}), InvalidArgument);
}

TEST_CASE("pinch_diagonal") {
  const double e0 = -std::log(0.8), e1 = -std::log(0.2), th = 0.37;
  const Mat r = [&] {
    Mat m(2, 2);
    m << std::cos(th), std::sin(th), -std::sin(th), std::cos(th);
    return m;
  }();
  const auto sigma = DensityMatrix(diag({0.8, 0.2}));
  const auto rho = DensityMatrix(r * diag({0.8, 0.2}) * r.adjoint());
  const Spectral basis{RVec(), Mat::Identity(2, 2)};
  const auto p = pinch_diagonal(rho, basis);
  const double c2 = std::cos(th) * std::cos(th), s2 = 1 - c2;
  CHECK(p.matrix()(0, 0).real() == doctest::Approx(std::exp(-e0) * c2 + std::exp(-e1) * s2));
  CHECK(p.matrix()(1, 1).real() == doctest::Approx(std::exp(-e0) * s2 + std::exp(-e1) * c2));
  CHECK(std::abs(p.matrix()(0, 1)) == 0.0);
  CHECK((pinch_diagonal(sigma, basis).matrix() - sigma.matrix()).norm() < 1e-15);

  Rng rng(4);
  const auto x = random_density(4, rng);
  const auto px = pinch_diagonal(x, Spectral{RVec(), Mat::Identity(4, 4)});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) CHECK(px.matrix()(i, j) == cplx(0, 0));
}

TEST_CASE("tensor_power_spectrum") {
  const auto q = DensityMatrix(diag({0.7, 0.3}));
  const double e0 = -std::log(0.7), e1 = -std::log(0.3);
  std::vector<double> seen;
  tensor_power_spectrum(q, 1, [&](const TensorBasisLabel&, double e) { seen.push_back(e); });
  REQUIRE(seen.size() == 2);

  seen.clear();
  tensor_power_spectrum(q, 2, [&](const TensorBasisLabel&, double e) { seen.push_back(e); });
  std::sort(seen.begin(), seen.end());
  REQUIRE(seen.size() == 4);
  CHECK(seen[0] == doctest::Approx(e0));
  CHECK(seen[1] == doctest::Approx((e0 + e1) / 2));
  CHECK(seen[2] == doctest::Approx((e0 + e1) / 2));
  CHECK(seen[3] == doctest::Approx(e1));

  std::map<int, std::int64_t> count;
  tensor_power_spectrum(q, 10, [&](const TensorBasisLabel& l, double e) {
    int k = 0;
    for (int x : l) k += x;
    // label digits index the ascending spectrum: digit 0 is the eigenvalue 0.3
    CHECK(std::abs(e - (e1 * (10 - k) + e0 * k) / 10) < 1e-12);
    ++count[k];
  });
  for (int k = 0; k <= 10; ++k) CHECK(count[k] == choose(10, k));

  CHECK_THROWS_AS(tensor_power_spectrum(q, 25, [](const TensorBasisLabel&, double) {}), BudgetExceeded);
  CHECK_NOTHROW(check_budget(2, 24));
  CHECK_THROWS_AS(check_budget(3, 16), BudgetExceeded);
}

TEST_CASE("modular_hamiltonian") {
  const Mat k = modular_hamiltonian(DensityMatrix::maximally_mixed(2));
  CHECK((k - std::log(2.0) * Mat::Identity(2, 2)).norm() < 1e-14);
  const Mat k2 = modular_hamiltonian(DensityMatrix(diag({0.75, 0.25})));
  CHECK((k2 - diag({std::log(4.0 / 3), std::log(4.0)})).norm() < 1e-14);
  Rng rng(9);
  for (int t = 0; t < 5; ++t) {
    const auto r = random_density(5, rng);
    const Mat back = matrix_function(modular_hamiltonian(r), [](double x) { return std::exp(-x); });
    CHECK((back - r.matrix()).norm() < 1e-9);
  }
}

TEST_CASE("JSON round trip of complex matrices") {
  Rng rng(1);
  const auto r = random_density(3, rng);
  const Mat back = matrix_from_json(matrix_to_json(r.matrix()));
  CHECK((back - r.matrix()).norm() == 0.0);

  const std::string path = "test_states_rho.json";
  std::ofstream(path) << matrix_to_json(r.matrix()).dump();
  CHECK((load_density_matrix(path).matrix() - r.matrix()).norm() < 1e-15);
  std::remove(path.c_str());
  CHECK_THROWS_AS(matrix_from_json(nlohmann::json::parse("[[1,2],[3]]")), InvalidArgument);
}
