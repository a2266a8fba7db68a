#include "qht/divergences.hpp"
#include "qht/fermion.hpp"
#include "qht/random.hpp"

#include <doctest.h>

#include <cmath>

using namespace qht;

namespace {

RMat random_correlation(int ell, Rng& rng) {
  std::uniform_real_distribution<double> u(0.05, 0.95);
  RVec c(ell);
  for (int i = 0; i < ell; ++i) c[i] = u(rng);
  const RMat o = random_orthogonal(ell, rng);
  return o * c.asDiagonal() * o.transpose();
}

RMat random_symmetric(int ell, Rng& rng) {
  const RMat g = RMat::Random(ell, ell);
  return g + g.transpose();
}

RMat rot(double phi) {
  RMat r(2, 2);
  r << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
  return r;
}

std::vector<std::vector<int>> subsets(int ell, int k) {
  std::vector<std::vector<int>> out;
  for (int m = 0; m < (1 << ell); ++m)
    if (__builtin_popcount(m) == k) {
      std::vector<int> s;
      for (int i = 0; i < ell; ++i)
        if (m >> i & 1) s.push_back(i);
      out.push_back(s);
    }
  return out;
}

double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4 : 2);
  return s * h / 3;
}

}  // namespace

TEST_CASE("XY correlation") {
  const RMat c0 = xy_correlation(0.0, {0, 1, 3});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(std::abs(c0(i, j) - (i == j ? 0.5 : 0.0)) < 1e-13);
  const RMat c = xy_correlation(2.0, {0, 1});
  const double ref = simpson([](double q) { return std::cos(q) / (std::exp(2 * std::cos(q)) + 1); }, 0, M_PI, 1000000) / M_PI;
  CHECK(std::abs(c(0, 1) - ref) < 1e-10);
  CHECK(c(0, 1) == c(1, 0));
  CHECK_THROWS_AS(xy_correlation(1.0, {0, 0}), InvalidArgument);
  CHECK_THROWS_AS(xy_correlation(-1.0, {0}), InvalidArgument);
}

TEST_CASE("modular matrix") {
  RMat c = RMat::Zero(2, 2);
  c(0, 0) = 1 / (1 + std::exp(0.7));
  c(1, 1) = 1 / (1 + std::exp(-1.2));
  const RMat a = modular_matrix_from_C(c);
  CHECK(a(0, 0) == doctest::Approx(0.7));
  CHECK(a(1, 1) == doctest::Approx(-1.2));

  RMat s(2, 2);
  s << 0.4, 0.15, 0.15, 0.4;
  const RMat as = modular_matrix_from_C(s);
  RVec e(2);
  e << 1, 1;
  CHECK((as * e - (as * e).dot(e) / 2 * e).norm() < 1e-12);

  Rng rng(1);
  for (int ell = 1; ell <= 5; ++ell) {
    const RMat x = random_correlation(ell, rng);
    CHECK((correlation_from_modular(modular_matrix_from_C(x)) - x).norm() < 1e-10);
  }
  RMat bad = RMat::Identity(2, 2);
  CHECK_THROWS_AS(modular_matrix_from_C(bad), InvalidArgument);
}

TEST_CASE("partition function") {
  RMat half = RMat::Constant(1, 1, 0.5);
  CHECK(partition_log(half) == doctest::Approx(std::log(2.0)));
  Rng rng(2);
  const RMat c = random_correlation(3, rng);
  const RMat a = modular_matrix_from_C(c);
  const RVec ea = Eigen::SelfAdjointEigenSolver<RMat>(a).eigenvalues();
  double logdet = 0;
  for (int i = 0; i < 3; ++i) logdet += std::log1p(std::exp(-ea[i]));
  CHECK(partition_log(c) == doctest::Approx(logdet).epsilon(1e-12));
  const RVec ek = Eigen::SelfAdjointEigenSolver<RMat>(fock_quadratic(a, RMat())).eigenvalues();
  CHECK(partition_log(c) == doctest::Approx(std::log(ek.array().exp().inverse().sum())).epsilon(1e-10));
}

TEST_CASE("dense RDM") {
  const double e = 0.8, p = 1 / (1 + std::exp(e));
  const auto one = dense_rdm(RMat::Constant(1, 1, e));
  CHECK(one.matrix()(0, 0).real() == doctest::Approx(1 - p));
  CHECK(one.matrix()(1, 1).real() == doctest::Approx(p));

  RMat d = RMat::Zero(2, 2);
  d(0, 0) = 0.3, d(1, 1) = -0.5;
  const auto two = dense_rdm(d);
  const Mat prod = kron(dense_rdm(RMat::Constant(1, 1, 0.3)).matrix(), dense_rdm(RMat::Constant(1, 1, -0.5)).matrix());
  CHECK((two.matrix() - prod).norm() < 1e-13);

  Rng rng(3);
  for (int ell = 1; ell <= 5; ++ell) {
    const RMat c = random_correlation(ell, rng);
    CHECK((dense_correlation(dense_rdm(modular_matrix_from_C(c))) - c).norm() < 1e-10);
  }
  CHECK_THROWS_AS(dense_rdm(RMat::Zero(7, 7)), BudgetExceeded);
}

TEST_CASE("relative entropy and variance against dense Fock space") {
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    const int ell = 1 + t % 4;
    const RMat c = random_correlation(ell, rng), ct = random_correlation(ell, rng);
    const auto sigma = dense_rdm(modular_matrix_from_C(c)), rho = dense_rdm(modular_matrix_from_C(ct));
    CHECK(std::abs(fermion_relative_entropy(c, ct) - relative_entropy(rho, sigma)) < 1e-8);
    CHECK(std::abs(fermion_variance(c, ct) - relative_entropy_variance(rho, sigma)) < 1e-8);
    CHECK(std::abs(fermion_relative_entropy(c, c)) < 1e-12);
    CHECK(std::abs(fermion_variance(c, c)) < 1e-12);
  }
  // XY, two sites, β = 1 vs β = 2
  const RMat c1 = xy_correlation(1.0, {0, 1}), c2 = xy_correlation(2.0, {0, 1});
  const auto s1 = dense_rdm(modular_matrix_from_C(c1)), s2 = dense_rdm(modular_matrix_from_C(c2));
  CHECK(std::abs(fermion_relative_entropy(c1, c2) - relative_entropy(s2, s1)) < 1e-8);
  CHECK(std::abs(fermion_variance(c1, c2) - relative_entropy_variance(s2, s1)) < 1e-8);
}

TEST_CASE("commuting closed forms") {
  Rng rng(5);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int t = 0; t < 10; ++t) {
    const int ell = 1 + t % 4;
    RVec e(ell), et(ell);
    for (int i = 0; i < ell; ++i) e[i] = u(rng), et[i] = u(rng);
    const RMat o = random_orthogonal(ell, rng);
    const RMat c = o * e.unaryExpr([](double x) { return 1 / (1 + std::exp(x)); }).asDiagonal() * o.transpose();
    const RMat ct = o * et.unaryExpr([](double x) { return 1 / (1 + std::exp(x)); }).asDiagonal() * o.transpose();
    CHECK(fermion_relative_entropy_commuting(e, et) == doctest::Approx(fermion_relative_entropy(c, ct)).epsilon(1e-10));
    CHECK(fermion_variance_commuting(e, et) == doctest::Approx(fermion_variance(c, ct)).epsilon(1e-10));
  }
  // ℓ = 1 is a qubit pair with excited weights p, q
  const double e = 0.4, et = 1.1, p = 1 / (1 + std::exp(e)), q = 1 / (1 + std::exp(et));
  const double l1 = std::log(q / p), l0 = std::log((1 - q) / (1 - p));
  const double mean = q * l1 + (1 - q) * l0;
  CHECK(fermion_variance_commuting(RVec::Constant(1, e), RVec::Constant(1, et)) ==
        doctest::Approx(q * l1 * l1 + (1 - q) * l0 * l0 - mean * mean).epsilon(1e-12));
  // perturbative: V/S → 2 linearly in λ
  RVec e0(3), e1(3);
  e0 << 0.2, -0.7, 1.5;
  e1 << 1.0, -0.4, 0.3;
  for (double lam : {1e-2, 1e-3}) {
    const double r = fermion_variance_commuting(e0, e0 + lam * e1) / fermion_relative_entropy_commuting(e0, e0 + lam * e1);
    CHECK(std::abs(r - 2) < 10 * lam);
  }
}

TEST_CASE("Bogoliubov diagonalization") {
  Rng rng(6);
  const RMat a = random_symmetric(4, rng);
  const auto free = bogoliubov_diagonalize(a);
  CHECK((free.v - free.u).norm() == 0.0);
  CHECK((free.v.transpose() * free.energies.asDiagonal() * free.v - a).norm() < 1e-10);

  for (int t = 0; t < 5; ++t) {
    const RMat g = RMat::Random(4, 4);
    const RMat b = g - g.transpose();
    const RMat as = random_symmetric(4, rng);
    const auto p = bogoliubov_diagonalize(as, b);
    CHECK((p.v * p.v.transpose() - RMat::Identity(4, 4)).norm() < 1e-10);
    CHECK((p.u * p.u.transpose() - RMat::Identity(4, 4)).norm() < 1e-10);
    for (int k = 0; k < 4; ++k) {
      CHECK(((as + b) * p.v.row(k).transpose() - p.energies[k] * p.u.row(k).transpose()).norm() < 1e-9);
      CHECK(((as - b) * p.u.row(k).transpose() - p.energies[k] * p.v.row(k).transpose()).norm() < 1e-9);
    }
    const RMat w = bogoliubov_matrix(p.v, p.u);
    RMat omega = RMat::Zero(8, 8);
    omega.topRightCorner(4, 4) = omega.bottomLeftCorner(4, 4) = RMat::Identity(4, 4);
    CHECK((w * omega * w.transpose() - omega).norm() < 1e-10);
    CHECK((w * w.transpose() - RMat::Identity(8, 8)).norm() < 1e-10);
  }
  CHECK_THROWS_AS(bogoliubov_diagonalize(a, a), InvalidArgument);
}

TEST_CASE("free overlaps") {
  Rng rng(7);
  for (int ell = 1; ell <= 5; ++ell) {
    const RMat v = random_orthogonal(ell, rng), vt = random_orthogonal(ell, rng);
    CHECK(free_overlap(v, vt, {}, {}) == 1.0);
    for (int k = 0; k <= ell; ++k) {
      const auto s = subsets(ell, k);
      RMat m(s.size(), s.size());
      for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j) {
          m(i, j) = free_overlap(v, vt, s[i], s[j]);
          if (k == ell) CHECK(std::abs(std::abs(m(i, j)) - 1) < 1e-10);
          CHECK(std::abs(free_overlap(v, v, s[i], s[j]) - (i == j ? 1.0 : 0.0)) < 1e-10);
        }
      CHECK((m.transpose() * m - RMat::Identity(s.size(), s.size())).norm() < 1e-10);
    }
    CHECK(free_overlap(v, vt, {0}, {}) == 0.0);
  }
  const double phi = 0.7, phit = 0.2;
  const RMat v = rot(phi), vt = rot(phit);
  CHECK(free_overlap(v, vt, {0}, {0}) == doctest::Approx(std::cos(phi - phit)));
  CHECK(free_overlap(v, vt, {0}, {1}) == doctest::Approx(-std::sin(phi - phit)));
  CHECK(free_overlap(v, vt, {1}, {0}) == doctest::Approx(std::sin(phi - phit)));
  CHECK(free_overlap(v, vt, {0, 1}, {0, 1}) == doctest::Approx(1.0));
}

TEST_CASE("Wick overlaps") {
  CHECK(wick_overlap(RMat::Identity(6, 6), {}, {}) == 1.0);
  CHECK(wick_overlap(RMat::Identity(6, 6), {0}, {}) == 0.0);

  Rng rng(8);
  // block-diagonal T: the free minors
  const RMat v = random_orthogonal(3, rng), vt = random_orthogonal(3, rng);
  const RMat tf = wick_transformation(v, v, vt, vt);
  CHECK(wick_overlap(tf, {}, {}) == doctest::Approx(1.0).epsilon(1e-12));
  for (int k = 0; k <= 3; ++k)
    for (const auto& i : subsets(3, k))
      for (const auto& j : subsets(3, k))
        CHECK(std::abs(wick_overlap(tf, j, i) - free_overlap(v, vt, i, j)) < 1e-12);

  // generic Bogoliubov pairs against the dense Fock construction
  int compared = 0;
  for (int t = 0; t < 10; ++t) {
    const RMat g1 = RMat::Random(3, 3) * 0.5, g2 = RMat::Random(3, 3) * 0.5;
    const auto p = bogoliubov_diagonalize(random_symmetric(3, rng), g1 - g1.transpose());
    const auto pt = bogoliubov_diagonalize(random_symmetric(3, rng), g2 - g2.transpose());
    const RMat t_ = wick_transformation(p.v, p.u, pt.v, pt.u);
    if (std::abs(t_.topLeftCorner(3, 3).determinant()) < 1e-3) continue;
    for (int nb = 0; nb <= 3; ++nb)
      for (int nk = 0; nk + nb <= 4 && nk <= 3; ++nk)
        for (const auto& i : subsets(3, nb))
          for (const auto& j : subsets(3, nk)) {
            const double w = wick_overlap(t_, j, i);
            const double d = dense_bogoliubov_overlap(p.v, p.u, pt.v, pt.u, j, i);
            CHECK(std::abs(w - d) < 1e-9);
            ++compared;
          }
  }
  CHECK(compared > 0);

  RMat swap = RMat::Zero(2, 2);
  swap(0, 1) = swap(1, 0) = 1;  // T₁₁ = 0: particle–hole exchange
  CHECK_THROWS_AS(wick_overlap(swap, {}, {}), Error);
  RMat bad = RMat::Identity(4, 4);
  bad(2, 2) = -1;
  CHECK_THROWS_AS(wick_overlap(bad, {}, {}), InvalidArgument);
}

TEST_CASE("two-fermion setup") {
  for (double b1 : {0.5, 1.0, 3.0})
    for (double b2 : {0.7, 2.0})
      for (int r : {1, 2, 5}) {
        const auto s = two_fermion_optimal_setup(xy_correlation(b1, {0, r}), xy_correlation(b2, {0, r}));
        CHECK(s.commuting);
        CHECK((s.rotation - RMat::Identity(2, 2)).norm() < 1e-10);
      }
  RVec d1(2), d2(2);
  d1 << 0.3, 0.6;
  d2 << 0.2, 0.7;
  const RMat c = rot(0.4) * d1.asDiagonal() * rot(0.4).transpose();
  const RMat ct = rot(0.1) * d2.asDiagonal() * rot(0.1).transpose();
  const auto s = two_fermion_optimal_setup(c, ct);
  CHECK_FALSE(s.commuting);
  CHECK(std::abs(std::abs(s.angle) - 0.3) < 1e-10);
  CHECK(two_fermion_optimal_setup(c, c).angle == doctest::Approx(0.0));
}

TEST_CASE("two-fermion LRT threshold") {
  CHECK_THROWS_AS(two_fermion_lrt_threshold(0, 0, 0, 1, 4, 0, 0.1), InvalidArgument);
  // Δ = Δ̃, E₀ = Ẽ₀: n_* = ⌈n(Ẽ) + n𝓔/Δ⌉
  CHECK(two_fermion_lrt_threshold(0.3, 0.3, 2.0, 2.0, 6, 2, 0.5) == 4);
  // exhaustive check of the label inequality with XY-derived energies
  const RMat c = xy_correlation(1.0, {0, 1}), ct = xy_correlation(2.5, {0, 1});
  const RVec e = Eigen::SelfAdjointEigenSolver<RMat>(modular_matrix_from_C(c)).eigenvalues();
  const RVec et = Eigen::SelfAdjointEigenSolver<RMat>(modular_matrix_from_C(ct)).eigenvalues();
  const double e0 = e[0], d = e[1] - e[0], et0 = et[0], dt = et[1] - et[0];
  const int n = 8;
  for (double thr : {-0.3, 0.05, 0.4}) {
    for (int lt = 0; lt < (1 << n); ++lt) {
      const int nt = __builtin_popcount(lt);
      const int ns = two_fermion_lrt_threshold(e0, et0, d, dt, n, nt, thr);
      for (int l = 0; l < (1 << n); ++l) {
        const int k = __builtin_popcount(l);
        const double lhs = (n * e0 + k * d) - (n * et0 + nt * dt);
        CHECK((lhs >= n * thr) == (k >= ns));
      }
    }
  }
}
