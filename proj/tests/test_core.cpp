#include "qht/core.hpp"
#include "qht/random.hpp"

#include <doctest.h>

#include <cmath>

using namespace qht;

namespace {

// Φ by erfc, inverted by bisection: independent of the library's erfc_inv path.
double quantile_by_bisection(double p) {
  double lo = -40, hi = 40;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (0.5 * std::erfc(-mid / std::sqrt(2.0)) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Composite Simpson with a fixed panel count.
double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4 : 2);
  return s * h / 3;
}

// Denman–Beavers square root, no eigendecomposition.
Mat db_sqrt(const Mat& a) {
  Mat y = a, z = Mat::Identity(a.rows(), a.cols());
  for (int k = 0; k < 100; ++k) {
    const Mat yi = y.inverse(), zi = z.inverse();
    const Mat yn = 0.5 * (y + zi);
    z = 0.5 * (z + yi);
    const double d = (yn - y).norm();
    y = yn;
    if (d < 1e-15 * y.norm()) break;
  }
  return y;
}

// A^x for x in (0,1) from the binary digits of x and repeated square roots.
Mat binary_power(const Mat& a, double x) {
  Mat out = Mat::Identity(a.rows(), a.cols());
  Mat root = a;
  for (int k = 1; k <= 52 && x > 0; ++k) {
    root = db_sqrt(root);
    x *= 2;
    if (x >= 1) {
      out = out * root;
      x -= 1;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("eig_hermitian: trivial spectra") {
  auto s = eig_hermitian(Mat::Identity(4, 4));
  for (int i = 0; i < 4; ++i) CHECK(s.values[i] == doctest::Approx(1.0));

  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 2;
  d(1, 1) = -1;
  s = eig_hermitian(d);
  CHECK(s.values[0] == doctest::Approx(-1.0));
  CHECK(s.values[1] == doctest::Approx(2.0));
  CHECK(std::abs(s.vectors(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(s.vectors(0, 1)) == doctest::Approx(1.0));
}

TEST_CASE("eig_hermitian: reconstruction and phase convention") {
  Rng rng(11);
  for (int t = 0; t < 10; ++t) {
    const Mat h = random_hermitian(8, rng);
    const auto s = eig_hermitian(h);
    CHECK((reconstruct(s) - h).norm() < 1e-10);
    for (int i = 1; i < 8; ++i) CHECK(s.values[i] >= s.values[i - 1]);
    for (int c = 0; c < 8; ++c) {
      int r = 0;
      while (std::abs(s.vectors(r, c)) < 1e-12) ++r;
      CHECK(std::abs(s.vectors(r, c).imag()) < 1e-12);
      CHECK(s.vectors(r, c).real() > 0);
    }
  }
}

TEST_CASE("eig_hermitian rejects non-Hermitian input") {
  Mat m = Mat::Zero(2, 2);
  m(0, 1) = 1;
  CHECK_THROWS_AS(eig_hermitian(m), InvalidArgument);
}

TEST_CASE("matrix_function") {
  const Mat z = Mat::Zero(3, 3);
  CHECK((matrix_function(z, [](double x) { return std::exp(x); }) - Mat::Identity(3, 3)).norm() < 1e-14);

  const Mat half = Mat::Identity(2, 2) / 2.0;
  const Mat l = matrix_function(half, [](double x) { return std::log(x); });
  CHECK(l(0, 0).real() == doctest::Approx(-std::log(2.0)));
  CHECK(std::abs(l(0, 1)) < 1e-15);

  Rng rng(5);
  for (int t = 0; t < 5; ++t) {
    const Mat g = ginibre(4, 4, rng);
    const Mat a = g * g.adjoint() + 0.1 * Mat::Identity(4, 4);
    const Mat f = matrix_function(a, [](double x) { return std::pow(x, 0.3); });
    CHECK((f - binary_power(a, 0.3)).norm() < 1e-9);
  }
}

TEST_CASE("matrix_function floor rejects the kernel") {
  Mat p = Mat::Zero(2, 2);
  p(0, 0) = 1;
  CHECK_THROWS_AS(matrix_function(p, [](double x) { return std::log(x); }, kEigenFloor),
                  SupportViolation);
  p(1, 1) = 1e-13;
  const Mat l = matrix_function(p, [](double x) { return std::log(x); }, kEigenFloor);
  CHECK(l(1, 1).real() == doctest::Approx(std::log(1e-13)));
  CHECK(std::abs(l(0, 0)) < 1e-15);
}

TEST_CASE("rank_revealing_projector") {
  Mat c = Mat::Zero(3, 3);
  c(0, 0) = 1;
  c(0, 1) = 1;
  c(1, 2) = 1;
  Mat p = rank_revealing_projector(c);
  Mat expect = Mat::Zero(3, 3);
  expect(0, 0) = expect(1, 1) = 1;
  CHECK((p - expect).norm() < 1e-14);

  Vec v = Vec::Zero(2);
  v[0] = v[1] = 1;
  p = rank_revealing_projector(v);
  CHECK((p - Mat::Constant(2, 2, 0.5)).norm() < 1e-14);

  Rng rng(3);
  p = rank_revealing_projector(ginibre(20, 50, rng));
  CHECK((p - Mat::Identity(20, 20)).norm() < 1e-9);
  CHECK(orthonormal_span(ginibre(20, 50, rng)).cols() == 20);
}

TEST_CASE("normal_quantile") {
  CHECK(normal_quantile(0.5) == 0.0);
  // frozen from the bisection oracle
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959964).epsilon(1e-6));
  CHECK(normal_quantile(0.2) == doctest::Approx(-0.841621).epsilon(1e-6));
  for (double p : {1e-10, 1e-4, 0.01, 0.2, 0.5, 0.7, 0.975, 0.999999})
    CHECK(std::abs(normal_quantile(p) - quantile_by_bisection(p)) < 1e-9);
  CHECK_THROWS_AS(normal_quantile(0.0), InvalidArgument);
  CHECK_THROWS_AS(normal_quantile(1.0), InvalidArgument);
}

TEST_CASE("adaptive_quadrature") {
  CHECK(std::abs(adaptive_quadrature([](double q) { return std::cos(q); }, 0, M_PI, 1e-12)) < 1e-12);
  CHECK(adaptive_quadrature([](double x) { return x * x; }, 0, 1, 1e-12) == doctest::Approx(1.0 / 3).epsilon(1e-14));
  const auto f = [](double q) { return 1.0 / (std::exp(2 * std::cos(q)) + 1); };
  const double ref = simpson(f, 0, M_PI, 1000000);
  CHECK(std::abs(adaptive_quadrature(f, 0, M_PI, 1e-12) - ref) < 1e-12);
}
