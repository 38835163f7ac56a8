#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dynr/minkowski3.hpp"

using namespace dynr;

namespace {

std::mt19937_64 rng(20260809);

Vec3 random_vec(double scale = 2.0) {
  std::uniform_real_distribution<double> d(-scale, scale);
  return Vec3(d(rng), d(rng), d(rng));
}

}  // namespace

TEST_CASE("metric values") {
  CHECK(minkowski_dot(Vec3::Unit(0), Vec3::Unit(0)) == 1.0);
  CHECK(minkowski_dot(Vec3::Unit(1), Vec3::Unit(1)) == -1.0);
  CHECK(minkowski_dot(Vec3::Unit(2), Vec3::Unit(2)) == -1.0);
  CHECK(minkowski_dot(Vec3::Unit(0), Vec3::Unit(1)) == 0.0);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      CHECK(minkowski_metric()(a, b) == ((a == b) ? (a == 0 ? 1.0 : -1.0) : 0.0));
}

TEST_CASE("epsilon conventions") {
  CHECK(epsilon_lower(0, 1, 2) == 1.0);
  CHECK(epsilon_lower(0, 2, 1) == -1.0);
  CHECK(epsilon_lower(1, 2, 0) == 1.0);
  CHECK(epsilon_lower(1, 0, 2) == -1.0);
  CHECK(epsilon_lower(2, 0, 1) == 1.0);
  CHECK(epsilon_lower(0, 0, 1) == 0.0);
  // raising all three indices always multiplies by (+1)(-1)(-1)
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        CHECK(epsilon_upper(a, b, c) == doctest::Approx(epsilon_lower(a, b, c)));
}

TEST_CASE("wedge on basis vectors") {
  CHECK((wedge(Vec3::Unit(1), Vec3::Unit(2)) - Vec3::Unit(0)).norm() == 0.0);
  CHECK((wedge(Vec3::Unit(0), Vec3::Unit(1)) + Vec3::Unit(2)).norm() == 0.0);
  CHECK((wedge(Vec3::Unit(0), Vec3::Unit(2)) - Vec3::Unit(1)).norm() == 0.0);
  const Vec3 x = random_vec();
  CHECK(wedge(x, x).norm() == 0.0);
  // agreement with the raw definition (x^y)^a = eps^{abc} x_b y_c
  const Vec3 y = random_vec();
  for (int a = 0; a < 3; ++a) {
    double s = 0.0;
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        s += epsilon_upper(a, b, c) * lower_index(x)(b) * lower_index(y)(c);
    CHECK(wedge(x, y)(a) == doctest::Approx(s).epsilon(1e-14));
  }
}

TEST_CASE("orthogonality and Jacobi identity") {
  for (int k = 0; k < 50; ++k) {
    const Vec3 x = random_vec(), y = random_vec(), z = random_vec();
    CHECK(std::abs(minkowski_dot(x, wedge(x, y))) < 1e-12);
    CHECK(std::abs(minkowski_dot(y, wedge(x, y))) < 1e-12);
    const Vec3 jac = wedge(x, wedge(y, z)) + wedge(y, wedge(z, x)) +
                     wedge(z, wedge(x, y));
    CHECK(jac.cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("bilinearity") {
  for (int k = 0; k < 20; ++k) {
    const Vec3 x = random_vec(), y = random_vec(), z = random_vec();
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    const double a = d(rng), b = d(rng);
    CHECK(std::abs(minkowski_dot(a * x + b * y, z) -
                   (a * minkowski_dot(x, z) + b * minkowski_dot(y, z))) < 1e-13);
    CHECK((wedge(a * x + b * y, z) - (a * wedge(x, z) + b * wedge(y, z)))
              .cwiseAbs()
              .maxCoeff() < 1e-13);
  }
}

TEST_CASE("causal classification is total and tolerance-based") {
  CHECK(causal_type(Vec3(1, 0, 0)) == CausalType::Timelike);
  CHECK(causal_type(Vec3(0, 1, 0)) == CausalType::Spacelike);
  CHECK(causal_type(Vec3(1, 1, 0)) == CausalType::Lightlike);
  CHECK(causal_type(Vec3(1, 1, 1e-12)) == CausalType::Lightlike);
  CHECK(causal_type(Vec3::Zero()) == CausalType::Lightlike);
  CHECK(causal_type(Vec3(100.0, 100.0 + 1e-14, 0)) == CausalType::Lightlike);
}
