#include "dynr/minkowski3.hpp"

#include <cassert>
#include <cmath>

namespace dynr {

Mat3 minkowski_metric() {
  Mat3 eta = Mat3::Zero();
  eta(0, 0) = 1.0;
  eta(1, 1) = -1.0;
  eta(2, 2) = -1.0;
  return eta;
}

double minkowski_dot(const Vec3& x, const Vec3& y) {
  return x(0) * y(0) - x(1) * y(1) - x(2) * y(2);
}

Vec3 lower_index(const Vec3& x) { return Vec3(x(0), -x(1), -x(2)); }

double epsilon_lower(int a, int b, int c) {
  assert(a >= 0 && a <= 2 && b >= 0 && b <= 2 && c >= 0 && c <= 2);
  if (a == b || b == c || a == c) return 0.0;
  // parity of the permutation (a,b,c) of (0,1,2)
  return ((b - a + 3) % 3 == 1) ? 1.0 : -1.0;
}

double epsilon_upper(int a, int b, int c) {
  // eta is diagonal, so raising all three indices multiplies by the product
  // of the diagonal entries; for nonzero components exactly one index is 0.
  double e = epsilon_lower(a, b, c);
  if (e == 0.0) return 0.0;
  double s = 1.0;
  s *= (a == 0) ? 1.0 : -1.0;
  s *= (b == 0) ? 1.0 : -1.0;
  s *= (c == 0) ? 1.0 : -1.0;
  return s * e;
}

Vec3 wedge(const Vec3& x, const Vec3& y) {
  const Vec3 xl = lower_index(x);
  const Vec3 yl = lower_index(y);
  // (x ^ y)^a = eps^{abc} x_b y_c; eps^{abc} = eps_{abc} numerically since
  // raising flips exactly two signs.
  return Vec3(xl(1) * yl(2) - xl(2) * yl(1),
              xl(2) * yl(0) - xl(0) * yl(2),
              xl(0) * yl(1) - xl(1) * yl(0));
}

CausalType causal_type(const Vec3& x, double tol) {
  if (tol < 0.0) tol = 1e-10 * std::max(1.0, x.squaredNorm());
  const double x2 = minkowski_dot(x, x);
  if (std::abs(x2) <= tol) return CausalType::Lightlike;
  return x2 > 0.0 ? CausalType::Timelike : CausalType::Spacelike;
}

const char* to_string(CausalType t) {
  switch (t) {
    case CausalType::Timelike: return "timelike";
    case CausalType::Spacelike: return "spacelike";
    case CausalType::Lightlike: return "lightlike";
  }
  return "?";
}

}  // namespace dynr
