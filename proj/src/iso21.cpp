#include "dynr/iso21.hpp"

#include <cmath>

#include "dynr/numerics.hpp"

namespace dynr {

namespace {

Mat3 lorentz_inverse(const Mat3& u) {
  const Mat3 eta = minkowski_metric();
  return eta * u.transpose() * eta;
}

}  // namespace

AlgebraElement AlgebraElement::J(int a) {
  AlgebraElement x;
  x.jcoeff(a) = 1.0;
  return x;
}

AlgebraElement AlgebraElement::P(int a) {
  AlgebraElement x;
  x.pcoeff(a) = 1.0;
  return x;
}

AlgebraElement AlgebraElement::basis(int alpha) {
  return alpha < 3 ? P(alpha) : J(alpha - 3);
}

AlgebraElement lie_bracket(const AlgebraElement& x, const AlgebraElement& y) {
  return {wedge(x.jcoeff, y.jcoeff),
          wedge(x.jcoeff, y.pcoeff) - wedge(y.jcoeff, x.pcoeff)};
}

double pairing(const AlgebraElement& x, const AlgebraElement& y) {
  return minkowski_dot(x.jcoeff, y.pcoeff) + minkowski_dot(x.pcoeff, y.jcoeff);
}

Mat3 so21_generator(int a) {
  Mat3 g;
  for (int b = 0; b < 3; ++b) g.col(b) = wedge(Vec3::Unit(a), Vec3::Unit(b));
  return g;
}

Mat3 so21_hat(const Vec3& v) {
  Mat3 w;
  w << 0.0, -v(2), v(1),
       -v(2), 0.0, v(0),
       v(1), -v(0), 0.0;
  return w;
}

Vec3 so21_unhat(const Mat3& w) {
  return Vec3(0.5 * (w(1, 2) - w(2, 1)),
              0.5 * (w(0, 2) + w(2, 0)),
              -0.5 * (w(0, 1) + w(1, 0)));
}

namespace {

// hat(v)^3 = -v.v hat(v); the two Taylor coefficients of exp and of
// T(A) = sum A^k/(k+1)! in closed form per causal branch.
struct ExpCoeffs {
  double c1, c2;  // exp = 1 + c1 A + c2 A^2
  double d1, d2;  // T   = 1 + d1 A + d2 A^2
};

ExpCoeffs exp_coeffs(double v2, double euclid2) {
  ExpCoeffs c{};
  if (std::abs(v2) < 1e-8 * euclid2 || euclid2 == 0.0) {
    c.c1 = 1.0;
    c.c2 = 0.5;
    c.d1 = 0.5;
    c.d2 = 1.0 / 6.0;
  } else if (v2 > 0.0) {
    const double th = std::sqrt(v2);
    c.c1 = std::sin(th) / th;
    c.c2 = (1.0 - std::cos(th)) / v2;
    c.d1 = c.c2;
    c.d2 = (th - std::sin(th)) / (v2 * th);
  } else {
    const double la = std::sqrt(-v2);
    c.c1 = std::sinh(la) / la;
    c.c2 = (std::cosh(la) - 1.0) / (-v2);
    c.d1 = c.c2;
    c.d2 = (std::sinh(la) - la) / (-v2 * la);
  }
  return c;
}

}  // namespace

Mat3 exp_so21(const Vec3& v) {
  const Mat3 a = so21_hat(v);
  const ExpCoeffs c = exp_coeffs(minkowski_dot(v, v), v.squaredNorm());
  return Mat3::Identity() + c.c1 * a + c.c2 * (a * a);
}

bool is_lorentz(const Mat3& u, double tol) {
  const Mat3 eta = minkowski_metric();
  if (((u.transpose() * eta * u) - eta).cwiseAbs().maxCoeff() > tol) return false;
  if (std::abs(u.determinant() - 1.0) > tol) return false;
  return u(0, 0) >= 1.0 - tol;
}

Mat4 PoincareElement::matrix() const {
  Mat4 m = Mat4::Identity();
  m.topLeftCorner<3, 3>() = u;
  m.topRightCorner<3, 1>() = translation();
  return m;
}

PoincareElement PoincareElement::from_matrix(const Mat4& m) {
  const Mat3 u = m.topLeftCorner<3, 3>();
  const Vec3 a = m.topRightCorner<3, 1>();
  return {u, -(lorentz_inverse(u) * a)};
}

PoincareElement group_mul(const PoincareElement& p1, const PoincareElement& p2) {
  PoincareElement out{p1.u * p2.u, lorentz_inverse(p2.u) * p1.j + p2.j};
  const Mat4 check = p1.matrix() * p2.matrix();
  const PoincareElement alt = PoincareElement::from_matrix(check);
  const double scale = 1.0 + out.j.cwiseAbs().maxCoeff();
  if ((alt.u - out.u).cwiseAbs().maxCoeff() > 1e-10 ||
      (alt.j - out.j).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw GroupConsistencyError("group_mul: (u,j) law disagrees with 4x4 product");
  return out;
}

PoincareElement group_inv(const PoincareElement& p) {
  return {lorentz_inverse(p.u), -(p.u * p.j)};
}

PoincareElement exp_iso21(const AlgebraElement& x) {
  const Mat3 a = so21_hat(x.jcoeff);
  const ExpCoeffs c =
      exp_coeffs(minkowski_dot(x.jcoeff, x.jcoeff), x.jcoeff.squaredNorm());
  const Mat3 u = Mat3::Identity() + c.c1 * a + c.c2 * (a * a);
  const Mat3 t = Mat3::Identity() + c.d1 * a + c.d2 * (a * a);
  const Vec3 trans = t * x.pcoeff;
  return {u, -(lorentz_inverse(u) * trans)};
}

AlgebraElement adjoint(const PoincareElement& p, const AlgebraElement& x) {
  const Mat4 m = p.matrix() * algebra_to_matrix(x) * group_inv(p).matrix();
  return algebra_from_matrix(m);
}

Mat6 adjoint_matrix(const PoincareElement& p) {
  Mat6 ad;
  for (int alpha = 0; alpha < 6; ++alpha) {
    const AlgebraElement img = adjoint(p, AlgebraElement::basis(alpha));
    for (int beta = 0; beta < 6; ++beta) ad(beta, alpha) = img.coeff(beta);
  }
  return ad;
}

Mat4 algebra_to_matrix(const AlgebraElement& x) {
  Mat4 m = Mat4::Zero();
  m.topLeftCorner<3, 3>() = so21_hat(x.jcoeff);
  m.topRightCorner<3, 1>() = x.pcoeff;
  return m;
}

AlgebraElement algebra_from_matrix(const Mat4& m) {
  return {so21_unhat(m.topLeftCorner<3, 3>()), m.topRightCorner<3, 1>()};
}

std::pair<AlgebraElement, AlgebraElement> cartan_subalgebra(const Vec3& x,
                                                            const Vec3& y) {
  constexpr double tol = 1e-9;
  const double x2 = minkowski_dot(x, x);
  if (std::abs(x2 - 1.0) > tol && std::abs(x2 + 1.0) > tol)
    throw NotACartanError("cartan_subalgebra: x^2 must be +1 or -1");
  if (std::abs(minkowski_dot(x, y)) > tol)
    throw NotACartanError("cartan_subalgebra: x.y must vanish");
  return {AlgebraElement(Vec3::Zero(), x), AlgebraElement(x, y)};
}

double trace_lorentz(const Mat3& u) { return u.trace(); }

double trace_jJu(const PoincareElement& m) {
  return (so21_hat(m.j) * m.u).trace();
}

}  // namespace dynr
