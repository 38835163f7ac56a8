#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <utility>

#include "dynr/minkowski3.hpp"

namespace dynr {

using Mat4 = Eigen::Matrix4d;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Vec6 = Eigen::Matrix<double, 6, 1>;

struct NotACartanError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct GroupConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Element of iso(2,1) in the basis {J_a, P_a}: X = jcoeff^a J_a + pcoeff^a P_a.
/// The global basis order for all tensor expansions is (P0,P1,P2,J0,J1,J2).
struct AlgebraElement {
  Vec3 jcoeff = Vec3::Zero();
  Vec3 pcoeff = Vec3::Zero();

  AlgebraElement() = default;
  AlgebraElement(const Vec3& j, const Vec3& p) : jcoeff(j), pcoeff(p) {}

  AlgebraElement operator+(const AlgebraElement& o) const {
    return {jcoeff + o.jcoeff, pcoeff + o.pcoeff};
  }
  AlgebraElement operator-(const AlgebraElement& o) const {
    return {jcoeff - o.jcoeff, pcoeff - o.pcoeff};
  }
  AlgebraElement operator*(double s) const { return {jcoeff * s, pcoeff * s}; }
  AlgebraElement operator-() const { return {-jcoeff, -pcoeff}; }
  double norm() const { return std::sqrt(jcoeff.squaredNorm() + pcoeff.squaredNorm()); }

  /// Coefficient in the global order (P0,P1,P2,J0,J1,J2).
  double coeff(int alpha) const { return alpha < 3 ? pcoeff(alpha) : jcoeff(alpha - 3); }

  static AlgebraElement J(int a);
  static AlgebraElement P(int a);
  static AlgebraElement basis(int alpha);  // global order
};

/// [J_a,J_b] = eps_{ab}^c J_c, [J_a,P_b] = eps_{ab}^c P_c, [P_a,P_b] = 0.
/// Equivalently, in vector form: [(j1,p1),(j2,p2)] = (j1^j2, j1^p2 - j2^p1).
AlgebraElement lie_bracket(const AlgebraElement& x, const AlgebraElement& y);

/// <J_a,P_b> = eta_{ab}, <J,J> = <P,P> = 0.
double pairing(const AlgebraElement& x, const AlgebraElement& y);

/// Adjoint-representation generator: the 3x3 matrix of ad(J_a), acting on
/// vectors as ad(J_a) x = e_a ^ x.
Mat3 so21_generator(int a);

/// Matrix of ad(v^a J_a) = v ^ (.) .
Mat3 so21_hat(const Vec3& v);

/// Inverse of so21_hat on its image.
Vec3 so21_unhat(const Mat3& w);

/// exp(v^a ad(J_a)) with closed forms per causal type of v; agrees with a
/// scaled-and-squared series exponential to 1e-12.
Mat3 exp_so21(const Vec3& v);

/// True if u is in SO+(2,1) within tol: u^T eta u = eta, det u = 1, u(0,0) >= 1 - tol.
bool is_lorentz(const Mat3& u, double tol = 1e-10);

/// Element of ISO(2,1), parametrised as (u,a) = (u,0).(1,-j) = (u, -Ad(u) j).
/// The stored data is the Lorentz part u and the vector j; the physical
/// translation is a = -u j.
struct PoincareElement {
  Mat3 u = Mat3::Identity();
  Vec3 j = Vec3::Zero();

  PoincareElement() = default;
  PoincareElement(const Mat3& u_, const Vec3& j_) : u(u_), j(j_) {}

  Vec3 translation() const { return -u * j; }
  static PoincareElement identity() { return {}; }
  static PoincareElement from_translation(const Vec3& a) {
    return {Mat3::Identity(), -a};
  }
  static PoincareElement from_lorentz(const Mat3& u) { return {u, Vec3::Zero()}; }

  /// Faithful homogeneous representation [[u, a],[0, 1]].
  Mat4 matrix() const;
  static PoincareElement from_matrix(const Mat4& m);
};

/// Group law (u1,a1).(u2,a2) = (u1 u2, a1 + Ad(u1) a2).  Cross-checked
/// against the 4x4 representation; a discrepancy beyond 1e-10 throws
/// GroupConsistencyError.
PoincareElement group_mul(const PoincareElement& p1, const PoincareElement& p2);
PoincareElement group_inv(const PoincareElement& p);

/// exp of a full iso(2,1) element.
PoincareElement exp_iso21(const AlgebraElement& x);

/// Ad(p) X for p in ISO(2,1), X in iso(2,1).
AlgebraElement adjoint(const PoincareElement& p, const AlgebraElement& x);

/// 6x6 matrix of Ad(p) in the global basis order (P0,P1,P2,J0,J1,J2).
Mat6 adjoint_matrix(const PoincareElement& p);

/// Decompose a 4x4 algebra matrix [[so21_hat(j), p],[0,0]] into coefficients.
AlgebraElement algebra_from_matrix(const Mat4& m);
Mat4 algebra_to_matrix(const AlgebraElement& x);

/// Cartan subalgebra h = Span{ x^a P_a, x^a J_a + y^a P_a } for x^2 = +-1,
/// x.y = 0 (tolerance 1e-9).  Throws NotACartanError otherwise.
std::pair<AlgebraElement, AlgebraElement> cartan_subalgebra(const Vec3& x,
                                                            const Vec3& y);

/// Class functions: Tr(u) and Tr(j^a J_a . u).
double trace_lorentz(const Mat3& u);
double trace_jJu(const PoincareElement& m);

}  // namespace dynr
