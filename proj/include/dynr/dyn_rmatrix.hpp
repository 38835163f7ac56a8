#pragma once

#include <array>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "dynr/tensor_space.hpp"

namespace dynr {

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParameterError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MissingNormalFormError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Scalar function bundle with optional analytic derivatives; missing orders
/// fall back to central differences with step 1e-5 * max(1,|psi|).
struct ScalarFn {
  std::function<double(double)> f;
  std::function<double(double)> df, d2f, d3f;

  double operator()(double x) const { return f(x); }
  double d1(double x) const;
  double d2(double x) const;
  static ScalarFn constant(double c);
};

/// A dynamical r-matrix family
///   r(psi,alpha) = P_a (x) J^a - V^{bc}(psi) (P_b (x) J_c - J_c (x) P_b)
///                 + eps^{bcd} m_d(psi,alpha) P_b (x) P_c
/// together with the maps q_psi, q_alpha (psi only) and q_theta (affine in
/// alpha) entering the dynamical Yang-Baxter equation.  Callbacks without
/// analytic derivatives are differentiated by central differences.
struct DynRSpec {
  std::function<Mat3(double)> V;
  std::function<Vec3(double, double)> m;
  std::function<Vec3(double)> q_psi, q_alpha;
  std::function<Vec3(double, double)> q_theta;

  // optional analytic derivatives
  std::function<Mat3(double)> dV;
  std::function<Vec3(double, double)> dm_dpsi, dm_dalpha;
  std::function<Vec3(double)> dq_psi, dq_alpha;
  std::function<Vec3(double, double)> dq_theta_dpsi, dq_theta_dalpha;

  double psi_lo = -std::numeric_limits<double>::infinity();
  double psi_hi = std::numeric_limits<double>::infinity();

  /// Set when V(psi) = 1/2 eta + 1/2 eps.w(psi); then w is the axis vector.
  bool normal_form = false;
  std::function<Vec3(double)> w;

  std::string name;

  bool in_domain(double psi) const { return psi > psi_lo && psi < psi_hi; }
  void require_domain(double psi) const;
  bool has_analytic_derivatives() const;
};

/// Derivative access with finite-difference fallback (step 1e-5*max(1,|psi|)).
Mat3 spec_dV(const DynRSpec& s, double psi);
Vec3 spec_dm_dpsi(const DynRSpec& s, double psi, double alpha);
Vec3 spec_dm_dalpha(const DynRSpec& s, double psi, double alpha);
Vec3 spec_dq_psi(const DynRSpec& s, double psi);
Vec3 spec_dq_alpha(const DynRSpec& s, double psi);
Vec3 spec_dq_theta_dpsi(const DynRSpec& s, double psi, double alpha);
Vec3 spec_dq_theta_dalpha(const DynRSpec& s, double psi, double alpha);

/// Axis vector of the antisymmetric part: eps^{abc} w_c = V^{ab} - V^{ba}.
Vec3 w_from_V(const Mat3& v);

/// The 3x3 matrix eps^{bcd} x_d.
Mat3 eps_matrix(const Vec3& x);

/// Assemble the family tensor at a point (throws DomainError off-domain).
Tensor2 evaluate_r(const DynRSpec& s, double psi, double alpha);

/// Left side minus right side of the dynamical Yang-Baxter equation,
/// with x^1 = psi, x^2 = alpha, x_1 = q_psi^a P_a, x_2 = q_alpha^a J_a +
/// q_theta^a P_a.
Tensor3 cdybe_residual_full(const DynRSpec& s, double psi, double alpha);

/// The reduced residual: 27 Upsilon components and the scalar Omega.
struct ReducedResidual {
  double upsilon[3][3][3] = {};
  double omega = 0.0;

  double max_abs() const;
  std::array<double, 27> upsilon_flat() const;
};

ReducedResidual cdybe_residual_reduced(const DynRSpec& s, double psi, double alpha);

/// Canonical embedding of (Upsilon, Omega) into the triple tensor space;
/// equals cdybe_residual_full for any family of the structural shape.  The
/// component signs are frozen against a brute-force comparison with the full
/// residual.
Tensor3 embed_reduced(const ReducedResidual& r);

/// Residuals of the three supplementary conditions.  The first and third are
/// vector equations, the second carries two free indices.
struct QRelationsResidual {
  Vec3 line1 = Vec3::Zero();
  Mat3 line2 = Mat3::Zero();
  Vec3 line3 = Vec3::Zero();

  double max_abs() const;
  /// Nine summary scalars: line1 components, row maxima of line2, line3
  /// components.
  std::array<double, 9> summary9() const;
};

QRelationsResidual qrelations_residual(const DynRSpec& s, double psi, double alpha);

/// Reduced systems valid for normal-form specs (V = 1/2 eta + 1/2 eps.w);
/// throws MissingNormalFormError when the symmetric part of V - 1/2 eta
/// exceeds 1e-10.
struct SimplifiedResiduals {
  // per displayed equation of the reduced CDYBE system:
  // scalar 1 + w^2 + 2 q_psi . dw, max |dw ^ dm_alpha|, max |dm_alpha q_alpha
  // + 1/2 dw q_psi|
  std::array<double, 3> cdybe_side{};
  // reduced supplementary system: line1 components, row maxima of the matrix
  // line, line3 components
  std::array<double, 9> q_side{};

  double max_abs() const;
};

SimplifiedResiduals simplified_residuals(const DynRSpec& s, double psi, double alpha);

/// Built-in families.
DynRSpec special_solution(double mu1, double mu2, double s1, double s2);
DynRSpec simple_family(const ScalarFn& gamma, double c);
DynRSpec standard_a();
DynRSpec standard_b();

/// Family with all psi-dependence tabulated on natural cubic splines; V is of
/// normal form, m and q_theta are affine in alpha.
struct TabulatedData {
  std::vector<double> psi;
  std::vector<Vec3> w, m0, m1, q_psi, q_alpha, q_theta0, q_theta1;
};
DynRSpec tabulated_spec(const TabulatedData& data);

/// Grid for the non-existence scan over constant lightlike data.
struct LightlikeScanGrid {
  std::vector<double> lambda{-2.0, -1.0, -0.5, 0.5, 1.0, 2.0};   // q_psi scale
  std::vector<double> kappa{-2.0, -1.0, -0.5, 0.5, 1.0, 2.0};    // q_alpha scale
  std::vector<double> sigma{-2.0, -1.0, -0.25, 0.0, 0.25, 1.0, 2.0};  // Q scale
  std::vector<double> omega{-2.0, -1.0, -0.25, 0.0, 0.25, 1.0, 2.0};  // w scale
  std::vector<double> comp{-1.0, 0.0, 1.0};  // q_theta, m0, m1 components
};

struct LightlikeScanReport {
  double min_residual = 0.0;
  double bound = 0.1;  // frozen from the calibration scan
  std::array<double, 5> argmin{};  // lambda, kappa, sigma, omega, comp scale
  bool passed() const { return min_residual > bound; }
};

/// Scans constant lightlike (q_psi, q_alpha) data with the V-pattern the
/// non-existence argument forces, reporting the smallest combined residual.
LightlikeScanReport no_lightlike_constant_scan(const LightlikeScanGrid& grid = {});

/// Negative-control helpers.
DynRSpec perturb_m(const DynRSpec& s, const Vec3& dm);
DynRSpec perturb_q_theta_psi_e2(const DynRSpec& s, double amount);

/// Structural invariants of the family shape that the callback signatures do
/// not already enforce: m and q_theta affine in alpha, q_psi parallel to
/// q_alpha, symmetric part of r equal to the pairing dual.
struct SpecStructureReport {
  double m_quadratic_alpha = 0.0;        // second alpha-difference of m
  double q_theta_quadratic_alpha = 0.0;  // second alpha-difference of q_theta
  double wedge_q = 0.0;                  // max |q_psi ^ q_alpha|
  double sym_deviation = 0.0;            // max |sym(r) - casimir|
  double max_abs() const;
};

SpecStructureReport check_spec_structure(const DynRSpec& s,
                                         const std::vector<double>& psis,
                                         const std::vector<double>& alphas);

}  // namespace dynr
