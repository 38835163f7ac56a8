#pragma once

#include "dynr/extended_bracket.hpp"

namespace dynr {

struct ShapeViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dynamical Poincare transformation p(psi,alpha) = (g(psi), -Ad(g) t) with
/// t(psi,alpha) = t0(psi) + alpha t1(psi); the stored j-coordinate of p is t.
struct DynPoincare {
  std::function<Mat3(double)> g;
  std::function<Vec3(double)> t0, t1;
  // optional analytic psi-derivatives
  std::function<Mat3(double)> dg;
  std::function<Vec3(double)> dt0, dt1;

  PoincareElement at(double psi, double alpha) const;
  Vec3 t(double psi, double alpha) const { return t0(psi) + alpha * t1(psi); }

  static DynPoincare identity();
  static DynPoincare lorentz(std::function<Mat3(double)> g,
                             std::function<Mat3(double)> dg = nullptr);
  static DynPoincare translation(std::function<Vec3(double)> t0,
                                 std::function<Vec3(double)> t1,
                                 std::function<Vec3(double)> dt0 = nullptr,
                                 std::function<Vec3(double)> dt1 = nullptr);
  static DynPoincare constant(const PoincareElement& p);
};

/// Pointwise product p1(psi,alpha) . p2(psi,alpha); stays in the class.
DynPoincare dynp_mul(const DynPoincare& p1, const DynPoincare& p2);

/// Maurer-Cartan coefficients p^-1 d_psi p and p^-1 d_alpha p.
AlgebraElement dynp_dpsi(const DynPoincare& p, double psi, double alpha);
AlgebraElement dynp_dalpha(const DynPoincare& p, double psi, double alpha);

/// (psi, alpha, M3,...) -> (psi, alpha, p M3 p^-1, ...).
ExtPhasePoint transform_point(const DynPoincare& p, const ExtPhasePoint& pt);

/// The transformed family: q's rotate (and q_theta picks up -q_alpha ^ t),
/// the tensor picks up the Maurer-Cartan twist before the adjoint action.
/// Throws ShapeViolation if the transformed tensor leaves the structural
/// family (which would indicate an implementation bug).
DynRSpec transform_spec(const DynPoincare& p, const DynRSpec& spec);

/// |{F o Phi, G o Phi}_D(pt) - {F,G}^p_D(Phi(pt))|.
double poisson_map_check(const DynPoincare& p, const DynRSpec& spec,
                         const ExtObservable& F, const ExtObservable& G,
                         const ExtPhasePoint& pt);

/// Gauge twist of a standard solution by
/// Pi(psi,alpha) = (exp(-beta J_j), -[gamma + alpha delta] e_j), j = 0 for
/// case 'a' and 1 for case 'b'.
DynRSpec ev_twist(char case_ab, const ScalarFn& beta, const ScalarFn& gamma,
                  const ScalarFn& delta);

/// Closed form r - [beta'(psi) - delta(psi)] P_j ^ J_j of the twisted tensor.
Tensor2 ev_twist_tensor(char case_ab, const ScalarFn& beta, const ScalarFn& delta,
                        double psi, double alpha);

/// Pullback along the diffeomorphism y1 = f(psi), y2 = h(psi) + alpha g(psi):
/// the returned family evaluates the base one at (y1, y2) with the q-maps
/// rescaled by the Jacobian, so solutions stay solutions.
DynRSpec reparametrize_spec(const DynRSpec& spec, const ScalarFn& f,
                            const ScalarFn& g, const ScalarFn& h);

}  // namespace dynr
