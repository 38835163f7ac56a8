#pragma once

#include "dynr/dyn_rmatrix.hpp"
#include "dynr/fock_rosly.hpp"

namespace dynr {

/// Point of R^2 x ISO(2,1)^{n-2+2g}: the two dynamical variables plus the
/// remaining holonomies (labelled M3,... in the (n,g) picture, stored as a
/// PhasePoint with n-2 punctures).
struct ExtPhasePoint {
  double psi = 0.0;
  double alpha = 0.0;
  PhasePoint rest;
};

/// Observable on the extended space.  The dependency flags let structurally
/// zero brackets short-circuit before any finite differencing.
struct ExtObservable {
  std::function<double(const ExtPhasePoint&)> eval;
  bool dep_psi = true;
  bool dep_alpha = true;
  bool dep_hol = true;

  // optional analytic derivatives
  std::function<double(const ExtPhasePoint&)> d_psi, d_alpha;
  std::function<double(const ExtPhasePoint&, int copy, int gen, Side)> dflow;

  double fd_step = 1e-5;

  double operator()(const ExtPhasePoint& pt) const { return eval(pt); }
  double deriv_psi(const ExtPhasePoint& pt) const;
  double deriv_alpha(const ExtPhasePoint& pt) const;
  double deriv_flow(const ExtPhasePoint& pt, int copy, int gen, Side side) const;
};

ExtObservable ext_psi();
ExtObservable ext_alpha();
/// Lift a holonomy observable to the extended space.
ExtObservable ext_hol(Observable f);
ExtObservable ext_j(int copy, int comp);
ExtObservable ext_u(int copy, int row, int col);
ExtObservable ext_linear(std::vector<std::pair<double, ExtObservable>> terms,
                         double offset = 0.0);
ExtObservable ext_product(ExtObservable f, ExtObservable g);
/// Arbitrary callback; derivatives by finite differences, all deps assumed.
ExtObservable ext_wrap(std::function<double(const ExtPhasePoint&)> fn,
                       double fd_step = 1e-5);

/// The extended bracket driven by a dynamical r-matrix family:
///   {psi,alpha} = 0, {psi,f} = 0,
///   {psi, j_X}  = -(1 - Ad(u_X)) q_psi,
///   {alpha, f}  = sum_Y q_alpha^a (J^R_a + J^L_a)_Y f,
///   {alpha,j_X} = -(1 - Ad(u_X)) q_theta - q_alpha ^ j_X,
///   {F, G}      = B_{r(psi,alpha)}(dF (x) dG)  on holonomy functions.
double ext_bracket(const DynRSpec& spec, const ExtObservable& F,
                   const ExtObservable& G, const ExtPhasePoint& pt);

/// Cyclic Jacobi sum {F,{G,H}} + {G,{H,F}} + {H,{F,G}} with the inner
/// brackets differentiated by central differences (outer step 1e-4).
double jacobi_residual(const DynRSpec& spec, const ExtObservable& F,
                       const ExtObservable& G, const ExtObservable& H,
                       const ExtPhasePoint& pt);

}  // namespace dynr
