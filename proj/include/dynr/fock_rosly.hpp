#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynr/tensor_space.hpp"

namespace dynr {

struct LabelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Marked surface: n punctures, genus g, with the fixed linear order
/// M1 < ... < Mn < A1,B1 < ... < Ag,Bg of the holonomy copies.
struct SurfaceData {
  int n = 0;
  int g = 0;
  /// optional per-puncture conjugacy parameters (mu_i, s_i)
  std::vector<std::pair<double, double>> conjugacy;

  int copies() const { return n + 2 * g; }
  bool is_puncture(int c) const { return c < n; }
  int a_copy(int j) const { return n + 2 * j; }      // A_{j+1}
  int b_copy(int j) const { return n + 2 * j + 1; }  // B_{j+1}
  int handle_of(int c) const { return (c - n) / 2; }
  std::string label(int c) const;
  int copy_of_label(const std::string& label) const;
};

/// A labelled tuple of holonomies.
struct PhasePoint {
  SurfaceData surface;
  std::vector<PoincareElement> h;

  PhasePoint() = default;
  PhasePoint(SurfaceData s) : surface(s), h(s.copies()) {}
  const PoincareElement& at(int c) const { return h.at(c); }
  PoincareElement& at(int c) { return h.at(c); }
};

/// Flow direction conventions, matching the invariant vector fields:
/// Left:  d/dt f(exp(-t T) . h),   Right: d/dt f(h . exp(t T)).
enum class Side { Left = 0, Right = 1 };

/// Move one copy along a group flow (exact group elements, any t).
PhasePoint flow(const PhasePoint& p, int copy, int gen, Side side, double t);

/// Conjugate every copy by the same group element.
PhasePoint conjugate_all(const PhasePoint& p, const PoincareElement& h);

/// Smooth function on a PhasePoint with a directional-derivative oracle per
/// copy, generator (global order P0..J2) and side.  When no analytic oracle
/// is installed, derivatives fall back to central differences along the
/// exact flows.
struct Observable {
  std::function<double(const PhasePoint&)> eval;
  std::function<double(const PhasePoint&, int copy, int gen, Side)> dflow;
  double fd_step = 1e-6;

  double operator()(const PhasePoint& p) const { return eval(p); }
  double deriv(const PhasePoint& p, int copy, int gen, Side side) const;
};

/// Coordinate observables (analytic derivatives).
Observable obs_j(int copy, int comp);
Observable obs_u(int copy, int row, int col);
Observable obs_trace_u(int copy);
Observable obs_trace_jJu(int copy);
Observable obs_const(double value);

/// Combinators that propagate analytic derivatives.
Observable obs_linear(std::vector<std::pair<double, Observable>> terms,
                      double offset = 0.0);
Observable obs_product(Observable f, Observable g);
Observable obs_compose(std::function<double(double)> fn,
                       std::function<double(double)> dfn, Observable inner);

/// Wrap an arbitrary callback; derivatives by finite differences.
Observable obs_wrap(std::function<double(const PhasePoint&)> fn,
                    double fd_step = 1e-6);

/// All first derivatives of an observable at a point: [copy][side][gen].
struct DerivTable {
  int copies = 0;
  std::vector<double> d;  // copy*12 + side*6 + gen

  double get(int copy, Side side, int gen) const {
    return d[copy * 12 + static_cast<int>(side) * 6 + gen];
  }
};

DerivTable tabulate(const Observable& f, const PhasePoint& p);

/// Fock-Rosly bracket {F,G} at p for the (constant) r-matrix r.
double fr_bracket(const Tensor2& r, const Observable& F, const Observable& G,
                  const PhasePoint& p);

/// Same, from precomputed derivative tables.
double fr_bracket_tab(const Tensor2& r, const DerivTable& F, const DerivTable& G,
                      const SurfaceData& s);

/// Coefficients of the invariant field realizing j^a_X over the per-copy
/// Lorentz generators: field = sum coef[copy][side][b] J^{side,b}_copy.
struct JFieldCoeffs {
  std::vector<std::array<std::array<double, 3>, 2>> coef;
};

JFieldCoeffs jfield_coefficients(int label_copy, int a, const PhasePoint& p);

/// Apply the field to an observable (Lie derivative).
double apply_jfield(const JFieldCoeffs& field, const Observable& f,
                    const PhasePoint& p);

/// A word in the holonomies, h_{c1}^{e1} ... h_{ck}^{ek}.
struct GroupWord {
  std::vector<std::pair<int, int>> factors;  // (copy, +1 or -1)

  PoincareElement eval(const PhasePoint& p) const;
  Mat4 eval4(const PhasePoint& p) const;
  /// d/dt of the 4x4 product under the flow of one copy.
  Mat4 dflow4(const PhasePoint& p, int copy, int gen, Side side) const;

  static GroupWord relation_word(const SurfaceData& s);
  static GroupWord pair_inverse_word(int c1, int c2);  // h_{c1}^-1 h_{c2}^-1
};

/// Observables built on a word W = (u_W, j-coordinate j_W):
///   word_j:          j_W^comp
///   word_tr_Ju_inv:  Tr(J_a . u_W^-1)
///   word_trace_u:    Tr(u_W)   (equal to the trace of the inverse)
///   word_tr_jJu_inv: Tr(j_W^a J_a . u_W^-1)
Observable obs_word_j(const GroupWord& w, int comp);
Observable obs_word_tr_Ju_inv(const GroupWord& w, int a);
Observable obs_word_trace_u(const GroupWord& w);
Observable obs_word_tr_jJu_inv(const GroupWord& w);

/// Lorentz part u_C and translation j_C of the cycle constraint,
/// (u_C^-1, j_C) = M1^-1 ... Mn^-1 [A1^-1,B1] ... [Ag^-1,Bg].
std::pair<Mat3, Vec3> relation_defect(const PhasePoint& p);

/// Brackets of the trace Casimirs against every coordinate observable.
struct CasimirReport {
  double max_abs = 0.0;
};
CasimirReport casimir_check(const PhasePoint& p);

}  // namespace dynr
