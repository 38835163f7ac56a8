#pragma once

#include <array>

#include "dynr/iso21.hpp"

namespace dynr {

/// Element of iso(2,1) (x) iso(2,1) as a dense 6x6 coefficient array over the
/// global basis order (P0,P1,P2,J0,J1,J2).
struct Tensor2 {
  Mat6 c = Mat6::Zero();

  double& at(int alpha, int beta) { return c(alpha, beta); }
  double at(int alpha, int beta) const { return c(alpha, beta); }

  Tensor2 operator+(const Tensor2& o) const { return {c + o.c}; }
  Tensor2 operator-(const Tensor2& o) const { return {c - o.c}; }
  Tensor2 operator*(double s) const { return {c * s}; }
  double max_abs() const { return c.cwiseAbs().maxCoeff(); }

  static Tensor2 outer(const AlgebraElement& x, const AlgebraElement& y);
};

/// Element of the triple tensor power, dense 6x6x6.
struct Tensor3 {
  std::array<double, 216> c{};

  double& at(int a, int b, int g) { return c[(a * 6 + b) * 6 + g]; }
  double at(int a, int b, int g) const { return c[(a * 6 + b) * 6 + g]; }

  Tensor3& operator+=(const Tensor3& o);
  Tensor3 operator-(const Tensor3& o) const;
  Tensor3 operator*(double s) const;
  double max_abs() const;
  double rms() const;
};

/// [r_12, s_13], [r_12, s_23], [r_13, s_23]: commutators of the slot
/// embeddings, contracted through the iso(2,1) structure constants.
Tensor3 slot_bracket_12_13(const Tensor2& r, const Tensor2& s);
Tensor3 slot_bracket_12_23(const Tensor2& r, const Tensor2& s);
Tensor3 slot_bracket_13_23(const Tensor2& r, const Tensor2& s);

/// [[r,r]] = [r_12,r_13] + [r_12,r_23] + [r_13,r_23].
Tensor3 yang_baxter_bracket(const Tensor2& r);

Tensor2 symmetric_part(const Tensor2& r);
Tensor2 antisymmetric_part(const Tensor2& r);
Tensor2 flip(const Tensor2& r);

/// (Ad(p) (x) Ad(p)) r, slotwise adjoint action.
Tensor2 ad2_action(const PoincareElement& p, const Tensor2& r);

/// The classical r-matrix P_a (x) J^a.
Tensor2 r_pj();

/// Its symmetric part, (1/2)(P_a (x) J^a + J^a (x) P_a), dual to the pairing.
Tensor2 casimir_sym();

/// x placed in one slot against a Tensor2 in the remaining two, preserving
/// slot order: slot=1 gives x (x) t, slot=2 gives t1 (x) x (x) t2, slot=3
/// gives t (x) x.
Tensor3 insert_slot(const AlgebraElement& x, const Tensor2& t, int slot);

}  // namespace dynr
