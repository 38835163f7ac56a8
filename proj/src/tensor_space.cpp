#include "dynr/tensor_space.hpp"

#include <cmath>

namespace dynr {

namespace {

// f[alpha][beta][gamma]: [T_alpha, T_beta] = f_{alpha beta}^gamma T_gamma.
struct StructureConstants {
  double f[6][6][6] = {};
  StructureConstants() {
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b) {
        const AlgebraElement br =
            lie_bracket(AlgebraElement::basis(a), AlgebraElement::basis(b));
        for (int g = 0; g < 6; ++g) f[a][b][g] = br.coeff(g);
      }
  }
};

const StructureConstants& sc() {
  static const StructureConstants s;
  return s;
}

}  // namespace

Tensor2 Tensor2::outer(const AlgebraElement& x, const AlgebraElement& y) {
  Tensor2 t;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) t.c(a, b) = x.coeff(a) * y.coeff(b);
  return t;
}

Tensor3& Tensor3::operator+=(const Tensor3& o) {
  for (int i = 0; i < 216; ++i) c[i] += o.c[i];
  return *this;
}

Tensor3 Tensor3::operator-(const Tensor3& o) const {
  Tensor3 out;
  for (int i = 0; i < 216; ++i) out.c[i] = c[i] - o.c[i];
  return out;
}

Tensor3 Tensor3::operator*(double s) const {
  Tensor3 out;
  for (int i = 0; i < 216; ++i) out.c[i] = c[i] * s;
  return out;
}

double Tensor3::max_abs() const {
  double m = 0.0;
  for (double v : c) m = std::max(m, std::abs(v));
  return m;
}

double Tensor3::rms() const {
  double s = 0.0;
  for (double v : c) s += v * v;
  return std::sqrt(s / 216.0);
}

Tensor3 slot_bracket_12_13(const Tensor2& r, const Tensor2& s) {
  Tensor3 out;
  const auto& f = sc().f;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      if (r.c(a, b) == 0.0) continue;
      for (int g = 0; g < 6; ++g)
        for (int d = 0; d < 6; ++d) {
          const double w = r.c(a, b) * s.c(g, d);
          if (w == 0.0) continue;
          for (int m = 0; m < 6; ++m)
            if (f[a][g][m] != 0.0) out.at(m, b, d) += w * f[a][g][m];
        }
    }
  return out;
}

Tensor3 slot_bracket_12_23(const Tensor2& r, const Tensor2& s) {
  Tensor3 out;
  const auto& f = sc().f;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      if (r.c(a, b) == 0.0) continue;
      for (int g = 0; g < 6; ++g)
        for (int d = 0; d < 6; ++d) {
          const double w = r.c(a, b) * s.c(g, d);
          if (w == 0.0) continue;
          for (int m = 0; m < 6; ++m)
            if (f[b][g][m] != 0.0) out.at(a, m, d) += w * f[b][g][m];
        }
    }
  return out;
}

Tensor3 slot_bracket_13_23(const Tensor2& r, const Tensor2& s) {
  Tensor3 out;
  const auto& f = sc().f;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      if (r.c(a, b) == 0.0) continue;
      for (int g = 0; g < 6; ++g)
        for (int d = 0; d < 6; ++d) {
          const double w = r.c(a, b) * s.c(g, d);
          if (w == 0.0) continue;
          for (int m = 0; m < 6; ++m)
            if (f[b][d][m] != 0.0) out.at(a, g, m) += w * f[b][d][m];
        }
    }
  return out;
}

Tensor3 yang_baxter_bracket(const Tensor2& r) {
  Tensor3 out = slot_bracket_12_13(r, r);
  out += slot_bracket_12_23(r, r);
  out += slot_bracket_13_23(r, r);
  return out;
}

Tensor2 symmetric_part(const Tensor2& r) {
  return {0.5 * (r.c + r.c.transpose())};
}

Tensor2 antisymmetric_part(const Tensor2& r) {
  return {0.5 * (r.c - r.c.transpose())};
}

Tensor2 flip(const Tensor2& r) { return {r.c.transpose()}; }

Tensor2 ad2_action(const PoincareElement& p, const Tensor2& r) {
  const Mat6 ad = adjoint_matrix(p);
  return {ad * r.c * ad.transpose()};
}

Tensor2 r_pj() {
  Tensor2 t;
  for (int a = 0; a < 3; ++a) t.c(a, 3 + a) = (a == 0) ? 1.0 : -1.0;
  return t;
}

Tensor2 casimir_sym() { return symmetric_part(r_pj()); }

Tensor3 insert_slot(const AlgebraElement& x, const Tensor2& t, int slot) {
  Tensor3 out;
  for (int m = 0; m < 6; ++m) {
    const double xv = x.coeff(m);
    if (xv == 0.0) continue;
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b) {
        const double tv = t.c(a, b);
        if (tv == 0.0) continue;
        if (slot == 1)
          out.at(m, a, b) += xv * tv;
        else if (slot == 2)
          out.at(a, m, b) += xv * tv;
        else
          out.at(a, b, m) += xv * tv;
      }
  }
  return out;
}

}  // namespace dynr
