#include "dynr/dyn_rmatrix.hpp"

#include <cmath>
#include <memory>

#include "dynr/numerics.hpp"

namespace dynr {

namespace {

inline double fd_step(double x) { return 1e-4 * std::max(1.0, std::abs(x)); }

inline double etad(int a) { return a == 0 ? 1.0 : -1.0; }

// fourth-order central difference; keeps the truncation error harmless even
// close to the coth-type singularities of the built-in families
template <typename F>
auto fd4(const F& f, double x) -> decltype(f(x)) {
  const double h = fd_step(x);
  return (f(x - 2.0 * h) - f(x + 2.0 * h) + 8.0 * (f(x + h) - f(x - h))) /
         (12.0 * h);
}

}  // namespace

double ScalarFn::d1(double x) const {
  if (df) return df(x);
  const double h = fd_step(x);
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

double ScalarFn::d2(double x) const {
  if (d2f) return d2f(x);
  if (df) {
    const double h = fd_step(x);
    return (df(x + h) - df(x - h)) / (2.0 * h);
  }
  const double h = 1e-4 * std::max(1.0, std::abs(x));
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

ScalarFn ScalarFn::constant(double c) {
  ScalarFn s;
  s.f = [c](double) { return c; };
  s.df = [](double) { return 0.0; };
  s.d2f = [](double) { return 0.0; };
  s.d3f = [](double) { return 0.0; };
  return s;
}

void DynRSpec::require_domain(double psi) const {
  if (!in_domain(psi)) throw DomainError(name + ": psi outside the family domain");
}

bool DynRSpec::has_analytic_derivatives() const {
  return dV && dm_dpsi && dm_dalpha && dq_psi && dq_alpha && dq_theta_dpsi &&
         dq_theta_dalpha;
}

Mat3 spec_dV(const DynRSpec& s, double psi) {
  if (s.dV) return s.dV(psi);
  return fd4([&](double p) { return Mat3(s.V(p)); }, psi);
}

Vec3 spec_dm_dpsi(const DynRSpec& s, double psi, double alpha) {
  if (s.dm_dpsi) return s.dm_dpsi(psi, alpha);
  return fd4([&](double p) { return Vec3(s.m(p, alpha)); }, psi);
}

Vec3 spec_dm_dalpha(const DynRSpec& s, double psi, double alpha) {
  if (s.dm_dalpha) return s.dm_dalpha(psi, alpha);
  return fd4([&](double a) { return Vec3(s.m(psi, a)); }, alpha);
}

Vec3 spec_dq_psi(const DynRSpec& s, double psi) {
  if (s.dq_psi) return s.dq_psi(psi);
  return fd4([&](double p) { return Vec3(s.q_psi(p)); }, psi);
}

Vec3 spec_dq_alpha(const DynRSpec& s, double psi) {
  if (s.dq_alpha) return s.dq_alpha(psi);
  return fd4([&](double p) { return Vec3(s.q_alpha(p)); }, psi);
}

Vec3 spec_dq_theta_dpsi(const DynRSpec& s, double psi, double alpha) {
  if (s.dq_theta_dpsi) return s.dq_theta_dpsi(psi, alpha);
  return fd4([&](double p) { return Vec3(s.q_theta(p, alpha)); }, psi);
}

Vec3 spec_dq_theta_dalpha(const DynRSpec& s, double psi, double alpha) {
  if (s.dq_theta_dalpha) return s.dq_theta_dalpha(psi, alpha);
  return fd4([&](double a) { return Vec3(s.q_theta(psi, a)); }, alpha);
}

Vec3 w_from_V(const Mat3& v) {
  const Mat3 a = v - v.transpose();
  return Vec3(a(1, 2), a(0, 2), -a(0, 1));
}

Mat3 eps_matrix(const Vec3& x) {
  const Vec3 xl = lower_index(x);
  Mat3 m;
  for (int b = 0; b < 3; ++b)
    for (int c = 0; c < 3; ++c) {
      double s = 0.0;
      for (int d = 0; d < 3; ++d) s += epsilon_upper(b, c, d) * xl(d);
      m(b, c) = s;
    }
  return m;
}

namespace {

// r = P_a (x) J^a - V^{bc} (P_b (x) J_c - J_c (x) P_b) + eps^{bcd} m_d P_b (x) P_c
Tensor2 assemble_r(const Mat3& v, const Vec3& m) {
  Tensor2 r = r_pj();
  const Mat3 pp = eps_matrix(m);
  for (int b = 0; b < 3; ++b)
    for (int c = 0; c < 3; ++c) {
      r.c(b, 3 + c) -= v(b, c);
      r.c(3 + c, b) += v(b, c);
      r.c(b, c) += pp(b, c);
    }
  return r;
}

// d r / d coordinate, given dV and dm along it (dV = 0 for the alpha slot)
Tensor2 assemble_dr(const Mat3& dv, const Vec3& dm) {
  Tensor2 r;
  const Mat3 pp = eps_matrix(dm);
  for (int b = 0; b < 3; ++b)
    for (int c = 0; c < 3; ++c) {
      r.c(b, 3 + c) -= dv(b, c);
      r.c(3 + c, b) += dv(b, c);
      r.c(b, c) += pp(b, c);
    }
  return r;
}

Tensor3 cdybe_rhs(const AlgebraElement& x1, const Tensor2& dr_psi,
                  const AlgebraElement& x2, const Tensor2& dr_alpha) {
  Tensor3 rhs = insert_slot(x1, dr_psi, 1);
  rhs += insert_slot(x1, dr_psi, 2) * (-1.0);
  rhs += insert_slot(x1, dr_psi, 3);
  rhs += insert_slot(x2, dr_alpha, 1);
  rhs += insert_slot(x2, dr_alpha, 2) * (-1.0);
  rhs += insert_slot(x2, dr_alpha, 3);
  return rhs;
}

}  // namespace

Tensor2 evaluate_r(const DynRSpec& s, double psi, double alpha) {
  s.require_domain(psi);
  return assemble_r(s.V(psi), s.m(psi, alpha));
}

Tensor3 cdybe_residual_full(const DynRSpec& s, double psi, double alpha) {
  s.require_domain(psi);
  const Tensor2 r = assemble_r(s.V(psi), s.m(psi, alpha));
  const Tensor2 dr_psi = assemble_dr(spec_dV(s, psi), spec_dm_dpsi(s, psi, alpha));
  const Tensor2 dr_alpha = assemble_dr(Mat3::Zero(), spec_dm_dalpha(s, psi, alpha));
  const AlgebraElement x1(Vec3::Zero(), s.q_psi(psi));
  const AlgebraElement x2(s.q_alpha(psi), s.q_theta(psi, alpha));
  return yang_baxter_bracket(r) - cdybe_rhs(x1, dr_psi, x2, dr_alpha);
}

double ReducedResidual::max_abs() const {
  double m = std::abs(omega);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) m = std::max(m, std::abs(upsilon[a][b][c]));
  return m;
}

std::array<double, 27> ReducedResidual::upsilon_flat() const {
  std::array<double, 27> out{};
  int k = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) out[k++] = upsilon[a][b][c];
  return out;
}

ReducedResidual cdybe_residual_reduced(const DynRSpec& s, double psi, double alpha) {
  s.require_domain(psi);
  ReducedResidual out;
  const Mat3 v = s.V(psi);
  const Mat3 dv = spec_dV(s, psi);
  const Vec3 m = s.m(psi, alpha);
  const Vec3 dm_psi = spec_dm_dpsi(s, psi, alpha);
  const Vec3 dm_alpha = spec_dm_dalpha(s, psi, alpha);
  const Vec3 dm_alpha_low = lower_index(dm_alpha);
  const Vec3 qpsi = s.q_psi(psi);
  const Vec3 qalpha = s.q_alpha(psi);
  const Vec3 qtheta = s.q_theta(psi, alpha);
  const Vec3 w = w_from_V(v);

  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        double u = 0.0;
        for (int d = 0; d < 3; ++d)
          u += qalpha(a) * epsilon_upper(b, c, d) * dm_alpha_low(d);
        u += -qpsi(b) * dv(c, a) + qpsi(c) * dv(b, a);
        for (int d = 0; d < 3; ++d)
          for (int g = 0; g < 3; ++g) {
            u -= v(b, d) * v(c, g) * epsilon_lower(d, g, a) * etad(a);
            u -= v(d, a) * v(c, g) * epsilon_lower(d, g, b) * etad(b);
            u += v(d, a) * v(b, g) * epsilon_lower(d, g, c) * etad(c);
          }
        for (int d = 0; d < 3; ++d)
          u -= v(d, a) * epsilon_upper(b, c, d) * etad(d);
        out.upsilon[a][b][c] = u;
      }

  out.omega = minkowski_dot(qpsi, dm_psi) + minkowski_dot(qtheta, dm_alpha) +
              minkowski_dot(w, m);
  return out;
}

Tensor3 embed_reduced(const ReducedResidual& r) {
  // Calibrated against cdybe_residual_full: LHS - RHS carries -Upsilon on the
  // (J,P,P) patterns and -Omega on eps^{abc} P (x) P (x) P.
  Tensor3 out;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        const double u = r.upsilon[a][b][c];
        out.at(3 + a, b, c) -= u;
        out.at(b, 3 + a, c) += u;
        out.at(b, c, 3 + a) -= u;
        out.at(a, b, c) -= r.omega * epsilon_upper(a, b, c);
      }
  return out;
}

double QRelationsResidual::max_abs() const {
  return std::max({line1.cwiseAbs().maxCoeff(), line2.cwiseAbs().maxCoeff(),
                   line3.cwiseAbs().maxCoeff()});
}

std::array<double, 9> QRelationsResidual::summary9() const {
  std::array<double, 9> out{};
  for (int i = 0; i < 3; ++i) {
    out[i] = line1(i);
    out[3 + i] = line2.row(i).cwiseAbs().maxCoeff();
    out[6 + i] = line3(i);
  }
  return out;
}

QRelationsResidual qrelations_residual(const DynRSpec& s, double psi, double alpha) {
  s.require_domain(psi);
  QRelationsResidual out;
  const Mat3 v = s.V(psi);
  const Vec3 m = s.m(psi, alpha);
  const Vec3 qpsi = s.q_psi(psi);
  const Vec3 qalpha = s.q_alpha(psi);
  const Vec3 qtheta = s.q_theta(psi, alpha);
  const Vec3 dqpsi = spec_dq_psi(s, psi);
  const Vec3 dqalpha = spec_dq_alpha(s, psi);
  const Vec3 dqtheta_psi = spec_dq_theta_dpsi(s, psi, alpha);
  const Vec3 dqtheta_alpha = spec_dq_theta_dalpha(s, psi, alpha);

  const double vtrace = v(0, 0) - v(1, 1) - v(2, 2);  // V^b_b

  out.line1 = qpsi + wedge(qpsi, dqpsi) + v.transpose() * lower_index(qpsi) -
              vtrace * qpsi;

  // eps_{cde} q_alpha^c V^{de} and T^b = eps^b_{de} V^{de}
  double scal = 0.0;
  for (int c = 0; c < 3; ++c)
    for (int d = 0; d < 3; ++d)
      for (int e = 0; e < 3; ++e) scal += epsilon_lower(c, d, e) * qalpha(c) * v(d, e);
  Vec3 t = Vec3::Zero();
  for (int b = 0; b < 3; ++b)
    for (int d = 0; d < 3; ++d)
      for (int e = 0; e < 3; ++e)
        t(b) += epsilon_upper(b, d, e) * etad(d) * etad(e) * v(d, e);

  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      double r = wedge(qalpha, v.row(b).transpose())(a) +
                 wedge(qalpha, v.row(a).transpose())(b);
      if (a == b) r += scal * etad(a);
      r -= qalpha(a) * t(b);
      r += qalpha(a) * dqtheta_alpha(b) - qpsi(b) * dqalpha(a);
      out.line2(a, b) = r;
    }

  out.line3 = qtheta + wedge(qtheta, dqtheta_alpha) + wedge(qpsi, dqtheta_psi) -
              wedge(m, qalpha) + v.transpose() * lower_index(qtheta) -
              vtrace * qtheta;
  return out;
}

double SimplifiedResiduals::max_abs() const {
  double m = 0.0;
  for (double x : cdybe_side) m = std::max(m, std::abs(x));
  for (double x : q_side) m = std::max(m, std::abs(x));
  return m;
}

SimplifiedResiduals simplified_residuals(const DynRSpec& s, double psi, double alpha) {
  s.require_domain(psi);
  const Mat3 v = s.V(psi);
  const Mat3 sym = 0.5 * (v + v.transpose()) - 0.5 * minkowski_metric();
  if (sym.cwiseAbs().maxCoeff() > 1e-10)
    throw MissingNormalFormError(s.name + ": V is not 1/2 eta + 1/2 eps.w");

  const Vec3 w = w_from_V(v);
  const Vec3 dw = w_from_V(spec_dV(s, psi));
  const Vec3 m = s.m(psi, alpha);
  const Vec3 dm_alpha = spec_dm_dalpha(s, psi, alpha);
  const Vec3 qpsi = s.q_psi(psi);
  const Vec3 qalpha = s.q_alpha(psi);
  const Vec3 qtheta = s.q_theta(psi, alpha);
  const Vec3 dqpsi = spec_dq_psi(s, psi);
  const Vec3 dqalpha = spec_dq_alpha(s, psi);
  const Vec3 dqtheta_psi = spec_dq_theta_dpsi(s, psi, alpha);
  const Vec3 dqtheta_alpha = spec_dq_theta_dalpha(s, psi, alpha);

  SimplifiedResiduals out;
  out.cdybe_side[0] =
      1.0 + minkowski_dot(w, w) + 2.0 * minkowski_dot(qpsi, dw);
  out.cdybe_side[1] = wedge(dw, dm_alpha).cwiseAbs().maxCoeff();
  double worst = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      worst = std::max(worst,
                       std::abs(dm_alpha(a) * qalpha(b) + 0.5 * dw(a) * qpsi(b)));
  out.cdybe_side[2] = worst;

  const Vec3 l1 = wedge(qpsi, dqpsi - 0.5 * w);
  Mat3 l2;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      l2(a, b) = 0.5 * (qalpha(b) * w(a) - qalpha(a) * w(b)) +
                 qalpha(a) * dqtheta_alpha(b) - qpsi(b) * dqalpha(a);
  const Vec3 l3 = wedge(qtheta, dqtheta_alpha - 0.5 * w) +
                  wedge(qpsi, dqtheta_psi) + wedge(qalpha, m);
  for (int i = 0; i < 3; ++i) {
    out.q_side[i] = l1(i);
    out.q_side[3 + i] = l2.row(i).cwiseAbs().maxCoeff();
    out.q_side[6 + i] = l3(i);
  }
  return out;
}

namespace {

Mat3 normal_form_V(const Vec3& w) {
  return 0.5 * minkowski_metric() + 0.5 * eps_matrix(w);
}

}  // namespace

DynRSpec special_solution(double mu1, double mu2, double s1, double s2) {
  if (mu1 <= 0.0 || mu1 >= 2.0 * M_PI || mu2 <= 0.0 || mu2 >= 2.0 * M_PI)
    throw ParameterError("special_solution: mu parameters must lie in (0, 2pi)");
  const double c1 = 1.0 / std::tan(0.5 * mu1);
  const double c2 = 1.0 / std::tan(0.5 * mu2);
  const double k1 = s1 / (4.0 * std::pow(std::sin(0.5 * mu1), 2));
  const double k2 = s2 / (4.0 * std::pow(std::sin(0.5 * mu2), 2));

  auto wfun = [c1](double psi) {
    const double ct = 1.0 / std::tanh(psi);
    return Vec3(c1, c1 * ct, -ct);
  };
  auto dwfun = [c1](double psi) {
    const double csch2 = 1.0 / std::pow(std::sinh(psi), 2);
    return Vec3(0.0, -c1 * csch2, csch2);
  };
  auto d2wfun = [c1](double psi) {
    const double csch2 = 1.0 / std::pow(std::sinh(psi), 2);
    const double ct = 1.0 / std::tanh(psi);
    return Vec3(0.0, 2.0 * c1 * csch2 * ct, -2.0 * csch2 * ct);
  };
  auto qfun = [c1, c2](double psi) {
    const double ct = 1.0 / std::tanh(psi);
    const double cs = 1.0 / std::sinh(psi);
    return Vec3(0.5 * (c1 * ct + c2 * cs), 0.5 * c1, -0.5);
  };
  auto dqfun = [c1, c2](double psi) {
    const double csch2 = 1.0 / std::pow(std::sinh(psi), 2);
    const double ch = std::cosh(psi);
    return Vec3(-0.5 * csch2 * (c1 + c2 * ch), 0.0, 0.0);
  };

  DynRSpec s;
  s.name = "special";
  s.psi_lo = 0.0;
  s.normal_form = true;
  s.w = wfun;
  s.V = [wfun](double psi) { return normal_form_V(wfun(psi)); };
  s.dV = [dwfun](double psi) { return Mat3(0.5 * eps_matrix(dwfun(psi))); };
  s.m = [k1, wfun, dwfun](double psi, double alpha) {
    const double ct = 1.0 / std::tanh(psi);
    return Vec3(Vec3(k1, k1 * ct, 0.0) + 0.5 * alpha * dwfun(psi));
  };
  s.dm_dpsi = [k1, dwfun, d2wfun](double psi, double alpha) {
    const double csch2 = 1.0 / std::pow(std::sinh(psi), 2);
    return Vec3(Vec3(0.0, -k1 * csch2, 0.0) + 0.5 * alpha * d2wfun(psi));
  };
  s.dm_dalpha = [dwfun](double psi, double) { return Vec3(0.5 * dwfun(psi)); };
  s.q_psi = qfun;
  s.dq_psi = dqfun;
  s.q_alpha = [qfun](double psi) { return Vec3(-qfun(psi)); };
  s.dq_alpha = [dqfun](double psi) { return Vec3(-dqfun(psi)); };
  s.q_theta = [k1, k2, c1, c2](double psi, double alpha) {
    const double ct = 1.0 / std::tanh(psi);
    const double sh = std::sinh(psi), ch = std::cosh(psi);
    const double q0 =
        k1 * ct + k2 / sh - alpha * (c1 + ch * c2) / (2.0 * sh * sh);
    return Vec3(q0, k1, 0.0);
  };
  s.dq_theta_dpsi = [k1, k2, c1, c2](double psi, double alpha) {
    const double sh = std::sinh(psi), ch = std::cosh(psi);
    const double csch2 = 1.0 / (sh * sh);
    const double dfrac = (c2 * sh * sh - 2.0 * ch * (c1 + c2 * ch)) /
                         (2.0 * sh * sh * sh);
    return Vec3(-k1 * csch2 - k2 * ch * csch2 - alpha * dfrac, 0.0, 0.0);
  };
  s.dq_theta_dalpha = [c1, c2](double psi, double) {
    const double sh = std::sinh(psi), ch = std::cosh(psi);
    return Vec3(-(c1 + ch * c2) / (2.0 * sh * sh), 0.0, 0.0);
  };
  return s;
}

DynRSpec simple_family(const ScalarFn& gamma, double c) {
  if (!gamma.f) throw ParameterError("simple_family: gamma callback required");
  auto radius = [gamma, c](double psi) {
    const double g = gamma(psi);
    return std::sqrt(g * g + 0.25 * (psi - c) * (psi - c));
  };
  auto qfun = [gamma, radius](double psi) {
    return Vec3(gamma(psi), radius(psi), 0.0);
  };
  auto dqfun = [gamma, radius, c](double psi) {
    const double g = gamma(psi), dg = gamma.d1(psi);
    const double r = radius(psi);
    return Vec3(dg, (g * dg + 0.25 * (psi - c)) / r, 0.0);
  };
  auto d2qfun = [gamma, radius, c](double psi) {
    const double g = gamma(psi), dg = gamma.d1(psi), d2g = gamma.d2(psi);
    const double r = radius(psi);
    const double dr = (g * dg + 0.25 * (psi - c)) / r;
    return Vec3(d2g, ((dg * dg + g * d2g + 0.25) - dr * dr) / r, 0.0);
  };

  DynRSpec s;
  s.name = "simple";
  s.normal_form = true;
  s.w = [dqfun](double psi) { return Vec3(2.0 * dqfun(psi)); };
  s.V = [dqfun](double psi) { return normal_form_V(2.0 * dqfun(psi)); };
  s.dV = [d2qfun](double psi) { return Mat3(eps_matrix(d2qfun(psi))); };
  s.m = [d2qfun](double psi, double alpha) { return Vec3(-alpha * d2qfun(psi)); };
  s.dm_dalpha = [d2qfun](double psi, double) { return Vec3(-d2qfun(psi)); };
  // dm_dpsi needs a third derivative of q_psi; left to finite differences.
  s.q_psi = qfun;
  s.dq_psi = dqfun;
  s.q_alpha = qfun;
  s.dq_alpha = dqfun;
  s.q_theta = [dqfun](double psi, double alpha) { return Vec3(alpha * dqfun(psi)); };
  s.dq_theta_dpsi = [d2qfun](double psi, double alpha) {
    return Vec3(alpha * d2qfun(psi));
  };
  s.dq_theta_dalpha = [dqfun](double psi, double) { return dqfun(psi); };
  return s;
}

DynRSpec standard_a() {
  DynRSpec s;
  s.name = "standard_a";
  s.psi_lo = -0.5 * M_PI;
  s.psi_hi = 0.5 * M_PI;
  s.normal_form = true;
  s.w = [](double psi) { return Vec3(-std::tan(0.5 * psi), 0.0, 0.0); };
  s.V = [](double psi) {
    return normal_form_V(Vec3(-std::tan(0.5 * psi), 0.0, 0.0));
  };
  s.dV = [](double psi) {
    const double d = -0.5 / std::pow(std::cos(0.5 * psi), 2);
    return Mat3(0.5 * eps_matrix(Vec3(d, 0.0, 0.0)));
  };
  s.m = [](double psi, double alpha) {
    return Vec3(alpha / (4.0 * std::pow(std::cos(0.5 * psi), 2)), 0.0, 0.0);
  };
  s.dm_dpsi = [](double psi, double alpha) {
    const double c = std::cos(0.5 * psi);
    return Vec3(alpha * std::sin(0.5 * psi) / (4.0 * c * c * c), 0.0, 0.0);
  };
  s.dm_dalpha = [](double psi, double) {
    return Vec3(1.0 / (4.0 * std::pow(std::cos(0.5 * psi), 2)), 0.0, 0.0);
  };
  s.q_psi = [](double) { return Vec3(Vec3::Unit(0)); };
  s.dq_psi = [](double) { return Vec3(Vec3::Zero()); };
  s.q_alpha = [](double) { return Vec3(Vec3::Unit(0)); };
  s.dq_alpha = [](double) { return Vec3(Vec3::Zero()); };
  s.q_theta = [](double, double) { return Vec3(Vec3::Zero()); };
  s.dq_theta_dpsi = [](double, double) { return Vec3(Vec3::Zero()); };
  s.dq_theta_dalpha = [](double, double) { return Vec3(Vec3::Zero()); };
  return s;
}

DynRSpec standard_b() {
  DynRSpec s;
  s.name = "standard_b";
  s.normal_form = true;
  s.w = [](double psi) { return Vec3(0.0, std::tanh(0.5 * psi), 0.0); };
  s.V = [](double psi) {
    return normal_form_V(Vec3(0.0, std::tanh(0.5 * psi), 0.0));
  };
  s.dV = [](double psi) {
    const double d = 0.5 / std::pow(std::cosh(0.5 * psi), 2);
    return Mat3(0.5 * eps_matrix(Vec3(0.0, d, 0.0)));
  };
  s.m = [](double psi, double alpha) {
    return Vec3(0.0, -alpha / (4.0 * std::pow(std::cosh(0.5 * psi), 2)), 0.0);
  };
  s.dm_dpsi = [](double psi, double alpha) {
    const double c = std::cosh(0.5 * psi);
    return Vec3(0.0, alpha * std::sinh(0.5 * psi) / (4.0 * c * c * c), 0.0);
  };
  s.dm_dalpha = [](double psi, double) {
    return Vec3(0.0, -1.0 / (4.0 * std::pow(std::cosh(0.5 * psi), 2)), 0.0);
  };
  s.q_psi = [](double) { return Vec3(Vec3::Unit(1)); };
  s.dq_psi = [](double) { return Vec3(Vec3::Zero()); };
  s.q_alpha = [](double) { return Vec3(Vec3::Unit(1)); };
  s.dq_alpha = [](double) { return Vec3(Vec3::Zero()); };
  s.q_theta = [](double, double) { return Vec3(Vec3::Zero()); };
  s.dq_theta_dpsi = [](double, double) { return Vec3(Vec3::Zero()); };
  s.dq_theta_dalpha = [](double, double) { return Vec3(Vec3::Zero()); };
  return s;
}

namespace {

struct SplineVec3 {
  CubicSpline x, y, z;
  SplineVec3() = default;
  SplineVec3(const std::vector<double>& t, const std::vector<Vec3>& v) {
    std::vector<double> a(t.size()), b(t.size()), c(t.size());
    for (size_t i = 0; i < t.size(); ++i) {
      a[i] = v[i](0);
      b[i] = v[i](1);
      c[i] = v[i](2);
    }
    x = CubicSpline(t, a);
    y = CubicSpline(t, b);
    z = CubicSpline(t, c);
  }
  Vec3 eval(double t) const { return Vec3(x.eval(t), y.eval(t), z.eval(t)); }
  Vec3 deriv(double t) const { return Vec3(x.deriv(t), y.deriv(t), z.deriv(t)); }
};

}  // namespace

DynRSpec tabulated_spec(const TabulatedData& data) {
  if (data.psi.size() < 4)
    throw ParameterError("tabulated_spec: need at least four knots");
  struct Tables {
    SplineVec3 w, m0, m1, q_psi, q_alpha, q_theta0, q_theta1;
  };
  auto tb = std::make_shared<Tables>();
  tb->w = SplineVec3(data.psi, data.w);
  tb->m0 = SplineVec3(data.psi, data.m0);
  tb->m1 = SplineVec3(data.psi, data.m1);
  tb->q_psi = SplineVec3(data.psi, data.q_psi);
  tb->q_alpha = SplineVec3(data.psi, data.q_alpha);
  tb->q_theta0 = SplineVec3(data.psi, data.q_theta0);
  tb->q_theta1 = SplineVec3(data.psi, data.q_theta1);

  DynRSpec s;
  s.name = "tabulated";
  s.psi_lo = data.psi.front();
  s.psi_hi = data.psi.back();
  s.normal_form = true;
  s.w = [tb](double psi) { return tb->w.eval(psi); };
  s.V = [tb](double psi) { return normal_form_V(tb->w.eval(psi)); };
  s.dV = [tb](double psi) { return Mat3(0.5 * eps_matrix(tb->w.deriv(psi))); };
  s.m = [tb](double psi, double alpha) {
    return Vec3(tb->m0.eval(psi) + alpha * tb->m1.eval(psi));
  };
  s.dm_dpsi = [tb](double psi, double alpha) {
    return Vec3(tb->m0.deriv(psi) + alpha * tb->m1.deriv(psi));
  };
  s.dm_dalpha = [tb](double psi, double) { return tb->m1.eval(psi); };
  s.q_psi = [tb](double psi) { return tb->q_psi.eval(psi); };
  s.dq_psi = [tb](double psi) { return tb->q_psi.deriv(psi); };
  s.q_alpha = [tb](double psi) { return tb->q_alpha.eval(psi); };
  s.dq_alpha = [tb](double psi) { return tb->q_alpha.deriv(psi); };
  s.q_theta = [tb](double psi, double alpha) {
    return Vec3(tb->q_theta0.eval(psi) + alpha * tb->q_theta1.eval(psi));
  };
  s.dq_theta_dpsi = [tb](double psi, double alpha) {
    return Vec3(tb->q_theta0.deriv(psi) + alpha * tb->q_theta1.deriv(psi));
  };
  s.dq_theta_dalpha = [tb](double psi, double) { return tb->q_theta1.eval(psi); };
  return s;
}

namespace {

DynRSpec lightlike_candidate(double lambda, double kappa, double sigma,
                             double omega, const Vec3& qtheta, const Vec3& m0,
                             const Vec3& m1) {
  const Vec3 n(1.0, 1.0, 0.0);
  Mat3 q = Mat3::Zero();
  q(0, 0) = q(0, 1) = q(1, 0) = q(1, 1) = sigma;
  const Mat3 v = 0.5 * minkowski_metric() + q + 0.5 * eps_matrix(omega * n);

  DynRSpec s;
  s.name = "lightlike_candidate";
  s.V = [v](double) { return v; };
  s.dV = [](double) { return Mat3(Mat3::Zero()); };
  s.m = [m0, m1](double, double alpha) { return Vec3(m0 + alpha * m1); };
  s.dm_dpsi = [](double, double) { return Vec3(Vec3::Zero()); };
  s.dm_dalpha = [m1](double, double) { return m1; };
  s.q_psi = [lambda, n](double) { return Vec3(lambda * n); };
  s.dq_psi = [](double) { return Vec3(Vec3::Zero()); };
  s.q_alpha = [kappa, n](double) { return Vec3(kappa * n); };
  s.dq_alpha = [](double) { return Vec3(Vec3::Zero()); };
  s.q_theta = [qtheta](double, double) { return qtheta; };
  s.dq_theta_dpsi = [](double, double) { return Vec3(Vec3::Zero()); };
  s.dq_theta_dalpha = [](double, double) { return Vec3(Vec3::Zero()); };
  return s;
}

double combined_residual(const DynRSpec& s) {
  double worst = 0.0;
  for (double alpha : {-1.0, 0.0, 1.0}) {
    const ReducedResidual rr = cdybe_residual_reduced(s, 0.0, alpha);
    const QRelationsResidual qr = qrelations_residual(s, 0.0, alpha);
    worst = std::max(worst, std::max(rr.max_abs(), qr.max_abs()));
  }
  return worst;
}

}  // namespace

LightlikeScanReport no_lightlike_constant_scan(const LightlikeScanGrid& grid) {
  LightlikeScanReport rep;
  rep.min_residual = std::numeric_limits<double>::infinity();
  for (double la : grid.lambda)
    for (double ka : grid.kappa)
      for (double sg : grid.sigma)
        for (double om : grid.omega)
          for (double qc : grid.comp)
            for (double mc : grid.comp) {
              // axis-aligned component sweeps keep the grid tractable; the
              // refinement pass below explores the neighbourhood densely
              const Vec3 qtheta(qc, 0.5 * qc, -qc);
              const Vec3 m0(mc, -mc, 0.5 * mc);
              const Vec3 m1(0.5 * mc, mc, -mc);
              const DynRSpec s =
                  lightlike_candidate(la, ka, sg, om, qtheta, m0, m1);
              const double r = combined_residual(s);
              if (r < rep.min_residual) {
                rep.min_residual = r;
                rep.argmin = {la, ka, sg, om, qc};
              }
            }
  return rep;
}

double SpecStructureReport::max_abs() const {
  return std::max({m_quadratic_alpha, q_theta_quadratic_alpha, wedge_q,
                   sym_deviation});
}

SpecStructureReport check_spec_structure(const DynRSpec& s,
                                         const std::vector<double>& psis,
                                         const std::vector<double>& alphas) {
  SpecStructureReport rep;
  const double h = 0.5;
  for (double psi : psis) {
    rep.wedge_q = std::max(
        rep.wedge_q,
        wedge(s.q_psi(psi), s.q_alpha(psi)).cwiseAbs().maxCoeff());
    for (double alpha : alphas) {
      const Vec3 m2 = s.m(psi, alpha + h) - 2.0 * s.m(psi, alpha) +
                      s.m(psi, alpha - h);
      rep.m_quadratic_alpha =
          std::max(rep.m_quadratic_alpha, m2.cwiseAbs().maxCoeff() / (h * h));
      const Vec3 q2 = s.q_theta(psi, alpha + h) - 2.0 * s.q_theta(psi, alpha) +
                      s.q_theta(psi, alpha - h);
      rep.q_theta_quadratic_alpha = std::max(
          rep.q_theta_quadratic_alpha, q2.cwiseAbs().maxCoeff() / (h * h));
      const Tensor2 sym = symmetric_part(evaluate_r(s, psi, alpha));
      rep.sym_deviation = std::max(
          rep.sym_deviation, (sym.c - casimir_sym().c).cwiseAbs().maxCoeff());
    }
  }
  return rep;
}

DynRSpec perturb_m(const DynRSpec& s, const Vec3& dm) {
  DynRSpec out = s;
  auto base = s.m;
  out.m = [base, dm](double psi, double alpha) { return Vec3(base(psi, alpha) + dm); };
  out.name = s.name + "+dm";
  return out;
}

DynRSpec perturb_q_theta_psi_e2(const DynRSpec& s, double amount) {
  DynRSpec out = s;
  auto base = s.q_theta;
  out.q_theta = [base, amount](double psi, double alpha) {
    return Vec3(base(psi, alpha) + amount * psi * Vec3::Unit(2));
  };
  if (s.dq_theta_dpsi) {
    auto dbase = s.dq_theta_dpsi;
    out.dq_theta_dpsi = [dbase, amount](double psi, double alpha) {
      return Vec3(dbase(psi, alpha) + amount * Vec3::Unit(2));
    };
  }
  out.name = s.name + "+dqtheta";
  return out;
}

}  // namespace dynr
