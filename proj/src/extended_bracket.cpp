#include "dynr/extended_bracket.hpp"

#include <cmath>
#include <memory>

namespace dynr {

namespace {

Mat3 lorentz_inverse(const Mat3& u) {
  const Mat3 eta = minkowski_metric();
  return eta * u.transpose() * eta;
}

// Ad(u) on vectors in the convention calibrated for the bivector: the
// paper-side Ad(u_X) acts as the matrix eta u^T eta = u^{-1}.
Mat3 ad_vec(const Mat3& u) { return lorentz_inverse(u); }

}  // namespace

double ExtObservable::deriv_psi(const ExtPhasePoint& pt) const {
  if (!dep_psi) return 0.0;
  if (d_psi) return d_psi(pt);
  ExtPhasePoint a = pt, b = pt;
  a.psi += fd_step;
  b.psi -= fd_step;
  return (eval(a) - eval(b)) / (2.0 * fd_step);
}

double ExtObservable::deriv_alpha(const ExtPhasePoint& pt) const {
  if (!dep_alpha) return 0.0;
  if (d_alpha) return d_alpha(pt);
  ExtPhasePoint a = pt, b = pt;
  a.alpha += fd_step;
  b.alpha -= fd_step;
  return (eval(a) - eval(b)) / (2.0 * fd_step);
}

double ExtObservable::deriv_flow(const ExtPhasePoint& pt, int copy, int gen,
                                 Side side) const {
  if (!dep_hol) return 0.0;
  if (dflow) return dflow(pt, copy, gen, side);
  ExtPhasePoint a = pt, b = pt;
  a.rest = flow(pt.rest, copy, gen, side, fd_step);
  b.rest = flow(pt.rest, copy, gen, side, -fd_step);
  return (eval(a) - eval(b)) / (2.0 * fd_step);
}

ExtObservable ext_psi() {
  ExtObservable o;
  o.eval = [](const ExtPhasePoint& pt) { return pt.psi; };
  o.dep_alpha = o.dep_hol = false;
  o.d_psi = [](const ExtPhasePoint&) { return 1.0; };
  return o;
}

ExtObservable ext_alpha() {
  ExtObservable o;
  o.eval = [](const ExtPhasePoint& pt) { return pt.alpha; };
  o.dep_psi = o.dep_hol = false;
  o.d_alpha = [](const ExtPhasePoint&) { return 1.0; };
  return o;
}

ExtObservable ext_hol(Observable f) {
  auto fp = std::make_shared<Observable>(std::move(f));
  ExtObservable o;
  o.eval = [fp](const ExtPhasePoint& pt) { return fp->eval(pt.rest); };
  o.dep_psi = o.dep_alpha = false;
  o.d_psi = [](const ExtPhasePoint&) { return 0.0; };
  o.d_alpha = [](const ExtPhasePoint&) { return 0.0; };
  o.dflow = [fp](const ExtPhasePoint& pt, int copy, int gen, Side side) {
    return fp->deriv(pt.rest, copy, gen, side);
  };
  return o;
}

ExtObservable ext_j(int copy, int comp) { return ext_hol(obs_j(copy, comp)); }

ExtObservable ext_u(int copy, int row, int col) {
  return ext_hol(obs_u(copy, row, col));
}

ExtObservable ext_linear(std::vector<std::pair<double, ExtObservable>> terms,
                         double offset) {
  auto sh = std::make_shared<std::vector<std::pair<double, ExtObservable>>>(
      std::move(terms));
  ExtObservable o;
  o.dep_psi = o.dep_alpha = o.dep_hol = false;
  bool analytic = true;
  for (const auto& [c, f] : *sh) {
    o.dep_psi = o.dep_psi || f.dep_psi;
    o.dep_alpha = o.dep_alpha || f.dep_alpha;
    o.dep_hol = o.dep_hol || f.dep_hol;
    analytic = analytic && (!f.dep_psi || f.d_psi) && (!f.dep_alpha || f.d_alpha) &&
               (!f.dep_hol || f.dflow);
  }
  o.eval = [sh, offset](const ExtPhasePoint& pt) {
    double s = offset;
    for (const auto& [c, f] : *sh) s += c * f.eval(pt);
    return s;
  };
  if (analytic) {
    o.d_psi = [sh](const ExtPhasePoint& pt) {
      double s = 0;
      for (const auto& [c, f] : *sh) s += c * f.deriv_psi(pt);
      return s;
    };
    o.d_alpha = [sh](const ExtPhasePoint& pt) {
      double s = 0;
      for (const auto& [c, f] : *sh) s += c * f.deriv_alpha(pt);
      return s;
    };
    o.dflow = [sh](const ExtPhasePoint& pt, int copy, int gen, Side side) {
      double s = 0;
      for (const auto& [c, f] : *sh) s += c * f.deriv_flow(pt, copy, gen, side);
      return s;
    };
  }
  return o;
}

ExtObservable ext_product(ExtObservable f, ExtObservable g) {
  auto fp = std::make_shared<ExtObservable>(std::move(f));
  auto gp = std::make_shared<ExtObservable>(std::move(g));
  ExtObservable o;
  o.dep_psi = fp->dep_psi || gp->dep_psi;
  o.dep_alpha = fp->dep_alpha || gp->dep_alpha;
  o.dep_hol = fp->dep_hol || gp->dep_hol;
  o.eval = [fp, gp](const ExtPhasePoint& pt) { return fp->eval(pt) * gp->eval(pt); };
  o.d_psi = [fp, gp](const ExtPhasePoint& pt) {
    return fp->deriv_psi(pt) * gp->eval(pt) + fp->eval(pt) * gp->deriv_psi(pt);
  };
  o.d_alpha = [fp, gp](const ExtPhasePoint& pt) {
    return fp->deriv_alpha(pt) * gp->eval(pt) + fp->eval(pt) * gp->deriv_alpha(pt);
  };
  o.dflow = [fp, gp](const ExtPhasePoint& pt, int copy, int gen, Side side) {
    return fp->deriv_flow(pt, copy, gen, side) * gp->eval(pt) +
           fp->eval(pt) * gp->deriv_flow(pt, copy, gen, side);
  };
  return o;
}

ExtObservable ext_wrap(std::function<double(const ExtPhasePoint&)> fn,
                       double fd_step) {
  ExtObservable o;
  o.eval = std::move(fn);
  o.fd_step = fd_step;
  return o;
}

namespace {

// directional derivative of the holonomy part of G along the j-shift
// delta j_X = (1 - Ad(u_X)) q  on every copy (the P^R flow moves j by -e_b)
double shift_derivative(const ExtObservable& g, const ExtPhasePoint& pt,
                        const Vec3& q) {
  if (!g.dep_hol) return 0.0;
  double s = 0.0;
  for (int x = 0; x < pt.rest.surface.copies(); ++x) {
    const Vec3 d = (Mat3::Identity() - ad_vec(pt.rest.at(x).u)) * q;
    for (int b = 0; b < 3; ++b)
      if (d(b) != 0.0) s += d(b) * g.deriv_flow(pt, x, b, Side::Right);
  }
  return s;
}

// derivative of G along the simultaneous conjugation flow by zeta . J
double conj_derivative(const ExtObservable& g, const ExtPhasePoint& pt,
                       const Vec3& zeta) {
  if (!g.dep_hol) return 0.0;
  double s = 0.0;
  for (int x = 0; x < pt.rest.surface.copies(); ++x)
    for (int b = 0; b < 3; ++b)
      if (zeta(b) != 0.0)
        s += zeta(b) * (g.deriv_flow(pt, x, 3 + b, Side::Left) +
                        g.deriv_flow(pt, x, 3 + b, Side::Right));
  return s;
}

}  // namespace

double ext_bracket(const DynRSpec& spec, const ExtObservable& F,
                   const ExtObservable& G, const ExtPhasePoint& pt) {
  spec.require_domain(pt.psi);
  const Vec3 qpsi = spec.q_psi(pt.psi);
  const Vec3 qalpha = spec.q_alpha(pt.psi);
  const Vec3 qtheta = spec.q_theta(pt.psi, pt.alpha);

  double out = 0.0;
  // v_psi = j-shift by q_psi; v_alpha = conjugation by q_alpha plus j-shift
  // by q_theta
  const double dpsi_f = F.deriv_psi(pt), dpsi_g = G.deriv_psi(pt);
  const double dalpha_f = F.deriv_alpha(pt), dalpha_g = G.deriv_alpha(pt);
  if (dpsi_f != 0.0) out += dpsi_f * shift_derivative(G, pt, qpsi);
  if (dpsi_g != 0.0) out -= dpsi_g * shift_derivative(F, pt, qpsi);
  if (dalpha_f != 0.0)
    out += dalpha_f * (conj_derivative(G, pt, qalpha) +
                       shift_derivative(G, pt, qtheta));
  if (dalpha_g != 0.0)
    out -= dalpha_g * (conj_derivative(F, pt, qalpha) +
                       shift_derivative(F, pt, qtheta));

  if (F.dep_hol && G.dep_hol) {
    const Tensor2 r = evaluate_r(spec, pt.psi, pt.alpha);
    DerivTable tf, tg;
    tf.copies = tg.copies = pt.rest.surface.copies();
    tf.d.resize(tf.copies * 12);
    tg.d.resize(tg.copies * 12);
    for (int c = 0; c < tf.copies; ++c)
      for (int side = 0; side < 2; ++side)
        for (int gen = 0; gen < 6; ++gen) {
          const Side sd = side == 0 ? Side::Left : Side::Right;
          tf.d[c * 12 + side * 6 + gen] = F.deriv_flow(pt, c, gen, sd);
          tg.d[c * 12 + side * 6 + gen] = G.deriv_flow(pt, c, gen, sd);
        }
    out += fr_bracket_tab(r, tf, tg, pt.rest.surface);
  }
  return out;
}

double jacobi_residual(const DynRSpec& spec, const ExtObservable& F,
                       const ExtObservable& G, const ExtObservable& H,
                       const ExtPhasePoint& pt) {
  auto nest = [&](const ExtObservable& X, const ExtObservable& Y,
                  const ExtObservable& Z) {
    ExtObservable inner = ext_wrap(
        [&spec, &Y, &Z](const ExtPhasePoint& q) {
          return ext_bracket(spec, Y, Z, q);
        },
        1e-4);
    return ext_bracket(spec, X, inner, pt);
  };
  return nest(F, G, H) + nest(G, H, F) + nest(H, F, G);
}

}  // namespace dynr
