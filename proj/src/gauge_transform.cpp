#include "dynr/gauge_transform.hpp"

#include <cmath>
#include <memory>

namespace dynr {

namespace {



Vec3 zero3(double) { return Vec3::Zero(); }

}  // namespace

PoincareElement DynPoincare::at(double psi, double alpha) const {
  return PoincareElement{g(psi), t(psi, alpha)};
}

DynPoincare DynPoincare::identity() {
  DynPoincare p;
  p.g = [](double) { return Mat3(Mat3::Identity()); };
  p.dg = [](double) { return Mat3(Mat3::Zero()); };
  p.t0 = p.t1 = zero3;
  p.dt0 = p.dt1 = zero3;
  return p;
}

DynPoincare DynPoincare::lorentz(std::function<Mat3(double)> g,
                                 std::function<Mat3(double)> dg) {
  DynPoincare p = identity();
  p.g = std::move(g);
  p.dg = std::move(dg);
  return p;
}

DynPoincare DynPoincare::translation(std::function<Vec3(double)> t0,
                                     std::function<Vec3(double)> t1,
                                     std::function<Vec3(double)> dt0,
                                     std::function<Vec3(double)> dt1) {
  DynPoincare p = identity();
  if (t0) p.t0 = std::move(t0);
  if (t1) p.t1 = std::move(t1);
  p.dt0 = std::move(dt0);
  p.dt1 = std::move(dt1);
  return p;
}

DynPoincare DynPoincare::constant(const PoincareElement& pe) {
  DynPoincare p;
  const Mat3 u = pe.u;
  const Vec3 j = pe.j;
  p.g = [u](double) { return u; };
  p.dg = [](double) { return Mat3(Mat3::Zero()); };
  p.t0 = [j](double) { return j; };
  p.t1 = zero3;
  p.dt0 = zero3;
  p.dt1 = zero3;
  return p;
}

DynPoincare dynp_mul(const DynPoincare& p1, const DynPoincare& p2) {
  auto a = std::make_shared<DynPoincare>(p1);
  auto b = std::make_shared<DynPoincare>(p2);
  DynPoincare out;
  out.g = [a, b](double psi) { return Mat3(a->g(psi) * b->g(psi)); };
  // j-coordinate of the product: g2^-1 j1 + j2
  const Mat3 eta = minkowski_metric();
  out.t0 = [a, b, eta](double psi) {
    const Mat3 g2inv = eta * b->g(psi).transpose() * eta;
    return Vec3(g2inv * a->t0(psi) + b->t0(psi));
  };
  out.t1 = [a, b, eta](double psi) {
    const Mat3 g2inv = eta * b->g(psi).transpose() * eta;
    return Vec3(g2inv * a->t1(psi) + b->t1(psi));
  };
  if (a->dg && b->dg)
    out.dg = [a, b](double psi) {
      return Mat3(a->dg(psi) * b->g(psi) + a->g(psi) * b->dg(psi));
    };
  return out;
}

namespace {

Mat4 dynp_matrix(const DynPoincare& p, double psi, double alpha) {
  return p.at(psi, alpha).matrix();
}

Mat4 dynp_dpsi_matrix(const DynPoincare& p, double psi, double alpha) {
  if (p.dg && p.dt0 && p.dt1) {
    const Mat3 g = p.g(psi), dg = p.dg(psi);
    const Vec3 t = p.t(psi, alpha);
    const Vec3 dt = p.dt0(psi) + alpha * p.dt1(psi);
    Mat4 m = Mat4::Zero();
    m.topLeftCorner<3, 3>() = dg;
    m.topRightCorner<3, 1>() = -(dg * t + g * dt);
    return m;
  }
  // fourth order with a wide step: the callbacks may themselves carry
  // differencing noise (chained transformations), which a small step would
  // amplify
  const double h = 2e-4 * std::max(1.0, std::abs(psi));
  return (dynp_matrix(p, psi - 2.0 * h, alpha) -
          dynp_matrix(p, psi + 2.0 * h, alpha) +
          8.0 * (dynp_matrix(p, psi + h, alpha) -
                 dynp_matrix(p, psi - h, alpha))) /
         (12.0 * h);
}

}  // namespace

AlgebraElement dynp_dpsi(const DynPoincare& p, double psi, double alpha) {
  const Mat4 m = dynp_matrix(p, psi, alpha);
  return algebra_from_matrix(m.inverse() * dynp_dpsi_matrix(p, psi, alpha));
}

AlgebraElement dynp_dalpha(const DynPoincare& p, double psi, double alpha) {
  // p^-1 d_alpha p = (0, -t1) in the algebra
  (void)alpha;
  return AlgebraElement(Vec3::Zero(), -p.t1(psi));
}

ExtPhasePoint transform_point(const DynPoincare& p, const ExtPhasePoint& pt) {
  ExtPhasePoint out = pt;
  const PoincareElement pe = p.at(pt.psi, pt.alpha);
  const PoincareElement pinv = group_inv(pe);
  for (auto& h : out.rest.h) h = group_mul(group_mul(pe, h), pinv);
  return out;
}

DynRSpec transform_spec(const DynPoincare& p, const DynRSpec& spec) {
  auto pp = std::make_shared<DynPoincare>(p);
  auto sp = std::make_shared<DynRSpec>(spec);

  auto transformed_r = [pp, sp](double psi, double alpha) {
    const Tensor2 r = evaluate_r(*sp, psi, alpha);
    const AlgebraElement xpsi = dynp_dpsi(*pp, psi, alpha);
    const AlgebraElement xalpha = dynp_dalpha(*pp, psi, alpha);
    const AlgebraElement x1(Vec3::Zero(), sp->q_psi(psi));
    const AlgebraElement x2(sp->q_alpha(psi), sp->q_theta(psi, alpha));
    const Tensor2 etabar =
        Tensor2{Tensor2::outer(x1, xpsi).c + Tensor2::outer(x2, xalpha).c};
    const Tensor2 inner{r.c + etabar.c - etabar.c.transpose()};
    return ad2_action(pp->at(psi, alpha), inner);
  };

  // read V and m off the structural blocks, with a shape check
  auto split = [transformed_r](double psi, double alpha) {
    const Tensor2 r = transformed_r(psi, alpha);
    const Mat3 eta = minkowski_metric();
    Mat3 v, pj, jp, jj, ppb;
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        pj(b, c) = r.at(b, 3 + c);
        jp(b, c) = r.at(3 + c, b);
        jj(b, c) = r.at(3 + b, 3 + c);
        ppb(b, c) = r.at(b, c);
      }
    v = eta - pj;
    const double bad =
        std::max({jj.cwiseAbs().maxCoeff(), (jp - v).cwiseAbs().maxCoeff(),
                  (ppb + ppb.transpose()).cwiseAbs().maxCoeff()});
    if (bad > 1e-9)
      throw ShapeViolation("transform_spec: tensor left the structural family");
    const Vec3 m(ppb(1, 2), ppb(0, 2), -ppb(0, 1));
    return std::make_pair(v, m);
  };

  DynRSpec out;
  out.name = spec.name + "^p";
  out.psi_lo = spec.psi_lo;
  out.psi_hi = spec.psi_hi;
  out.V = [split](double psi) { return split(psi, 0.0).first; };
  out.m = [split](double psi, double alpha) { return split(psi, alpha).second; };
  out.q_psi = [pp, sp](double psi) {
    return Vec3(pp->g(psi) * sp->q_psi(psi));
  };
  out.q_alpha = [pp, sp](double psi) {
    return Vec3(pp->g(psi) * sp->q_alpha(psi));
  };
  out.q_theta = [pp, sp](double psi, double alpha) {
    const Vec3 qt = sp->q_theta(psi, alpha);
    const Vec3 qa = sp->q_alpha(psi);
    return Vec3(pp->g(psi) * (qt + wedge(qa, pp->t(psi, alpha))));
  };
  // normal form is generally not preserved (the symmetric part of V moves)
  out.normal_form = false;
  return out;
}

double poisson_map_check(const DynPoincare& p, const DynRSpec& spec,
                         const ExtObservable& F, const ExtObservable& G,
                         const ExtPhasePoint& pt) {
  auto pp = std::make_shared<DynPoincare>(p);
  auto compose = [pp](const ExtObservable& f) {
    auto fp = std::make_shared<ExtObservable>(f);
    return ext_wrap(
        [pp, fp](const ExtPhasePoint& q) {
          return fp->eval(transform_point(*pp, q));
        },
        1e-6);
  };
  const double lhs = ext_bracket(spec, compose(F), compose(G), pt);
  const DynRSpec tspec = transform_spec(p, spec);
  const double rhs = ext_bracket(tspec, F, G, transform_point(p, pt));
  return std::abs(lhs - rhs);
}

DynRSpec ev_twist(char case_ab, const ScalarFn& beta, const ScalarFn& gamma,
                  const ScalarFn& delta) {
  const int j = case_ab == 'a' ? 0 : 1;
  DynPoincare pi;
  pi.g = [beta, j](double psi) { return exp_so21(-beta(psi) * Vec3::Unit(j)); };
  if (beta.df)
    pi.dg = [beta, j](double psi) {
      const Mat3 u = exp_so21(-beta(psi) * Vec3::Unit(j));
      return Mat3(-beta.d1(psi) * so21_hat(Vec3::Unit(j)) * u);
    };
  pi.t0 = [gamma, j](double psi) { return Vec3(gamma(psi) * Vec3::Unit(j)); };
  pi.t1 = [delta, j](double psi) { return Vec3(delta(psi) * Vec3::Unit(j)); };
  const DynRSpec base = case_ab == 'a' ? standard_a() : standard_b();
  DynRSpec out = transform_spec(pi, base);
  out.name = std::string("ev_twist_") + case_ab;
  return out;
}

Tensor2 ev_twist_tensor(char case_ab, const ScalarFn& beta, const ScalarFn& delta,
                        double psi, double alpha) {
  const int j = case_ab == 'a' ? 0 : 1;
  const DynRSpec base = case_ab == 'a' ? standard_a() : standard_b();
  Tensor2 r = evaluate_r(base, psi, alpha);
  const double c = beta.d1(psi) - delta(psi);
  r.c(j, 3 + j) -= c;
  r.c(3 + j, j) += c;
  return r;
}

DynRSpec reparametrize_spec(const DynRSpec& spec, const ScalarFn& f,
                            const ScalarFn& g, const ScalarFn& h) {
  auto sp = std::make_shared<DynRSpec>(spec);
  DynRSpec out;
  out.name = spec.name + "~y";
  out.V = [sp, f](double psi) { return sp->V(f(psi)); };
  out.m = [sp, f, g, h](double psi, double alpha) {
    return sp->m(f(psi), h(psi) + alpha * g(psi));
  };
  out.q_psi = [sp, f](double psi) {
    return Vec3(sp->q_psi(f(psi)) / f.d1(psi));
  };
  out.q_alpha = [sp, f, g](double psi) {
    return Vec3(sp->q_alpha(f(psi)) / g(psi));
  };
  out.q_theta = [sp, f, g, h](double psi, double alpha) {
    const double y1 = f(psi), y2 = h(psi) + alpha * g(psi);
    return Vec3(sp->q_theta(y1, y2) / g(psi) -
                (h.d1(psi) + alpha * g.d1(psi)) * sp->q_psi(y1) /
                    (f.d1(psi) * g(psi)));
  };
  if (spec.normal_form && spec.w) {
    out.normal_form = true;
    out.w = [sp, f](double psi) { return sp->w(f(psi)); };
  }
  if (sp->dV && f.df)
    out.dV = [sp, f](double psi) { return Mat3(sp->dV(f(psi)) * f.d1(psi)); };
  if (sp->dm_dpsi && sp->dm_dalpha && f.df && g.df && h.df) {
    out.dm_dpsi = [sp, f, g, h](double psi, double alpha) {
      const double y1 = f(psi), y2 = h(psi) + alpha * g(psi);
      return Vec3(sp->dm_dpsi(y1, y2) * f.d1(psi) +
                  sp->dm_dalpha(y1, y2) * (h.d1(psi) + alpha * g.d1(psi)));
    };
    out.dm_dalpha = [sp, f, g, h](double psi, double alpha) {
      const double y1 = f(psi), y2 = h(psi) + alpha * g(psi);
      return Vec3(sp->dm_dalpha(y1, y2) * g(psi));
    };
  }
  return out;
}

}  // namespace dynr
