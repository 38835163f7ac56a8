#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynr/gauge_transform.hpp"
#include "dynr/random.hpp"

using namespace dynr;

namespace {

Rng rng(4242);

DynPoincare random_dynp(double scale = 0.5) {
  const Vec3 n1 = rng.vec3(scale), n2 = rng.vec3(scale), n3 = rng.vec3(scale);
  const double phase = rng.uniform(0, 3);
  DynPoincare p;
  p.g = [n1, phase](double psi) {
    return exp_so21(Vec3(std::sin(psi + phase) * n1));
  };
  p.t0 = [n2, phase](double psi) { return Vec3(std::cos(psi + phase) * n2); };
  p.t1 = [n3](double psi) { return Vec3((1.0 + 0.2 * psi) * n3); };
  return p;
}

ExtPhasePoint random_ext_point(int rest_n, int rest_g, double psi, double alpha) {
  ExtPhasePoint pt;
  pt.psi = psi;
  pt.alpha = alpha;
  pt.rest = PhasePoint(SurfaceData{rest_n, rest_g});
  for (auto& h : pt.rest.h) h = rng.poincare(0.6);
  return pt;
}

double spec_residual(const DynRSpec& s, double psi, double alpha) {
  return std::max(cdybe_residual_full(s, psi, alpha).max_abs(),
                  qrelations_residual(s, psi, alpha).max_abs());
}

}  // namespace

TEST_CASE("transform_point") {
  ExtPhasePoint pt = random_ext_point(2, 1, 0.7, -0.9);
  // identity transformation
  const ExtPhasePoint same = transform_point(DynPoincare::identity(), pt);
  for (int c = 0; c < 4; ++c) {
    CHECK((same.rest.h[c].u - pt.rest.h[c].u).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((same.rest.h[c].j - pt.rest.h[c].j).cwiseAbs().maxCoeff() < 1e-14);
  }
  // composition law and trace invariance
  const DynPoincare p1 = random_dynp(), p2 = random_dynp();
  const ExtPhasePoint lhs = transform_point(p1, transform_point(p2, pt));
  const ExtPhasePoint rhs = transform_point(dynp_mul(p1, p2), pt);
  for (int c = 0; c < 4; ++c) {
    CHECK((lhs.rest.h[c].u - rhs.rest.h[c].u).cwiseAbs().maxCoeff() < 1e-11);
    CHECK((lhs.rest.h[c].j - rhs.rest.h[c].j).cwiseAbs().maxCoeff() < 1e-11);
    CHECK(std::abs(trace_lorentz(lhs.rest.h[c].u) -
                   trace_lorentz(pt.rest.h[c].u)) < 1e-11);
    CHECK(std::abs(trace_jJu(lhs.rest.h[c]) - trace_jJu(pt.rest.h[c])) < 1e-10);
  }
  CHECK(lhs.psi == pt.psi);
  CHECK(lhs.alpha == pt.alpha);
}

TEST_CASE("identity transformation leaves specs unchanged") {
  const DynRSpec sp = special_solution(0.9, 2.1, 0.7, -0.4);
  const DynRSpec ts = transform_spec(DynPoincare::identity(), sp);
  for (double psi : {0.5, 1.4})
    for (double alpha : {-1.0, 0.8}) {
      CHECK((evaluate_r(ts, psi, alpha).c - evaluate_r(sp, psi, alpha).c)
                .cwiseAbs()
                .maxCoeff() < 1e-12);
      CHECK((ts.q_theta(psi, alpha) - sp.q_theta(psi, alpha)).cwiseAbs().maxCoeff() <
            1e-12);
    }
}

TEST_CASE("pure Lorentz specialization") {
  // r^p = (Ad(g) (x) Ad(g)) [r + q_psi^a n^b (P_a (x) J_b - J_b (x) P_a)]
  const Vec3 axis = rng.vec3(0.6);
  DynPoincare p = DynPoincare::lorentz(
      [axis](double psi) { return exp_so21(Vec3(std::sin(psi) * axis)); });
  const DynRSpec sb = standard_b();
  const DynRSpec tb = transform_spec(p, sb);
  const double psi = 0.8, alpha = -0.3;
  const AlgebraElement n = dynp_dpsi(p, psi, alpha);
  CHECK(n.pcoeff.cwiseAbs().maxCoeff() < 1e-9);  // pure Lorentz Maurer-Cartan
  Tensor2 inner = evaluate_r(sb, psi, alpha);
  const Vec3 q = sb.q_psi(psi);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      inner.c(a, 3 + b) += q(a) * n.jcoeff(b);
      inner.c(3 + b, a) -= q(a) * n.jcoeff(b);
    }
  const Tensor2 closed = ad2_action(p.at(psi, alpha), inner);
  CHECK((closed.c - evaluate_r(tb, psi, alpha).c).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("pure translation specialization") {
  // calibrated closed form for normal-form bases:
  //   V^p = V - t1 (x) q_alpha,
  //   m^p = m - q_psi^dt - q_theta^t1 - (q_alpha^t)^t1 - (1/2) w^t
  const DynPoincare p = random_dynp();
  const DynPoincare tr = DynPoincare::translation(p.t0, p.t1);
  const DynRSpec sp = special_solution(0.9, 2.1, 0.7, -0.4);
  const DynRSpec ts = transform_spec(tr, sp);
  const double h = 1e-6;
  for (double psi : {0.8, 1.7})
    for (double alpha : {-0.5, 1.1}) {
      const Vec3 t = tr.t(psi, alpha), t1 = tr.t1(psi);
      const Vec3 dt = (tr.t(psi + h, alpha) - tr.t(psi - h, alpha)) / (2.0 * h);
      Mat3 vp = sp.V(psi);
      const Vec3 qalpha = sp.q_alpha(psi);
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) vp(b, c) -= t1(b) * qalpha(c);
      const Vec3 mp = sp.m(psi, alpha) - wedge(sp.q_psi(psi), dt) -
                      wedge(sp.q_theta(psi, alpha), t1) -
                      wedge(wedge(qalpha, t), t1) -
                      0.5 * wedge(w_from_V(sp.V(psi)), t);
      CHECK((ts.V(psi) - vp).cwiseAbs().maxCoeff() < 1e-10);
      CHECK((ts.m(psi, alpha) - mp).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("general transformation factors through its specializations") {
  const DynPoincare p = random_dynp();
  const DynPoincare lor = DynPoincare::lorentz(p.g);
  const DynPoincare tra = DynPoincare::translation(p.t0, p.t1);
  // p = (g,0) . (1,t): translation acts first on the spec
  const DynRSpec sb = standard_b();
  const DynRSpec general = transform_spec(p, sb);
  const DynRSpec composed = transform_spec(lor, transform_spec(tra, sb));
  for (double psi : {0.4, 1.3})
    for (double alpha : {-0.7, 0.9}) {
      CHECK((evaluate_r(general, psi, alpha).c - evaluate_r(composed, psi, alpha).c)
                .cwiseAbs()
                .maxCoeff() < 1e-9);
      CHECK((general.q_theta(psi, alpha) - composed.q_theta(psi, alpha))
                .cwiseAbs()
                .maxCoeff() < 1e-9);
    }
}

TEST_CASE("group action on specs") {
  const DynPoincare p1 = random_dynp(0.4), p2 = random_dynp(0.4);
  const DynRSpec sa = standard_a();
  const DynRSpec lhs = transform_spec(p1, transform_spec(p2, sa));
  const DynRSpec rhs = transform_spec(dynp_mul(p1, p2), sa);
  for (double psi : {-0.6, 0.9}) {
    CHECK((evaluate_r(lhs, psi, 0.7).c - evaluate_r(rhs, psi, 0.7).c)
              .cwiseAbs()
              .maxCoeff() < 1e-8);
    CHECK((lhs.q_theta(psi, 0.7) - rhs.q_theta(psi, 0.7)).cwiseAbs().maxCoeff() <
          1e-8);
  }
}

TEST_CASE("solution set is closed under transformations") {
  for (int k = 0; k < 3; ++k) {
    const DynPoincare p = random_dynp();
    for (const DynRSpec& base :
         {standard_a(), standard_b(), special_solution(0.7, 2.3, 1.5, -0.8),
          simple_family(ScalarFn::constant(1.0), 0.0)}) {
      const DynRSpec ts = transform_spec(p, base);
      const double psi = base.name == "special" ? 1.2 : 0.6;
      CHECK(spec_residual(ts, psi, -0.8) < 1e-7);
    }
  }
}

TEST_CASE("Poisson map identity") {
  ExtPhasePoint pt = random_ext_point(1, 1, 1.1, 0.4);
  const std::vector<ExtObservable> obs = {ext_psi(), ext_alpha(), ext_j(0, 1),
                                          ext_j(2, 0), ext_u(1, 0, 2)};
  for (const DynRSpec& spec :
       {standard_b(), special_solution(0.7, 2.3, 1.5, -0.8)}) {
    const DynPoincare p = random_dynp();
    const ExtPhasePoint ptc = pt;
    // identity map: zero up to the composed-observable differencing noise
    CHECK(poisson_map_check(DynPoincare::identity(), spec, obs[2], obs[4], ptc) <
          1e-10);
    for (size_t i = 0; i < obs.size(); ++i)
      for (size_t j = i + 1; j < obs.size(); ++j)
        CHECK(poisson_map_check(p, spec, obs[i], obs[j], ptc) < 1e-6);
  }
}

TEST_CASE("gauge twists of the standard solutions") {
  ScalarFn beta;
  beta.f = [](double x) { return 0.4 * std::sin(x); };
  beta.df = [](double x) { return 0.4 * std::cos(x); };
  ScalarFn gamma;
  gamma.f = [](double x) { return 0.3 * x; };
  gamma.df = [](double) { return 0.3; };

  for (char cs : {'a', 'b'}) {
    // delta = beta' leaves the solution invariant
    ScalarFn delta_inv;
    delta_inv.f = beta.df;
    const DynRSpec inv = ev_twist(cs, beta, gamma, delta_inv);
    const DynRSpec base = cs == 'a' ? standard_a() : standard_b();
    for (double psi : {-0.8, 0.5})
      CHECK((evaluate_r(inv, psi, 0.4).c - evaluate_r(base, psi, 0.4).c)
                .cwiseAbs()
                .maxCoeff() < 1e-9);

    // generic twist: closed form and solution property
    ScalarFn delta = ScalarFn::constant(-0.6);
    const DynRSpec tw = ev_twist(cs, beta, gamma, delta);
    for (double psi : {-0.7, 0.9}) {
      CHECK((evaluate_r(tw, psi, 0.2).c - ev_twist_tensor(cs, beta, delta, psi, 0.2).c)
                .cwiseAbs()
                .maxCoeff() < 1e-9);
      CHECK(cdybe_residual_full(tw, psi, 0.2).max_abs() < 1e-7);
    }
  }

  // delta = 0, beta = psi: r^Pi = r - P_j ^ J_j
  ScalarFn blin;
  blin.f = [](double x) { return x; };
  blin.df = [](double) { return 1.0; };
  const DynRSpec tw0 = ev_twist('a', blin, ScalarFn::constant(0.0),
                                ScalarFn::constant(0.0));
  Tensor2 expect = evaluate_r(standard_a(), 0.3, 0.5);
  expect.c(0, 3) -= 1.0;
  expect.c(3, 0) += 1.0;
  CHECK((evaluate_r(tw0, 0.3, 0.5).c - expect.c).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("reparametrized solutions stay solutions") {
  ScalarFn f, g, h;
  f.f = [](double x) { return 2.0 * x + 1.0; };
  f.df = [](double) { return 2.0; };
  g.f = [](double) { return 3.0; };
  g.df = [](double) { return 0.0; };
  h.f = [](double x) { return 0.4 * std::sin(x); };
  h.df = [](double x) { return 0.4 * std::cos(x); };
  const DynRSpec rb = reparametrize_spec(standard_b(), f, g, h);
  for (double psi : {-0.9, 0.6})
    for (double alpha : {-1.2, 0.8}) CHECK(spec_residual(rb, psi, alpha) < 1e-7);
  // and the composition with a transformation still is
  const DynRSpec both = transform_spec(random_dynp(0.4), rb);
  CHECK(spec_residual(both, 0.5, -0.4) < 1e-6);
}
