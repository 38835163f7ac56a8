#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynr/extended_bracket.hpp"
#include "dynr/random.hpp"

using namespace dynr;

namespace {

Rng rng(515);

ExtPhasePoint random_ext_point(int rest_n, int rest_g, double psi, double alpha) {
  ExtPhasePoint pt;
  pt.psi = psi;
  pt.alpha = alpha;
  pt.rest = PhasePoint(SurfaceData{rest_n, rest_g});
  for (auto& h : pt.rest.h) h = rng.poincare(0.6);
  return pt;
}

}  // namespace

TEST_CASE("displayed bracket rules") {
  const DynRSpec sa = standard_a();
  ExtPhasePoint pt = random_ext_point(1, 0, 0.4, -0.8);

  CHECK(ext_bracket(sa, ext_psi(), ext_alpha(), pt) == 0.0);
  // {psi, f} = 0 for Lorentz-only f
  CHECK(std::abs(ext_bracket(sa, ext_psi(), ext_u(0, 1, 1), pt)) < 1e-14);

  // u_X = identity kills {psi, j_X}
  ExtPhasePoint pid = pt;
  pid.rest.h[0] = PoincareElement{Mat3::Identity(), Vec3::Unit(1)};
  for (int b = 0; b < 3; ++b)
    CHECK(std::abs(ext_bracket(sa, ext_psi(), ext_j(0, b), pid)) < 1e-14);

  // standard_a, u_X = 1, j_X = e1: {alpha, j_X} = -wedge(e0, e1) = e2
  const Vec3 expect = -wedge(Vec3::Unit(0), Vec3::Unit(1));
  for (int b = 0; b < 3; ++b)
    CHECK(ext_bracket(sa, ext_alpha(), ext_j(0, b), pid) ==
          doctest::Approx(expect(b)).epsilon(1e-12));

  // generic point: {psi, j_X} = -(1 - Ad(u_X)) q_psi with the calibrated
  // vector action of Ad
  const Mat3 eta = minkowski_metric();
  const Mat3 adu = eta * pt.rest.h[0].u.transpose() * eta;
  const Vec3 v = -(Mat3::Identity() - adu) * sa.q_psi(pt.psi);
  for (int b = 0; b < 3; ++b)
    CHECK(ext_bracket(sa, ext_psi(), ext_j(0, b), pt) ==
          doctest::Approx(v(b)).epsilon(1e-11));

  CHECK_THROWS_AS(
      ext_bracket(sa, ext_psi(), ext_alpha(), random_ext_point(1, 0, 2.0, 0.0)),
      DomainError);
}

TEST_CASE("antisymmetry and Leibniz") {
  const DynRSpec sp = special_solution(1.1, 3.9, 1.5, -0.8);
  ExtPhasePoint pt = random_ext_point(2, 0, 1.3, 0.9);
  const ExtObservable f = ext_product(ext_j(0, 1), ext_u(1, 0, 0));
  const ExtObservable g = ext_product(ext_alpha(), ext_j(1, 2));
  const ExtObservable h = ext_product(ext_psi(), ext_u(0, 2, 2));
  CHECK(std::abs(ext_bracket(sp, f, f, pt)) < 1e-12);
  CHECK(std::abs(ext_bracket(sp, f, g, pt) + ext_bracket(sp, g, f, pt)) < 1e-12);
  const double lhs = ext_bracket(sp, ext_product(f, g), h, pt);
  const double rhs = f.eval(pt) * ext_bracket(sp, g, h, pt) +
                     g.eval(pt) * ext_bracket(sp, f, h, pt);
  CHECK(std::abs(lhs - rhs) < 1e-9 * std::max(1.0, std::abs(lhs)));
}

TEST_CASE("Jacobi identity holds for the built-in solutions") {
  ExtPhasePoint pt = random_ext_point(2, 1, 0.0, 0.0);
  std::vector<ExtObservable> obs = {ext_psi(),     ext_alpha(),  ext_j(0, 0),
                                    ext_j(1, 2),   ext_j(3, 1),  ext_u(2, 0, 0),
                                    ext_u(0, 1, 2), ext_j(2, 0)};
  for (const DynRSpec& spec :
       {standard_a(), standard_b(), special_solution(0.7, 2.3, 1.5, -0.8)}) {
    pt.psi = spec.name == "special" ? 1.2 : 0.7;
    pt.alpha = -1.3;
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
      const int i = t % obs.size();
      const int j = (t + 2) % obs.size();
      const int k = (t + 5) % obs.size();
      if (i == j || j == k || i == k) continue;
      worst = std::max(worst,
                       std::abs(jacobi_residual(spec, obs[i], obs[j], obs[k], pt)));
    }
    CHECK(worst < 1e-5);
  }
}

TEST_CASE("repeated arguments cancel pairwise") {
  const DynRSpec sb = standard_b();
  ExtPhasePoint pt = random_ext_point(1, 0, 0.3, 0.2);
  const ExtObservable f = ext_j(0, 0);
  const ExtObservable h = ext_j(0, 2);
  // {F,{F,H}} + {F,{H,F}} = 0 up to the finite-difference noise of the
  // two inner evaluations
  ExtObservable inner1 = ext_wrap(
      [&](const ExtPhasePoint& q) { return ext_bracket(sb, f, h, q); }, 1e-4);
  ExtObservable inner2 = ext_wrap(
      [&](const ExtPhasePoint& q) { return ext_bracket(sb, h, f, q); }, 1e-4);
  const double s =
      ext_bracket(sb, f, inner1, pt) + ext_bracket(sb, f, inner2, pt);
  CHECK(std::abs(s) < 1e-9);
}

TEST_CASE("violated structure equations break the Jacobi identity") {
  ExtPhasePoint pt = random_ext_point(2, 1, 0.8, -0.6);
  std::vector<ExtObservable> obs = {ext_psi(),      ext_alpha(),   ext_j(0, 0),
                                    ext_j(1, 2),    ext_j(3, 1),   ext_u(2, 0, 0),
                                    ext_u(0, 1, 2), ext_j(2, 0)};
  auto worst_jacobi = [&](const DynRSpec& spec) {
    double worst = 0.0;
    for (int t = 0; t < 16; ++t) {
      const int i = t % obs.size();
      const int j = (t + 1 + t / 8) % obs.size();
      const int k = (t + 3 + t / 4) % obs.size();
      if (i == j || j == k || i == k) continue;
      worst = std::max(worst,
                       std::abs(jacobi_residual(spec, obs[i], obs[j], obs[k], pt)));
    }
    return worst;
  };

  // q-relation line 3 violated: q_theta shifted by psi e2 (proof case (c))
  {
    DynRSpec bad = perturb_q_theta_psi_e2(standard_a(), 1.0);
    CHECK(qrelations_residual(bad, pt.psi, pt.alpha).line3.cwiseAbs().maxCoeff() >
          1e-3);
    CHECK(worst_jacobi(bad) > 1e-3);
  }
  // q-relation line 1 violated: q_psi shifted off its axis
  {
    DynRSpec bad = standard_b();
    bad.q_psi = [](double) { return Vec3(Vec3::Unit(1) + 0.4 * Vec3::Unit(0)); };
    bad.dq_psi = [](double) { return Vec3(Vec3::Zero()); };
    CHECK(qrelations_residual(bad, pt.psi, pt.alpha).line1.cwiseAbs().maxCoeff() >
          1e-3);
    CHECK(worst_jacobi(bad) > 1e-3);
  }
  // q-relation line 2 violated: q_alpha rescaled psi-dependently
  {
    DynRSpec bad = standard_a();
    bad.q_alpha = [](double psi) { return Vec3((1.0 + 0.5 * psi) * Vec3::Unit(0)); };
    bad.dq_alpha = [](double) { return Vec3(0.5 * Vec3::Unit(0)); };
    CHECK(qrelations_residual(bad, pt.psi, pt.alpha).line2.cwiseAbs().maxCoeff() >
          1e-3);
    CHECK(worst_jacobi(bad) > 1e-3);
  }
  // Upsilon violated: m picks up an alpha-dependent off-axis component
  {
    DynRSpec bad = standard_b();
    auto base = bad.m;
    bad.m = [base](double psi, double alpha) {
      return Vec3(base(psi, alpha) + 0.3 * alpha * Vec3::Unit(2));
    };
    bad.dm_dalpha = nullptr;
    bad.dm_dpsi = nullptr;
    double up = 0.0;
    const ReducedResidual rr = cdybe_residual_reduced(bad, pt.psi, pt.alpha);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) up = std::max(up, std::abs(rr.upsilon[a][b][c]));
    CHECK(up > 1e-3);
    CHECK(worst_jacobi(bad) > 1e-3);
  }
  // Omega violated: m shifted along the axis with psi dependence
  {
    DynRSpec bad = standard_a();
    auto base = bad.m;
    bad.m = [base](double psi, double alpha) {
      return Vec3(base(psi, alpha) + 0.3 * std::sin(psi) * Vec3::Unit(0));
    };
    bad.dm_dalpha = nullptr;
    bad.dm_dpsi = nullptr;
    CHECK(std::abs(cdybe_residual_reduced(bad, pt.psi, pt.alpha).omega) > 1e-3);
    CHECK(worst_jacobi(bad) > 1e-3);
  }
}

TEST_CASE("forward-backward equivalence on a spec panel") {
  ExtPhasePoint pt = random_ext_point(2, 1, 0.9, 0.4);
  std::vector<ExtObservable> obs = {ext_psi(),   ext_alpha(), ext_j(0, 0),
                                    ext_j(3, 1), ext_j(1, 2), ext_u(2, 1, 1)};
  std::vector<std::pair<DynRSpec, bool>> panel;
  panel.push_back({standard_a(), true});
  panel.push_back({standard_b(), true});
  panel.push_back({special_solution(1.7, 0.9, 0.0, 1.2), true});
  panel.push_back({simple_family(ScalarFn::constant(0.8), -0.2), true});
  panel.push_back({perturb_m(standard_a(), 0.2 * Vec3::Unit(1)), false});
  panel.push_back({perturb_q_theta_psi_e2(standard_b(), 0.5), false});

  for (const auto& [spec, conforming] : panel) {
    const double res =
        std::max(cdybe_residual_reduced(spec, pt.psi, pt.alpha).max_abs(),
                 qrelations_residual(spec, pt.psi, pt.alpha).max_abs());
    double worst = 0.0;
    const int triples[6][3] = {{2, 3, 4}, {1, 3, 4}, {0, 2, 3},
                               {1, 2, 5}, {2, 4, 5}, {0, 1, 2}};
    for (const auto& t : triples)
      worst = std::max(
          worst,
          std::abs(jacobi_residual(spec, obs[t[0]], obs[t[1]], obs[t[2]], pt)));
    if (conforming) {
      CHECK(res < 1e-6);
      CHECK(worst < 1e-5);
    } else {
      CHECK(res > 1e-4);
      CHECK(worst > 1e-4);
    }
  }
}
