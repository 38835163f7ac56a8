#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynr/random.hpp"
#include "dynr/tensor_space.hpp"

using namespace dynr;

namespace {

Rng rng(7);

Tensor2 random_tensor2(double scale = 1.0) {
  Tensor2 t;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) t.c(a, b) = rng.uniform(-scale, scale);
  return t;
}

Tensor3 swap23(const Tensor3& t) {
  Tensor3 out;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      for (int g = 0; g < 6; ++g) out.at(a, g, b) = t.at(a, b, g);
  return out;
}

// mixed-term bracket [[r,s]] with the same slot pattern as [[r,r]]
Tensor3 mixed_yb(const Tensor2& r, const Tensor2& s) {
  Tensor3 out = slot_bracket_12_13(r, s);
  out += slot_bracket_12_23(r, s);
  out += slot_bracket_13_23(r, s);
  return out;
}

}  // namespace

TEST_CASE("translations commute in slot brackets") {
  const Tensor2 pp = Tensor2::outer(AlgebraElement::P(0), AlgebraElement::P(0));
  CHECK(slot_bracket_12_13(pp, pp).max_abs() == 0.0);
  CHECK(slot_bracket_12_23(pp, pp).max_abs() == 0.0);
  CHECK(slot_bracket_13_23(pp, pp).max_abs() == 0.0);
}

TEST_CASE("P_a (x) J^a solves the classical Yang-Baxter equation") {
  CHECK(yang_baxter_bracket(r_pj()).max_abs() < 1e-14);
}

TEST_CASE("generic symmetric-in-J tensor fails the CYBE") {
  Tensor2 t;
  t.c(3, 3) = 1.0;  // J0 (x) J0
  t.c(4, 5) = 0.5;
  t.c(5, 4) = 0.5;
  CHECK(yang_baxter_bracket(t).max_abs() > 1e-3);
}

TEST_CASE("symmetric and antisymmetric parts") {
  const Tensor2 cas = casimir_sym();
  CHECK((symmetric_part(r_pj()).c - cas.c).cwiseAbs().maxCoeff() < 1e-15);
  // casimir coefficients: +-1/2 on the P/J cross blocks
  CHECK(cas.at(0, 3) == 0.5);
  CHECK(cas.at(3, 0) == 0.5);
  CHECK(cas.at(1, 4) == -0.5);
  CHECK(cas.at(4, 1) == -0.5);
  const Tensor2 s = symmetric_part(random_tensor2());
  CHECK(antisymmetric_part(s).max_abs() < 1e-15);
  const Tensor2 r = random_tensor2();
  CHECK((flip(flip(r)).c - r.c).cwiseAbs().maxCoeff() == 0.0);
  CHECK(((symmetric_part(r) + antisymmetric_part(r)).c - r.c)
            .cwiseAbs()
            .maxCoeff() < 1e-15);
}

TEST_CASE("ad2 action") {
  const Tensor2 r = random_tensor2();
  CHECK((ad2_action(PoincareElement::identity(), r).c - r.c).cwiseAbs().maxCoeff() <
        1e-15);
  for (int k = 0; k < 10; ++k) {
    const PoincareElement p1 = rng.poincare(), p2 = rng.poincare();
    const Tensor2 lhs = ad2_action(group_mul(p1, p2), r);
    const Tensor2 rhs = ad2_action(p1, ad2_action(p2, r));
    CHECK((lhs.c - rhs.c).cwiseAbs().maxCoeff() < 1e-11);
    // the pairing dual is Ad-invariant
    const Tensor2 cas = casimir_sym();
    CHECK((ad2_action(p1, cas).c - cas.c).cwiseAbs().maxCoeff() < 1e-11);
  }
}

TEST_CASE("bilinearity of the Yang-Baxter bracket") {
  for (int k = 0; k < 10; ++k) {
    const Tensor2 r = random_tensor2(), s = random_tensor2();
    Tensor2 sum{r.c + s.c};
    const Tensor3 lhs = yang_baxter_bracket(sum) - yang_baxter_bracket(r) -
                        yang_baxter_bracket(s);
    Tensor3 rhs = mixed_yb(r, s);
    rhs += mixed_yb(s, r);
    CHECK((lhs - rhs).max_abs() < 1e-11);
  }
}

TEST_CASE("slot flip relation") {
  const Tensor2 r = random_tensor2(), s = random_tensor2();
  const Tensor3 lhs = swap23(slot_bracket_12_13(r, s));
  const Tensor3 rhs = slot_bracket_12_13(s, r) * (-1.0);
  CHECK((lhs - rhs).max_abs() < 1e-13);
}

TEST_CASE("insert_slot places coefficients in the right slots") {
  const AlgebraElement x = rng.algebra();
  const Tensor2 t = random_tensor2();
  const Tensor3 t1 = insert_slot(x, t, 1);
  const Tensor3 t2 = insert_slot(x, t, 2);
  const Tensor3 t3 = insert_slot(x, t, 3);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      for (int g = 0; g < 6; ++g) {
        CHECK(t1.at(a, b, g) == doctest::Approx(x.coeff(a) * t.at(b, g)));
        CHECK(t2.at(a, b, g) == doctest::Approx(x.coeff(b) * t.at(a, g)));
        CHECK(t3.at(a, b, g) == doctest::Approx(x.coeff(g) * t.at(a, b)));
      }
}
