#include <doctest.h>

#include "dlv/errors.hpp"
#include "dlv/jet.hpp"

using namespace dlv;

namespace {
Expr jet(int dep, int dt, int dx) { return ea(jet_atom(dep, dt, dx)); }
}  // namespace

TEST_CASE("total derivatives shift jet indices") {
  CHECK(total_derivative(ea(kU), kX) == jet(0, 0, 1));
  CHECK(total_derivative(jet(0, 0, 1), kT) == jet(0, 1, 1));
  CHECK(total_derivative(ea(kT) * ea(kX), kT) == ea(kX));
  CHECK_THROWS_AS(total_derivative(jet(0, 0, 2), kX), JetOrderError);
  // Chain rule through an unknown function of (t,x,u).
  AtomId g = declare_unknown("g", argmask_of({kT, kX, kU}));
  Expr dg = total_derivative(ea(g), kX);
  CHECK(dg == ev("g_x") + ev("g_u") * jet(0, 0, 1));
}

TEST_CASE("total derivatives commute") {
  Expr e = ea(kU) * ea(kU) * ea(kV) + ea(kT) * ea(kW) + ea(kX);
  CHECK(total_derivative(total_derivative(e, kT), kX) ==
        total_derivative(total_derivative(e, kX), kT));
}

TEST_CASE("scaling field prolongation") {
  // 2t d/dt + x d/dx - 2(u d/du + v d/dv + w d/dw)
  VectorField d;
  d.xi0 = ex(2) * ea(kT);
  d.xi1 = ea(kX);
  for (int k = 0; k < kNumDeps; ++k) d.eta[k] = ex(-2) * ea(dep_atom(k));
  ProlongedField p = prolong2(d);
  CHECK(p.s_t[0] == ex(-4) * jet(0, 1, 0));
  CHECK(p.s_x[0] == ex(-3) * jet(0, 0, 1));
  CHECK(p.s_xx[0] == ex(-4) * jet(0, 0, 2));
  CHECK(p.s_xt[0] == ex(-5) * jet(0, 1, 1));
  CHECK(p.s_tt[0] == ex(-6) * jet(0, 2, 0));
  CHECK(p.s_x[2] == ex(-3) * jet(2, 0, 1));
}

TEST_CASE("space scaling field prolongation") {
  VectorField f;
  f.xi1 = ea(kX);
  ProlongedField p = prolong2(f);
  CHECK(p.s_x[0] == -jet(0, 0, 1));
  CHECK(p.s_xx[0] == ex(-2) * jet(0, 0, 2));
  CHECK(p.s_t[0] == Expr());
  CHECK(p.s_xt[0] == -jet(0, 1, 1));
}

TEST_CASE("translations prolong to zero") {
  VectorField f;
  f.xi0 = ex(1);
  ProlongedField p = prolong2(f);
  for (int k = 0; k < kNumDeps; ++k) {
    CHECK(p.s_t[k].is_zero());
    CHECK(p.s_x[k].is_zero());
    CHECK(p.s_xx[k].is_zero());
  }
  CHECK(apply_prolonged(p, ex(5)) == Expr());
}

TEST_CASE("dilation in u prolongs identically on jets") {
  VectorField f;
  f.eta[0] = ea(kU);
  ProlongedField p = prolong2(f);
  CHECK(p.s_t[0] == jet(0, 1, 0));
  CHECK(p.s_xx[0] == jet(0, 0, 2));
  CHECK(apply_prolonged(p, jet(0, 1, 0)) == jet(0, 1, 0));
}

TEST_CASE("prolongation is linear in the field") {
  VectorField f1, f2;
  f1.xi0 = ea(kT);
  f1.eta[0] = ea(kU) * ea(kV);
  f2.xi1 = ea(kX) * ea(kX);
  f2.eta[1] = ea(kW);
  VectorField comb = field_add(field_scale(ex(3), f1), field_scale(ex(-2), f2));
  ProlongedField pc = prolong2(comb), p1 = prolong2(f1), p2 = prolong2(f2);
  for (int k = 0; k < kNumDeps; ++k) {
    CHECK(pc.s_t[k] == ex(3) * p1.s_t[k] - ex(2) * p2.s_t[k]);
    CHECK(pc.s_x[k] == ex(3) * p1.s_x[k] - ex(2) * p2.s_x[k]);
    CHECK(pc.s_xx[k] == ex(3) * p1.s_xx[k] - ex(2) * p2.s_xx[k]);
  }
}

TEST_CASE("t,x-dependent horizontal coefficients keep s_xx free of u_tt") {
  VectorField f;
  f.xi0 = ea(kT) * ea(kT);
  f.xi1 = ea(kT) * ea(kX);
  f.eta[0] = ea(kU) * ea(kX);
  ProlongedField p = prolong2(f);
  for (int k = 0; k < kNumDeps; ++k)
    CHECK(!p.s_xx[k].contains_atom(jet_atom(k, 2, 0)));
}

TEST_CASE("point field validation rejects jet coefficients") {
  VectorField f;
  f.xi0 = jet(0, 1, 0);
  CHECK_THROWS_AS(prolong2(f), Error);
}
