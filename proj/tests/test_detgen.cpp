#include "doctest.h"

#include "dlv/checker.hpp"
#include "dlv/detgen.hpp"
#include "dlv/pde.hpp"

using namespace dlv;

namespace {

// True when some equation equals `target` up to a nonzero rational factor.
bool contains_multiple(const DeterminingSystem& ds, const Expr& target) {
  Poly t = target.num();
  for (const Poly& p : ds.equations) {
    if (p.terms().size() != t.terms().size()) continue;
    Expr q = Expr(p) / Expr(t);
    if (q.is_rational() && !q.is_zero()) return true;
  }
  return false;
}

Expr unk(const char* base, std::initializer_list<AtomId> args) {
  DerivTag tag;
  for (AtomId a : args) ++tag.n[a];
  return Expr::atom(unknown_tagged(base, tag));
}

}  // namespace

TEST_CASE("symmetry determining system of the general interaction system") {
  DLVSystem g = general_dlv();
  DeterminingSystem ds = determining_equations(g.rd());

  Expr l1 = g.lambda[0];
  CHECK(contains_multiple(ds, unk("xi0", {kX})));
  CHECK(contains_multiple(ds, unk("xi0", {kU})));
  CHECK(contains_multiple(ds, unk("eta1", {kU, kU})));
  CHECK(contains_multiple(ds, ex(2) * unk("xi1", {kX}) - unk("xi0", {kT})));
  CHECK(contains_multiple(ds,
                          ex(2) * unk("eta1", {kX, kU}) + l1 * unk("xi1", {kT})));

  // The translation pair solves it; a time translation alone does too.
  VectorField dt{ex(1), ex(0), {ex(0), ex(0), ex(0)}};
  VectorField dx{ex(0), ex(1), {ex(0), ex(0), ex(0)}};
  CHECK(satisfies(ds, dt));
  CHECK(satisfies(ds, dx));

  // A scaling of u is not a symmetry of the general system.
  VectorField scale{ex(0), ex(0), {ev("u"), ex(0), ex(0)}};
  CHECK_FALSE(satisfies(ds, scale));
}

TEST_CASE("dilation solves the determining system without free terms") {
  // Quadratic interaction only: every a_k = 0 admits the dilation
  // 2t dt + x dx - 2(u du + v dv + w dw).
  DLVSystem g = general_dlv();
  for (int k = 0; k < 3; ++k) g.row[k][0] = ex(0);
  DeterminingSystem ds = determining_equations(g.rd());

  Expr t = ev("t"), x = ev("x");
  VectorField d{ex(2) * t, x,
                {ex(-2) * ev("u"), ex(-2) * ev("v"), ex(-2) * ev("w")}};
  CHECK(satisfies(ds, d));

  VectorField wrong{ex(2) * t, x,
                    {ex(-2) * ev("u"), ex(-2) * ev("v"), ex(-1) * ev("w")}};
  CHECK_FALSE(satisfies(ds, wrong));
}

TEST_CASE("determining system agrees with direct invariance checking") {
  DLVSystem s = parse_system(
      "lambda1 = 1\nlambda2 = 2\nlambda3 = 3\n"
      "a1 = 0\nb1 = 1\nc1 = 1\nd1 = 1\n"
      "a2 = 0\nb2 = 1\nc2 = 1\nd2 = 1\n"
      "a3 = 0\nb3 = 1\nc3 = 1\nd3 = 1\n");
  DeterminingSystem ds = determining_equations(s.rd());

  Expr t = ev("t"), x = ev("x");
  std::vector<VectorField> fields;
  fields.push_back({ex(1), ex(3), {ex(0), ex(0), ex(0)}});
  fields.push_back({ex(2) * t, x,
                    {ex(-2) * ev("u"), ex(-2) * ev("v"), ex(-2) * ev("w")}});
  fields.push_back({ex(0), ex(0), {ev("u"), ex(0), ex(0)}});
  fields.push_back({t * t, x, {ev("u") + ev("v"), ex(0), ex(0)}});
  for (const VectorField& f : fields) {
    Verdict v = check_invariance(s.rd(), f, ManifoldKind::Lie);
    CHECK(satisfies(ds, f) == v.passed);
  }
}

TEST_CASE("conditional pivot system keeps the coupling terms") {
  DLVSystem g = general_dlv();
  DeterminingSystem ft = first_type_determining_equations(g.rd(), 0);
  DeterminingSystem lie = determining_equations(g.rd());
  CHECK_FALSE(ft == lie);

  // The pivot equations acquire eta1 * eta2_u products scaled by the
  // diffusivity gap, and eta2_u is no longer forced to vanish.
  AtomId e1 = unknown_tagged("eta1", {});
  AtomId e2u = unknown_tagged("eta2", {{0, 0, 1, 0, 0}});
  bool cross = false;
  for (const Poly& p : ft.equations)
    for (const Term& tm : p.terms())
      if (tm.m.contains(e1) && tm.m.contains(e2u)) cross = true;
  CHECK(cross);
  CHECK(contains_multiple(lie, Expr::atom(e2u)));
  CHECK_FALSE(contains_multiple(ft, Expr::atom(e2u)));
}

TEST_CASE("equal diffusivities erase the conditional pivot distinction") {
  DLVSystem g = general_dlv();
  g.lambda[1] = g.lambda[0];
  g.lambda[2] = g.lambda[0];
  RDSystem sys = g.rd();
  DeterminingSystem lie = determining_equations(sys);
  DeterminingSystem ft = first_type_determining_equations(sys, 0);
  CHECK(lie == ft);
}
