#include "doctest.h"

#include "dlv/catalog.hpp"
#include "dlv/errors.hpp"
#include "dlv/transform.hpp"

using namespace dlv;

namespace {

DLVSystem symmetric_rows() {
  return parse_system(
      "lambda1 = lambda1\nlambda2 = lambda2\nlambda3 = lambda3\n"
      "a1 = a1\nb1 = 1\nc1 = 1\nd1 = 1\n"
      "a2 = a2\nb2 = 1\nc2 = 1\nd2 = 1\n"
      "a3 = a3\nb3 = 1\nc3 = 1\nd3 = 1\n");
}

}  // namespace

TEST_CASE("identity and translations leave a system alone") {
  DLVSystem sys = symmetric_rows();
  CHECK(apply_to_system(identity_transform(), sys) == sys);

  LocalTransform shift = identity_transform();
  shift.t1 = ex(5);
  shift.x1 = ex(1);
  CHECK(apply_to_system(shift, sys) == sys);

  VectorField dt{Expr(1), Expr(0), {Expr(0), Expr(0), Expr(0)}};
  CHECK(apply_to_field(shift, dt) == dt);
  CHECK(apply_to_field(identity_transform(), dt) == dt);
}

TEST_CASE("sign-and-scale substitution turns the symmetric rows into the "
          "competition system") {
  // u -> -b u, v -> -c v, w -> -d w
  LocalTransform tr = parse_transform("c11 = -b\nc21 = -c\nc31 = -d\n");
  DLVSystem sys = symmetric_rows();
  DLVSystem got = apply_to_system(tr, sys);
  DLVSystem want = parse_system(
      "lambda1 = lambda1\nlambda2 = lambda2\nlambda3 = lambda3\n"
      "a1 = a1\nb1 = -b\nc1 = -c\nd1 = -d\n"
      "a2 = a2\nb2 = -b\nc2 = -c\nd2 = -d\n"
      "a3 = a3\nb3 = -b\nc3 = -c\nd3 = -d\n");
  CHECK(got == want);
}

TEST_CASE("the mixing operator pushes forward to the competition form") {
  // the conditional operator of the all-coupled row with distinct free terms
  const CatalogEntry& e = catalog_entry(2, 4);
  VectorField q = e.ops[0].field;
  LocalTransform tr = parse_transform("c11 = -b\nc21 = -c\nc31 = -d\n");
  VectorField got = apply_to_field(tr, q);

  Expr u = ev("u"), a1 = ev("a1"), a2 = ev("a2");
  Expr b = ev("b"), c = ev("c"), d = ev("d"), alpha = ev("alpha");
  Expr k12 = (a1 - a2) / (ev("lambda1") - ev("lambda2"));
  VectorField want{Expr(1), Expr(0),
                   {k12 * u, (alpha * b / c) * u - (b / c) * k12 * u,
                    ex(0) - (alpha * b / d) * u}};
  CHECK(got.xi0 == want.xi0);
  CHECK(got.xi1 == want.xi1);
  for (int k = 0; k < 3; ++k) CHECK((got.eta[k] - want.eta[k]).is_zero());

  // the transformed operator is still a conditional symmetry of the
  // transformed system
  DLVSystem sys2 = apply_to_system(tr, e.system);
  auto fts = check_first_type_all(sys2.rd(), got);
  CHECK(fts[0].passed);
  CHECK_FALSE(check_invariance(sys2.rd(), got, ManifoldKind::Lie).passed);
}

TEST_CASE("verdicts are preserved under class-preserving transforms") {
  const CatalogEntry& e = catalog_entry(2, 1);
  SubstMap a = sample_params(e, 9);
  Instance inst = instantiate(e, a);
  LocalTransform tr = parse_transform(
      "c11 = 2\nc21 = 3\nc31 = -1/2\nc40 = 4\nc41 = 1\nc50 = 2\nc51 = -3\n");
  DLVSystem sys2 = apply_to_system(tr, inst.system);
  for (const auto& op : inst.ops) {
    VectorField f2 = apply_to_field(tr, op.field);
    auto before = check_first_type_all(inst.system.rd(), op.field);
    auto after = check_first_type_all(sys2.rd(), f2);
    for (int p = 0; p < 3; ++p) CHECK(before[p].passed == after[p].passed);
    CHECK(check_invariance(sys2.rd(), f2, ManifoldKind::Lie).passed ==
          check_invariance(inst.system.rd(), op.field, ManifoldKind::Lie)
              .passed);
  }

  // a Lie symmetry stays a Lie symmetry
  const CatalogEntry& lie = catalog_entry(1, 6);
  SubstMap al = sample_params(lie, 2);
  Instance li = instantiate(lie, al);
  DLVSystem lsys2 = apply_to_system(tr, li.system);
  VectorField lf2 = apply_to_field(tr, li.ops[1].field);
  CHECK(check_invariance(lsys2.rd(), lf2, ManifoldKind::Lie).passed);
}

TEST_CASE("full constant mixing inverts cleanly on operators") {
  LocalTransform tr = parse_transform(
      "c11 = 2\nc12 = 1\nc21 = 3\nc22 = 1\nc23 = 1\nc31 = 2\nc33 = 1\n"
      "c40 = 3\nc41 = 1\nc50 = 2\nc51 = -1\n");
  VectorField dil{ex(2) * ev("t"), ev("x"),
                  {ex(-2) * ev("u"), ex(-2) * ev("v"), ex(-2) * ev("w")}};
  VectorField round = apply_to_field(inverse(tr), apply_to_field(tr, dil));
  CHECK(round.xi0 == dil.xi0);
  CHECK(round.xi1 == dil.xi1);
  for (int k = 0; k < 3; ++k) CHECK((round.eta[k] - dil.eta[k]).is_zero());
}

TEST_CASE("exponential rescaling shifts a free term when the column is clear") {
  // rows with no quadratic self-terms in u: the exponential factor cancels
  DLVSystem sys = parse_system(
      "lambda1 = lambda1\nlambda2 = lambda2\nlambda3 = lambda3\n"
      "a1 = 0\nb1 = 0\nc1 = c1\nd1 = d1\n"
      "a2 = 0\nb2 = 0\nc2 = c2\nd2 = 1\n"
      "a3 = 0\nb3 = 0\nc3 = 1\nd3 = d3\n");
  LocalTransform tr = parse_transform("c10 = 7\n");
  DLVSystem got = apply_to_system(tr, sys);
  DLVSystem want = sys;
  want.row[0][0] = ex(-7) * ev("lambda1");
  CHECK(got == want);

  // the u-scaling symmetry survives the rescaling
  VectorField scale{Expr(0), Expr(0), {ev("u"), Expr(0), Expr(0)}};
  CHECK(apply_to_field(tr, scale) == scale);

  // with a quadratic self-term the factor survives and the image leaves
  // the class
  DLVSystem bad = symmetric_rows();
  CHECK_THROWS_AS(apply_to_system(tr, bad), ClassError);
}

TEST_CASE("degenerate transforms are rejected") {
  LocalTransform tr = identity_transform();
  tr.m[1][1] = Expr(0);
  CHECK_THROWS_AS(validate_transform(tr), TransformError);

  // rank-one mixing: every row the same
  CHECK_THROWS_AS(parse_transform("c12 = 1\nc13 = 1\nc22 = 1\nc23 = 1\n"
                                  "c32 = 1\nc33 = 1\n"),
                  TransformError);
  CHECK_THROWS_AS(parse_transform("c40 = 0\n"), TransformError);
  CHECK_THROWS_AS(parse_transform("c99 = 1\n"), Error);

  // non-diagonal mixing with distinct diffusivities mixes the diffusion part
  LocalTransform mix = parse_transform("c12 = 1\n");
  CHECK_THROWS_AS(apply_to_system(mix, symmetric_rows()), ClassError);

  LocalTransform ex1 = parse_transform("c10 = 1\n");
  CHECK_THROWS_AS(inverse(ex1), TransformError);
}
