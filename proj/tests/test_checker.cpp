#include <random>

#include "dlv/checker.hpp"
#include "doctest.h"

using namespace dlv;

namespace {

VectorField op_dt() { return {ex(1), Expr(), {}}; }
VectorField op_dx() { return {Expr(), ex(1), {}}; }

DLVSystem table2_case1() {
  DLVSystem s;
  Expr b = eparam("b"), d = eparam("d");
  s.lambda = {eparam("lambda1"), eparam("lambda2"), eparam("lambda3")};
  s.row[0] = {eparam("a1"), b, b, d};
  s.row[1] = {eparam("a2"), b, b, d};
  s.row[2] = {eparam("a3"), ex(1), ex(1), eparam("d3")};
  return s;
}

}  // namespace

TEST_CASE("principal operators pass the Lie check") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> num(-6, 6);
  for (int trial = 0; trial < 4; ++trial) {
    DLVSystem s;
    for (int k = 0; k < kNumDeps; ++k) {
      s.lambda[k] = ex(k + 1 + trial);
      for (int j = 0; j < 4; ++j) s.row[k][j] = ex(num(rng), 1 + trial);
    }
    for (auto f : {op_dt(), op_dx()}) {
      Verdict v = check_invariance(s.rd(), f, ManifoldKind::Lie);
      CHECK(v.passed);
      CHECK(v.restricted_residuals[0].is_zero());
    }
  }
}

TEST_CASE("scaling algebra of the fully quadratic system") {
  // Rows u(b1 u + c1 v + d1 w) etc. admit D = 2t dt + x dx - 2(u du + v dv + w dw).
  DLVSystem s = general_dlv();
  for (int k = 0; k < kNumDeps; ++k) s.row[k][0] = Expr();
  Expr t = ea(kT), x = ea(kX);
  VectorField D{ex(2) * t, x,
                {ex(-2) * ea(kU), ex(-2) * ea(kV), ex(-2) * ea(kW)}};
  CHECK(check_invariance(s.rd(), D, ManifoldKind::Lie).passed);

  // Restoring a source term breaks the scaling and leaves a witness.
  DLVSystem broken = s;
  broken.row[0][0] = eparam("a1");
  Verdict v = check_invariance(broken.rd(), D, ManifoldKind::Lie);
  CHECK(!v.passed);
  CHECK(!v.witness.is_zero());
  CHECK(!v.witness_where.empty());
}

TEST_CASE("strictly conditional time scaling") {
  DLVSystem s = table2_case1();
  Expr kappa =
      (eparam("a1") - eparam("a2")) / (eparam("lambda1") - eparam("lambda2"));
  VectorField q{ex(1), Expr(), {kappa * ea(kU), -kappa * ea(kU), Expr()}};

  Verdict ft = check_invariance(s.rd(), q, ManifoldKind::FirstType, 0);
  CHECK(ft.passed);

  Verdict lie = check_invariance(s.rd(), q, ManifoldKind::Lie);
  CHECK(!lie.passed);
  CHECK(!lie.witness.is_zero());

  Verdict nc = check_invariance(s.rd(), q, ManifoldKind::NonClassical);
  CHECK(nc.passed);

  // The v-centred twin constrains v instead.
  VectorField q2{ex(1), Expr(), {-kappa * ea(kV), kappa * ea(kV), Expr()}};
  CHECK(check_invariance(s.rd(), q2, ManifoldKind::FirstType, 1).passed);
  CHECK(!check_invariance(s.rd(), q2, ManifoldKind::Lie).passed);
}

TEST_CASE("Lie operators survive every tighter manifold") {
  // u du is a Lie operator when the first row has no linear-in-u source.
  DLVSystem s = general_dlv();
  s.row[0][0] = Expr();
  s.row[0][1] = Expr();
  s.row[1][1] = Expr();
  s.row[2][1] = Expr();
  VectorField q{Expr(), Expr(), {ea(kU), Expr(), Expr()}};
  REQUIRE(check_invariance(s.rd(), q, ManifoldKind::Lie).passed);
  for (const Verdict& v : check_first_type_all(s.rd(), q)) CHECK(v.passed);
  CHECK(check_invariance(s.rd(), q, ManifoldKind::NonClassical).passed);
}

TEST_CASE("verdict bookkeeping") {
  DLVSystem s = table2_case1();
  Verdict v = check_invariance(s.rd(), op_dt(), ManifoldKind::FirstType, 2);
  CHECK(v.kind == ManifoldKind::FirstType);
  CHECK(v.pivot == 2);
  CHECK(check_invariance(s.rd(), op_dt(), ManifoldKind::Lie).pivot == -1);
}
