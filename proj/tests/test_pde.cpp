#include <algorithm>

#include "dlv/errors.hpp"
#include "dlv/pde.hpp"
#include "doctest.h"

using namespace dlv;

namespace {

Expr jet(int dep, int dt, int dx) { return Expr::atom(jet_atom(dep, dt, dx)); }

std::optional<Expr> rule_for(const Rules& rules, AtomId a) {
  for (const auto& [lhs, rhs] : rules)
    if (lhs == a) return rhs;
  return std::nullopt;
}

}  // namespace

TEST_CASE("residuals of the general system") {
  DLVSystem s = general_dlv();
  auto S = residuals(s.rd());
  Expr u = ea(kU), v = ea(kV), w = ea(kW);
  Expr want = eparam("lambda1") * jet(0, 1, 0) - jet(0, 0, 2) -
              u * (eparam("a1") + eparam("b1") * u + eparam("c1") * v +
                   eparam("d1") * w);
  CHECK(S[0] == want);
  // Quadratic in the dependent variables, linear in jets.
  CHECK(S[1].num().degree_in(jet_atom(1, 1, 0)) == 1);
  CHECK(S[2].num().degree_in(kW) == 2);
}

TEST_CASE("invariant surface condition") {
  VectorField q{ex(1), Expr(), {Expr(), Expr(), Expr()}};
  CHECK(invariant_surface(q, 0) == jet(0, 1, 0));

  Expr kappa = (eparam("a1") - eparam("a2")) / (eparam("lambda1") - eparam("lambda2"));
  VectorField q4{ex(1), Expr(), {kappa * ea(kU), Expr(), Expr()}};
  CHECK(invariant_surface(q4, 0) == jet(0, 1, 0) - kappa * ea(kU));

  VectorField qx{ex(1), eparam("alpha"), {Expr(), Expr(), Expr()}};
  CHECK(invariant_surface(qx, 2) ==
        jet(2, 1, 0) + eparam("alpha") * jet(2, 0, 1));
}

TEST_CASE("coupling violations are structural") {
  DLVSystem s = general_dlv();
  CHECK(!semi_coupling_violation(s));
  s.row[1][1] = Expr();
  s.row[1][3] = Expr();
  auto v = semi_coupling_violation(s);
  REQUIRE(v);
  CHECK(*v == "b2^2 + d2^2 != 0");
}

TEST_CASE("Lie manifold solves the xx jets") {
  DLVSystem s = general_dlv();
  auto rules = manifold_rules(s.rd(), {ex(1), Expr(), {}}, ManifoldKind::Lie);
  REQUIRE(rules.size() == 3);
  CHECK(rules[0].first == jet_atom(0, 0, 2));
  CHECK(rules[0].second ==
        eparam("lambda1") * jet(0, 1, 0) -
            ea(kU) * (eparam("a1") + eparam("b1") * ea(kU) +
                      eparam("c1") * ea(kV) + eparam("d1") * ea(kW)));
  auto S = residuals(s.rd());
  CHECK(apply_rules(S[0], rules).is_zero());
  CHECK(apply_rules(S[2], rules).is_zero());
}

TEST_CASE("first-type manifold for a time-scaling constraint") {
  // Q = d/dt + kappa u (d/du - d/dv): pivot u gives u_t -> kappa u,
  // u_xt -> kappa u_x, u_tt -> kappa^2 u on top of the Lie rules.
  DLVSystem s = general_dlv();
  Expr kappa = (eparam("a1") - eparam("a2")) / (eparam("lambda1") - eparam("lambda2"));
  VectorField q{ex(1), Expr(), {kappa * ea(kU), -kappa * ea(kU), Expr()}};
  auto rules = manifold_rules(s.rd(), q, ManifoldKind::FirstType, 0);

  auto ut = rule_for(rules, jet_atom(0, 1, 0));
  REQUIRE(ut);
  CHECK(*ut == kappa * ea(kU));
  auto uxt = rule_for(rules, jet_atom(0, 1, 1));
  REQUIRE(uxt);
  CHECK(*uxt == kappa * jet(0, 0, 1));
  CHECK(rule_for(rules, jet_atom(0, 0, 2)));
  CHECK(rule_for(rules, jet_atom(1, 0, 2)));
  CHECK(rule_for(rules, jet_atom(2, 0, 2)));
  CHECK(!rule_for(rules, jet_atom(1, 1, 0)));  // v_t is unconstrained

  // The tt consequence collapses through the later t rule.
  CHECK(apply_rules(jet(0, 2, 0), rules) == kappa * kappa * ea(kU));
  // No constrained atom survives in a mixed expression.
  Expr probe = jet(0, 2, 0) + jet(0, 1, 1) * jet(1, 0, 2) + jet(0, 1, 0);
  Expr r = apply_rules(probe, rules);
  CHECK(!r.contains_atom(jet_atom(0, 1, 0)));
  CHECK(!r.contains_atom(jet_atom(0, 0, 2)));
}

TEST_CASE("nonclassical manifold of the steady operator") {
  DLVSystem s = general_dlv();
  VectorField q{ex(1), Expr(), {}};
  auto rules = manifold_rules(s.rd(), q, ManifoldKind::NonClassical);
  for (int k = 0; k < kNumDeps; ++k) {
    auto t = rule_for(rules, jet_atom(k, 1, 0));
    REQUIRE(t);
    CHECK(t->is_zero());
    CHECK(apply_rules(jet(k, 2, 0), rules).is_zero());
    CHECK(apply_rules(jet(k, 1, 1), rules).is_zero());
  }
  // u_xx -> -C^1 once u_t is pinned to zero.
  CHECK(apply_rules(jet(0, 0, 2), rules) ==
        -ea(kU) * (eparam("a1") + eparam("b1") * ea(kU) +
                   eparam("c1") * ea(kV) + eparam("d1") * ea(kW)));
}

TEST_CASE("constraint solved for the x jet when xi0 vanishes") {
  DLVSystem s = general_dlv();
  // Q = d/dx + u d/du: u_x = u on the manifold.
  VectorField q{Expr(), ex(1), {ea(kU), Expr(), Expr()}};
  auto rules = manifold_rules(s.rd(), q, ManifoldKind::FirstType, 0);
  CHECK(apply_rules(jet(0, 0, 1), rules) == ea(kU));
  // u_xx via D_x of the constraint, then x rule: u_xx -> u_x -> u.
  CHECK(apply_rules(jet(0, 0, 2), rules) == ea(kU));
  // u_t from S_1: lambda1 u_t = u_xx + C^1.
  Expr want = (ea(kU) + ea(kU) * (eparam("a1") + eparam("b1") * ea(kU) +
                                  eparam("c1") * ea(kV) + eparam("d1") * ea(kW))) /
              eparam("lambda1");
  CHECK(apply_rules(jet(0, 1, 0), rules) == want);
  CHECK(apply_rules(jet(0, 1, 1), rules) == apply_rules(jet(0, 1, 0), rules));
}

TEST_CASE("constraint solved for a dependent variable when both xi vanish") {
  DLVSystem s = general_dlv();
  // eta^3 = (b-1)u + (1-c)v as in the w-shift family: solve for u.
  Expr b = eparam("b"), c = eparam("c");
  VectorField q{Expr(), Expr(),
                {Expr(), Expr(), (b - ex(1)) * ea(kU) + (ex(1) - c) * ea(kV)}};
  auto rules = manifold_rules(s.rd(), q, ManifoldKind::NonClassical);
  Expr want = (c - ex(1)) / (b - ex(1)) * ea(kV);
  CHECK(apply_rules(ea(kU), rules) == want);
  CHECK(apply_rules(jet(0, 1, 0), rules) ==
        (c - ex(1)) / (b - ex(1)) * jet(1, 1, 0));
  // u_xx chains through v_xx, which in turn is S-substituted.
  CHECK(apply_rules(jet(0, 0, 2), rules) ==
        (c - ex(1)) / (b - ex(1)) * apply_rules(jet(1, 0, 2), rules));
  CHECK(!apply_rules(jet(1, 0, 2), rules).contains_atom(jet_atom(1, 0, 2)));

  // A constraint with no variable-free linear coefficient is rejected.
  VectorField bad{Expr(), Expr(), {Expr(), Expr(), ea(kU) * ea(kU)}};
  CHECK_THROWS_AS(manifold_rules(s.rd(), bad, ManifoldKind::NonClassical),
                  DomainError);
}

TEST_CASE("system definitions round-trip") {
  DLVSystem g = general_dlv();
  CHECK(parse_system(system_str(g)) == g);

  DLVSystem s;
  s.lambda = {ex(2), ex(1), ex(1)};
  s.row[0] = {ex(2), ex(-1), ex(-1), ex(-1)};
  s.row[1] = {ex(1), ex(-1), ex(-1), ex(-1)};
  s.row[2] = {ex(1), ex(-1), ex(-1), ex(-1)};
  std::string text = system_str(s);
  CHECK(text.find("lambda1 = 2") != std::string::npos);
  CHECK(parse_system(text) == s);

  CHECK_THROWS_AS(parse_system("lambda1 = 1"), Error);
  CHECK_THROWS_AS(parse_system(text + "q9 = 1"), Error);
  CHECK_THROWS_AS(parse_system(system_str(g) + "a1 = 2"), Error);
}
