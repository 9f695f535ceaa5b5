#pragma once

// Reaction-diffusion and Lotka-Volterra system structure, residuals,
// invariant-surface conditions, and the manifold-restriction rewrite rules
// behind the three invariance notions.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dlv/jet.hpp"

namespace dlv {

// lambda_k u^k_t = u^k_xx + C^k(u,v,w), k = 0,1,2 for (u,v,w).
struct RDSystem {
  std::array<Expr, kNumDeps> lambda;
  std::array<Expr, kNumDeps> C;

  bool operator==(const RDSystem&) const = default;
};

// Lotka-Volterra reaction terms C^k = u^k (a_k + b_k u + c_k v + d_k w);
// row[k] = (a_k, b_k, c_k, d_k).
struct DLVSystem {
  std::array<Expr, kNumDeps> lambda;
  std::array<std::array<Expr, 4>, kNumDeps> row;

  RDSystem rd() const;
  bool operator==(const DLVSystem&) const = default;
};

// System with every coefficient a named parameter (a1..d3, lambda1..3).
DLVSystem general_dlv();

// Set when a row decouples: c1^2+d1^2, b2^2+d2^2, b3^2+c3^2 must not vanish.
// Structural test; returns the violated condition.
std::optional<std::string> semi_coupling_violation(const DLVSystem& s);

// S_k = lambda_k u^k_t - u^k_xx - C^k.
std::array<Expr, kNumDeps> residuals(const RDSystem& sys);

// Q(z) = xi0 z_t + xi1 z_x - eta^z for dep z in {0,1,2}.
Expr invariant_surface(const VectorField& f, int dep);

enum class ManifoldKind { Lie, FirstType, NonClassical };
std::string kind_name(ManifoldKind k);

// Ordered rewrite rules (apply with apply_rules, first to last). Lie solves
// each S_k for the xx jet. FirstType adjoins the invariant surface of `pivot`
// only, NonClassical all three, together with their first total-derivative
// consequences: higher jets are eliminated before the atoms their right-hand
// sides introduce. When xi0 = 0 the constraint is solved for the x jet
// (xi1 != 0) or, failing that, for a dependent variable with a structurally
// nonzero variable-free linear coefficient.
using Rules = std::vector<std::pair<AtomId, Expr>>;

Rules manifold_rules(const RDSystem& sys, const VectorField& f,
                     ManifoldKind kind, int pivot = 0);

// Sequential substitution; throws DomainError if a constrained atom survives.
Expr apply_rules(Expr e, const Rules& rules);

// "key = expr" lines: lambda1..lambda3, then a/b/c/d per equation.
std::string system_str(const DLVSystem& s);
DLVSystem parse_system(const std::string& text);

}  // namespace dlv
