#pragma once

// Symmetry reduction of the competition-form system under the transformed
// mixing operator: the exponential-in-time ansatz with three x-profiles, the
// reduced ODE system for the profiles, and the explicit solution built from
// the constant profile pair, verified exactly and on a numeric grid.

#include "dlv/pde.hpp"

namespace dlv {

// The rows u_k(a_k - b u - c v - d w) with the third free term solved from
// the vanishing restriction of the conditional classification. An empty
// assignment keeps every parameter symbolic.
DLVSystem competition_system(const SubstMap& assign);

// d/dt + kappa u (du - (b/c) dv) + alpha b u ((1/c) dv - (1/d) dw),
// kappa = (a1 - a2)/(lambda1 - lambda2).
VectorField competition_operator(const SubstMap& assign);

struct Ansatz {
  std::array<Expr, 3> comp;  // u, v, w through phi1(x), phi2(x), phi3(x)
  Expr kappa;
  SubstMap assign;
};

// u = (1/b) phi1 E, v = (1/c)(phi2 + (alpha/kappa - 1) phi1 E),
// w = (1/d)(phi3 - (alpha/kappa) phi1 E) with E = exp(kappa t). Throws
// ReductionError when a1 = a2, lambda1 = lambda2, or a scaling vanishes.
Ansatz build_ansatz(const SubstMap& assign);

// Jet bindings of the ansatz: dependent variables and their derivatives up
// to second order, for substitution into residuals or surface conditions.
SubstMap ansatz_jet_map(const std::array<Expr, 3>& comp);

struct ReducedODESystem {
  std::array<Expr, 3> eq;  // phi_k'' + phi_k (...) = 0, normalized monic
};

// Substitutes the ansatz into the residuals, splits by exponential level,
// and normalizes the surviving coefficients. The quadratic exponential level
// must cancel and exactly one equation per profile must remain; anything
// else throws ReductionError.
ReducedODESystem reduce(const DLVSystem& sys, const Ansatz& ans);

struct ExactSolution {
  std::array<Expr, 3> comp;  // closed form with phi1(x) left symbolic
  Expr kappa;
  Expr kappa2;  // phi1'' + kappa2 phi1 = 0
  SubstMap assign;  // input extended by a3 = a2, lambda3 = lambda2
};

// The solution with constant second and third profiles: phi2 = v0,
// phi3 = a2 - v0. Requires a1 != a2 (and equal second and third
// diffusivities, which the pinned free term forces). Throws ReductionError
// on degenerate parameters.
ExactSolution constant_profile_solution(const SubstMap& assign);

// Same solution with the sign of alpha flipped in the v component only;
// breaks exactness whenever alpha != 0.
ExactSolution flip_alpha_v(const ExactSolution& sol);

// Residuals of the system on the solution after rewriting phi1'' through the
// linear ODE; identically zero for admissible parameters.
std::array<Expr, 3> symbolic_residual(const DLVSystem& sys,
                                      const ExactSolution& sol);

struct Grid {
  double t0 = 0, t1 = 1, x0 = 0, x1 = 1;
  int nt = 101, nx = 101;
};

// Maximum absolute residual over the grid with analytically evaluated
// profile derivatives; requires fully concrete parameters.
double residual_numeric(const DLVSystem& sys, const ExactSolution& sol,
                        const Grid& g);

// lambda1 = 2, lambda2 = 1, a1 = 2, a2 = 1, b = c = d = 1, alpha = 0,
// v0 = 1/2: the profile equation becomes phi1'' = phi1.
SubstMap example_defaults();

}  // namespace dlv
