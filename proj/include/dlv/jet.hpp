#pragma once

// Total derivatives on the second-order jet space and second prolongation of
// point-symmetry vector fields.

#include <array>

#include "dlv/expr.hpp"

namespace dlv {

// xi0 d/dt + xi1 d/dx + eta[0] d/du + eta[1] d/dv + eta[2] d/dw.
// Coefficients are functions of (t,x,u,v,w); jet atoms must not appear.
struct VectorField {
  Expr xi0, xi1;
  std::array<Expr, kNumDeps> eta;

  bool operator==(const VectorField&) const = default;
};

// Throws Error if a coefficient contains a jet atom.
void validate_point_field(const VectorField& f);

// D_t or D_x (dir = kT or kX): chain rule through u,v,w plus jet index
// shifts. Throws JetOrderError if a third-order jet would be required.
Expr total_derivative(const Expr& e, AtomId dir);

// Prolongation coefficients attached to the five jet shapes of each
// dependent variable.
struct ProlongedField {
  VectorField base;
  std::array<Expr, kNumDeps> s_t, s_x, s_tt, s_xt, s_xx;
};

// sigma_x = D_x eta - u_t D_x xi0 - u_x D_x xi1, sigma_t analogously,
// sigma_xx = D_x sigma_x - u_xt D_x xi0 - u_xx D_x xi1, and the t-shifted
// second-order companions.
ProlongedField prolong2(const VectorField& f);

// Sum of coefficient * d(e)/d(atom) over the base variables and all jets.
Expr apply_prolonged(const ProlongedField& p, const Expr& e);

VectorField field_add(const VectorField& a, const VectorField& b);
VectorField field_scale(const Expr& c, const VectorField& f);

// "d/dt + (2*u) d/du" style rendering, zero components omitted.
std::string field_str(const VectorField& f);
VectorField field_substitute(const VectorField& f, const SubstMap& s);

}  // namespace dlv
