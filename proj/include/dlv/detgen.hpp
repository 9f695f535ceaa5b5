#pragma once

// Determining equations for symmetry coefficients treated as unknown
// functions of (t, x, u, v, w): split the restricted prolonged residuals by
// jet monomials, then normalize the resulting system.

#include "dlv/pde.hpp"

namespace dlv {

struct DeterminingSystem {
  std::vector<Poly> equations;  // canonical order, jet-free

  std::string str() const;  // one "... = 0" line per equation
  bool operator==(const DeterminingSystem&) const = default;
};

// Field with coefficients xi0, xi1, eta1, eta2, eta3, each a function of all
// five base variables.
VectorField unknown_field();

DeterminingSystem determining_equations(const RDSystem& sys);
// Same with the invariant surface of `pivot` adjoined; xi0 is assumed
// nonzero and may be divided out of equation contents.
DeterminingSystem first_type_determining_equations(const RDSystem& sys,
                                                   int pivot);

// Bindings for every coefficient atom appearing in `ds`, mapping derivative
// tags to the matching derivatives of a concrete field's coefficients.
SubstMap field_binding(const DeterminingSystem& ds, const VectorField& f);

// True when every equation vanishes under field_binding(ds, f).
bool satisfies(const DeterminingSystem& ds, const VectorField& f);

}  // namespace dlv
