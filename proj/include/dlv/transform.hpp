#pragma once

// Local equivalence transformations of the class: linear mixing of the
// dependent variables with diagonal exponential-in-time factors, plus affine
// rescaling of time and space. Applied to systems by rewriting the equations
// in the new variables and to operators by pushforward.

#include "dlv/pde.hpp"

namespace dlv {

// Substitution u -> m[0][0] exp(rate0 t) u + m[0][1] v + m[0][2] w (and
// cyclically for v, w; the exponential always sits on the variable itself),
// t -> t0 t + t1, x -> x0 x + x1. Entries are exact expressions; diagonal
// mixing entries and the two scalings must be structurally nonzero.
struct LocalTransform {
  std::array<std::array<Expr, 3>, 3> m;
  std::array<Expr, 3> rate;
  Expr t0, t1, x0, x1;

  bool operator==(const LocalTransform&) const = default;
};

LocalTransform identity_transform();

// "key = expr" lines with keys c10..c33 (dependent part: cI0 the rate,
// cI1 the diagonal, cI2/cI3 the off-diagonal mixing of row I), c40/c41 for
// time, c50/c51 for space. Omitted keys default to the identity.
LocalTransform parse_transform(const std::string& text);
std::string transform_str(const LocalTransform& tr);

// Throws TransformError when a diagonal entry, a scaling, or the mixing
// determinant vanishes identically.
void validate_transform(const LocalTransform& tr);

// Inverse substitution; only defined without exponential factors (a rate
// makes the inverse mixing non-constant). Throws TransformError otherwise.
LocalTransform inverse(const LocalTransform& tr);

// Rewrites the system satisfied by the old variables as a system for the new
// ones. Throws ClassError when the image leaves the class: diffusion mixing
// stays non-diagonal, a coefficient keeps a time dependence, or a reaction
// term is not the variable times an affine form.
DLVSystem apply_to_system(const LocalTransform& tr, const DLVSystem& sys);

// Pushforward: components of the operator in the new coordinates.
VectorField apply_to_field(const LocalTransform& tr, const VectorField& f);

}  // namespace dlv
