#pragma once

// Invariance verdicts: restrict the prolonged action on the residuals to the
// chosen manifold and test for identical vanishing.

#include "dlv/pde.hpp"

namespace dlv {

struct Verdict {
  ManifoldKind kind = ManifoldKind::Lie;
  int pivot = -1;  // constrained variable for FirstType, else -1
  std::array<Expr, kNumDeps> restricted_residuals;
  bool passed = false;
  Expr witness;               // first nonzero collected coefficient on failure
  std::string witness_where;  // residual and jet monomial it belongs to
};

// apply_prolonged(prolong2(f), S_k) restricted by manifold_rules; passes
// when all three results vanish identically.
Verdict check_invariance(const RDSystem& sys, const VectorField& f,
                         ManifoldKind kind, int pivot = 0);

// FirstType for pivots u, v, w in turn.
std::array<Verdict, kNumDeps> check_first_type_all(const RDSystem& sys,
                                                   const VectorField& f);

}  // namespace dlv
