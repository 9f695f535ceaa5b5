#include "dlv/checker.hpp"

#include <algorithm>

namespace dlv {

namespace {

std::vector<AtomId> jet_atoms_in(const Expr& e) {
  std::vector<AtomId> out;
  for (AtomId a : e.atoms())
    if (atom_info(a).kind == AtomKind::Jet) out.push_back(a);
  return out;
}

}  // namespace

Verdict check_invariance(const RDSystem& sys, const VectorField& f,
                         ManifoldKind kind, int pivot) {
  Verdict v;
  v.kind = kind;
  v.pivot = kind == ManifoldKind::FirstType ? pivot : -1;

  ProlongedField p = prolong2(f);
  auto S = residuals(sys);
  Rules rules = manifold_rules(sys, f, kind, pivot);

  v.passed = true;
  for (int k = 0; k < kNumDeps; ++k) {
    Expr e = apply_rules(apply_prolonged(p, S[k]), rules);
    v.restricted_residuals[k] = e;
    if (e.is_zero() || !v.passed) continue;
    v.passed = false;
    auto jets = jet_atoms_in(e);
    auto groups = e.collect(jets);
    for (const auto& [m, coeff] : groups)
      if (!coeff.is_zero()) {
        v.witness = coeff;
        std::string mono = m.pw.empty() ? "1" : mono_str(m);
        v.witness_where = "S" + std::to_string(k + 1) + " at " + mono;
        break;
      }
  }
  return v;
}

std::array<Verdict, kNumDeps> check_first_type_all(const RDSystem& sys,
                                                   const VectorField& f) {
  return {check_invariance(sys, f, ManifoldKind::FirstType, 0),
          check_invariance(sys, f, ManifoldKind::FirstType, 1),
          check_invariance(sys, f, ManifoldKind::FirstType, 2)};
}

}  // namespace dlv
