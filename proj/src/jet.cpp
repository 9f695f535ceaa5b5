#include "dlv/jet.hpp"

#include "dlv/errors.hpp"

namespace dlv {

void validate_point_field(const VectorField& f) {
  auto check = [](const Expr& e) {
    for (AtomId a : e.atoms())
      if (atom_info(a).kind == AtomKind::Jet)
        throw Error("point-symmetry coefficient contains jet atom " +
                    atom_name(a));
  };
  check(f.xi0);
  check(f.xi1);
  for (const Expr& e : f.eta) check(e);
}

Expr total_derivative(const Expr& e, AtomId dir) {
  if (dir != kT && dir != kX) throw Error("total derivative needs t or x");
  Expr r = e.diff(dir);
  for (int dep = 0; dep < kNumDeps; ++dep) {
    Expr d = e.diff(dep_atom(dep));
    if (!d.is_zero()) r += ea(jet_atom(dep, dir == kT, dir == kX)) * d;
    for (int dt = 0; dt <= 2; ++dt)
      for (int dx = 0; dx + dt <= 2; ++dx) {
        if (dt + dx == 0) continue;
        d = e.diff(jet_atom(dep, dt, dx));
        if (d.is_zero()) continue;
        int ndt = dt + (dir == kT), ndx = dx + (dir == kX);
        if (ndt + ndx > 2)
          throw JetOrderError("total derivative of " +
                              atom_name(jet_atom(dep, dt, dx)) +
                              " leaves the second-order jet space");
        r += ea(jet_atom(dep, ndt, ndx)) * d;
      }
  }
  return r;
}

ProlongedField prolong2(const VectorField& f) {
  validate_point_field(f);
  ProlongedField p;
  p.base = f;
  Expr dtxi0 = total_derivative(f.xi0, kT), dtxi1 = total_derivative(f.xi1, kT);
  Expr dxxi0 = total_derivative(f.xi0, kX), dxxi1 = total_derivative(f.xi1, kX);
  for (int k = 0; k < kNumDeps; ++k) {
    Expr ut = ea(jet_atom(k, 1, 0)), ux = ea(jet_atom(k, 0, 1));
    Expr utt = ea(jet_atom(k, 2, 0)), uxt = ea(jet_atom(k, 1, 1)),
         uxx = ea(jet_atom(k, 0, 2));
    p.s_t[k] = total_derivative(f.eta[k], kT) - ut * dtxi0 - ux * dtxi1;
    p.s_x[k] = total_derivative(f.eta[k], kX) - ut * dxxi0 - ux * dxxi1;
    p.s_tt[k] = total_derivative(p.s_t[k], kT) - utt * dtxi0 - uxt * dtxi1;
    p.s_xt[k] = total_derivative(p.s_x[k], kT) - uxt * dtxi0 - uxx * dtxi1;
    p.s_xx[k] = total_derivative(p.s_x[k], kX) - uxt * dxxi0 - uxx * dxxi1;
  }
  return p;
}

Expr apply_prolonged(const ProlongedField& p, const Expr& e) {
  Expr r = p.base.xi0 * e.diff(kT) + p.base.xi1 * e.diff(kX);
  for (int k = 0; k < kNumDeps; ++k) {
    r += p.base.eta[k] * e.diff(dep_atom(k));
    r += p.s_t[k] * e.diff(jet_atom(k, 1, 0));
    r += p.s_x[k] * e.diff(jet_atom(k, 0, 1));
    r += p.s_tt[k] * e.diff(jet_atom(k, 2, 0));
    r += p.s_xt[k] * e.diff(jet_atom(k, 1, 1));
    r += p.s_xx[k] * e.diff(jet_atom(k, 0, 2));
  }
  return r;
}

VectorField field_add(const VectorField& a, const VectorField& b) {
  VectorField r;
  r.xi0 = a.xi0 + b.xi0;
  r.xi1 = a.xi1 + b.xi1;
  for (int k = 0; k < kNumDeps; ++k) r.eta[k] = a.eta[k] + b.eta[k];
  return r;
}

VectorField field_scale(const Expr& c, const VectorField& f) {
  VectorField r;
  r.xi0 = c * f.xi0;
  r.xi1 = c * f.xi1;
  for (int k = 0; k < kNumDeps; ++k) r.eta[k] = c * f.eta[k];
  return r;
}

std::string field_str(const VectorField& f) {
  const char* dirs[5] = {"d/dt", "d/dx", "d/du", "d/dv", "d/dw"};
  const Expr* comps[5] = {&f.xi0, &f.xi1, &f.eta[0], &f.eta[1], &f.eta[2]};
  std::string r;
  for (int i = 0; i < 5; ++i) {
    if (comps[i]->is_zero()) continue;
    if (!r.empty()) r += " + ";
    if (*comps[i] == Expr(1))
      r += dirs[i];
    else
      r += "(" + comps[i]->str() + ") " + dirs[i];
  }
  return r.empty() ? "0" : r;
}

VectorField field_substitute(const VectorField& f, const SubstMap& s) {
  VectorField r;
  r.xi0 = f.xi0.substitute(s);
  r.xi1 = f.xi1.substitute(s);
  for (int k = 0; k < kNumDeps; ++k) r.eta[k] = f.eta[k].substitute(s);
  return r;
}

}  // namespace dlv
