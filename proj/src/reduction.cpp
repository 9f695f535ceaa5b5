#include "dlv/reduction.hpp"

#include <cmath>

#include "dlv/errors.hpp"

namespace dlv {

namespace {

Expr sub(const char* name, const SubstMap& assign) {
  return ev(name).substitute(assign);
}

void require_nonzero(const Expr& e, const std::string& what) {
  if (e.is_zero()) throw ReductionError("degenerate parameters: " + what);
}

AtomId phi(int i) {
  return declare_unknown("phi" + std::to_string(i), argmask_of({kX}));
}

AtomId phi_xx(int i) {
  DerivTag tag;
  tag.n[kX] = 2;
  return unknown_tagged("phi" + std::to_string(i), tag);
}

Expr kappa_of(const SubstMap& assign) {
  Expr a1 = sub("a1", assign), a2 = sub("a2", assign);
  Expr l1 = sub("lambda1", assign), l2 = sub("lambda2", assign);
  require_nonzero(a1 - a2, "equal free terms a1 = a2");
  require_nonzero(l1 - l2, "equal diffusivities lambda1 = lambda2");
  return (a1 - a2) / (l1 - l2);
}

}  // namespace

DLVSystem competition_system(const SubstMap& assign) {
  Expr a1 = sub("a1", assign), a2 = sub("a2", assign);
  Expr l1 = sub("lambda1", assign), l2 = sub("lambda2", assign),
       l3 = sub("lambda3", assign);
  require_nonzero(l1 - l2, "equal diffusivities lambda1 = lambda2");
  Expr a3 = ((l1 - l3) * a2 - (l2 - l3) * a1) / (l1 - l2);
  Expr b = sub("b", assign), c = sub("c", assign), d = sub("d", assign);
  DLVSystem s;
  s.lambda = {l1, l2, l3};
  std::array<Expr, 3> frees{a1, a2, a3};
  for (int k = 0; k < 3; ++k)
    s.row[k] = {frees[k], ex(0) - b, ex(0) - c, ex(0) - d};
  return s;
}

VectorField competition_operator(const SubstMap& assign) {
  Expr kappa = kappa_of(assign);
  Expr b = sub("b", assign), c = sub("c", assign), d = sub("d", assign);
  Expr alpha = sub("alpha", assign);
  Expr u = ev("u");
  return {Expr(1), Expr(0),
          {kappa * u, (alpha - kappa) * (b / c) * u,
           ex(0) - alpha * (b / d) * u}};
}

Ansatz build_ansatz(const SubstMap& assign) {
  Expr kappa = kappa_of(assign);
  Expr b = sub("b", assign), c = sub("c", assign), d = sub("d", assign);
  Expr alpha = sub("alpha", assign);
  for (auto [e, n] : {std::pair{&b, "b"}, {&c, "c"}, {&d, "d"}})
    require_nonzero(*e, std::string("vanishing scaling ") + n);
  Expr E = exp_of(kappa * ev("t"));
  Expr p1 = ea(phi(1)), p2 = ea(phi(2)), p3 = ea(phi(3));
  Ansatz a;
  a.kappa = kappa;
  a.assign = assign;
  a.comp[0] = p1 * E / b;
  a.comp[1] = (p2 + (alpha / kappa - Expr(1)) * p1 * E) / c;
  a.comp[2] = (p3 - alpha / kappa * p1 * E) / d;
  return a;
}

SubstMap ansatz_jet_map(const std::array<Expr, 3>& comp) {
  SubstMap m;
  for (int k = 0; k < 3; ++k) {
    Expr dt = total_derivative(comp[k], kT);
    Expr dx = total_derivative(comp[k], kX);
    m[dep_atom(k)] = comp[k];
    m[jet_atom(k, 1, 0)] = dt;
    m[jet_atom(k, 0, 1)] = dx;
    m[jet_atom(k, 2, 0)] = total_derivative(dt, kT);
    m[jet_atom(k, 1, 1)] = total_derivative(dt, kX);
    m[jet_atom(k, 0, 2)] = total_derivative(dx, kX);
  }
  return m;
}

ReducedODESystem reduce(const DLVSystem& sys, const Ansatz& ans) {
  // the operator must actually vanish on the ansatz surfaces
  SubstMap jets = ansatz_jet_map(ans.comp);
  VectorField q = competition_operator(ans.assign);
  for (int k = 0; k < 3; ++k)
    if (!invariant_surface(q, k).substitute(jets).is_zero())
      throw ReductionError("ansatz violates the invariant surface of " +
                           atom_name(dep_atom(k)));

  // impose the vanishing restriction on the third free term
  DLVSystem pinned = sys;
  Expr a1 = sub("a1", ans.assign), a2 = sub("a2", ans.assign);
  Expr l1 = sub("lambda1", ans.assign), l2 = sub("lambda2", ans.assign);
  Expr l3 = sys.lambda[2];
  Expr constraint =
      (l2 - l3) * a1 - (l1 - l3) * a2 + (l1 - l2) * sys.row[2][0];
  if (!constraint.is_zero()) {
    if (!(sys.row[2][0] - ev("a3")).is_zero())
      throw ReductionError("third free term violates the reduction restriction");
    pinned.row[2][0] = ((l1 - l3) * a2 - (l2 - l3) * a1) / (l1 - l2);
  }

  Expr t = ev("t");
  std::array<Expr, 3> targets{Expr(0), ans.kappa * t, ex(2) * ans.kappa * t};
  std::vector<Expr> odes;
  for (const Expr& s : residuals(pinned.rd())) {
    for (const auto& [g, coeff] : s.substitute(jets).split_exp_parts()) {
      if ((g - targets[2]).is_zero())
        throw ReductionError(
            "nonvanishing higher exponential in the reduced system");
      if (!(g - targets[0]).is_zero() && !(g - targets[1]).is_zero())
        throw ReductionError("unexpected exponential level " + g.str());
      odes.push_back(coeff);
    }
  }

  // normalize each survivor monic in its second profile derivative and
  // keep one equation per profile
  ReducedODESystem out;
  std::array<bool, 3> seen{};
  for (const Expr& q0 : odes) {
    int which = -1;
    for (int i = 1; i <= 3; ++i)
      if (q0.contains_atom(phi_xx(i))) which = i;
    if (which < 0)
      throw ReductionError("reduced equation without a profile derivative: " +
                           q0.str());
    SubstMap one{{phi_xx(which), Expr(1)}}, zero{{phi_xx(which), Expr(0)}};
    Expr lead = q0.substitute(one) - q0.substitute(zero);
    Expr norm = q0 / lead;
    int k = which - 1;
    if (seen[k] && !(out.eq[k] - norm).is_zero())
      throw ReductionError("conflicting reduced equations for profile " +
                           std::to_string(which));
    out.eq[k] = norm;
    seen[k] = true;
  }
  if (!(seen[0] && seen[1] && seen[2]))
    throw ReductionError("reduction lost a profile equation");
  return out;
}

ExactSolution constant_profile_solution(const SubstMap& assign) {
  SubstMap full = assign;
  Expr a2 = sub("a2", assign), l2 = sub("lambda2", assign);
  full[*find_atom("a3")] = a2;
  full[*find_atom("lambda3")] = l2;
  Expr kappa = kappa_of(full);
  Expr a1 = sub("a1", full);
  Expr b = sub("b", full), c = sub("c", full), d = sub("d", full);
  for (auto [e, n] : {std::pair{&b, "b"}, {&c, "c"}, {&d, "d"}})
    require_nonzero(*e, std::string("vanishing scaling ") + n);
  Expr alpha = sub("alpha", full);
  Expr v0 = eparam("v0").substitute(full);

  ExactSolution sol;
  sol.assign = full;
  sol.kappa = kappa;
  sol.kappa2 = l2 * (a2 - a1) / (sub("lambda1", full) - l2);
  Expr E = exp_of(kappa * ev("t"));
  Expr p1 = ea(phi(1));
  sol.comp[0] = p1 * E / b;
  sol.comp[1] = (v0 + (alpha / kappa - Expr(1)) * p1 * E) / c;
  sol.comp[2] = ((a2 - v0) - alpha / kappa * p1 * E) / d;
  return sol;
}

ExactSolution flip_alpha_v(const ExactSolution& sol) {
  Expr kappa = sol.kappa;
  Expr alpha = sub("alpha", sol.assign);
  Expr c = sub("c", sol.assign);
  Expr v0 = eparam("v0").substitute(sol.assign);
  Expr E = exp_of(kappa * ev("t"));
  ExactSolution out = sol;
  out.comp[1] =
      (v0 + (Expr(0) - alpha / kappa - Expr(1)) * ea(phi(1)) * E) / c;
  return out;
}

std::array<Expr, 3> symbolic_residual(const DLVSystem& sys,
                                      const ExactSolution& sol) {
  SubstMap jets = ansatz_jet_map(sol.comp);
  SubstMap ode{{phi_xx(1), (Expr(0) - sol.kappa2) * ea(phi(1))}};
  std::array<Expr, 3> out;
  auto res = residuals(sys.rd());
  for (int k = 0; k < 3; ++k)
    out[k] = res[k].substitute(jets).substitute(ode);
  return out;
}

double residual_numeric(const DLVSystem& sys, const ExactSolution& sol,
                        const Grid& g) {
  if (g.nt < 1 || g.nx < 1) throw Error("empty grid");
  if (!sol.kappa2.is_rational())
    throw Error("numeric residual needs fully concrete parameters");
  double k2 = sol.kappa2.rational_value().get_d();
  double s = std::sqrt(std::fabs(k2));

  SubstMap jets = ansatz_jet_map(sol.comp);
  std::array<std::vector<std::pair<Expr, Expr>>, 3> parts;
  auto res = residuals(sys.rd());
  for (int k = 0; k < 3; ++k)
    parts[k] = res[k].substitute(jets).split_exp_parts();

  double worst = 0;
  for (int it = 0; it < g.nt; ++it) {
    double t = g.t0 + (g.nt == 1 ? 0 : (g.t1 - g.t0) * it / (g.nt - 1));
    for (int ix = 0; ix < g.nx; ++ix) {
      double x = g.x0 + (g.nx == 1 ? 0 : (g.x1 - g.x0) * ix / (g.nx - 1));
      // phi1'' = -kappa2 phi1: trigonometric for positive kappa2,
      // hyperbolic otherwise
      double p, px, pxx;
      if (k2 > 0) {
        p = std::cos(s * x);
        px = -s * std::sin(s * x);
        pxx = -k2 * p;
      } else {
        p = std::cosh(s * x);
        px = s * std::sinh(s * x);
        pxx = -k2 * p;
      }
      std::map<AtomId, double> at{{kT, t},
                                  {kX, x},
                                  {phi(1), p},
                                  {unknown_deriv(phi(1), kX), px},
                                  {phi_xx(1), pxx}};
      for (int k = 0; k < 3; ++k) {
        double r = 0;
        for (const auto& [e, coeff] : parts[k])
          r += std::exp(e.eval_double(at)) * coeff.eval_double(at);
        worst = std::max(worst, std::fabs(r));
      }
    }
  }
  return worst;
}

SubstMap example_defaults() {
  SubstMap m;
  m[*find_atom("lambda1")] = ex(2);
  m[*find_atom("lambda2")] = ex(1);
  m[*find_atom("a1")] = ex(2);
  m[*find_atom("a2")] = ex(1);
  m[*find_atom("b")] = ex(1);
  m[*find_atom("c")] = ex(1);
  m[*find_atom("d")] = ex(1);
  m[*find_atom("alpha")] = ex(0);
  m[intern_param("v0")] = ex(1, 2);
  return m;
}

}  // namespace dlv
