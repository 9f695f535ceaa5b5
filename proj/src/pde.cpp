#include "dlv/pde.hpp"

#include <sstream>

#include "dlv/errors.hpp"

namespace dlv {

namespace {

Expr jet(int dep, int dt, int dx) { return Expr::atom(jet_atom(dep, dt, dx)); }

Expr Dt(const Expr& e) { return total_derivative(e, kT); }
Expr Dx(const Expr& e) { return total_derivative(e, kX); }

}  // namespace

RDSystem DLVSystem::rd() const {
  RDSystem r;
  r.lambda = lambda;
  for (int k = 0; k < kNumDeps; ++k) {
    Expr lin = row[k][0];
    for (int j = 0; j < kNumDeps; ++j)
      lin += row[k][j + 1] * Expr::atom(dep_atom(j));
    r.C[k] = Expr::atom(dep_atom(k)) * lin;
  }
  return r;
}

DLVSystem general_dlv() {
  DLVSystem s;
  const char* names[3][4] = {{"a1", "b1", "c1", "d1"},
                             {"a2", "b2", "c2", "d2"},
                             {"a3", "b3", "c3", "d3"}};
  for (int k = 0; k < kNumDeps; ++k) {
    s.lambda[k] = eparam("lambda" + std::to_string(k + 1));
    for (int j = 0; j < 4; ++j) s.row[k][j] = eparam(names[k][j]);
  }
  return s;
}

std::optional<std::string> semi_coupling_violation(const DLVSystem& s) {
  // Pairs of coefficients that couple each equation to the other species.
  struct { int eq, c1, c2; const char* what; } pairs[] = {
      {0, 2, 3, "c1^2 + d1^2 != 0"},
      {1, 1, 3, "b2^2 + d2^2 != 0"},
      {2, 1, 2, "b3^2 + c3^2 != 0"},
  };
  for (const auto& p : pairs)
    if (s.row[p.eq][p.c1].is_zero() && s.row[p.eq][p.c2].is_zero())
      return std::string(p.what);
  return std::nullopt;
}

std::array<Expr, kNumDeps> residuals(const RDSystem& sys) {
  std::array<Expr, kNumDeps> S;
  for (int k = 0; k < kNumDeps; ++k)
    S[k] = sys.lambda[k] * jet(k, 1, 0) - jet(k, 0, 2) - sys.C[k];
  return S;
}

Expr invariant_surface(const VectorField& f, int dep) {
  return f.xi0 * jet(dep, 1, 0) + f.xi1 * jet(dep, 0, 1) - f.eta[dep];
}

std::string kind_name(ManifoldKind k) {
  switch (k) {
    case ManifoldKind::Lie: return "Lie";
    case ManifoldKind::FirstType: return "FirstType";
    case ManifoldKind::NonClassical: return "NonClassical";
  }
  return "?";
}

namespace {

// Branch with xi0 = 0, xi1 = 0: solve eta^k = 0 for dependent variables,
// one per constraint, each linear with a variable-free coefficient.
void rules_from_eta(const RDSystem& sys, const VectorField& f,
                    const std::vector<int>& constrained, Rules& rules) {
  std::vector<std::pair<int, Expr>> solved;  // dep -> replacement
  SubstMap done;
  for (int k : constrained) {
    Expr g = f.eta[k].substitute(done);
    if (g.is_zero()) continue;
    int z = -1;
    Expr repl;
    for (int d = 0; d < kNumDeps && z < 0; ++d) {
      if (done.count(dep_atom(d))) continue;
      Expr gd = g.diff(dep_atom(d));
      if (gd.is_zero()) continue;
      bool clean = true;
      for (AtomId a : gd.atoms())
        if (atom_info(a).kind == AtomKind::Dep) {
          clean = false;
          break;
        }
      if (!clean) continue;
      z = d;
      repl = Expr::atom(dep_atom(d)) - g / gd;
    }
    if (z < 0)
      throw DomainError("constraint " + f.eta[k].str() +
                        " = 0 is not solvable for a dependent variable");
    done[dep_atom(z)] = repl;
    solved.emplace_back(z, std::move(repl));
  }

  auto is_solved = [&](int d) { return done.count(dep_atom(d)) != 0; };
  for (const auto& [z, r] : solved) rules.push_back({jet_atom(z, 2, 0), Dt(Dt(r))});
  for (const auto& [z, r] : solved) rules.push_back({jet_atom(z, 1, 1), Dt(Dx(r))});
  for (const auto& [z, r] : solved) rules.push_back({jet_atom(z, 0, 2), Dx(Dx(r))});
  for (int k = 0; k < kNumDeps; ++k)
    if (!is_solved(k))
      rules.push_back({jet_atom(k, 0, 2), sys.lambda[k] * jet(k, 1, 0) - sys.C[k]});
  for (const auto& [z, r] : solved) rules.push_back({jet_atom(z, 1, 0), Dt(r)});
  for (const auto& [z, r] : solved) rules.push_back({jet_atom(z, 0, 1), Dx(r)});
  for (const auto& [z, r] : solved) rules.push_back({dep_atom(z), r});
}

}  // namespace

Rules manifold_rules(const RDSystem& sys, const VectorField& f,
                     ManifoldKind kind, int pivot) {
  validate_point_field(f);
  auto xx_from_S = [&](int k) {
    return sys.lambda[k] * jet(k, 1, 0) - sys.C[k];
  };

  Rules rules;
  if (kind == ManifoldKind::Lie) {
    for (int k = 0; k < kNumDeps; ++k)
      rules.push_back({jet_atom(k, 0, 2), xx_from_S(k)});
    return rules;
  }

  std::vector<int> constrained;
  if (kind == ManifoldKind::FirstType)
    constrained = {pivot};
  else
    constrained = {0, 1, 2};

  if (!f.xi0.is_zero()) {
    Expr dt0 = Dt(f.xi0), dx0 = Dx(f.xi0);
    Expr dt1 = Dt(f.xi1), dx1 = Dx(f.xi1);
    for (int k : constrained)
      rules.push_back({jet_atom(k, 2, 0),
                       (Dt(f.eta[k]) - jet(k, 1, 0) * dt0 - jet(k, 0, 1) * dt1 -
                        f.xi1 * jet(k, 1, 1)) /
                           f.xi0});
    for (int k : constrained)
      rules.push_back({jet_atom(k, 1, 1),
                       (Dx(f.eta[k]) - jet(k, 1, 0) * dx0 - jet(k, 0, 1) * dx1 -
                        f.xi1 * jet(k, 0, 2)) /
                           f.xi0});
    for (int k = 0; k < kNumDeps; ++k)
      rules.push_back({jet_atom(k, 0, 2), xx_from_S(k)});
    for (int k : constrained)
      rules.push_back(
          {jet_atom(k, 1, 0), (f.eta[k] - f.xi1 * jet(k, 0, 1)) / f.xi0});
    return rules;
  }

  if (!f.xi1.is_zero()) {
    Expr dt1 = Dt(f.xi1), dx1 = Dx(f.xi1);
    auto in = [&](int k) {
      for (int c : constrained)
        if (c == k) return true;
      return false;
    };
    for (int k : constrained)
      rules.push_back({jet_atom(k, 1, 1),
                       (Dt(f.eta[k]) - jet(k, 0, 1) * dt1) / f.xi1});
    for (int k : constrained)
      rules.push_back({jet_atom(k, 1, 0),
                       (jet(k, 0, 2) + sys.C[k]) / sys.lambda[k]});
    for (int k : constrained)
      rules.push_back({jet_atom(k, 0, 2),
                       (Dx(f.eta[k]) - jet(k, 0, 1) * dx1) / f.xi1});
    for (int k = 0; k < kNumDeps; ++k)
      if (!in(k)) rules.push_back({jet_atom(k, 0, 2), xx_from_S(k)});
    for (int k : constrained)
      rules.push_back({jet_atom(k, 0, 1), f.eta[k] / f.xi1});
    return rules;
  }

  rules_from_eta(sys, f, constrained, rules);
  return rules;
}

Expr apply_rules(Expr e, const Rules& rules) {
  // The rule list is triangular: each right-hand side mentions only free
  // atoms or atoms constrained by later rules. Expanding from the back turns
  // sequential rewriting into one simultaneous substitution, which keeps the
  // intermediate expression swell bounded.
  SubstMap full;
  for (auto it = rules.rbegin(); it != rules.rend(); ++it)
    full[it->first] = it->second.substitute(full);
  e = e.substitute(full);
  for (const auto& [a, r] : rules)
    if (e.contains_atom(a))
      throw DomainError("rewrite left a constrained atom: " + atom_name(a));
  return e;
}

std::string system_str(const DLVSystem& s) {
  const char* names[3][4] = {{"a1", "b1", "c1", "d1"},
                             {"a2", "b2", "c2", "d2"},
                             {"a3", "b3", "c3", "d3"}};
  std::ostringstream os;
  for (int k = 0; k < kNumDeps; ++k)
    os << "lambda" << k + 1 << " = " << s.lambda[k].str() << "\n";
  for (int k = 0; k < kNumDeps; ++k)
    for (int j = 0; j < 4; ++j)
      os << names[k][j] << " = " << s.row[k][j].str() << "\n";
  return os.str();
}

DLVSystem parse_system(const std::string& text) {
  std::map<std::string, Expr> kv;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error("system line without '=': " + line);
    std::string key = line.substr(0, eq);
    key.erase(0, key.find_first_not_of(" \t"));
    key.erase(key.find_last_not_of(" \t") + 1);
    if (kv.count(key)) throw Error("duplicate system key: " + key);
    kv.emplace(key, parse_expr(line.substr(eq + 1)));
  }
  auto take = [&](const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw Error("system definition misses " + key);
    Expr e = it->second;
    for (AtomId a : e.atoms()) {
      AtomKind k = atom_info(a).kind;
      if (k != AtomKind::Param)
        throw Error("system coefficient " + key + " depends on " +
                    atom_name(a));
    }
    kv.erase(it);
    return e;
  };
  DLVSystem s;
  const char* names[3][4] = {{"a1", "b1", "c1", "d1"},
                             {"a2", "b2", "c2", "d2"},
                             {"a3", "b3", "c3", "d3"}};
  for (int k = 0; k < kNumDeps; ++k) {
    s.lambda[k] = take("lambda" + std::to_string(k + 1));
    for (int j = 0; j < 4; ++j) s.row[k][j] = take(names[k][j]);
  }
  if (!kv.empty()) throw Error("unknown system key: " + kv.begin()->first);
  return s;
}

}  // namespace dlv
