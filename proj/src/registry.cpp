#include "dlv/atoms.hpp"

#include <deque>
#include <mutex>
#include <unordered_map>

#include "dlv/errors.hpp"
#include "dlv/expr.hpp"

namespace dlv {

namespace {

constexpr const char* kBaseLetters = "txuvw";

// Jet suffix layout; dt+dx in {1,2}.
struct JetShape {
  int dt, dx;
  const char* suffix;
};
constexpr JetShape kJetShapes[5] = {
    {1, 0, "_t"}, {0, 1, "_x"}, {2, 0, "_tt"}, {1, 1, "_xt"}, {0, 2, "_xx"}};

struct Registry {
  std::vector<AtomInfo> atoms;
  std::unordered_map<std::string, AtomId> by_name;
  std::deque<Expr> parts;  // parts[0] unused (id 0 = absent factor)
  mutable std::recursive_mutex mu;

  Registry() {
    parts.emplace_back();  // id 0
    const char* deps = "uvw";
    for (AtomId i = 0; i < 5; ++i) {
      AtomInfo ai;
      ai.kind = i < 2 ? AtomKind::Indep : AtomKind::Dep;
      ai.name = std::string(1, kBaseLetters[i]);
      if (i >= 2) ai.dep = static_cast<int>(i) - 2;
      add(std::move(ai));
    }
    for (int d = 0; d < kNumDeps; ++d)
      for (const auto& js : kJetShapes) {
        AtomInfo ai;
        ai.kind = AtomKind::Jet;
        ai.name = std::string(1, deps[d]) + js.suffix;
        ai.dep = d;
        ai.dt = js.dt;
        ai.dx = js.dx;
        add(std::move(ai));
      }
    struct P {
      const char* n;
      bool pos;
    };
    const P params[] = {{"a", false},       {"a1", false},      {"a2", false},
                        {"a3", false},      {"b", false},       {"b1", false},
                        {"b2", false},      {"b3", false},      {"c", false},
                        {"c1", false},      {"c2", false},      {"c3", false},
                        {"d", false},       {"d1", false},      {"d2", false},
                        {"d3", false},      {"lambda1", true},  {"lambda2", true},
                        {"lambda3", true},  {"alpha", false},   {"alpha1", false},
                        {"beta", false},    {"beta1", false},   {"beta2", false},
                        {"v0", false}};
    for (const auto& p : params) {
      AtomInfo ai;
      ai.kind = AtomKind::Param;
      ai.name = p.n;
      ai.positive = p.pos;
      add(std::move(ai));
    }
  }

  AtomId add(AtomInfo ai) {
    AtomId id = static_cast<AtomId>(atoms.size());
    by_name.emplace(ai.name, id);
    atoms.push_back(std::move(ai));
    return id;
  }

  static Registry& inst() {
    static Registry r;
    return r;
  }
};

std::string unknown_name(const std::string& base, const DerivTag& tag) {
  if (tag.order() == 0) return base;
  return base + "_" + tag.suffix();
}

}  // namespace

std::string DerivTag::suffix() const {
  std::string s;
  for (int i = 0; i < 5; ++i)
    for (int k = 0; k < n[i]; ++k) s += kBaseLetters[i];
  return s;
}

AtomId dep_atom(int dep) { return kU + static_cast<AtomId>(dep); }

AtomId jet_atom(int dep, int dt, int dx) {
  for (int i = 0; i < 5; ++i)
    if (kJetShapes[i].dt == dt && kJetShapes[i].dx == dx)
      return static_cast<AtomId>(5 + dep * 5 + i);
  throw Error("no jet variable of order (" + std::to_string(dt) + "," +
              std::to_string(dx) + ")");
}

AtomId intern_param(const std::string& name, bool positive) {
  auto& r = Registry::inst();
  std::lock_guard lk(r.mu);
  if (auto it = r.by_name.find(name); it != r.by_name.end()) {
    if (r.atoms[it->second].kind != AtomKind::Param)
      throw Error("name already used by a non-parameter atom: " + name);
    if (positive) r.atoms[it->second].positive = true;
    return it->second;
  }
  AtomInfo ai;
  ai.kind = AtomKind::Param;
  ai.name = name;
  ai.positive = positive;
  return r.add(std::move(ai));
}

namespace {
std::unordered_map<std::string, std::uint8_t>& unknown_args() {
  static std::unordered_map<std::string, std::uint8_t> m;
  return m;
}
}  // namespace

AtomId declare_unknown(const std::string& base, std::uint8_t argmask) {
  auto& r = Registry::inst();
  std::lock_guard lk(r.mu);
  auto [it, fresh] = unknown_args().emplace(base, argmask);
  if (!fresh && it->second != argmask)
    throw Error("unknown function redeclared with different arguments: " +
                base);
  return unknown_tagged(base, DerivTag{});
}

AtomId unknown_tagged(const std::string& base, const DerivTag& tag) {
  auto& r = Registry::inst();
  std::lock_guard lk(r.mu);
  auto argsIt = unknown_args().find(base);
  if (argsIt == unknown_args().end())
    throw Error("unknown function not declared: " + base);
  std::string nm = unknown_name(base, tag);
  if (auto it = r.by_name.find(nm); it != r.by_name.end()) return it->second;
  AtomInfo ai;
  ai.kind = AtomKind::Unknown;
  ai.name = nm;
  ai.base = base;
  ai.args = argsIt->second;
  ai.tag = tag;
  return r.add(std::move(ai));
}

AtomId unknown_deriv(AtomId id, int arg) {
  const AtomInfo& ai = atom_info(id);
  if (ai.kind != AtomKind::Unknown)
    throw Error("not an unknown-function atom: " + ai.name);
  if (!(ai.args & (1u << arg)))
    throw Error(ai.name + " does not depend on " +
                std::string(1, kBaseLetters[arg]));
  DerivTag t = ai.tag;
  t.n[arg] = static_cast<std::uint8_t>(t.n[arg] + 1);
  return unknown_tagged(ai.base, t);
}

const AtomInfo& atom_info(AtomId id) {
  auto& r = Registry::inst();
  std::lock_guard lk(r.mu);
  return r.atoms.at(id);
}

std::optional<AtomId> find_atom(const std::string& name) {
  auto& r = Registry::inst();
  std::lock_guard lk(r.mu);
  if (auto it = r.by_name.find(name); it != r.by_name.end()) return it->second;
  return std::nullopt;
}

// --- exponential exponent table ------------------------------------------

const Expr& exp_part_expr(ExpPartId id) {
  auto& r = Registry::inst();
  std::lock_guard lk(r.mu);
  return r.parts.at(id);
}

ExpPartId intern_exp_part(const Expr& e) {
  auto& r = Registry::inst();
  std::lock_guard lk(r.mu);
  if (e.is_zero()) return 0;
  for (ExpPartId i = 1; i < r.parts.size(); ++i)
    if (r.parts[i] == e) return i;
  r.parts.push_back(e);
  return static_cast<ExpPartId>(r.parts.size() - 1);
}

ExpPartId exp_part_add(ExpPartId a, ExpPartId b) {
  if (a == 0) return b;
  if (b == 0) return a;
  return intern_exp_part(exp_part_expr(a) + exp_part_expr(b));
}

ExpPartId exp_part_neg(ExpPartId a) {
  if (a == 0) return 0;
  return intern_exp_part(-exp_part_expr(a));
}

ExpPartId exp_part_scale(ExpPartId a, long k) {
  if (a == 0 || k == 1) return a;
  if (k == 0) return 0;
  return intern_exp_part(exp_part_expr(a) * Expr(Rat(k)));
}

}  // namespace dlv
