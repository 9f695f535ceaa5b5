#include "dlv/detgen.hpp"

#include <algorithm>
#include <map>
#include <cstdlib>
#include <iostream>
#include <set>

#include "dlv/errors.hpp"

namespace dlv {

namespace {

bool unknown_atom(AtomId a) {
  return atom_info(a).kind == AtomKind::Unknown;
}

// Canonical ordering of equation polynomials: term-by-term graded compare.
bool poly_less(const Poly& a, const Poly& b) {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  for (std::size_t i = 0; i < ta.size() && i < tb.size(); ++i) {
    int c = mono_cmp(ta[i].m, tb[i].m);
    if (c != 0) return c > 0;
    int s = cmp(ta[i].c, tb[i].c);
    if (s != 0) return s > 0;
  }
  return ta.size() < tb.size();
}

// Normalization state: discovered identically-zero coefficient atoms and the
// factors that may be divided out of an equation.
struct Normalizer {
  bool strip_xi0 = false;
  AtomId xi0 = 0;
  std::vector<std::pair<std::string, DerivTag>> zeros;

  bool killed(AtomId a) const {
    const AtomInfo& i = atom_info(a);
    if (i.kind != AtomKind::Unknown) return false;
    for (const auto& [base, tag] : zeros)
      if (i.base == base && i.tag.extends(tag)) return true;
    return false;
  }

  // Nonzero whatever the parameters: base variables (the equation holds
  // identically in them), positive parameters, and xi0 when assumed nonzero.
  bool certified(AtomId a) const {
    const AtomInfo& i = atom_info(a);
    if (i.kind == AtomKind::Indep || i.kind == AtomKind::Dep) return true;
    if (i.kind == AtomKind::Param && i.positive) return true;
    return strip_xi0 && a == xi0;
  }

  Poly reduce(const Poly& p) const {
    std::vector<Term> ts;
    for (const Term& t : p.terms()) {
      bool drop = false;
      for (const auto& [a, e] : t.m.pw)
        if (killed(a)) {
          drop = true;
          break;
        }
      if (!drop) ts.push_back(t);
    }
    Poly q = Poly::from_terms(std::move(ts));
    if (q.is_zero()) return q;
    Monomial content = q.monomial_content();
    Monomial strip;
    for (const auto& [a, e] : content.pw)
      if (certified(a)) strip.pw.emplace_back(a, e);
    if (!strip.pw.empty()) {
      std::vector<Term> out;
      out.reserve(q.size());
      for (const Term& t : q.terms()) out.push_back({mono_div(t.m, strip), t.c});
      q = Poly::from_terms(std::move(out));
    }
    return poly_int_primitive(q);
  }

  std::optional<AtomId> single_zero(const Poly& p) const {
    if (p.size() != 1) return std::nullopt;
    const Term& t = p.terms()[0];
    if (t.m.part != 0 || t.m.pw.size() != 1) return std::nullopt;
    auto [a, e] = t.m.pw[0];
    if (e != 1 || !unknown_atom(a)) return std::nullopt;
    return a;
  }
};

// Pivot priority within column monomials: highest derivative order first,
// then eta3..eta1 above xi1 above xi0, then the tag itself; dependent
// variables rank below every unknown, and t, x lowest. Pivoting on the
// highest-derivative atom keeps rows in their naturally solved form instead
// of cross-eliminating shared low-order atoms.
std::uint64_t atom_rank(AtomId a) {
  const AtomInfo& i = atom_info(a);
  if (i.kind == AtomKind::Unknown) {
    std::uint64_t base = i.base == "xi0"    ? 0
                         : i.base == "xi1"  ? 1
                         : i.base == "eta1" ? 2
                         : i.base == "eta2" ? 3
                                            : 4;
    std::uint64_t tag = 0;
    for (int s = 0; s < 5; ++s) tag = tag * 8 + i.tag.n[s];
    return (1ull << 40) | (std::uint64_t(i.tag.order()) << 32) | (base << 16) |
           tag;
  }
  if (i.kind == AtomKind::Dep) return 100 + (kW - a);
  return a == kT ? 1 : 0;
}

struct MonoLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    std::vector<std::uint64_t> ra, rb;
    for (const auto& [atom, e] : a.pw)
      ra.insert(ra.end(), e, atom_rank(atom));
    for (const auto& [atom, e] : b.pw)
      rb.insert(rb.end(), e, atom_rank(atom));
    std::sort(ra.rbegin(), ra.rend());
    std::sort(rb.rbegin(), rb.rend());
    if (ra != rb) return ra < rb;
    return mono_cmp(a, b) < 0;
  }
};

// Equation viewed as a combination of monomials in the coefficient atoms and
// the dependent variables, with coefficients in the parameter field. Keeping
// u, v, w on the monomial side means eliminations divide only by parameter
// expressions.
using Row = std::map<Monomial, Expr, MonoLess>;

Row build_row(const Poly& p) {
  std::map<Monomial, std::vector<Term>, MonoLess> groups;
  for (const Term& t : p.terms()) {
    Monomial key, rest;
    key.part = 0;
    rest.part = t.m.part;
    bool has_unknown = false;
    for (const auto& [a, e] : t.m.pw) {
      AtomKind k = atom_info(a).kind;
      if (k == AtomKind::Unknown || k == AtomKind::Dep ||
          k == AtomKind::Indep) {
        key.pw.emplace_back(a, e);
        has_unknown = has_unknown || k == AtomKind::Unknown;
      } else {
        rest.pw.emplace_back(a, e);
      }
    }
    if (!has_unknown)
      throw DomainError("determining equation with a coefficient-free term");
    groups[key].push_back({rest, t.c});
  }
  Row r;
  for (auto& [m, ts] : groups) {
    Expr c(Poly::from_terms(std::move(ts)));
    if (!c.is_zero()) r.emplace(m, std::move(c));
  }
  return r;
}

const Monomial& lead(const Row& r) { return r.rbegin()->first; }

// r -= c * cof * b, where b's leading coefficient is 1.
void subtract_multiple(Row& r, const Expr& c, const Monomial& cof,
                       const Row& b) {
  for (const auto& [m, bc] : b) {
    Monomial key = mono_mul(m, cof);
    Expr delta = c * bc;
    auto it = r.find(key);
    if (it == r.end()) {
      if (!delta.is_zero()) r.emplace(std::move(key), -delta);
    } else {
      it->second -= delta;
      if (it->second.is_zero()) r.erase(it);
    }
  }
}

// Fully reduce r by pivots of basis (skipping index `skip`): any term whose
// coefficient monomial is divisible by a pivot is eliminated.
Row reduce_row(Row r, const std::vector<Row>& basis, std::size_t skip) {
  for (bool changed = true; changed;) {
    changed = false;
    for (auto it = r.rbegin(); it != r.rend(); ++it) {
      const Monomial key = it->first;
      const Expr c = it->second;
      for (std::size_t i = 0; i < basis.size() && !changed; ++i) {
        if (i == skip) continue;
        const Monomial& p = lead(basis[i]);
        if (mono_divides(p, key)) {
          subtract_multiple(r, c, mono_div(key, p), basis[i]);
          changed = true;
        }
      }
      if (changed) break;  // the map was mutated; restart the scan
    }
  }
  return r;
}

Poly row_to_poly(const Row& r) {
  Expr acc;
  for (const auto& [m, c] : r)
    acc += c * Expr(Poly::from_terms({{m, Rat(1)}}));
  return acc.num();
}

std::vector<Poly> interreduce(const std::vector<Poly>& eqs,
                              const Normalizer& nz) {
  std::vector<Row> work;
  work.reserve(eqs.size());
  for (const Poly& p : eqs)
    if (!p.is_zero()) work.push_back(build_row(p));
  MonoLess less;
  std::sort(work.begin(), work.end(), [&](const Row& a, const Row& b) {
    if (lead(a) != lead(b)) return less(lead(b), lead(a));
    if (a.size() != b.size()) return a.size() < b.size();
    return poly_str(row_to_poly(a)) < poly_str(row_to_poly(b));
  });

  std::vector<Row> basis;
  for (Row& r : work) {
    Row red = reduce_row(std::move(r), basis, basis.size());
    if (red.empty()) continue;
    Expr lc = red.rbegin()->second;
    for (auto& [m, c] : red) c /= lc;
    basis.push_back(std::move(red));
  }

  // Interreduce until every row is fully reduced modulo the others.
  bool changed = true;
  int guard = 0;
  while (changed) {
    if (++guard > 50)
      throw DomainError("determining-system reduction did not stabilize");
    changed = false;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      Row red = reduce_row(basis[i], basis, i);
      if (red == basis[i]) continue;
      changed = true;
      if (red.empty()) {
        basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
        --i;
        continue;
      }
      Expr lc = red.rbegin()->second;
      for (auto& [m, c] : red) c /= lc;
      basis[i] = std::move(red);
    }
  }

  std::vector<Poly> out;
  out.reserve(basis.size());
  for (const Row& r : basis) {
    Poly p = nz.reduce(row_to_poly(r));
    if (!p.is_zero()) out.push_back(std::move(p));
  }
  return out;
}

// Raw jet-monomial split of the restricted prolonged residuals.
std::vector<Poly> raw_split(const RDSystem& sys, ManifoldKind kind, int pivot,
                            const Normalizer& nz) {
  const bool trace = std::getenv("DLV_TRACE_DETGEN") != nullptr;
  VectorField f = unknown_field();
  ProlongedField p = prolong2(f);
  auto S = residuals(sys);
  Rules rules = manifold_rules(sys, f, kind, pivot);
  std::vector<Poly> eqs;
  for (int k = 0; k < kNumDeps; ++k) {
    if (trace) std::cerr << "raw_split: restricting residual " << k << "\n";
    Expr e = apply_rules(apply_prolonged(p, S[k]), rules);
    if (trace)
      std::cerr << "raw_split: residual " << k << " restricted, "
                << e.num().terms().size() << " terms\n";
    std::vector<AtomId> jets;
    for (AtomId a : e.atoms())
      if (atom_info(a).kind == AtomKind::Jet) jets.push_back(a);
    for (const auto& [m, coeff] : e.collect(jets)) {
      if (coeff.is_zero()) continue;
      for (AtomId a : coeff.den().atoms())
        if (!nz.certified(a))
          throw DomainError("uncertified denominator in split: " +
                            atom_name(a));
      Poly q = nz.reduce(coeff.num());
      if (!q.is_zero()) eqs.push_back(std::move(q));
    }
  }
  return eqs;
}

bool linear_low_order(const Poly& p) {
  for (const Term& t : p.terms()) {
    std::uint32_t deg = 0;
    for (const auto& [a, e] : t.m.pw)
      if (unknown_atom(a)) {
        deg += e;
        if (atom_info(a).tag.order() > 1) return false;
      }
    if (deg != 1) return false;
  }
  return true;
}

DeterminingSystem generate(const RDSystem& sys, ManifoldKind kind, int pivot) {
  const bool trace = std::getenv("DLV_TRACE_DETGEN") != nullptr;
  Normalizer nz;
  nz.strip_xi0 = kind != ManifoldKind::Lie;
  nz.xi0 = declare_unknown("xi0", argmask_all());

  std::vector<Poly> eqs = raw_split(sys, kind, pivot, nz);
  std::set<std::string> differentiated;
  std::string before;

  for (int round = 0;; ++round) {
    if (round > 30)
      throw DomainError("determining-system closure did not converge");

    // Discover zero atoms, then drop killed terms everywhere.
    bool found = true;
    while (found) {
      found = false;
      for (Poly& p : eqs) {
        p = nz.reduce(p);
        if (auto z = nz.single_zero(p)) {
          const AtomInfo& i = atom_info(*z);
          bool fresh = true;
          for (const auto& [base, tag] : nz.zeros)
            if (base == i.base && i.tag.extends(tag)) fresh = false;
          if (fresh) {
            nz.zeros.emplace_back(i.base, i.tag);
            found = true;
          }
        }
      }
    }

    // A zero whose tag extends another recorded zero of the same base is
    // already implied; keep only the minimal ones.
    {
      auto& zs = nz.zeros;
      std::vector<std::pair<std::string, DerivTag>> kept;
      for (std::size_t i = 0; i < zs.size(); ++i) {
        bool covered = false;
        for (std::size_t j = 0; j < zs.size() && !covered; ++j)
          covered = i != j && zs[i].first == zs[j].first &&
                    zs[i].second.extends(zs[j].second) &&
                    !zs[j].second.extends(zs[i].second);
        if (!covered) kept.push_back(zs[i]);
      }
      zs = std::move(kept);
    }

    // Dedupe.
    std::set<std::string> seen;
    std::vector<Poly> unique;
    for (Poly& p : eqs) {
      if (p.is_zero()) continue;
      if (seen.insert(poly_str(p)).second) unique.push_back(std::move(p));
    }
    eqs = std::move(unique);

    // First-order total-derivative consequences of low-order linear
    // equations (one shot per equation).
    std::vector<Poly> extra;
    for (const Poly& p : eqs) {
      if (!linear_low_order(p)) continue;
      if (!differentiated.insert(poly_str(p)).second) continue;
      Expr pe{p};
      for (AtomId s : {kT, kX, kU, kV, kW}) {
        Poly d = nz.reduce(pe.diff(s).num());
        if (!d.is_zero() && !seen.count(poly_str(d)))
          extra.push_back(std::move(d));
      }
    }
    for (Poly& p : extra) eqs.push_back(std::move(p));

    if (trace) {
      std::size_t terms = 0;
      for (const Poly& p : eqs) terms += p.terms().size();
      std::cerr << "detgen round " << round << ": " << eqs.size() << " eqs, "
                << terms << " terms, " << nz.zeros.size() << " zeros\n";
    }
    eqs = interreduce(eqs, nz);
    for (const auto& [base, tag] : nz.zeros)
      eqs.push_back(Poly::atom(unknown_tagged(base, tag)));

    std::sort(eqs.begin(), eqs.end(), poly_less);
    eqs.erase(std::unique(eqs.begin(), eqs.end()), eqs.end());

    std::string now;
    for (const Poly& p : eqs) now += poly_str(p) + "\n";
    if (now == before) break;
    before = std::move(now);
  }

  return DeterminingSystem{std::move(eqs)};
}

}  // namespace

VectorField unknown_field() {
  auto fn = [](const char* name) {
    return Expr::atom(declare_unknown(name, argmask_all()));
  };
  return {fn("xi0"), fn("xi1"), {fn("eta1"), fn("eta2"), fn("eta3")}};
}

DeterminingSystem determining_equations(const RDSystem& sys) {
  return generate(sys, ManifoldKind::Lie, 0);
}

DeterminingSystem first_type_determining_equations(const RDSystem& sys,
                                                   int pivot) {
  return generate(sys, ManifoldKind::FirstType, pivot);
}

std::string DeterminingSystem::str() const {
  std::string s;
  for (const Poly& p : equations) s += poly_str(p) + " = 0\n";
  return s;
}

SubstMap field_binding(const DeterminingSystem& ds, const VectorField& f) {
  const std::map<std::string, const Expr*> comp = {{"xi0", &f.xi0},
                                                   {"xi1", &f.xi1},
                                                   {"eta1", &f.eta[0]},
                                                   {"eta2", &f.eta[1]},
                                                   {"eta3", &f.eta[2]}};
  std::set<AtomId> atoms;
  for (const Poly& p : ds.equations)
    for (AtomId a : p.atoms())
      if (unknown_atom(a)) atoms.insert(a);
  SubstMap m;
  for (AtomId a : atoms) {
    const AtomInfo& i = atom_info(a);
    auto it = comp.find(i.base);
    if (it == comp.end())
      throw Error("unexpected coefficient atom: " + i.name);
    Expr e = *it->second;
    for (AtomId s = 0; s < 5; ++s)
      for (int k = 0; k < i.tag.n[s]; ++k) e = e.diff(s);
    m.emplace(a, std::move(e));
  }
  return m;
}

bool satisfies(const DeterminingSystem& ds, const VectorField& f) {
  SubstMap m = field_binding(ds, f);
  for (const Poly& p : ds.equations)
    if (!Expr(p).substitute(m).is_zero()) return false;
  return true;
}

}  // namespace dlv
