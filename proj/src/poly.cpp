#include "dlv/poly.hpp"

#include <algorithm>
#include <map>

#include "dlv/errors.hpp"

namespace dlv {

Rat rat(long n, long d) {
  if (d == 0) throw DomainError("rational with zero denominator");
  Rat r(n, d);
  r.canonicalize();
  return r;
}

std::string rat_str(const Rat& r) { return r.get_str(); }

std::uint32_t Monomial::total_degree() const {
  std::uint32_t s = 0;
  for (const auto& [a, e] : pw) s += e;
  return s;
}

std::uint32_t Monomial::degree_in(AtomId a) const {
  for (const auto& [id, e] : pw)
    if (id == a) return e;
  return 0;
}

int mono_cmp(const Monomial& a, const Monomial& b) {
  std::uint32_t da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db ? -1 : 1;
  // Lexicographic sweep, lower atom ids ranked as bigger variables.
  std::size_t i = 0, j = 0;
  while (i < a.pw.size() && j < b.pw.size()) {
    if (a.pw[i].first != b.pw[j].first)
      return a.pw[i].first < b.pw[j].first ? 1 : -1;
    if (a.pw[i].second != b.pw[j].second)
      return a.pw[i].second > b.pw[j].second ? 1 : -1;
    ++i;
    ++j;
  }
  if (i < a.pw.size()) return 1;
  if (j < b.pw.size()) return -1;
  if (a.part != b.part) return a.part < b.part ? -1 : 1;
  return 0;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.part = exp_part_add(a.part, b.part);
  r.pw.reserve(a.pw.size() + b.pw.size());
  std::size_t i = 0, j = 0;
  while (i < a.pw.size() || j < b.pw.size()) {
    if (j == b.pw.size() || (i < a.pw.size() && a.pw[i].first < b.pw[j].first))
      r.pw.push_back(a.pw[i++]);
    else if (i == a.pw.size() || b.pw[j].first < a.pw[i].first)
      r.pw.push_back(b.pw[j++]);
    else {
      r.pw.emplace_back(a.pw[i].first, a.pw[i].second + b.pw[j].second);
      ++i;
      ++j;
    }
  }
  return r;
}

bool mono_divides(const Monomial& d, const Monomial& m) {
  std::size_t j = 0;
  for (const auto& [a, e] : d.pw) {
    while (j < m.pw.size() && m.pw[j].first < a) ++j;
    if (j == m.pw.size() || m.pw[j].first != a || m.pw[j].second < e)
      return false;
  }
  return true;
}

Monomial mono_div(const Monomial& m, const Monomial& d) {
  Monomial r;
  r.part = exp_part_add(m.part, exp_part_neg(d.part));
  std::size_t j = 0;
  for (const auto& [a, e] : m.pw) {
    std::uint32_t sub = 0;
    while (j < d.pw.size() && d.pw[j].first < a) ++j;
    if (j < d.pw.size() && d.pw[j].first == a) sub = d.pw[j].second;
    if (sub > e) throw DomainError("monomial division underflow");
    if (e > sub) r.pw.emplace_back(a, e - sub);
  }
  return r;
}

Poly::Poly(Rat r) {
  if (r != 0) terms_.push_back({Monomial{}, std::move(r)});
}

Poly Poly::atom(AtomId id, std::uint32_t power) {
  Poly p;
  if (power == 0) return one();
  Monomial m;
  m.pw.emplace_back(id, power);
  p.terms_.push_back({std::move(m), Rat(1)});
  return p;
}

Poly Poly::exp_part(ExpPartId part) {
  Poly p;
  Monomial m;
  m.part = part;
  p.terms_.push_back({std::move(m), Rat(1)});
  return p;
}

bool Poly::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one());
}

bool Poly::is_one() const {
  return terms_.size() == 1 && terms_[0].m.is_one() && terms_[0].c == 1;
}

Poly Poly::from_terms(std::vector<Term> ts) {
  std::sort(ts.begin(), ts.end(), [](const Term& a, const Term& b) {
    return mono_cmp(a.m, b.m) > 0;
  });
  Poly p;
  for (auto& t : ts) {
    if (t.c == 0) continue;
    if (!p.terms_.empty() && mono_cmp(p.terms_.back().m, t.m) == 0) {
      p.terms_.back().c += t.c;
      if (p.terms_.back().c == 0) p.terms_.pop_back();
    } else {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

Poly Poly::operator-() const {
  Poly p(*this);
  for (auto& t : p.terms_) t.c = -t.c;
  return p;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r;
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    int cmp;
    if (i == terms_.size())
      cmp = -1;
    else if (j == o.terms_.size())
      cmp = 1;
    else
      cmp = mono_cmp(terms_[i].m, o.terms_[j].m);
    if (cmp > 0)
      r.terms_.push_back(terms_[i++]);
    else if (cmp < 0)
      r.terms_.push_back(o.terms_[j++]);
    else {
      Rat c = terms_[i].c + o.terms_[j].c;
      if (c != 0) r.terms_.push_back({terms_[i].m, std::move(c)});
      ++i;
      ++j;
    }
  }
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::mul_term(const Term& t) const {
  if (t.c == 0) return Poly();
  std::vector<Term> ts;
  ts.reserve(terms_.size());
  for (const auto& a : terms_) ts.push_back({mono_mul(a.m, t.m), a.c * t.c});
  // Multiplying by a fixed term can permute order only via exponential-part
  // merges; re-sorting keeps the invariant.
  return from_terms(std::move(ts));
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  if (o.terms_.size() == 1) return mul_term(o.terms_[0]);
  if (terms_.size() == 1) return o.mul_term(terms_[0]);
  std::map<Monomial, Rat, decltype([](const Monomial& a, const Monomial& b) {
             return mono_cmp(a, b) > 0;
           })>
      acc;
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) {
      Monomial m = mono_mul(a.m, b.m);
      acc.try_emplace(m, Rat(0)).first->second += a.c * b.c;
    }
  Poly r;
  r.terms_.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) r.terms_.push_back({m, std::move(c)});
  return r;
}

Poly Poly::scaled(const Rat& r) const {
  if (r == 0) return Poly();
  Poly p(*this);
  for (auto& t : p.terms_) t.c *= r;
  return p;
}

Poly Poly::pow(std::uint32_t n) const {
  Poly r = one();
  for (std::uint32_t i = 0; i < n; ++i) r = r * *this;
  return r;
}

bool Poly::has_parts() const {
  for (const auto& t : terms_)
    if (t.m.part != 0) return true;
  return false;
}

bool Poly::contains_atom(AtomId a) const {
  for (const auto& t : terms_)
    if (t.m.contains(a)) return true;
  return false;
}

std::uint32_t Poly::degree_in(AtomId a) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.m.degree_in(a));
  return d;
}

std::vector<AtomId> Poly::atoms() const {
  std::vector<AtomId> r;
  for (const auto& t : terms_)
    for (const auto& [a, e] : t.m.pw) r.push_back(a);
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

Poly Poly::coeff_of(AtomId a, std::uint32_t k) const {
  std::vector<Term> ts;
  for (const auto& t : terms_)
    if (t.m.degree_in(a) == k) {
      Term nt = t;
      if (k > 0) {
        Monomial d;
        d.pw.emplace_back(a, k);
        nt.m = mono_div(nt.m, d);
      }
      ts.push_back(std::move(nt));
    }
  return from_terms(std::move(ts));
}

Monomial Poly::monomial_content() const {
  Monomial r;
  if (terms_.empty()) return r;
  r = terms_[0].m;
  r.part = 0;
  for (std::size_t i = 1; i < terms_.size() && !r.pw.empty(); ++i) {
    const Monomial& m = terms_[i].m;
    std::vector<std::pair<AtomId, std::uint32_t>> keep;
    std::size_t j = 0;
    for (const auto& [a, e] : r.pw) {
      while (j < m.pw.size() && m.pw[j].first < a) ++j;
      if (j < m.pw.size() && m.pw[j].first == a)
        keep.emplace_back(a, std::min(e, m.pw[j].second));
    }
    r.pw = std::move(keep);
  }
  return r;
}

namespace {

Poly mono_div_all(const Poly& p, const Monomial& m) {
  if (m.pw.empty() && m.part == 0) return p;
  std::vector<Term> ts;
  ts.reserve(p.terms().size());
  for (const auto& t : p.terms()) ts.push_back({mono_div(t.m, m), t.c});
  return Poly::from_terms(std::move(ts));
}

Poly monic(const Poly& p) {
  if (p.is_zero()) return p;
  return p.scaled(Rat(1) / p.leading().c);
}

// Lowest atom id present (ranked as the biggest variable); assumes nonempty.
AtomId main_var(const Poly& a, const Poly& b) {
  AtomId best = ~AtomId(0);
  for (const Poly* p : {&a, &b})
    for (const auto& t : p->terms())
      if (!t.m.pw.empty()) best = std::min(best, t.m.pw.front().first);
  return best;
}

bool is_const_poly(const Poly& p) {
  return p.is_zero() || (p.size() == 1 && p.leading().m.pw.empty());
}

Poly prem(const Poly& p, const Poly& s, AtomId v) {
  std::uint32_t ds = s.degree_in(v);
  Poly lcs = s.coeff_of(v, ds);
  Poly r = p;
  while (!r.is_zero() && r.degree_in(v) >= ds) {
    std::uint32_t dr = r.degree_in(v);
    Poly lcr = r.coeff_of(v, dr);
    // lcs*r - lcr*v^(dr-ds)*s
    r = r * lcs - lcr * Poly::atom(v, dr - ds) * s;
  }
  return r;
}

Poly content_in(const Poly& p, AtomId v) {
  Poly g;
  for (std::uint32_t k = 0; k <= p.degree_in(v); ++k) {
    Poly c = p.coeff_of(v, k);
    if (!c.is_zero()) g = poly_gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

Poly divexact_or_throw(const Poly& p, const Poly& d) {
  auto q = poly_divexact(p, d);
  if (!q) throw Error("internal: inexact polynomial division in gcd");
  return *q;
}

// gcd of a single term with a polynomial: intersect the term's monomial
// with every term of the other side. Keeps gcds against monomial
// denominators linear instead of recursing through contents.
Poly mono_common(const Poly& single, const Poly& other) {
  Monomial g = single.terms()[0].m;
  g.part = 0;
  for (const Term& t : other.terms()) {
    Monomial keep;
    std::size_t j = 0;
    for (const auto& [at, e] : g.pw) {
      while (j < t.m.pw.size() && t.m.pw[j].first < at) ++j;
      if (j < t.m.pw.size() && t.m.pw[j].first == at)
        keep.pw.emplace_back(at, std::min(e, t.m.pw[j].second));
    }
    g = std::move(keep);
    if (g.pw.empty()) break;
  }
  std::vector<Term> ts{Term{std::move(g), Rat(1)}};
  return Poly::from_terms(std::move(ts));
}

Poly gcd_core(const Poly& a, const Poly& b) {
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  if (is_const_poly(a) || is_const_poly(b)) return Poly::one();
  if (a == b) return monic(a);
  if (a.terms().size() == 1) return mono_common(a, b);
  if (b.terms().size() == 1) return mono_common(b, a);
  AtomId v = main_var(a, b);
  std::uint32_t da = a.degree_in(v), db = b.degree_in(v);
  if (da == 0) return gcd_core(a, content_in(b, v));
  if (db == 0) return gcd_core(content_in(a, v), b);
  Poly ca = content_in(a, v), cb = content_in(b, v);
  Poly pa = divexact_or_throw(a, ca), pb = divexact_or_throw(b, cb);
  Poly cg = gcd_core(ca, cb);
  Poly p = pa, s = pb;
  if (p.degree_in(v) < s.degree_in(v)) std::swap(p, s);
  Poly result;
  while (true) {
    Poly r = prem(p, s, v);
    if (r.is_zero()) {
      result = divexact_or_throw(s, content_in(s, v));
      break;
    }
    if (r.degree_in(v) == 0) {
      result = Poly::one();
      break;
    }
    p = s;
    s = poly_int_primitive(divexact_or_throw(r, content_in(r, v)));
  }
  return monic(cg * result);
}

// Components grouped by exponential part, parts stripped.
std::vector<Poly> exp_components(const Poly& p) {
  std::map<ExpPartId, std::vector<Term>> groups;
  for (const auto& t : p.terms()) {
    Term nt = t;
    nt.m.part = 0;
    groups[t.m.part].push_back(std::move(nt));
  }
  std::vector<Poly> r;
  r.reserve(groups.size());
  for (auto& [part, ts] : groups) r.push_back(Poly::from_terms(std::move(ts)));
  return r;
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) return Poly();
  std::vector<Poly> comps;
  if (a.has_parts())
    comps = exp_components(a);
  else
    comps.push_back(a);
  if (b.has_parts())
    for (auto& c : exp_components(b)) comps.push_back(std::move(c));
  else
    comps.push_back(b);

  // Strip the shared monomial factor first, then run the recursive gcd.
  Monomial mg = comps[0].monomial_content();
  for (std::size_t i = 1; i < comps.size() && !(mg.pw.empty()); ++i) {
    Monomial mi = comps[i].monomial_content();
    Monomial keep;
    std::size_t j = 0;
    for (const auto& [at, e] : mg.pw) {
      while (j < mi.pw.size() && mi.pw[j].first < at) ++j;
      if (j < mi.pw.size() && mi.pw[j].first == at)
        keep.pw.emplace_back(at, std::min(e, mi.pw[j].second));
    }
    mg = std::move(keep);
  }
  Poly g;
  for (auto& c : comps) {
    g = gcd_core(g, mono_div_all(c, mg));
    if (g.is_one()) break;
  }
  Poly mgp;
  {
    Term t{mg, Rat(1)};
    std::vector<Term> ts{t};
    mgp = Poly::from_terms(std::move(ts));
  }
  return monic(g * mgp);
}

std::optional<Poly> poly_divexact(const Poly& p, const Poly& d) {
  if (d.is_zero()) throw DomainError("exact division by zero polynomial");
  if (d.has_parts())
    throw DomainError("exact division by exponential-bearing polynomial");
  if (p.is_zero()) return Poly();
  if (d.is_one()) return p;
  std::vector<Term> quotient;
  // Independent long division per exponential component.
  std::map<ExpPartId, std::vector<Term>> groups;
  for (const auto& t : p.terms()) groups[t.m.part].push_back(t);
  for (auto& [part, ts] : groups) {
    for (auto& t : ts) t.m.part = 0;
    Poly r = Poly::from_terms(std::move(ts));
    while (!r.is_zero()) {
      const Term& lr = r.leading();
      const Term& ld = d.leading();
      if (!mono_divides(ld.m, lr.m)) return std::nullopt;
      Term q{mono_div(lr.m, ld.m), lr.c / ld.c};
      r = r - d.mul_term(q);
      q.m.part = part;
      quotient.push_back(std::move(q));
    }
  }
  return Poly::from_terms(std::move(quotient));
}

Poly poly_int_primitive(const Poly& p) {
  if (p.is_zero()) return p;
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto& t : p.terms()) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(),
            t.c.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
            t.c.get_den().get_mpz_t());
  }
  Rat scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (p.leading().c < 0) scale = -scale;
  return p.scaled(scale);
}

}  // namespace dlv
