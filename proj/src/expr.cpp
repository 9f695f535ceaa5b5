#include "dlv/expr.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dlv/errors.hpp"

namespace dlv {

namespace {

Poly strip_part(const Poly& p, ExpPartId part) {
  if (part == 0) return p;
  ExpPartId neg = exp_part_neg(part);
  std::vector<Term> ts;
  ts.reserve(p.size());
  for (const auto& t : p.terms()) {
    Term nt = t;
    nt.m.part = exp_part_add(nt.m.part, neg);
    ts.push_back(std::move(nt));
  }
  return Poly::from_terms(std::move(ts));
}

// The single exponential part shared by every term, or throws if terms carry
// different parts (such a denominator has no polynomial-fraction normal form).
ExpPartId common_part(const Poly& den) {
  ExpPartId part = den.leading().m.part;
  for (const auto& t : den.terms())
    if (t.m.part != part)
      throw DomainError(
          "denominator mixes exponential factors; no canonical form");
  return part;
}

}  // namespace

Expr Expr::finish_reduced(Poly n, Poly d) {
  if (n.is_zero()) return Expr();
  if (d.has_parts()) {
    ExpPartId part = common_part(d);
    d = strip_part(d, part);
    n = strip_part(n, part);
  }
  const Rat& lc = d.leading().c;
  if (lc != 1) {
    Rat inv = Rat(1) / lc;
    n = n.scaled(inv);
    d = d.scaled(inv);
  }
  if (d.is_one()) return Expr(ReducedTag{}, std::move(n), Poly::one());
  return Expr(ReducedTag{}, std::move(n), std::move(d));
}

Expr::Expr(Rat r) : num_(Poly(std::move(r))) {}
Expr::Expr(long n) : num_(Poly(Rat(n))) {}
Expr::Expr(Poly p) : num_(std::move(p)) {}

Expr::Expr(Poly num, Poly den) {
  if (den.is_zero()) throw DomainError("division by zero");
  if (num.is_zero()) return;
  if (den.has_parts()) {
    ExpPartId part = common_part(den);
    den = strip_part(den, part);
    num = strip_part(num, part);
  }
  if (den.is_rational()) {
    *this = finish_reduced(num.scaled(Rat(1) / den.leading().c), Poly::one());
    return;
  }
  Poly g = poly_gcd(num, den);
  if (!g.is_one()) {
    num = *poly_divexact(num, g);
    den = *poly_divexact(den, g);
  }
  *this = finish_reduced(std::move(num), std::move(den));
}

Expr Expr::atom(AtomId id) { return Expr(Poly::atom(id)); }

bool Expr::is_rational() const {
  return num_.is_rational() && den_.is_one();
}

Rat Expr::rational_value() const {
  if (!is_rational()) throw DomainError("not a rational constant");
  return num_.is_zero() ? Rat(0) : num_.leading().c;
}

Expr Expr::operator-() const {
  Expr r = *this;
  r.num_ = -r.num_;
  return r;
}

Expr Expr::operator+(const Expr& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_.is_one() && o.den_.is_one())
    return Expr(ReducedTag{}, num_ + o.num_, Poly::one());
  if (den_ == o.den_) return Expr(num_ + o.num_, den_);
  if (den_.is_one()) return Expr(num_ * o.den_ + o.num_, o.den_);
  if (o.den_.is_one()) return Expr(num_ + o.num_ * den_, den_);
  Poly g = poly_gcd(den_, o.den_);
  if (g.is_one()) return Expr(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  Poly la = *poly_divexact(den_, g), lb = *poly_divexact(o.den_, g);
  return Expr(num_ * lb + o.num_ * la, den_ * lb);
}

Expr Expr::operator-(const Expr& o) const { return *this + (-o); }

Expr Expr::operator*(const Expr& o) const {
  if (is_zero() || o.is_zero()) return Expr();
  if (den_.is_one() && o.den_.is_one())
    return Expr(ReducedTag{}, num_ * o.num_, Poly::one());
  // Cross-reduce; the product of the reduced pieces is already coprime.
  Poly n1 = num_, d2 = o.den_;
  if (!d2.is_one()) {
    Poly g = poly_gcd(n1, d2);
    if (!g.is_one()) {
      n1 = *poly_divexact(n1, g);
      d2 = *poly_divexact(d2, g);
    }
  }
  Poly n2 = o.num_, d1 = den_;
  if (!d1.is_one()) {
    Poly g = poly_gcd(n2, d1);
    if (!g.is_one()) {
      n2 = *poly_divexact(n2, g);
      d1 = *poly_divexact(d1, g);
    }
  }
  return finish_reduced(n1 * n2, d1 * d2);
}

Expr Expr::operator/(const Expr& o) const {
  if (o.is_zero()) throw DomainError("division by zero");
  if (is_zero()) return Expr();
  Poly n1 = num_, d2 = o.num_;
  {
    Poly g = poly_gcd(n1, d2);
    if (!g.is_one()) {
      n1 = *poly_divexact(n1, g);
      d2 = *poly_divexact(d2, g);
    }
  }
  Poly n2 = o.den_, d1 = den_;
  if (!d1.is_one() && !n2.is_one()) {
    Poly g = poly_gcd(n2, d1);
    if (!g.is_one()) {
      n2 = *poly_divexact(n2, g);
      d1 = *poly_divexact(d1, g);
    }
  }
  return finish_reduced(n1 * n2, d1 * d2);
}

Expr Expr::pow(int n) const {
  if (n == 0) return Expr(1L);
  if (n < 0) {
    if (is_zero()) throw DomainError("zero raised to a negative power");
    return finish_reduced(den_, num_).pow(-n);
  }
  Expr r(1L);
  for (int i = 0; i < n; ++i) r = r * *this;
  return r;
}

namespace {

// Partial derivative of a polynomial, as an Expr: exponent derivatives may
// carry parameter denominators. Unknown-function atoms differentiate to
// their tagged derivatives, exponentials use the chain rule.
Expr poly_diff(const Poly& p, AtomId a) {
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    for (std::size_t i = 0; i < t.m.pw.size(); ++i) {
      auto [b, e] = t.m.pw[i];
      const AtomInfo& info = atom_info(b);
      bool direct = (b == a);
      bool chained = info.kind == AtomKind::Unknown && a < 5 &&
                     (info.args & (1u << a)) != 0;
      if (!direct && !chained) continue;
      Monomial m = t.m;
      if (e == 1)
        m.pw.erase(m.pw.begin() + static_cast<std::ptrdiff_t>(i));
      else
        m.pw[i].second = e - 1;
      if (chained) {
        Monomial d;
        d.pw.emplace_back(unknown_deriv(b, static_cast<int>(a)), 1);
        m = mono_mul(m, d);
      }
      out.push_back({std::move(m), t.c * e});
    }
  }
  Expr r(Poly::from_terms(std::move(out)));
  // Chain rule per exponential component.
  std::map<ExpPartId, std::vector<Term>> groups;
  for (const auto& t : p.terms())
    if (t.m.part != 0) groups[t.m.part].push_back(t);
  for (auto& [part, ts] : groups) {
    Expr dg = exp_part_expr(part).diff(a);
    if (!dg.is_zero()) r += Expr(Poly::from_terms(std::move(ts))) * dg;
  }
  return r;
}

}  // namespace

Expr Expr::diff(AtomId a) const {
  Expr dn = poly_diff(num_, a);
  if (den_.is_one()) return dn;
  Expr den(den_);
  Expr dd = poly_diff(den_, a);
  if (dd.is_zero()) return dn / den;
  return dn / den - Expr(num_) * dd / (den * den);
}

namespace {

// Terms are grouped by the substituted sub-monomial so each replacement
// power product is formed once and multiplied into a single polynomial of
// untouched terms; this keeps the rational normalization count proportional
// to the number of distinct jet powers, not the number of terms.
Expr poly_substitute(const Poly& p, const SubstMap& s) {
  struct Key {
    Monomial touched;
    ExpPartId part = 0;
    bool operator<(const Key& o) const {
      if (part != o.part) return part < o.part;
      return mono_cmp(touched, o.touched) < 0;
    }
  };
  std::map<Key, std::vector<Term>> groups;
  for (const auto& t : p.terms()) {
    Key k;
    Term rest{{}, t.c};
    for (const auto& [b, e] : t.m.pw)
      (s.count(b) ? k.touched.pw : rest.m.pw).emplace_back(b, e);
    if (t.m.part != 0 && exp_part_expr(t.m.part).substitute(s) !=
                             exp_part_expr(t.m.part))
      k.part = t.m.part;
    else
      rest.m.part = t.m.part;
    groups[k].push_back(std::move(rest));
  }
  Expr acc;
  for (auto& [k, ts] : groups) {
    Expr mult(1);
    for (const auto& [b, e] : k.touched.pw)
      mult = mult * s.at(b).pow(static_cast<int>(e));
    if (k.part != 0)
      mult = mult * exp_of(exp_part_expr(k.part).substitute(s));
    acc = acc + Expr(Poly::from_terms(std::move(ts))) * mult;
  }
  return acc;
}

}  // namespace

Expr Expr::substitute(const SubstMap& s) const {
  if (s.empty()) return *this;
  bool touches = false;
  for (const auto& [a, e] : s)
    if (contains_atom(a)) {
      touches = true;
      break;
    }
  if (!touches) return *this;
  Expr n = poly_substitute(num_, s);
  if (den_.is_one()) return n;
  return n / poly_substitute(den_, s);
}

bool Expr::contains_atom(AtomId a) const {
  if (num_.contains_atom(a) || den_.contains_atom(a)) return true;
  for (const auto& t : num_.terms())
    if (t.m.part != 0 && exp_part_expr(t.m.part).contains_atom(a)) return true;
  return false;
}

std::vector<AtomId> Expr::atoms() const {
  std::vector<AtomId> r = num_.atoms();
  for (AtomId a : den_.atoms()) r.push_back(a);
  for (const auto& t : num_.terms())
    if (t.m.part != 0)
      for (AtomId a : exp_part_expr(t.m.part).atoms()) r.push_back(a);
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

std::vector<std::pair<Monomial, Expr>> Expr::collect(
    const std::vector<AtomId>& split) const {
  for (AtomId a : split)
    if (den_.contains_atom(a))
      throw DomainError("collect: denominator depends on " + atom_name(a));
  for (const auto& t : num_.terms())
    if (t.m.part != 0)
      for (AtomId a : split)
        if (exp_part_expr(t.m.part).contains_atom(a))
          throw DomainError("collect: exponent depends on " + atom_name(a));

  auto desc = [](const Monomial& a, const Monomial& b) {
    return mono_cmp(a, b) > 0;
  };
  std::map<Monomial, std::vector<Term>, decltype(desc)> groups(desc);
  for (const auto& t : num_.terms()) {
    Monomial key;
    Term rest = t;
    std::vector<std::pair<AtomId, std::uint32_t>> keep;
    for (const auto& [a, e] : t.m.pw) {
      if (std::find(split.begin(), split.end(), a) != split.end())
        key.pw.emplace_back(a, e);
      else
        keep.emplace_back(a, e);
    }
    rest.m.pw = std::move(keep);
    groups[key].push_back(std::move(rest));
  }
  std::vector<std::pair<Monomial, Expr>> out;
  out.reserve(groups.size());
  for (auto& [key, ts] : groups)
    out.emplace_back(key, Expr(Poly::from_terms(std::move(ts)), den_));
  return out;
}

std::vector<std::pair<Expr, Expr>> Expr::split_exp_parts() const {
  std::map<ExpPartId, std::vector<Term>> groups;
  for (const auto& t : num_.terms()) {
    Term nt = t;
    nt.m.part = 0;
    groups[t.m.part].push_back(std::move(nt));
  }
  std::vector<std::pair<Expr, Expr>> out;
  out.reserve(groups.size());
  for (auto& [part, ts] : groups)
    out.emplace_back(exp_part_expr(part),
                     Expr(Poly::from_terms(std::move(ts)), den_));
  return out;
}

namespace {

Rat eval_poly(const Poly& p, const std::map<AtomId, Rat>& point) {
  Rat acc(0);
  for (const auto& t : p.terms()) {
    if (t.m.part != 0)
      throw DomainError("exact evaluation of an exponential expression");
    Rat v = t.c;
    for (const auto& [a, e] : t.m.pw) {
      auto it = point.find(a);
      if (it == point.end())
        throw DomainError("evaluation point misses " + atom_name(a));
      for (std::uint32_t k = 0; k < e; ++k) v *= it->second;
    }
    acc += v;
  }
  return acc;
}

}  // namespace

Rat Expr::eval_rat(const std::map<AtomId, Rat>& point) const {
  Rat n = eval_poly(num_, point);
  Rat d = eval_poly(den_, point);
  if (d == 0) throw DomainError("denominator vanishes at evaluation point");
  Rat r = n / d;
  r.canonicalize();
  return r;
}

namespace {

double eval_poly_d(const Poly& p, const std::map<AtomId, double>& point) {
  double acc = 0;
  for (const auto& t : p.terms()) {
    double v = t.c.get_d();
    for (const auto& [a, e] : t.m.pw) {
      auto it = point.find(a);
      if (it == point.end())
        throw DomainError("evaluation point misses " + atom_name(a));
      for (std::uint32_t k = 0; k < e; ++k) v *= it->second;
    }
    if (t.m.part != 0)
      v *= std::exp(exp_part_expr(t.m.part).eval_double(point));
    acc += v;
  }
  return acc;
}

}  // namespace

double Expr::eval_double(const std::map<AtomId, double>& point) const {
  double n = eval_poly_d(num_, point);
  double d = eval_poly_d(den_, point);
  if (d == 0) throw DomainError("denominator vanishes at evaluation point");
  return n / d;
}

// --- printing -------------------------------------------------------------

std::string mono_str(const Monomial& m) {
  std::string s;
  for (const auto& [a, e] : m.pw) {
    if (!s.empty()) s += "*";
    s += atom_name(a);
    if (e > 1) s += "^" + std::to_string(e);
  }
  if (m.part != 0) {
    if (!s.empty()) s += "*";
    s += "exp(" + exp_part_expr(m.part).str() + ")";
  }
  return s.empty() ? "1" : s;
}

std::string poly_str(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : p.terms()) {
    Rat c = t.c;
    if (first) {
      if (c < 0) {
        s += "-";
        c = -c;
      }
    } else {
      s += c < 0 ? " - " : " + ";
      if (c < 0) c = -c;
    }
    first = false;
    std::string ms = mono_str(t.m);
    if (ms == "1")
      s += rat_str(c);
    else if (c == 1)
      s += ms;
    else
      s += rat_str(c) + "*" + ms;
  }
  return s;
}

std::string Expr::str() const {
  if (den_.is_one()) return poly_str(num_);
  std::string n = num_.size() > 1 ? "(" + poly_str(num_) + ")" : poly_str(num_);
  return n + "/(" + poly_str(den_) + ")";
}

// --- exponentials and builders --------------------------------------------

Expr exp_of(const Expr& e) {
  if (e.is_zero()) return Expr(1L);
  if (e.has_exp()) throw DomainError("nested exponential");
  for (AtomId a : e.atoms()) {
    AtomKind k = atom_info(a).kind;
    if (k != AtomKind::Indep && k != AtomKind::Param)
      throw DomainError("exponent depends on " + atom_name(a) +
                        "; only t, x and parameters are allowed");
  }
  for (AtomId a : e.den().atoms())
    if (atom_info(a).kind != AtomKind::Param)
      throw DomainError("exponent denominator must be constant: " + e.str());
  return Expr(Poly::exp_part(intern_exp_part(e)));
}

Expr ex(long n) { return Expr(n); }
Expr ex(long n, long d) { return Expr(rat(n, d)); }
Expr ea(AtomId id) { return Expr::atom(id); }

Expr ev(const std::string& name) {
  auto id = find_atom(name);
  if (!id) throw Error("unknown symbol: " + name);
  return Expr::atom(*id);
}

Expr eparam(const std::string& name, bool positive) {
  return Expr::atom(intern_param(name, positive));
}

}  // namespace dlv
