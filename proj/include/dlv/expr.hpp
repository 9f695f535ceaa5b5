#pragma once

// Canonical expressions: reduced fractions of polynomials over the atom
// alphabet. Structural equality of the normal form is the zero test.

#include <map>
#include <string>
#include <vector>

#include "dlv/poly.hpp"

namespace dlv {

class Expr;

using SubstMap = std::map<AtomId, Expr>;

class Expr {
 public:
  Expr() = default;  // zero
  explicit Expr(Rat r);
  explicit Expr(long n);
  explicit Expr(Poly p);
  Expr(Poly num, Poly den);  // normalizes

  static Expr atom(AtomId id);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_rational() const;
  Rat rational_value() const;  // requires is_rational()
  bool operator==(const Expr&) const = default;

  Expr operator-() const;
  Expr operator+(const Expr& o) const;
  Expr operator-(const Expr& o) const;
  Expr operator*(const Expr& o) const;
  Expr operator/(const Expr& o) const;  // throws DomainError on zero divisor
  Expr& operator+=(const Expr& o) { return *this = *this + o; }
  Expr& operator-=(const Expr& o) { return *this = *this - o; }
  Expr& operator*=(const Expr& o) { return *this = *this * o; }
  Expr& operator/=(const Expr& o) { return *this = *this / o; }
  Expr pow(int n) const;

  // Partial derivative. Atoms are mutually independent; unknown-function
  // atoms map to their tagged derivative, exponentials use the chain rule.
  Expr diff(AtomId a) const;

  // Simultaneous replacement; bindings also reach exponential exponents.
  Expr substitute(const SubstMap& s) const;

  bool contains_atom(AtomId a) const;
  std::vector<AtomId> atoms() const;  // union over numerator and denominator
  bool has_exp() const { return num_.has_parts(); }

  // Group the numerator by monomials in the given atoms. The denominator and
  // the coefficients must be free of them (DomainError otherwise). Keys are
  // sorted descending; the empty monomial collects the free part.
  std::vector<std::pair<Monomial, Expr>> collect(
      const std::vector<AtomId>& split) const;

  // Split into exponential components: e = sum exp(g_i) * c_i with c_i
  // exponential-free. Returned exponents are in interned order, part 0 first.
  std::vector<std::pair<Expr, Expr>> split_exp_parts() const;

  // Exact evaluation; every atom present must be bound, expression must be
  // exponential-free.
  Rat eval_rat(const std::map<AtomId, Rat>& point) const;
  double eval_double(const std::map<AtomId, double>& point) const;

  std::string str() const;

 private:
  struct ReducedTag {};
  Expr(ReducedTag, Poly n, Poly d) : num_(std::move(n)), den_(std::move(d)) {}
  // Finishes a fraction already known coprime: strips the denominator's
  // exponential unit, scales the denominator monic.
  static Expr finish_reduced(Poly n, Poly d);

  Poly num_;
  Poly den_ = Poly::one();
};

// exp(e); e must be polynomial in t,x with parameter-rational coefficients.
Expr exp_of(const Expr& e);
// The interned exponent expression behind a part id (part 0 -> zero).
const Expr& exp_part_expr(ExpPartId id);
ExpPartId intern_exp_part(const Expr& e);

Expr parse_expr(const std::string& text);

// Convenience builders.
Expr ex(long n);
Expr ex(long n, long d);
Expr ea(AtomId id);
Expr ev(const std::string& name);  // registered atom by name (throws)
Expr eparam(const std::string& name, bool positive = false);

std::string poly_str(const Poly& p);
std::string mono_str(const Monomial& m);

}  // namespace dlv
