#pragma once

// Sparse multivariate polynomials with exact rational coefficients.
//
// A monomial may carry one exponential factor exp(g); g lives in an interned
// table of exponent expressions and multiplies additively (group law), so
// exp(g1)*exp(g2) collapses to exp(g1+g2) during monomial multiplication and
// every canonical monomial holds at most one exponential at power one.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "dlv/atoms.hpp"

namespace dlv {

using Rat = mpq_class;

Rat rat(long n, long d = 1);
std::string rat_str(const Rat& r);

using ExpPartId = std::uint32_t;  // 0 = no exponential factor

// Group operations on interned exponents (defined with the registry).
ExpPartId exp_part_add(ExpPartId a, ExpPartId b);
ExpPartId exp_part_neg(ExpPartId a);
ExpPartId exp_part_scale(ExpPartId a, long k);

struct Monomial {
  ExpPartId part = 0;
  std::vector<std::pair<AtomId, std::uint32_t>> pw;  // sorted by atom id

  bool operator==(const Monomial&) const = default;
  bool is_one() const { return part == 0 && pw.empty(); }
  std::uint32_t total_degree() const;
  std::uint32_t degree_in(AtomId a) const;
  bool contains(AtomId a) const { return degree_in(a) > 0; }
};

// Graded order on the power vectors (total degree, then lexicographic with
// lower atom ids ranked higher); exponential parts break remaining ties.
// Returns <0, 0, >0.
int mono_cmp(const Monomial& a, const Monomial& b);

Monomial mono_mul(const Monomial& a, const Monomial& b);
bool mono_divides(const Monomial& d, const Monomial& m);  // ignores parts
Monomial mono_div(const Monomial& m, const Monomial& d);  // part subtracts

struct Term {
  Monomial m;
  Rat c;

  bool operator==(const Term& o) const { return c == o.c && m == o.m; }
};

class Poly {
 public:
  Poly() = default;
  explicit Poly(Rat r);
  static Poly atom(AtomId id, std::uint32_t power = 1);
  static Poly exp_part(ExpPartId part);
  static Poly one() { return Poly(Rat(1)); }

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  bool is_one() const;
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  const Term& leading() const { return terms_.front(); }

  bool operator==(const Poly&) const = default;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly mul_term(const Term& t) const;
  Poly scaled(const Rat& r) const;
  Poly pow(std::uint32_t n) const;

  bool has_parts() const;
  bool contains_atom(AtomId a) const;
  std::uint32_t degree_in(AtomId a) const;
  // Every atom occurring, ascending.
  std::vector<AtomId> atoms() const;
  // Coefficient of a^k (a removed), preserving other factors.
  Poly coeff_of(AtomId a, std::uint32_t k) const;
  // Componentwise min of all power vectors (parts ignored; 0 if any term
  // lacks the atom).
  Monomial monomial_content() const;

  // Built from pre-combined terms; sorts, merges duplicates, drops zeros.
  static Poly from_terms(std::vector<Term> ts);

 private:
  std::vector<Term> terms_;  // descending mono_cmp order, nonzero, unique
};

// Exact polynomial gcd (rational-coefficient UFD, result normalized monic).
// Exponential parts are units and never enter the gcd.
Poly poly_gcd(const Poly& a, const Poly& b);

// Exact division; nullopt if d does not divide p. d must be free of
// exponential parts.
std::optional<Poly> poly_divexact(const Poly& p, const Poly& d);

// Divide by the rational content (coefficients become coprime integers,
// leading coefficient positive). Zero stays zero.
Poly poly_int_primitive(const Poly& p);

}  // namespace dlv
