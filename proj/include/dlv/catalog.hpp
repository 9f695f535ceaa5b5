#pragma once

// Classified systems with their symmetry operators: eight purely Lie cases
// and nine strictly conditional cases, including the operator families with
// free constants and the branchy time profiles.

#include <cstdint>

#include "dlv/checker.hpp"
#include "dlv/pde.hpp"

namespace dlv {

// Predicate over parameters: lhs must vanish exactly or must not vanish.
struct Restriction {
  Expr lhs;
  bool must_vanish = false;
  std::string text;
};

// One operator variant. `branch` pins parameters that select this variant
// of a branchy family (empty for plain operators); `needs` are predicates
// specific to the variant, e.g. a nonzero free constant.
struct CatalogOperator {
  std::string name;
  VectorField field;
  SubstMap branch;
  std::vector<Restriction> needs;
};

struct CatalogEntry {
  int table = 0;
  int number = 0;
  DLVSystem system;  // equality restrictions already solved into the rows
  std::vector<Restriction> restrictions;
  std::vector<CatalogOperator> ops;
  SubstMap pinned;  // parameters solved from equality restrictions
  std::vector<AtomId> sampled;  // parameters a sampler must assign
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_entry(int table, int number);  // ClassError if absent

// Deterministic small-rational assignment satisfying every restriction:
// diffusivities positive and pairwise distinct (also distinct from pinned
// ones), free-term coefficients pairwise distinct, all predicates honored by
// rejection. Throws SamplingError when retries are exhausted.
SubstMap sample_params(const CatalogEntry& e, std::uint64_t seed);

struct Instance {
  DLVSystem system;
  std::vector<CatalogOperator> ops;  // applicable variants, fields concrete
};

// Substitutes the assignment into the row and every applicable operator.
// Throws RestrictionError naming the first violated predicate.
Instance instantiate(const CatalogEntry& e, const SubstMap& assign);

enum class VerifyMode { Symbolic, Instance };

struct OperatorReport {
  std::string name;
  std::string display;
  bool lie = false;
  bool lie_witness_nonzero = false;  // failing Lie check produced a witness
  std::string witness;        // the nonzero coefficient, when one exists
  std::string witness_where;  // residual and jet monomial it came from
  std::array<bool, 3> first_type{};
  bool nonclassical = false;
  bool ok = false;  // verdicts match the table's claim
  std::string note;
};

struct EntryReport {
  int table = 0;
  int number = 0;
  bool all_ok = false;
  std::vector<OperatorReport> ops;
};

// Runs every invariance check against the entry's expectation: Lie rows must
// pass all three kinds for every pivot; conditional rows must pass the
// first-type check for some pivot and fail the Lie check. Symbolic mode
// covers every branch variant by pinning its parameters; instance mode keeps
// only variants matching the assignment.
EntryReport verify_entry(const CatalogEntry& e, const SubstMap& assign,
                         VerifyMode mode);

std::string entry_str(const CatalogEntry& e);  // diffable listing of one case

}  // namespace dlv
