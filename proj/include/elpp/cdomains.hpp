// Concrete domains: the pluggable descriptor interface plus the two built-in
// domains, rational numbers (Q) and strings (S). Satisfiability and
// implication are decided internally, in exact arithmetic; both deciders
// produce checkable witnesses.
#pragma once

#include <map>
#include <optional>
#include <span>

#include "elpp/core.hpp"

namespace elpp {

// Partial map from feature names to values of a single domain.
struct Assignment {
  std::map<Name, Value> values;

  const Value* find(Name f) const {
    auto it = values.find(f);
    return it == values.end() ? nullptr : &it->second;
  }
};

// True iff every feature of the atom is assigned and the predicate holds.
bool holds_under(const Assignment& w, const PredicateAtom& atom);

struct SatResult {
  bool sat = false;
  Assignment witness;  // meaningful only when sat; verifies on every atom
};

class ConcreteDomain {
 public:
  virtual ~ConcreteDomain() = default;

  virtual DomainId id() const = 0;
  virtual bool owns(const Predicate& p) const = 0;

  // Arity, defined only for this domain's predicates.
  int arity(const Predicate& p) const;

  // Truth of one predicate application. Throws ElppError on a foreign
  // predicate, a value outside the carrier, or an arity breach.
  virtual bool apply(const Predicate& p, std::span<const Value> vs) const = 0;

  // Satisfiability of a conjunction of atoms of this domain.
  virtual SatResult satisfiable(std::span<const PredicateAtom> conj) const = 0;

  // True iff every assignment satisfying conj satisfies goal; vacuously
  // true when conj is unsatisfiable.
  virtual bool implies(std::span<const PredicateAtom> conj, const PredicateAtom& goal) const = 0;

  // An assignment satisfying conj but not goal, when one exists.
  // Returns nullopt exactly when implies(conj, goal) holds.
  virtual std::optional<Assignment> refute_implication(std::span<const PredicateAtom> conj,
                                                       const PredicateAtom& goal) const = 0;

 protected:
  // Throws unless every atom belongs to this domain with correct arity.
  void check_atoms(std::span<const PredicateAtom> atoms) const;
};

const ConcreteDomain& rational_domain();
const ConcreteDomain& string_domain();
const ConcreteDomain& domain(DomainId id);

// Module-level entry points; all of them reject mixed-domain input.
bool apply_predicate(const ConcreteDomain& dom, const Predicate& p, std::span<const Value> vs);
SatResult satisfiable(const ConcreteDomain& dom, std::span<const PredicateAtom> conj);
bool implies(const ConcreteDomain& dom, std::span<const PredicateAtom> conj,
             const PredicateAtom& goal);

}  // namespace elpp
