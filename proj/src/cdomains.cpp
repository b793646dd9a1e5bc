#include "elpp/cdomains.hpp"

namespace elpp {

bool holds_under(const Assignment& w, const PredicateAtom& atom) {
  std::vector<Value> vs;
  vs.reserve(atom.features.size());
  for (Name f : atom.features) {
    const Value* v = w.find(f);
    if (!v) return false;
    vs.push_back(*v);
  }
  return domain(domain_of(atom.pred)).apply(atom.pred, vs);
}

int ConcreteDomain::arity(const Predicate& p) const {
  if (!owns(p)) {
    throw ElppError("arity: predicate " + predicate_word(p) + " does not belong to domain " +
                    std::string(domain_word(id())));
  }
  return arity_of(p);
}

void ConcreteDomain::check_atoms(std::span<const PredicateAtom> atoms) const {
  for (const auto& atom : atoms) {
    if (!owns(atom.pred)) {
      throw ElppError("mixed-domain atom list: " + predicate_word(atom.pred) +
                      " is not a " + std::string(domain_word(id())) + " predicate");
    }
    if (atom.features.size() != static_cast<size_t>(arity_of(atom.pred))) {
      throw ElppError("arity breach on " + predicate_word(atom.pred));
    }
  }
}

const ConcreteDomain& domain(DomainId id) {
  return id == DomainId::Rational ? rational_domain() : string_domain();
}

bool apply_predicate(const ConcreteDomain& dom, const Predicate& p, std::span<const Value> vs) {
  return dom.apply(p, vs);
}

SatResult satisfiable(const ConcreteDomain& dom, std::span<const PredicateAtom> conj) {
  return dom.satisfiable(conj);
}

bool implies(const ConcreteDomain& dom, std::span<const PredicateAtom> conj,
             const PredicateAtom& goal) {
  return dom.implies(conj, goal);
}

}  // namespace elpp
