// Concept descriptions, constraints and knowledge bases.
//
// All values here are immutable after construction and safe to share
// read-only across threads.
#pragma once

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "elpp/names.hpp"
#include "elpp/predicates.hpp"

namespace elpp {

class Concept;
using ConceptRef = std::shared_ptr<const Concept>;

// A finite term over top, bottom, concept names, nominals, binary
// conjunction, existential restriction and concrete-domain predicate
// applications. N-ary conjunctions in input syntax are desugared
// left-associatively by the parser.
class Concept {
 public:
  enum class Kind : uint8_t { Top, Bottom, Atomic, Nominal, Conj, Exists, Pred };

  static ConceptRef top();
  static ConceptRef bottom();
  static ConceptRef atomic(Name concept_name);
  static ConceptRef nominal(Name individual_name);
  static ConceptRef conj(ConceptRef lhs, ConceptRef rhs);
  static ConceptRef exists(Name role_name, ConceptRef filler);
  static ConceptRef pred(PredicateAtom atom);

  Kind kind() const { return kind_; }
  Name name() const { return name_; }                // Atomic, Nominal, Exists (role)
  const ConceptRef& lhs() const { return left_; }    // Conj
  const ConceptRef& rhs() const { return right_; }   // Conj
  const ConceptRef& filler() const { return left_; } // Exists
  const PredicateAtom& atom() const { return atom_; }

 private:
  Concept() = default;

  Kind kind_ = Kind::Top;
  Name name_{NameKind::Concept, 0};
  ConceptRef left_, right_;
  PredicateAtom atom_;
};

// Structural equality and a total order consistent with it.
bool equal(const ConceptRef& a, const ConceptRef& b);
int compare(const ConceptRef& a, const ConceptRef& b);  // <0, 0, >0

struct ConceptLess {
  bool operator()(const ConceptRef& a, const ConceptRef& b) const { return compare(a, b) < 0; }
};

// True iff c is Top, a concept name, a nominal, or a predicate application.
bool is_basic(const ConceptRef& c);

struct Gci {
  ConceptRef lhs, rhs;
};

// chain must be nonempty; chain r1 ... rn with super r reads r1 o ... o rn <= r.
struct RoleInclusion {
  std::vector<Name> chain;
  Name super;
};

using Constraint = std::variant<Gci, RoleInclusion>;

bool equal(const Constraint& a, const Constraint& b);

struct KnowledgeBase {
  std::set<Name> concepts, roles, individuals, features;
  std::vector<Constraint> constraints;

  void declare(Name n);
  bool declared(Name n) const;
  const std::set<Name>& inventory(NameKind k) const;
  std::set<Name>& inventory(NameKind k);

  // A fresh name of the given kind, absent from the matching inventory.
  // Does not modify the kb.
  Name make_fresh(NameKind k) const;
};

struct Violation {
  enum class Kind : uint8_t { UnknownName, ArityMismatch, EmptyChain };
  Kind kind;
  std::string detail;
};

// Checks the name-closure invariant, predicate well-formedness and arities.
// Returns an empty list when the kb is well formed; never throws.
std::vector<Violation> validate(const KnowledgeBase& kb);

// Same checks for a stand-alone description against a kb's inventories.
void validate_concept(const KnowledgeBase& kb, const ConceptRef& c, std::vector<Violation>& out);

// The set BC: Top plus every basic sub-description occurring in the kb's
// GCIs, in first-occurrence order (Top first). Declared-but-unused names do
// not appear.
class BasicConceptSet {
 public:
  static BasicConceptSet of(const KnowledgeBase& kb);

  int size() const { return static_cast<int>(items_.size()); }
  const ConceptRef& operator[](int i) const { return items_[static_cast<size_t>(i)]; }
  const std::vector<ConceptRef>& items() const { return items_; }
  // -1 when absent.
  int index_of(const ConceptRef& c) const;
  bool contains(const ConceptRef& c) const { return index_of(c) >= 0; }

  // Index of a fresh insertion point; used only by BasicConceptSet::of.
  int insert(const ConceptRef& c);

  BasicConceptSet();  // starts as {Top}

 private:
  std::vector<ConceptRef> items_;
  std::map<ConceptRef, int, ConceptLess> index_;
};

BasicConceptSet basic_concepts(const KnowledgeBase& kb);

// Contract breaches (invalid kb handed to a stage, absent trace entry, ...).
class ElppError : public std::runtime_error {
 public:
  explicit ElppError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace elpp
