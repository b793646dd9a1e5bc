#include "elpp/core.hpp"

#include <algorithm>
#include <sstream>

namespace elpp {

ConceptRef Concept::top() {
  static const ConceptRef instance = [] {
    Concept c;
    c.kind_ = Kind::Top;
    return std::make_shared<const Concept>(c);
  }();
  return instance;
}

ConceptRef Concept::bottom() {
  static const ConceptRef instance = [] {
    Concept c;
    c.kind_ = Kind::Bottom;
    return std::make_shared<const Concept>(c);
  }();
  return instance;
}

ConceptRef Concept::atomic(Name concept_name) {
  Concept c;
  c.kind_ = Kind::Atomic;
  c.name_ = concept_name;
  return std::make_shared<const Concept>(c);
}

ConceptRef Concept::nominal(Name individual_name) {
  Concept c;
  c.kind_ = Kind::Nominal;
  c.name_ = individual_name;
  return std::make_shared<const Concept>(c);
}

ConceptRef Concept::conj(ConceptRef lhs, ConceptRef rhs) {
  Concept c;
  c.kind_ = Kind::Conj;
  c.left_ = std::move(lhs);
  c.right_ = std::move(rhs);
  return std::make_shared<const Concept>(c);
}

ConceptRef Concept::exists(Name role_name, ConceptRef filler) {
  Concept c;
  c.kind_ = Kind::Exists;
  c.name_ = role_name;
  c.left_ = std::move(filler);
  return std::make_shared<const Concept>(c);
}

ConceptRef Concept::pred(PredicateAtom atom) {
  Concept c;
  c.kind_ = Kind::Pred;
  c.atom_ = std::move(atom);
  return std::make_shared<const Concept>(c);
}

int compare(const ConceptRef& a, const ConceptRef& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind() != b->kind()) return a->kind() < b->kind() ? -1 : 1;
  switch (a->kind()) {
    case Concept::Kind::Top:
    case Concept::Kind::Bottom: return 0;
    case Concept::Kind::Atomic:
    case Concept::Kind::Nominal:
      if (a->name() != b->name()) return a->name() < b->name() ? -1 : 1;
      return 0;
    case Concept::Kind::Conj: {
      int c = compare(a->lhs(), b->lhs());
      if (c != 0) return c;
      return compare(a->rhs(), b->rhs());
    }
    case Concept::Kind::Exists: {
      if (a->name() != b->name()) return a->name() < b->name() ? -1 : 1;
      return compare(a->filler(), b->filler());
    }
    case Concept::Kind::Pred: {
      if (a->atom() == b->atom()) return 0;
      return a->atom() < b->atom() ? -1 : 1;
    }
  }
  return 0;
}

bool equal(const ConceptRef& a, const ConceptRef& b) { return compare(a, b) == 0; }

bool is_basic(const ConceptRef& c) {
  switch (c->kind()) {
    case Concept::Kind::Top:
    case Concept::Kind::Atomic:
    case Concept::Kind::Nominal:
    case Concept::Kind::Pred: return true;
    default: return false;
  }
}

bool equal(const Constraint& a, const Constraint& b) {
  if (a.index() != b.index()) return false;
  if (const auto* ga = std::get_if<Gci>(&a)) {
    const auto& gb = std::get<Gci>(b);
    return equal(ga->lhs, gb.lhs) && equal(ga->rhs, gb.rhs);
  }
  const auto& ra = std::get<RoleInclusion>(a);
  const auto& rb = std::get<RoleInclusion>(b);
  return ra.chain == rb.chain && ra.super == rb.super;
}

void KnowledgeBase::declare(Name n) { inventory(n.kind).insert(n); }

bool KnowledgeBase::declared(Name n) const { return inventory(n.kind).count(n) > 0; }

const std::set<Name>& KnowledgeBase::inventory(NameKind k) const {
  switch (k) {
    case NameKind::Concept: return concepts;
    case NameKind::Role: return roles;
    case NameKind::Individual: return individuals;
    case NameKind::Feature: return features;
  }
  return concepts;
}

std::set<Name>& KnowledgeBase::inventory(NameKind k) {
  switch (k) {
    case NameKind::Concept: return concepts;
    case NameKind::Role: return roles;
    case NameKind::Individual: return individuals;
    case NameKind::Feature: return features;
  }
  return concepts;
}

Name KnowledgeBase::make_fresh(NameKind k) const {
  const auto& inv = inventory(k);
  std::vector<Name> used(inv.begin(), inv.end());
  return fresh_name(k, used);
}

namespace {

void check_name(const KnowledgeBase& kb, Name n, std::vector<Violation>& out) {
  if (!kb.declared(n)) {
    out.push_back({Violation::Kind::UnknownName,
                   std::string(kind_word(n.kind)) + " name '" + label(n) + "' is not declared"});
  }
}

}  // namespace

void validate_concept(const KnowledgeBase& kb, const ConceptRef& c, std::vector<Violation>& out) {
  switch (c->kind()) {
    case Concept::Kind::Top:
    case Concept::Kind::Bottom: return;
    case Concept::Kind::Atomic:
    case Concept::Kind::Nominal: check_name(kb, c->name(), out); return;
    case Concept::Kind::Conj:
      validate_concept(kb, c->lhs(), out);
      validate_concept(kb, c->rhs(), out);
      return;
    case Concept::Kind::Exists:
      check_name(kb, c->name(), out);
      validate_concept(kb, c->filler(), out);
      return;
    case Concept::Kind::Pred: {
      const auto& atom = c->atom();
      auto want = static_cast<size_t>(arity_of(atom.pred));
      if (atom.features.size() != want) {
        std::ostringstream msg;
        msg << "predicate " << predicate_word(atom.pred) << " needs " << want << " feature(s), got "
            << atom.features.size();
        out.push_back({Violation::Kind::ArityMismatch, msg.str()});
      }
      for (Name f : atom.features) check_name(kb, f, out);
      return;
    }
  }
}

std::vector<Violation> validate(const KnowledgeBase& kb) {
  std::vector<Violation> out;
  for (const auto& constraint : kb.constraints) {
    if (const auto* gci = std::get_if<Gci>(&constraint)) {
      validate_concept(kb, gci->lhs, out);
      validate_concept(kb, gci->rhs, out);
    } else {
      const auto& ri = std::get<RoleInclusion>(constraint);
      if (ri.chain.empty()) {
        out.push_back({Violation::Kind::EmptyChain, "role inclusion with empty chain"});
      }
      for (Name r : ri.chain) check_name(kb, r, out);
      check_name(kb, ri.super, out);
    }
  }
  return out;
}

BasicConceptSet::BasicConceptSet() { insert(Concept::top()); }

int BasicConceptSet::index_of(const ConceptRef& c) const {
  auto it = index_.find(c);
  return it == index_.end() ? -1 : it->second;
}

int BasicConceptSet::insert(const ConceptRef& c) {
  auto it = index_.find(c);
  if (it != index_.end()) return it->second;
  int idx = static_cast<int>(items_.size());
  items_.push_back(c);
  index_.emplace(c, idx);
  return idx;
}

namespace {

void collect_basics(const ConceptRef& c, BasicConceptSet& out) {
  if (is_basic(c)) {
    out.insert(c);
    return;
  }
  switch (c->kind()) {
    case Concept::Kind::Conj:
      collect_basics(c->lhs(), out);
      collect_basics(c->rhs(), out);
      break;
    case Concept::Kind::Exists: collect_basics(c->filler(), out); break;
    default: break;  // Bottom contributes nothing
  }
}

}  // namespace

BasicConceptSet BasicConceptSet::of(const KnowledgeBase& kb) {
  BasicConceptSet out;
  for (const auto& constraint : kb.constraints) {
    if (const auto* gci = std::get_if<Gci>(&constraint)) {
      collect_basics(gci->lhs, out);
      collect_basics(gci->rhs, out);
    }
  }
  return out;
}

BasicConceptSet basic_concepts(const KnowledgeBase& kb) { return BasicConceptSet::of(kb); }

}  // namespace elpp
