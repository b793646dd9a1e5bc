// Shared helpers for building kbs concisely in tests.
#pragma once

#include <initializer_list>
#include <string>

#include "elpp/core.hpp"

namespace elpp::testing {

inline Name cn(const std::string& s) { return intern(NameKind::Concept, s); }
inline Name rn(const std::string& s) { return intern(NameKind::Role, s); }
inline Name in(const std::string& s) { return intern(NameKind::Individual, s); }
inline Name fn(const std::string& s) { return intern(NameKind::Feature, s); }

inline ConceptRef A(const std::string& s) { return Concept::atomic(cn(s)); }
inline ConceptRef nom(const std::string& s) { return Concept::nominal(in(s)); }
inline ConceptRef ex(const std::string& role, ConceptRef filler) {
  return Concept::exists(rn(role), std::move(filler));
}
inline ConceptRef conj(ConceptRef a, ConceptRef b) { return Concept::conj(std::move(a), std::move(b)); }
inline ConceptRef top() { return Concept::top(); }
inline ConceptRef bot() { return Concept::bottom(); }

inline ConceptRef q_eq(const Rational& q, const std::string& f) {
  return Concept::pred({RationalPredicate{RationalPredicate::Kind::EqConst, q}, {fn(f)}});
}
inline ConceptRef q_gt(const Rational& q, const std::string& f) {
  return Concept::pred({RationalPredicate{RationalPredicate::Kind::GtConst, q}, {fn(f)}});
}
inline ConceptRef q_plus(const Rational& q, const std::string& f, const std::string& g) {
  return Concept::pred({RationalPredicate{RationalPredicate::Kind::PlusConst, q}, {fn(f), fn(g)}});
}
inline ConceptRef s_eq(const std::string& w, const std::string& f) {
  return Concept::pred({StringPredicate{StringPredicate::Kind::EqWord, w}, {fn(f)}});
}
inline ConceptRef s_concat(const std::string& w, const std::string& f, const std::string& g) {
  return Concept::pred({StringPredicate{StringPredicate::Kind::ConcatWord, w}, {fn(f), fn(g)}});
}

// Declares every name occurring in the constraints, then appends them.
inline void add_gci(KnowledgeBase& kb, ConceptRef lhs, ConceptRef rhs) {
  kb.constraints.push_back(Gci{std::move(lhs), std::move(rhs)});
}

inline void declare_names(KnowledgeBase& kb, const ConceptRef& c) {
  switch (c->kind()) {
    case Concept::Kind::Atomic:
    case Concept::Kind::Nominal: kb.declare(c->name()); break;
    case Concept::Kind::Conj:
      declare_names(kb, c->lhs());
      declare_names(kb, c->rhs());
      break;
    case Concept::Kind::Exists:
      kb.declare(c->name());
      declare_names(kb, c->filler());
      break;
    case Concept::Kind::Pred:
      for (Name f : c->atom().features) kb.declare(f);
      break;
    default: break;
  }
}

inline void declare_all(KnowledgeBase& kb) {
  for (const auto& constraint : kb.constraints) {
    if (const auto* gci = std::get_if<Gci>(&constraint)) {
      declare_names(kb, gci->lhs);
      declare_names(kb, gci->rhs);
    } else {
      const auto& ri = std::get<RoleInclusion>(constraint);
      for (Name r : ri.chain) kb.declare(r);
      kb.declare(ri.super);
    }
  }
}

// The knowledge base from the worked classification example: three concept
// names X, A, B, one role r1, individuals b and c, and constraints
// X <= {b}, X <= {c}, A <= (exists r1 . X).
inline KnowledgeBase figure_kb() {
  KnowledgeBase kb;
  kb.declare(cn("X"));
  kb.declare(cn("A"));
  kb.declare(cn("B"));
  kb.declare(rn("r1"));
  kb.declare(in("b"));
  kb.declare(in("c"));
  add_gci(kb, A("X"), nom("b"));
  add_gci(kb, A("X"), nom("c"));
  add_gci(kb, A("A"), ex("r1", A("X")));
  return kb;
}

}  // namespace elpp::testing
