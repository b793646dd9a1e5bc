#include "elpp/pipeline.hpp"

#include <cassert>

namespace elpp {

namespace {

void require_valid(const KnowledgeBase& kb, const char* stage) {
  auto violations = validate(kb);
  if (!violations.empty())
    throw ElppError(std::string(stage) + ": kb failed validation: " + violations.front().detail);
}

bool complex_lhs(const ConceptRef& c) { return !is_basic(c); }

// bottom is a legal normal-form right-hand side
bool complex_rhs(const ConceptRef& c) {
  return !is_basic(c) && c->kind() != Concept::Kind::Bottom;
}

}  // namespace

TransformResult transform(const KnowledgeBase& kb, const ConceptRef& c, const ConceptRef& d) {
  require_valid(kb, "transform");
  std::vector<Violation> violations;
  validate_concept(kb, c, violations);
  validate_concept(kb, d, violations);
  if (!violations.empty())
    throw ElppError("transform: query uses names outside the kb: " + violations.front().detail);

  TransformResult result;
  result.kb = kb;
  result.subsumee_name = result.kb.make_fresh(NameKind::Concept);
  result.kb.declare(result.subsumee_name);
  result.subsumer_name = result.kb.make_fresh(NameKind::Concept);
  result.kb.declare(result.subsumer_name);
  result.kb.constraints.push_back(Gci{Concept::atomic(result.subsumee_name), c});
  result.kb.constraints.push_back(Gci{d, Concept::atomic(result.subsumer_name)});
  return result;
}

bool is_normal_form(const KnowledgeBase& kb) {
  for (const auto& constraint : kb.constraints) {
    if (const auto* ri = std::get_if<RoleInclusion>(&constraint)) {
      if (ri->chain.empty() || ri->chain.size() > 2) return false;
      continue;
    }
    const auto& gci = std::get<Gci>(constraint);
    const auto& l = gci.lhs;
    const auto& r = gci.rhs;
    bool rhs_ok = is_basic(r) || r->kind() == Concept::Kind::Bottom;
    if (is_basic(l) && rhs_ok) continue;
    if (l->kind() == Concept::Kind::Conj && is_basic(l->lhs()) && is_basic(l->rhs()) && rhs_ok)
      continue;
    if (l->kind() == Concept::Kind::Exists && is_basic(l->filler()) && rhs_ok) continue;
    if (is_basic(l) && r->kind() == Concept::Kind::Exists && is_basic(r->filler())) continue;
    return false;
  }
  return true;
}

std::string_view rule_word(NormalizationRule r) {
  switch (r) {
    case NormalizationRule::NF1: return "NF1";
    case NormalizationRule::NF2: return "NF2";
    case NormalizationRule::NF3: return "NF3";
    case NormalizationRule::NF4: return "NF4";
    case NormalizationRule::NF5: return "NF5";
    case NormalizationRule::NF6: return "NF6";
    case NormalizationRule::NF7: return "NF7";
  }
  return "?";
}

namespace {

uint64_t nf2_component(const ConceptRef& c) {
  switch (c->kind()) {
    case Concept::Kind::Conj:
      return nf2_component(c->lhs()) + nf2_component(c->rhs()) +
             ((!is_basic(c->lhs()) || !is_basic(c->rhs())) ? 1 : 0);
    case Concept::Kind::Exists: return nf2_component(c->filler());
    default: return 0;
  }
}

uint64_t rhs_component(const ConceptRef& c) {
  switch (c->kind()) {
    case Concept::Kind::Conj: return rhs_component(c->lhs()) + rhs_component(c->rhs()) + 3;
    case Concept::Kind::Exists:
      return is_basic(c->filler()) ? 0 : rhs_component(c->filler()) + 3;
    default: return 0;
  }
}

struct Rewrite {
  NormalizationRule rule;
  std::vector<Constraint> products;  // replaces the matched constraint
};

Name fresh_concept(KnowledgeBase& kb) {
  Name a = kb.make_fresh(NameKind::Concept);
  kb.declare(a);
  return a;
}

// phase 1: NF1 > NF2 > NF3 > NF4 > NF5
std::optional<Rewrite> phase1_rewrite(KnowledgeBase& kb, const Constraint& constraint) {
  if (const auto* ri = std::get_if<RoleInclusion>(&constraint)) {
    if (ri->chain.size() >= 3) {
      Name u = kb.make_fresh(NameKind::Role);
      kb.declare(u);
      std::vector<Name> prefix(ri->chain.begin(), ri->chain.end() - 1);
      return Rewrite{NormalizationRule::NF1,
                     {RoleInclusion{std::move(prefix), u},
                      RoleInclusion{{u, ri->chain.back()}, ri->super}}};
    }
    return std::nullopt;
  }

  const auto& gci = std::get<Gci>(constraint);
  const auto& l = gci.lhs;
  const auto& r = gci.rhs;

  if (l->kind() == Concept::Kind::Conj) {
    bool left_complex = complex_lhs(l->lhs());
    bool right_complex = complex_lhs(l->rhs());
    if (left_complex && right_complex) {
      // both operands complex: the double step keeps the measure falling
      Name a = fresh_concept(kb);
      Name b = fresh_concept(kb);
      return Rewrite{NormalizationRule::NF2,
                     {Gci{Concept::conj(Concept::atomic(a), Concept::atomic(b)), r},
                      Gci{l->rhs(), Concept::atomic(b)}, Gci{l->lhs(), Concept::atomic(a)}}};
    }
    if (left_complex) {
      Name a = fresh_concept(kb);
      return Rewrite{NormalizationRule::NF2,
                     {Gci{Concept::conj(Concept::atomic(a), l->rhs()), r},
                      Gci{l->lhs(), Concept::atomic(a)}}};
    }
    if (right_complex) {
      Name a = fresh_concept(kb);
      return Rewrite{NormalizationRule::NF2,
                     {Gci{Concept::conj(l->lhs(), Concept::atomic(a)), r},
                      Gci{l->rhs(), Concept::atomic(a)}}};
    }
  }

  if (l->kind() == Concept::Kind::Exists && complex_lhs(l->filler())) {
    Name a = fresh_concept(kb);
    return Rewrite{NormalizationRule::NF3,
                   {Gci{l->filler(), Concept::atomic(a)},
                    Gci{Concept::exists(l->name(), Concept::atomic(a)), r}}};
  }

  if (l->kind() == Concept::Kind::Bottom) return Rewrite{NormalizationRule::NF4, {}};

  if (complex_lhs(l) && complex_rhs(r)) {
    Name a = fresh_concept(kb);
    return Rewrite{NormalizationRule::NF5,
                   {Gci{l, Concept::atomic(a)}, Gci{Concept::atomic(a), r}}};
  }
  return std::nullopt;
}

// phase 2: vacuous-top removal, then NF6, then NF7
std::optional<Rewrite> phase2_rewrite(KnowledgeBase& kb, const Constraint& constraint) {
  const auto* gci = std::get_if<Gci>(&constraint);
  if (!gci) return std::nullopt;
  const auto& r = gci->rhs;
  if (r->kind() == Concept::Kind::Top) return Rewrite{NormalizationRule::NF4, {}};
  if (r->kind() == Concept::Kind::Exists && complex_lhs(r->filler())) {
    Name a = fresh_concept(kb);
    return Rewrite{NormalizationRule::NF6,
                   {Gci{gci->lhs, Concept::exists(r->name(), Concept::atomic(a))},
                    Gci{Concept::atomic(a), r->filler()}}};
  }
  if (r->kind() == Concept::Kind::Conj) {
    return Rewrite{NormalizationRule::NF7, {Gci{gci->lhs, r->lhs()}, Gci{gci->lhs, r->rhs()}}};
  }
  return std::nullopt;
}

template <typename RewriteFn>
void run_phase(KnowledgeBase& kb, const RewriteFn& rewrite_of, const StepObserver& observer) {
  for (;;) {
    bool fired = false;
    for (size_t i = 0; i < kb.constraints.size(); ++i) {
      auto rewrite = rewrite_of(kb, kb.constraints[i]);
      if (!rewrite) continue;
      std::optional<KnowledgeBase> before;
      if (observer) before = kb;
      kb.constraints.erase(kb.constraints.begin() + static_cast<ptrdiff_t>(i));
      kb.constraints.insert(kb.constraints.begin() + static_cast<ptrdiff_t>(i),
                            rewrite->products.begin(), rewrite->products.end());
      if (observer) observer(rewrite->rule, *before, kb);
      fired = true;
      break;
    }
    if (!fired) return;
  }
}

}  // namespace

uint64_t nf3_component(const ConceptRef& c) {
  switch (c->kind()) {
    case Concept::Kind::Conj: return nf3_component(c->lhs()) + nf3_component(c->rhs());
    case Concept::Kind::Exists:
      return is_basic(c->filler()) ? 0 : nf3_component(c->filler()) + 3;
    default: return 0;
  }
}

uint64_t nf_measure(const KnowledgeBase& kb) {
  uint64_t total = 0;
  for (const auto& constraint : kb.constraints) {
    if (const auto* ri = std::get_if<RoleInclusion>(&constraint)) {
      if (ri->chain.size() > 2) total += ri->chain.size() - 2;
      continue;
    }
    const auto& gci = std::get<Gci>(constraint);
    total += nf3_component(gci.lhs);
    total += 3 * nf2_component(gci.lhs);
    if (complex_lhs(gci.lhs) && complex_rhs(gci.rhs)) total += 1;
    if (gci.lhs->kind() == Concept::Kind::Bottom) total += 1;
    total += rhs_component(gci.rhs);
    if (gci.rhs->kind() == Concept::Kind::Top) total += 1;
  }
  return total;
}

KnowledgeBase normalize(const KnowledgeBase& kb, const StepObserver& observer) {
  require_valid(kb, "normalize");
  KnowledgeBase out = kb;
  run_phase(
      out, [](KnowledgeBase& k, const Constraint& c) { return phase1_rewrite(k, c); }, observer);
  run_phase(
      out, [](KnowledgeBase& k, const Constraint& c) { return phase2_rewrite(k, c); }, observer);
  assert(is_normal_form(out));
  return out;
}

AExtensionResult a_extend(const KnowledgeBase& kb, Name subsumee_name) {
  require_valid(kb, "a_extend");
  if (subsumee_name.kind != NameKind::Concept || !kb.declared(subsumee_name))
    throw ElppError("a_extend: " + label(subsumee_name) + " is not a declared concept name");
  AExtensionResult result;
  result.kb = kb;
  result.individual = result.kb.make_fresh(NameKind::Individual);
  result.kb.declare(result.individual);
  result.role = result.kb.make_fresh(NameKind::Role);
  result.kb.declare(result.role);
  result.kb.constraints.push_back(
      Gci{Concept::nominal(result.individual),
          Concept::exists(result.role, Concept::atomic(subsumee_name))});
  return result;
}

}  // namespace elpp
