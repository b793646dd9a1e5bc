// Pre-classification stages: query transformation, two-phase normalization,
// and the A-extension that keeps the subsumee name nonempty in every model.
#pragma once

#include <functional>

#include "elpp/core.hpp"

namespace elpp {

struct TransformResult {
  KnowledgeBase kb;     // input plus { A <= C, D <= B }
  Name subsumee_name;   // A, fresh
  Name subsumer_name;   // B, fresh
};

// Reduces subsumption of arbitrary descriptions to subsumption of two fresh
// concept names. Throws on an invalid kb or out-of-inventory names in c, d.
TransformResult transform(const KnowledgeBase& kb, const ConceptRef& c, const ConceptRef& d);

// Normal form: every GCI is one of  C1 <= D | C1 and C2 <= D | C1 <= er.C2 |
// er.C1 <= D  with C1, C2 basic and D basic-or-bottom; role chains have
// length <= 2.
bool is_normal_form(const KnowledgeBase& kb);

enum class NormalizationRule : uint8_t { NF1, NF2, NF3, NF4, NF5, NF6, NF7 };

std::string_view rule_word(NormalizationRule r);

// Called after each individual rewrite with the kb before and after it.
using StepObserver =
    std::function<void(NormalizationRule, const KnowledgeBase&, const KnowledgeBase&)>;

// Phase 1 applies NF1-NF5 to a fixpoint (priority NF1 > NF2 > NF3 > NF4 >
// NF5, scanning constraints in order); phase 2 then applies NF6/NF7 and
// drops vacuous  C <= top  constraints. Conjunctions with two complex
// operands are split in one double step, so the measure below strictly
// decreases on every rewrite.
KnowledgeBase normalize(const KnowledgeBase& kb, const StepObserver& observer = {});

// Weighted count of pending rewrites; strictly decreasing under normalize.
uint64_t nf_measure(const KnowledgeBase& kb);

// The existential-restriction share of the measure for one description.
uint64_t nf3_component(const ConceptRef& c);

struct AExtensionResult {
  KnowledgeBase kb;  // input plus { {t} <= er_t.A }
  Name individual;   // t, fresh
  Name role;         // r_t, fresh
};

// Subsumptions of the form A <= B are unchanged by this extension, while
// A denotes a nonempty set in every model of the result.
AExtensionResult a_extend(const KnowledgeBase& kb, Name subsumee_name);

}  // namespace elpp
