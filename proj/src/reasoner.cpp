#include "elpp/reasoner.hpp"

namespace elpp {

std::string_view reason_word(SubsumptionReason r) {
  switch (r) {
    case SubsumptionReason::Direct: return "direct";
    case SubsumptionReason::SubsumeeEmpty: return "subsumee-empty";
    case SubsumptionReason::Inconsistent: return "inconsistent";
  }
  return "?";
}

SubsumptionVerdict check_subsumption(const KnowledgeBase& kb, const ConceptRef& c,
                                     const ConceptRef& d, const QueryOptions& options) {
  auto transformed = transform(kb, c, d);
  auto normal = normalize(transformed.kb);
  auto extended = a_extend(normal, transformed.subsumee_name);

  auto state = std::make_shared<ClassificationState>(init_state(extended.kb));
  saturate(*state, options.saturation);

  // the extension axiom keeps the subsumee name in play even when
  // normalization dropped every other mention of it
  int a_idx = state->bc_index(Concept::atomic(transformed.subsumee_name));
  if (a_idx < 0) throw ElppError("check_subsumption: subsumee name missing from BC");

  SubsumptionVerdict verdict;
  std::optional<Premise> winning;

  int b_value = state->value_of(Concept::atomic(transformed.subsumer_name));
  if (b_value >= 0 && state->s_contains(a_idx, b_value)) {
    verdict.holds = true;
    verdict.reason = SubsumptionReason::Direct;
    winning = SEntry{a_idx, b_value};
  } else if (state->s_contains(a_idx, kValueBottom)) {
    verdict.holds = true;
    verdict.reason = SubsumptionReason::SubsumeeEmpty;
    winning = SEntry{a_idx, kValueBottom};
  } else {
    // every individual of the extended kb, the extension individual included
    for (Name i : extended.kb.individuals) {
      int idx = state->bc_index(Concept::nominal(i));
      if (idx >= 0 && state->s_contains(idx, kValueBottom)) {
        verdict.holds = true;
        verdict.reason = SubsumptionReason::Inconsistent;
        winning = SEntry{idx, kValueBottom};
        break;
      }
    }
  }

  if (options.want_trace) {
    if (verdict.holds && winning) verdict.trace = explain(*state, *winning);
    verdict.state = std::move(state);
  }
  return verdict;
}

bool is_consistent(const KnowledgeBase& kb) {
  return !check_subsumption(kb, Concept::top(), Concept::bottom()).holds;
}

std::set<std::pair<Name, Name>> classify_names(const KnowledgeBase& kb) {
  std::set<std::pair<Name, Name>> out;
  for (Name x : kb.concepts)
    for (Name y : kb.concepts)
      if (check_subsumption(kb, Concept::atomic(x), Concept::atomic(y)).holds) out.emplace(x, y);
  return out;
}

}  // namespace elpp
