// End-to-end subsumption queries: transform, normalize, extend, saturate,
// then read the verdict off the classification.
#pragma once

#include <memory>

#include "elpp/classify.hpp"
#include "elpp/pipeline.hpp"

namespace elpp {

enum class SubsumptionReason : uint8_t {
  Direct,         // the subsumer name reached S(A)
  SubsumeeEmpty,  // bottom reached S(A)
  Inconsistent,   // bottom reached some nominal's S-set
};

std::string_view reason_word(SubsumptionReason r);

struct SubsumptionVerdict {
  bool holds = false;
  std::optional<SubsumptionReason> reason;  // present iff holds
  std::optional<TraceTree> trace;           // present iff holds and tracing was requested
  // classification behind the trace, for rendering and replay; present only
  // when tracing was requested
  std::shared_ptr<const ClassificationState> state;
};

struct QueryOptions {
  bool want_trace = false;
  SaturationOptions saturation;
};

// True iff c is subsumed by d under every model of the kb. Throws on an
// invalid kb or out-of-inventory names. Always terminates.
SubsumptionVerdict check_subsumption(const KnowledgeBase& kb, const ConceptRef& c,
                                     const ConceptRef& d, const QueryOptions& options = {});

// True iff some interpretation with a nonempty domain satisfies every
// constraint.
bool is_consistent(const KnowledgeBase& kb);

// All entailed ordered pairs of declared concept names, reflexive pairs
// included. Runs the full pipeline per query; the extension axiom depends on
// the subsumee, so saturations cannot be shared across queries.
std::set<std::pair<Name, Name>> classify_names(const KnowledgeBase& kb);

}  // namespace elpp
