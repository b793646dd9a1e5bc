// Executable model-theoretic semantics over explicit finite interpretations,
// plus bounded countermodel search. The search is exhaustive up to the given
// domain size and value pools, so "none" certifies the absence of a
// countermodel within those bounds.
#pragma once

#include "elpp/cdomains.hpp"
#include "elpp/core.hpp"

namespace elpp {

struct FiniteInterpretation {
  int size = 1;  // domain is {0, ..., size-1}, never empty
  std::map<Name, std::vector<char>> concept_map;              // element bitmaps
  std::map<Name, std::set<std::pair<int, int>>> role_map;
  std::map<Name, int> individual_map;
  std::map<Name, std::map<int, Value>> feature_map;           // partial per feature
};

// Bitmap of the elements satisfying c. Throws ElppError when c mentions a
// name the interpretation does not cover.
std::vector<char> interpret(const ConceptRef& c, const FiniteInterpretation& interp);

bool is_model(const FiniteInterpretation& interp, const KnowledgeBase& kb);

// Finite value lists that stand in for the infinite concrete domains during
// search: constants from the kb's predicates, one plus-offset application,
// the small offset grid (rationals), suffix closure and one fresh letter
// (strings).
struct CandidatePools {
  std::vector<Rational> rationals;
  std::vector<std::string> strings;
};

CandidatePools candidate_values(const KnowledgeBase& kb);

// Pool for a subsumption query whose descriptions may mention predicates the
// kb alone does not.
CandidatePools candidate_values(const KnowledgeBase& kb, const ConceptRef& c, const ConceptRef& d);

inline constexpr uint64_t kDefaultSearchBudget = 20'000'000;

struct SearchOutcome {
  enum class Status { Found, None, BudgetExceeded };
  Status status = Status::None;
  std::optional<FiniteInterpretation> model;  // set iff Found; re-verified
  uint64_t nodes = 0;
};

// Looks for a model of kb with an element inside c but outside d, over all
// interpretations with domain size <= max_size and feature values drawn from
// pools. "None" means the exhaustive bounded search concluded; the node
// budget turns an oversized search into an explicit BudgetExceeded outcome.
SearchOutcome find_countermodel(const KnowledgeBase& kb, const ConceptRef& c, const ConceptRef& d,
                                int max_size, const CandidatePools& pools,
                                uint64_t budget = kDefaultSearchBudget);

}  // namespace elpp
