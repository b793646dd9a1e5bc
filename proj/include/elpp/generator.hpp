// Seeded random knowledge bases for property tests, differential runs and
// benchmarks.
#pragma once

#include <random>

#include "elpp/core.hpp"

namespace elpp {

struct GenParams {
  int max_concepts = 5;
  int max_roles = 2;
  int max_individuals = 2;
  int max_features = 0;     // per concrete domain; 0 keeps the kb abstract
  int max_gcis = 8;
  int max_role_incs = 2;
  int max_depth = 2;        // nesting depth of generated descriptions
  int max_chain = 2;        // role-inclusion chain length
  bool allow_bottom_rhs = true;
  bool exact_counts = false;  // use the maxima verbatim instead of drawing

  // the abstract fragment used by the differential suite
  static GenParams differential() { return {}; }

  // benchmark shape: exactly 20 concept names, 10 role names, 20 individual
  // names and 40 mixed axioms
  static GenParams benchmark() {
    GenParams p;
    p.max_concepts = 20;
    p.max_roles = 10;
    p.max_individuals = 20;
    p.max_gcis = 30;
    p.max_role_incs = 10;
    p.exact_counts = true;
    return p;
  }
};

KnowledgeBase random_kb(std::mt19937_64& rng, const GenParams& params);

// A random description over the kb's inventories (depth-bounded).
ConceptRef random_description(std::mt19937_64& rng, const KnowledgeBase& kb, int depth);

// A random declared concept name.
Name random_concept_name(std::mt19937_64& rng, const KnowledgeBase& kb);

}  // namespace elpp
