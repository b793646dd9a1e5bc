// Differential harness: seeded random kbs, reasoner verdicts cross-checked
// against the bounded countermodel search, trace replay counted along the
// way. Shared by the check command and the acceptance suite.
#pragma once

#include <string>

#include "elpp/generator.hpp"
#include "elpp/oracle.hpp"

namespace elpp {

struct DiffParams {
  GenParams gen;
  int kb_count = 100;
  int queries_per_kb = 2;
  uint64_t seed = 1;
  int max_size_override = 0;  // 0 means |BC| + 1 per kb
  uint64_t budget = kDefaultSearchBudget;
  bool check_traces = true;
};

struct Disagreement {
  std::string kb_text;
  std::string query_c, query_d;
  bool reasoner_holds = false;
  std::string detail;
};

struct DiffReport {
  int kbs = 0;
  int queries = 0;
  int holds_true = 0;
  int holds_false = 0;
  int budget_exceeded = 0;  // oracle runs that stayed inconclusive
  uint64_t trace_entries = 0;
  uint64_t trace_replayed = 0;
  uint64_t oracle_nodes = 0;
  std::vector<Disagreement> disagreements;

  bool clean() const { return disagreements.empty() && budget_exceeded == 0; }
};

DiffReport run_differential(const DiffParams& params);

}  // namespace elpp
