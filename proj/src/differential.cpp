#include "elpp/differential.hpp"

#include "elpp/printer.hpp"
#include "elpp/reasoner.hpp"

namespace elpp {

DiffReport run_differential(const DiffParams& params) {
  std::mt19937_64 rng(params.seed);
  DiffReport report;

  for (int k = 0; k < params.kb_count; ++k) {
    auto kb = random_kb(rng, params.gen);
    ++report.kbs;
    int bound = params.max_size_override > 0 ? params.max_size_override
                                             : basic_concepts(kb).size() + 1;
    auto pools = candidate_values(kb);

    for (int q = 0; q < params.queries_per_kb; ++q) {
      Name x = random_concept_name(rng, kb);
      Name y = random_concept_name(rng, kb);
      ConceptRef c = Concept::atomic(x);
      ConceptRef d = Concept::atomic(y);
      ++report.queries;

      QueryOptions opts;
      opts.want_trace = params.check_traces;
      auto verdict = check_subsumption(kb, c, d, opts);
      (verdict.holds ? report.holds_true : report.holds_false)++;

      if (params.check_traces && verdict.state) {
        for (const auto& entry : verdict.state->all_entries()) {
          ++report.trace_entries;
          if (replay_entry(*verdict.state, entry)) ++report.trace_replayed;
        }
      }

      auto outcome = find_countermodel(kb, c, d, bound, pools, params.budget);
      report.oracle_nodes += outcome.nodes;
      if (outcome.status == SearchOutcome::Status::BudgetExceeded) {
        ++report.budget_exceeded;
        continue;
      }
      bool oracle_holds = outcome.status == SearchOutcome::Status::None;
      if (oracle_holds != verdict.holds) {
        Disagreement bad;
        bad.kb_text = print_kb(kb);
        bad.query_c = print_concept(c);
        bad.query_d = print_concept(d);
        bad.reasoner_holds = verdict.holds;
        bad.detail = verdict.holds
                         ? "reasoner claims the subsumption but a countermodel of size " +
                               std::to_string(outcome.model ? outcome.model->size : 0) + " exists"
                         : "reasoner denies the subsumption but no countermodel of size <= " +
                               std::to_string(bound) + " exists";
        report.disagreements.push_back(std::move(bad));
      }
    }
  }
  return report;
}

}  // namespace elpp
