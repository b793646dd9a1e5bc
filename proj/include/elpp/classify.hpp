// The saturation engine: S and R maps over basic concepts, completion rules
// run to a least fixpoint with a semi-naive worklist, and per-entry
// derivation traces that replay.
#pragma once

#include <optional>

#include "elpp/core.hpp"

namespace elpp {

enum class CompletionRule : uint8_t {
  Init,
  CR1,   // told subsumer
  CR2,   // conjunction left-hand side
  CR3,   // existential introduction        (trace shape ExistsR)
  CR4,   // existential on the left
  CR5,   // bottom propagates backwards over edges
  CR6,   // nominal merge under reachability
  CR7,   // unsatisfiable concrete conjunction
  CR8,   // implied concrete atom
  CR9,   // cross-domain feature clash
  CR10,  // role hierarchy                  (trace shape TransR)
  CR11,  // role chain                      (trace shape SplitR)
};

std::string_view rule_word(CompletionRule r);
// CR3/CR10/CR11 entries carry the edge-tree shape names ExistsR/TransR/SplitR.
std::string_view trace_shape_word(CompletionRule r);

// S entries are (basic concept, value) pairs, R entries are role edges
// between basic concepts. Values use 0 for bottom and 1 + bc index
// otherwise; kValueBottom below.
struct SEntry {
  int c;  // bc index
  int v;  // value index
  friend bool operator==(const SEntry&, const SEntry&) = default;
};
struct REntry {
  int role;  // state role index
  int c, d;  // bc indices
  friend bool operator==(const REntry&, const REntry&) = default;
};
struct AxiomRef {
  int index;  // constraint position in the kb
  friend bool operator==(const AxiomRef&, const AxiomRef&) = default;
};
using Premise = std::variant<SEntry, REntry, AxiomRef>;

struct TraceNode {
  CompletionRule rule = CompletionRule::Init;
  std::vector<Premise> premises;
};

// Expanded derivation: children mirror the S/R premises, axioms stay leaves.
struct TraceTree {
  CompletionRule rule = CompletionRule::Init;
  Premise entry;
  std::vector<int> axioms;
  std::vector<TraceTree> children;
};

struct SaturationOptions {
  // randomized worklist discipline; identical final state expected for
  // every seed
  std::optional<uint64_t> shuffle_seed;
};

inline constexpr int kValueBottom = 0;

class ClassificationState {
 public:
  explicit ClassificationState(const KnowledgeBase& kb);  // requires normal form

  const KnowledgeBase& kb() const { return kb_; }
  const BasicConceptSet& bc() const { return bc_; }
  const std::vector<Name>& role_names() const { return role_names_; }
  const SaturationOptions& options() const { return options_; }

  int value_count() const { return bc_.size() + 1; }
  int value_of(const ConceptRef& c) const;  // -1 when absent; bottom -> 0
  int bc_index(const ConceptRef& c) const { return bc_.index_of(c); }
  int role_index(Name role) const;

  bool s_contains(int c, int v) const { return s_[static_cast<size_t>(c)][static_cast<size_t>(v)] != 0; }
  bool r_contains(int role, int c, int d) const {
    return r_[static_cast<size_t>(role)][edge_key(c, d)] != 0;
  }
  std::vector<int> s_values(int c) const;                       // sorted
  std::vector<std::pair<int, int>> r_edges(int role) const;     // sorted

  const TraceNode* trace_of(const Premise& entry) const;  // null when absent

  // every S/R entry currently present, Init entries included
  std::vector<Premise> all_entries() const;

 private:
  friend struct StateAccess;  // internal engine access
  friend void saturate(ClassificationState&, const SaturationOptions&);
  friend bool reachable_index(const ClassificationState&, int, int);

  size_t edge_key(int c, int d) const {
    return static_cast<size_t>(c) * static_cast<size_t>(bc_.size()) + static_cast<size_t>(d);
  }

  KnowledgeBase kb_;
  BasicConceptSet bc_;
  std::vector<Name> role_names_;
  std::map<Name, int> role_index_;

  std::vector<std::vector<char>> s_;              // [bc][value]
  std::vector<std::vector<char>> r_;              // [role][bc*bc]
  std::vector<std::vector<std::vector<int>>> r_fwd_, r_bwd_;  // adjacency per role

  std::map<uint64_t, TraceNode> s_traces_;
  std::map<uint64_t, TraceNode> r_traces_;

  SaturationOptions options_;
};

// S(C) = {C, top} for every C in BC, R empty, traces Init.
ClassificationState init_state(const KnowledgeBase& kb);

// Least fixpoint of CR1..CR11. Terminates by the boundedness of S and R.
//
// The nominal-merge side condition accepts an edge path to the absorbed
// concept starting either at the absorbing concept or at any nominal; the
// extension individual's axiom makes the subsumee name reachable this way,
// which is what restores completeness on nominal-entangled kbs (the
// differential suite refutes the plain source-rooted variant).
void saturate(ClassificationState& state, const SaturationOptions& options = {});

ClassificationState classify(const KnowledgeBase& kb, const SaturationOptions& options = {});

// True iff c = d or a chain of role edges leads from c to d. Implemented as
// a depth-first search from the end backwards.
bool reachable(const ClassificationState& state, const ConceptRef& c, const ConceptRef& d);
bool reachable_index(const ClassificationState& state, int c, int d);

// One full re-scan of every rule: true iff nothing new would be added.
bool is_saturated(const ClassificationState& state);

// Replays the recorded rule of this entry against its premises; true iff
// the premises are present and the rule reproduces the entry.
bool replay_entry(const ClassificationState& state, const Premise& entry);

// Derivation tree of an entry; throws ElppError when the entry is absent.
TraceTree explain(const ClassificationState& state, const Premise& entry);

}  // namespace elpp
