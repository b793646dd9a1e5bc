#include "elpp/classify.hpp"

#include <algorithm>
#include <random>

#include "elpp/cdomains.hpp"
#include "elpp/pipeline.hpp"

namespace elpp {

std::string_view rule_word(CompletionRule r) {
  switch (r) {
    case CompletionRule::Init: return "Init";
    case CompletionRule::CR1: return "CR1";
    case CompletionRule::CR2: return "CR2";
    case CompletionRule::CR3: return "CR3";
    case CompletionRule::CR4: return "CR4";
    case CompletionRule::CR5: return "CR5";
    case CompletionRule::CR6: return "CR6";
    case CompletionRule::CR7: return "CR7";
    case CompletionRule::CR8: return "CR8";
    case CompletionRule::CR9: return "CR9";
    case CompletionRule::CR10: return "CR10";
    case CompletionRule::CR11: return "CR11";
  }
  return "?";
}

std::string_view trace_shape_word(CompletionRule r) {
  switch (r) {
    case CompletionRule::CR3: return "ExistsR";
    case CompletionRule::CR10: return "TransR";
    case CompletionRule::CR11: return "SplitR";
    default: return rule_word(r);
  }
}

ClassificationState::ClassificationState(const KnowledgeBase& kb) : kb_(kb), bc_(BasicConceptSet::of(kb)) {
  if (!is_normal_form(kb_)) throw ElppError("classification requires a normal-form kb");
  for (Name r : kb_.roles) {
    role_index_[r] = static_cast<int>(role_names_.size());
    role_names_.push_back(r);
  }
  s_.assign(static_cast<size_t>(bc_.size()), std::vector<char>(static_cast<size_t>(value_count()), 0));
  r_.assign(role_names_.size(),
            std::vector<char>(static_cast<size_t>(bc_.size()) * static_cast<size_t>(bc_.size()), 0));
  r_fwd_.assign(role_names_.size(), std::vector<std::vector<int>>(static_cast<size_t>(bc_.size())));
  r_bwd_.assign(role_names_.size(), std::vector<std::vector<int>>(static_cast<size_t>(bc_.size())));

  for (int c = 0; c < bc_.size(); ++c) {
    s_[static_cast<size_t>(c)][static_cast<size_t>(c + 1)] = 1;  // C itself
    s_[static_cast<size_t>(c)][1] = 1;                           // top is bc index 0
    s_traces_[static_cast<uint64_t>(c) * static_cast<uint64_t>(value_count()) +
              static_cast<uint64_t>(c + 1)] = TraceNode{};
    s_traces_[static_cast<uint64_t>(c) * static_cast<uint64_t>(value_count()) + 1] = TraceNode{};
  }
}

int ClassificationState::value_of(const ConceptRef& c) const {
  if (c->kind() == Concept::Kind::Bottom) return kValueBottom;
  int idx = bc_.index_of(c);
  return idx < 0 ? -1 : idx + 1;
}

int ClassificationState::role_index(Name role) const {
  auto it = role_index_.find(role);
  return it == role_index_.end() ? -1 : it->second;
}

std::vector<int> ClassificationState::s_values(int c) const {
  std::vector<int> out;
  const auto& row = s_[static_cast<size_t>(c)];
  for (int v = 0; v < value_count(); ++v)
    if (row[static_cast<size_t>(v)]) out.push_back(v);
  return out;
}

std::vector<std::pair<int, int>> ClassificationState::r_edges(int role) const {
  std::vector<std::pair<int, int>> out;
  for (int c = 0; c < bc_.size(); ++c)
    for (int d = 0; d < bc_.size(); ++d)
      if (r_[static_cast<size_t>(role)][edge_key(c, d)]) out.emplace_back(c, d);
  return out;
}

const TraceNode* ClassificationState::trace_of(const Premise& entry) const {
  if (const auto* s = std::get_if<SEntry>(&entry)) {
    auto it = s_traces_.find(static_cast<uint64_t>(s->c) * static_cast<uint64_t>(value_count()) +
                             static_cast<uint64_t>(s->v));
    return it == s_traces_.end() ? nullptr : &it->second;
  }
  if (const auto* r = std::get_if<REntry>(&entry)) {
    uint64_t key = (static_cast<uint64_t>(r->role) * static_cast<uint64_t>(bc_.size()) +
                    static_cast<uint64_t>(r->c)) *
                       static_cast<uint64_t>(bc_.size()) +
                   static_cast<uint64_t>(r->d);
    auto it = r_traces_.find(key);
    return it == r_traces_.end() ? nullptr : &it->second;
  }
  return nullptr;
}

std::vector<Premise> ClassificationState::all_entries() const {
  std::vector<Premise> out;
  for (int c = 0; c < bc_.size(); ++c)
    for (int v : s_values(c)) out.push_back(SEntry{c, v});
  for (int role = 0; role < static_cast<int>(role_names_.size()); ++role)
    for (auto [c, d] : r_edges(role)) out.push_back(REntry{role, c, d});
  return out;
}

ClassificationState init_state(const KnowledgeBase& kb) { return ClassificationState(kb); }

bool reachable_index(const ClassificationState& st, int from, int to) {
  if (from == to) return true;
  // depth-first from the end backwards over the union of all role edges
  std::vector<char> seen(static_cast<size_t>(st.bc_.size()), 0);
  std::vector<int> stack{to};
  seen[static_cast<size_t>(to)] = 1;
  while (!stack.empty()) {
    int node = stack.back();
    stack.pop_back();
    for (const auto& bwd : st.r_bwd_)
      for (int prev : bwd[static_cast<size_t>(node)]) {
        if (prev == from) return true;
        if (!seen[static_cast<size_t>(prev)]) {
          seen[static_cast<size_t>(prev)] = 1;
          stack.push_back(prev);
        }
      }
  }
  return false;
}

bool reachable(const ClassificationState& state, const ConceptRef& c, const ConceptRef& d) {
  int ci = state.bc_index(c);
  int di = state.bc_index(d);
  if (ci < 0 || di < 0) throw ElppError("reachable: concepts must be basic concepts of the kb");
  return reachable_index(state, ci, di);
}

// ---------------------------------------------------------------------------
// saturation

struct StateAccess {
  static std::vector<std::vector<char>>& s(ClassificationState& st) { return st.s_; }
  static std::vector<std::vector<char>>& r(ClassificationState& st) { return st.r_; }
  static std::vector<std::vector<std::vector<int>>>& r_fwd(ClassificationState& st) {
    return st.r_fwd_;
  }
  static const std::vector<std::vector<std::vector<int>>>& r_fwd(const ClassificationState& st) {
    return st.r_fwd_;
  }
  static const std::vector<std::vector<std::vector<int>>>& r_bwd(const ClassificationState& st) {
    return st.r_bwd_;
  }
  static std::vector<std::vector<std::vector<int>>>& r_bwd(ClassificationState& st) {
    return st.r_bwd_;
  }
  static std::map<uint64_t, TraceNode>& s_traces(ClassificationState& st) { return st.s_traces_; }
  static std::map<uint64_t, TraceNode>& r_traces(ClassificationState& st) { return st.r_traces_; }
  static size_t edge_key(const ClassificationState& st, int c, int d) { return st.edge_key(c, d); }
  static void set_options(ClassificationState& st, const SaturationOptions& o) { st.options_ = o; }
};

namespace {

struct RuleIndexes {
  std::vector<std::vector<std::pair<int, int>>> by_lhs;                 // [bc] -> (ax, value)
  std::vector<std::vector<std::tuple<int, int, int>>> by_conj;          // [bc] -> (ax, other bc, value)
  std::vector<std::vector<std::tuple<int, int, int>>> by_exists_rhs;    // [bc] -> (ax, role, filler bc)
  std::vector<std::vector<std::vector<std::pair<int, int>>>> by_exists_lhs;  // [role][bc] -> (ax, value)
  std::vector<std::vector<std::pair<int, int>>> sub_of;                 // [role] -> (ax, super)
  std::vector<std::vector<std::tuple<int, int, int>>> chain_left;       // [r1] -> (ax, r2, super)
  std::vector<std::vector<std::tuple<int, int, int>>> chain_right;      // [r2] -> (ax, r1, super)
  std::vector<std::pair<int, PredicateAtom>> bc_preds[2];               // per domain: (value, atom)
  std::vector<int> nominal_values;
};

RuleIndexes build_indexes(const ClassificationState& st) {
  const auto& kb = st.kb();
  const auto& bc = st.bc();
  RuleIndexes idx;
  idx.by_lhs.resize(static_cast<size_t>(bc.size()));
  idx.by_conj.resize(static_cast<size_t>(bc.size()));
  idx.by_exists_rhs.resize(static_cast<size_t>(bc.size()));
  idx.by_exists_lhs.assign(st.role_names().size(),
                           std::vector<std::vector<std::pair<int, int>>>(static_cast<size_t>(bc.size())));
  idx.sub_of.resize(st.role_names().size());
  idx.chain_left.resize(st.role_names().size());
  idx.chain_right.resize(st.role_names().size());

  for (int i = 0; i < static_cast<int>(kb.constraints.size()); ++i) {
    const auto& constraint = kb.constraints[static_cast<size_t>(i)];
    if (const auto* ri = std::get_if<RoleInclusion>(&constraint)) {
      int super = st.role_index(ri->super);
      if (ri->chain.size() == 1) {
        idx.sub_of[static_cast<size_t>(st.role_index(ri->chain[0]))].emplace_back(i, super);
      } else {
        int r1 = st.role_index(ri->chain[0]);
        int r2 = st.role_index(ri->chain[1]);
        idx.chain_left[static_cast<size_t>(r1)].emplace_back(i, r2, super);
        idx.chain_right[static_cast<size_t>(r2)].emplace_back(i, r1, super);
      }
      continue;
    }
    const auto& gci = std::get<Gci>(constraint);
    int rhs_value = st.value_of(gci.rhs);
    const auto& l = gci.lhs;
    if (is_basic(l)) {
      if (gci.rhs->kind() == Concept::Kind::Exists) {
        idx.by_exists_rhs[static_cast<size_t>(st.bc_index(l))].emplace_back(
            i, st.role_index(gci.rhs->name()), st.bc_index(gci.rhs->filler()));
      } else {
        idx.by_lhs[static_cast<size_t>(st.bc_index(l))].emplace_back(i, rhs_value);
      }
    } else if (l->kind() == Concept::Kind::Conj) {
      int c1 = st.bc_index(l->lhs());
      int c2 = st.bc_index(l->rhs());
      idx.by_conj[static_cast<size_t>(c1)].emplace_back(i, c2, rhs_value);
      if (c1 != c2) idx.by_conj[static_cast<size_t>(c2)].emplace_back(i, c1, rhs_value);
    } else {  // Exists on the left
      idx.by_exists_lhs[static_cast<size_t>(st.role_index(l->name()))]
                       [static_cast<size_t>(st.bc_index(l->filler()))]
                           .emplace_back(i, rhs_value);
    }
  }

  for (int b = 0; b < bc.size(); ++b) {
    const auto& c = bc[b];
    if (c->kind() == Concept::Kind::Pred) {
      size_t dm = domain_of(c->atom().pred) == DomainId::Rational ? 0 : 1;
      idx.bc_preds[dm].emplace_back(b + 1, c->atom());
    } else if (c->kind() == Concept::Kind::Nominal) {
      idx.nominal_values.push_back(b + 1);
    }
  }
  return idx;
}

class Engine {
 public:
  Engine(ClassificationState& st, const SaturationOptions& options)
      : st_(st), idx_(build_indexes(st)), options_(options) {
    if (options.shuffle_seed) rng_.emplace(*options.shuffle_seed);
    dirty_[0].assign(static_cast<size_t>(st_.bc().size()), 1);
    dirty_[1].assign(static_cast<size_t>(st_.bc().size()), 1);
  }

  void run() {
    for (auto entry : st_.all_entries()) work_.push_back(entry);
    for (;;) {
      drain();
      bool more = nominal_merge_pass();
      more |= concrete_pass();
      if (!more && work_.empty()) break;
    }
  }

 private:
  void add_s(int c, int v, TraceNode trace) {
    auto& cell = StateAccess::s(st_)[static_cast<size_t>(c)][static_cast<size_t>(v)];
    if (cell) return;
    cell = 1;
    StateAccess::s_traces(st_)[static_cast<uint64_t>(c) * static_cast<uint64_t>(st_.value_count()) +
                               static_cast<uint64_t>(v)] = std::move(trace);
    if (v != kValueBottom && st_.bc()[v - 1]->kind() == Concept::Kind::Pred) {
      size_t dm = domain_of(st_.bc()[v - 1]->atom().pred) == DomainId::Rational ? 0 : 1;
      dirty_[dm][static_cast<size_t>(c)] = 1;
    }
    work_.push_back(SEntry{c, v});
  }

  void add_r(int role, int c, int d, TraceNode trace) {
    auto& cell = StateAccess::r(st_)[static_cast<size_t>(role)][StateAccess::edge_key(st_, c, d)];
    if (cell) return;
    cell = 1;
    StateAccess::r_fwd(st_)[static_cast<size_t>(role)][static_cast<size_t>(c)].push_back(d);
    StateAccess::r_bwd(st_)[static_cast<size_t>(role)][static_cast<size_t>(d)].push_back(c);
    uint64_t key = (static_cast<uint64_t>(role) * static_cast<uint64_t>(st_.bc().size()) +
                    static_cast<uint64_t>(c)) *
                       static_cast<uint64_t>(st_.bc().size()) +
                   static_cast<uint64_t>(d);
    StateAccess::r_traces(st_)[key] = std::move(trace);
    work_.push_back(REntry{role, c, d});
  }

  Premise pop() {
    size_t at = 0;
    if (rng_) at = (*rng_)() % work_.size();
    Premise out = work_[at];
    work_[at] = work_.back();
    work_.pop_back();
    return out;
  }

  void drain() {
    while (!work_.empty()) {
      Premise item = pop();
      if (const auto* s = std::get_if<SEntry>(&item))
        process_s(*s);
      else
        process_r(std::get<REntry>(item));
    }
  }

  void process_s(SEntry e) {
    if (e.v == kValueBottom) {
      // bottom propagates backwards over every edge into e.c
      for (int role = 0; role < static_cast<int>(st_.role_names().size()); ++role)
        for (int prev : StateAccess::r_bwd(st_)[static_cast<size_t>(role)][static_cast<size_t>(e.c)])
          add_s(prev, kValueBottom,
                TraceNode{CompletionRule::CR5, {REntry{role, prev, e.c}, SEntry{e.c, kValueBottom}}});
      return;
    }
    int d_bc = e.v - 1;
    for (auto [ax, value] : idx_.by_lhs[static_cast<size_t>(d_bc)])
      add_s(e.c, value, TraceNode{CompletionRule::CR1, {SEntry{e.c, e.v}, AxiomRef{ax}}});
    for (auto [ax, other, value] : idx_.by_conj[static_cast<size_t>(d_bc)])
      if (st_.s_contains(e.c, other + 1))
        add_s(e.c, value,
              TraceNode{CompletionRule::CR2, {SEntry{e.c, e.v}, SEntry{e.c, other + 1}, AxiomRef{ax}}});
    for (auto [ax, role, filler] : idx_.by_exists_rhs[static_cast<size_t>(d_bc)])
      add_r(role, e.c, filler, TraceNode{CompletionRule::CR3, {SEntry{e.c, e.v}, AxiomRef{ax}}});
    // as the S(D) premise of CR4: edges arriving at e.c
    for (int role = 0; role < static_cast<int>(st_.role_names().size()); ++role) {
      const auto& lhs_axioms = idx_.by_exists_lhs[static_cast<size_t>(role)][static_cast<size_t>(d_bc)];
      if (lhs_axioms.empty()) continue;
      for (int prev : StateAccess::r_bwd(st_)[static_cast<size_t>(role)][static_cast<size_t>(e.c)])
        for (auto [ax, value] : lhs_axioms)
          add_s(prev, value,
                TraceNode{CompletionRule::CR4,
                          {REntry{role, prev, e.c}, SEntry{e.c, e.v}, AxiomRef{ax}}});
    }
  }

  void process_r(REntry e) {
    // CR4 with this edge as first premise
    for (int v : st_.s_values(e.d)) {
      if (v == kValueBottom) continue;
      for (auto [ax, value] : idx_.by_exists_lhs[static_cast<size_t>(e.role)][static_cast<size_t>(v - 1)])
        add_s(e.c, value,
              TraceNode{CompletionRule::CR4, {e, SEntry{e.d, v}, AxiomRef{ax}}});
    }
    if (st_.s_contains(e.d, kValueBottom))
      add_s(e.c, kValueBottom,
            TraceNode{CompletionRule::CR5, {e, SEntry{e.d, kValueBottom}}});
    for (auto [ax, super] : idx_.sub_of[static_cast<size_t>(e.role)])
      add_r(super, e.c, e.d, TraceNode{CompletionRule::CR10, {e, AxiomRef{ax}}});
    for (auto [ax, r2, super] : idx_.chain_left[static_cast<size_t>(e.role)])
      for (int next : StateAccess::r_fwd(st_)[static_cast<size_t>(r2)][static_cast<size_t>(e.d)])
        add_r(super, e.c, next,
              TraceNode{CompletionRule::CR11, {e, REntry{r2, e.d, next}, AxiomRef{ax}}});
    for (auto [ax, r1, super] : idx_.chain_right[static_cast<size_t>(e.role)])
      for (int prev : StateAccess::r_bwd(st_)[static_cast<size_t>(r1)][static_cast<size_t>(e.c)])
        add_r(super, prev, e.d,
              TraceNode{CompletionRule::CR11, {REntry{r1, prev, e.c}, e, AxiomRef{ax}}});
  }

  // path of role edges reaching `to` from any of `roots`, for CR6 traces
  std::optional<std::vector<REntry>> edge_path(const std::vector<int>& roots, int to) {
    std::vector<int> parent(static_cast<size_t>(st_.bc().size()), -1);
    std::vector<int> parent_role(static_cast<size_t>(st_.bc().size()), -1);
    std::vector<char> seen(static_cast<size_t>(st_.bc().size()), 0);
    std::vector<int> queue;
    for (int root : roots) {
      if (root == to) return std::vector<REntry>{};
      if (!seen[static_cast<size_t>(root)]) {
        seen[static_cast<size_t>(root)] = 1;
        queue.push_back(root);
      }
    }
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int node = queue[qi];
      for (int role = 0; role < static_cast<int>(st_.role_names().size()); ++role)
        for (int next : StateAccess::r_fwd(st_)[static_cast<size_t>(role)][static_cast<size_t>(node)]) {
          if (seen[static_cast<size_t>(next)]) continue;
          seen[static_cast<size_t>(next)] = 1;
          parent[static_cast<size_t>(next)] = node;
          parent_role[static_cast<size_t>(next)] = role;
          if (next == to) {
            std::vector<REntry> path;
            int at = to;
            while (parent[static_cast<size_t>(at)] != -1) {
              path.push_back(REntry{parent_role[static_cast<size_t>(at)],
                                    parent[static_cast<size_t>(at)], at});
              at = parent[static_cast<size_t>(at)];
            }
            std::reverse(path.begin(), path.end());
            return path;
          }
          queue.push_back(next);
        }
    }
    return std::nullopt;
  }

  bool nominal_merge_pass() {
    bool added = false;
    for (int nv : idx_.nominal_values) {
      std::vector<int> owners;
      for (int c = 0; c < st_.bc().size(); ++c)
        if (st_.s_contains(c, nv)) owners.push_back(c);
      std::vector<int> nominal_roots;
      for (int v : idx_.nominal_values) nominal_roots.push_back(v - 1);
      for (int c : owners)
        for (int d : owners) {
          if (c == d) continue;
          // a path may start at the absorbing concept or at any nominal
          std::vector<int> roots = nominal_roots;
          roots.insert(roots.begin(), c);
          auto path = edge_path(roots, d);
          if (!path) continue;
          for (int v : st_.s_values(d)) {
            if (st_.s_contains(c, v)) continue;
            TraceNode trace{CompletionRule::CR6, {SEntry{c, nv}, SEntry{d, nv}}};
            for (const auto& edge : *path) trace.premises.push_back(edge);
            trace.premises.push_back(SEntry{d, v});
            add_s(c, v, std::move(trace));
            added = true;
          }
        }
    }
    return added;
  }

  bool concrete_pass() {
    bool added = false;
    for (size_t dm = 0; dm < 2; ++dm) {
      const auto& domain_ref = dm == 0 ? rational_domain() : string_domain();
      for (int c = 0; c < st_.bc().size(); ++c) {
        if (!dirty_[dm][static_cast<size_t>(c)]) continue;
        dirty_[dm][static_cast<size_t>(c)] = 0;

        std::vector<PredicateAtom> atoms;
        std::vector<Premise> atom_entries;
        for (auto [value, atom] : idx_.bc_preds[dm])
          if (st_.s_contains(c, value)) {
            atoms.push_back(atom);
            atom_entries.push_back(SEntry{c, value});
          }
        if (atoms.empty()) continue;

        if (!domain_ref.satisfiable(atoms).sat) {
          TraceNode trace{CompletionRule::CR7, atom_entries};
          add_s(c, kValueBottom, std::move(trace));
          added = true;
        }
        for (auto [value, goal] : idx_.bc_preds[dm]) {
          if (st_.s_contains(c, value)) continue;
          if (domain_ref.implies(atoms, goal)) {
            TraceNode trace{CompletionRule::CR8, atom_entries};
            add_s(c, value, std::move(trace));
            added = true;
          }
        }
      }
    }
    // cross-domain feature clash
    for (int c = 0; c < st_.bc().size(); ++c) {
      if (st_.s_contains(c, kValueBottom)) continue;
      for (auto [v1, a1] : idx_.bc_preds[0]) {
        if (!st_.s_contains(c, v1)) continue;
        for (auto [v2, a2] : idx_.bc_preds[1]) {
          if (!st_.s_contains(c, v2)) continue;
          bool share = std::any_of(a1.features.begin(), a1.features.end(), [&](Name f) {
            return std::find(a2.features.begin(), a2.features.end(), f) != a2.features.end();
          });
          if (share) {
            add_s(c, kValueBottom,
                  TraceNode{CompletionRule::CR9, {SEntry{c, v1}, SEntry{c, v2}}});
            added = true;
          }
        }
      }
    }
    return added;
  }

  ClassificationState& st_;
  RuleIndexes idx_;
  SaturationOptions options_;
  std::vector<Premise> work_;
  std::optional<std::mt19937_64> rng_;
  std::vector<char> dirty_[2];
};

}  // namespace

void saturate(ClassificationState& state, const SaturationOptions& options) {
  state.options_ = options;
  Engine engine(state, options);
  engine.run();
}

ClassificationState classify(const KnowledgeBase& kb, const SaturationOptions& options) {
  ClassificationState state = init_state(kb);
  saturate(state, options);
  return state;
}

// ---------------------------------------------------------------------------
// fixpoint check, replay, explanation

namespace {

// naive full-scan mirror of the rules, kept independent of the worklist
// engine on purpose
bool would_add(const ClassificationState& st) {
  const auto& kb = st.kb();
  const int n = st.bc().size();
  auto s_has = [&](int c, int v) { return st.s_contains(c, v); };
  auto cr6_reach = [&](int c, int d) {
    if (reachable_index(st, c, d)) return true;
    for (int b = 0; b < st.bc().size(); ++b)
      if (st.bc()[b]->kind() == Concept::Kind::Nominal && reachable_index(st, b, d)) return true;
    return false;
  };

  for (int c = 0; c < n; ++c) {
    for (int i = 0; i < static_cast<int>(kb.constraints.size()); ++i) {
      const auto* gci = std::get_if<Gci>(&kb.constraints[static_cast<size_t>(i)]);
      if (!gci) continue;
      int rhs_value = st.value_of(gci->rhs);
      const auto& l = gci->lhs;
      if (is_basic(l) && gci->rhs->kind() != Concept::Kind::Exists) {
        if (s_has(c, st.bc_index(l) + 1) && !s_has(c, rhs_value)) return true;  // CR1
      } else if (l->kind() == Concept::Kind::Conj) {
        if (s_has(c, st.bc_index(l->lhs()) + 1) && s_has(c, st.bc_index(l->rhs()) + 1) &&
            !s_has(c, rhs_value))
          return true;  // CR2
      } else if (is_basic(l) && gci->rhs->kind() == Concept::Kind::Exists) {
        if (s_has(c, st.bc_index(l) + 1) &&
            !st.r_contains(st.role_index(gci->rhs->name()), c, st.bc_index(gci->rhs->filler())))
          return true;  // CR3
      }
    }
  }

  for (int role = 0; role < static_cast<int>(st.role_names().size()); ++role) {
    for (auto [c, d] : st.r_edges(role)) {
      for (int i = 0; i < static_cast<int>(kb.constraints.size()); ++i) {
        const auto* gci = std::get_if<Gci>(&kb.constraints[static_cast<size_t>(i)]);
        if (!gci) continue;
        if (gci->lhs->kind() != Concept::Kind::Exists) continue;
        if (st.role_index(gci->lhs->name()) != role) continue;
        if (s_has(d, st.bc_index(gci->lhs->filler()) + 1) && !s_has(c, st.value_of(gci->rhs)))
          return true;  // CR4
      }
      if (s_has(d, kValueBottom) && !s_has(c, kValueBottom)) return true;  // CR5
      for (int i = 0; i < static_cast<int>(kb.constraints.size()); ++i) {
        const auto* ri = std::get_if<RoleInclusion>(&kb.constraints[static_cast<size_t>(i)]);
        if (!ri) continue;
        if (ri->chain.size() == 1 && st.role_index(ri->chain[0]) == role &&
            !st.r_contains(st.role_index(ri->super), c, d))
          return true;  // CR10
        if (ri->chain.size() == 2 && st.role_index(ri->chain[0]) == role) {
          int r2 = st.role_index(ri->chain[1]);
          for (auto [d2, e] : st.r_edges(r2))
            if (d2 == d && !st.r_contains(st.role_index(ri->super), c, e)) return true;  // CR11
        }
      }
    }
  }

  // CR6
  for (int c = 0; c < n; ++c)
    for (int d = 0; d < n; ++d) {
      if (c == d) continue;
      bool common_nominal = false;
      for (int v = 1; v <= n; ++v)
        if (st.bc()[v - 1]->kind() == Concept::Kind::Nominal && s_has(c, v) && s_has(d, v)) {
          common_nominal = true;
          break;
        }
      if (!common_nominal || !cr6_reach(c, d)) continue;
      for (int v = 0; v <= n; ++v)
        if (s_has(d, v) && !s_has(c, v)) return true;
    }

  // CR7/CR8/CR9
  for (int c = 0; c < n; ++c) {
    for (int pass = 0; pass < 2; ++pass) {
      const auto& domain_ref = pass == 0 ? rational_domain() : string_domain();
      DomainId id = pass == 0 ? DomainId::Rational : DomainId::Text;
      std::vector<PredicateAtom> atoms;
      for (int v = 1; v <= n; ++v) {
        const auto& b = st.bc()[v - 1];
        if (b->kind() == Concept::Kind::Pred && domain_of(b->atom().pred) == id && s_has(c, v))
          atoms.push_back(b->atom());
      }
      if (atoms.empty()) continue;
      if (!domain_ref.satisfiable(atoms).sat && !s_has(c, kValueBottom)) return true;  // CR7
      for (int v = 1; v <= n; ++v) {
        const auto& b = st.bc()[v - 1];
        if (b->kind() == Concept::Kind::Pred && domain_of(b->atom().pred) == id && !s_has(c, v) &&
            domain_ref.implies(atoms, b->atom()))
          return true;  // CR8
      }
    }
    if (!s_has(c, kValueBottom)) {
      for (int v1 = 1; v1 <= n; ++v1) {
        const auto& b1 = st.bc()[v1 - 1];
        if (b1->kind() != Concept::Kind::Pred || !s_has(c, v1)) continue;
        for (int v2 = 1; v2 <= n; ++v2) {
          const auto& b2 = st.bc()[v2 - 1];
          if (b2->kind() != Concept::Kind::Pred || !s_has(c, v2)) continue;
          if (domain_of(b1->atom().pred) == domain_of(b2->atom().pred)) continue;
          for (Name f : b1->atom().features)
            if (std::find(b2->atom().features.begin(), b2->atom().features.end(), f) !=
                b2->atom().features.end())
              return true;  // CR9
        }
      }
    }
  }
  return false;
}

}  // namespace

bool is_saturated(const ClassificationState& state) { return !would_add(state); }

namespace {

bool premise_present(const ClassificationState& st, const Premise& p) {
  if (const auto* s = std::get_if<SEntry>(&p)) return st.s_contains(s->c, s->v);
  if (const auto* r = std::get_if<REntry>(&p)) return st.r_contains(r->role, r->c, r->d);
  const auto& ax = std::get<AxiomRef>(p);
  return ax.index >= 0 && ax.index < static_cast<int>(st.kb().constraints.size());
}

const Gci* axiom_gci(const ClassificationState& st, const Premise& p) {
  const auto* ax = std::get_if<AxiomRef>(&p);
  if (!ax || !premise_present(st, p)) return nullptr;
  return std::get_if<Gci>(&st.kb().constraints[static_cast<size_t>(ax->index)]);
}

const RoleInclusion* axiom_ri(const ClassificationState& st, const Premise& p) {
  const auto* ax = std::get_if<AxiomRef>(&p);
  if (!ax || !premise_present(st, p)) return nullptr;
  return std::get_if<RoleInclusion>(&st.kb().constraints[static_cast<size_t>(ax->index)]);
}

}  // namespace

bool replay_entry(const ClassificationState& st, const Premise& entry) {
  const TraceNode* node = st.trace_of(entry);
  if (!node || !premise_present(st, entry)) return false;
  for (const auto& p : node->premises)
    if (!premise_present(st, p)) return false;

  const auto* se = std::get_if<SEntry>(&entry);
  const auto* re = std::get_if<REntry>(&entry);
  const auto& ps = node->premises;

  auto s_at = [&](size_t i) { return std::get_if<SEntry>(&ps[i]); };
  auto r_at = [&](size_t i) { return std::get_if<REntry>(&ps[i]); };

  switch (node->rule) {
    case CompletionRule::Init:
      if (se) return se->v == 1 || se->v == se->c + 1;  // top or the concept itself
      return false;
    case CompletionRule::CR1: {
      if (!se || ps.size() != 2) return false;
      const auto* prem = s_at(0);
      const auto* gci = axiom_gci(st, ps[1]);
      return prem && gci && prem->c == se->c && is_basic(gci->lhs) &&
             st.bc_index(gci->lhs) + 1 == prem->v && st.value_of(gci->rhs) == se->v;
    }
    case CompletionRule::CR2: {
      if (!se || ps.size() != 3) return false;
      const auto* p1 = s_at(0);
      const auto* p2 = s_at(1);
      const auto* gci = axiom_gci(st, ps[2]);
      if (!p1 || !p2 || !gci || gci->lhs->kind() != Concept::Kind::Conj) return false;
      int c1 = st.bc_index(gci->lhs->lhs()) + 1;
      int c2 = st.bc_index(gci->lhs->rhs()) + 1;
      bool operands_match = (p1->v == c1 && p2->v == c2) || (p1->v == c2 && p2->v == c1);
      return p1->c == se->c && p2->c == se->c && operands_match &&
             st.value_of(gci->rhs) == se->v;
    }
    case CompletionRule::CR3: {
      if (!re || ps.size() != 2) return false;
      const auto* prem = s_at(0);
      const auto* gci = axiom_gci(st, ps[1]);
      return prem && gci && prem->c == re->c && is_basic(gci->lhs) &&
             st.bc_index(gci->lhs) + 1 == prem->v &&
             gci->rhs->kind() == Concept::Kind::Exists &&
             st.role_index(gci->rhs->name()) == re->role &&
             st.bc_index(gci->rhs->filler()) == re->d;
    }
    case CompletionRule::CR4: {
      if (!se || ps.size() != 3) return false;
      const auto* edge = r_at(0);
      const auto* prem = s_at(1);
      const auto* gci = axiom_gci(st, ps[2]);
      return edge && prem && gci && edge->c == se->c && edge->d == prem->c &&
             gci->lhs->kind() == Concept::Kind::Exists &&
             st.role_index(gci->lhs->name()) == edge->role &&
             st.bc_index(gci->lhs->filler()) + 1 == prem->v && st.value_of(gci->rhs) == se->v;
    }
    case CompletionRule::CR5: {
      if (!se || se->v != kValueBottom || ps.size() != 2) return false;
      const auto* edge = r_at(0);
      const auto* prem = s_at(1);
      return edge && prem && edge->c == se->c && edge->d == prem->c && prem->v == kValueBottom;
    }
    case CompletionRule::CR6: {
      if (!se || ps.size() < 3) return false;
      const auto* own_c = s_at(0);
      const auto* own_d = s_at(1);
      const auto* copied = std::get_if<SEntry>(&ps.back());
      if (!own_c || !own_d || !copied) return false;
      if (own_c->c != se->c || own_c->v != own_d->v || copied->c != own_d->c ||
          copied->v != se->v)
        return false;
      if (own_c->v == kValueBottom ||
          st.bc()[own_c->v - 1]->kind() != Concept::Kind::Nominal)
        return false;
      // the recorded path must chain to the copy's source, starting at the
      // absorbing concept or at a nominal
      size_t first = 2;
      int at = se->c;
      if (first + 1 < ps.size()) {
        const auto* head = r_at(first);
        if (!head) return false;
        if (head->c != se->c && st.bc()[head->c]->kind() != Concept::Kind::Nominal) return false;
        at = head->c;
      } else if (st.bc()[own_d->c]->kind() == Concept::Kind::Nominal) {
        return true;  // the source itself is a nominal root
      }
      for (size_t i = first; i + 1 < ps.size(); ++i) {
        const auto* edge = r_at(i);
        if (!edge || edge->c != at) return false;
        at = edge->d;
      }
      return at == own_d->c;
    }
    case CompletionRule::CR7:
    case CompletionRule::CR8: {
      if (!se) return false;
      std::vector<PredicateAtom> atoms;
      std::optional<DomainId> dm;
      for (const auto& p : ps) {
        const auto* prem = std::get_if<SEntry>(&p);
        if (!prem || prem->c != se->c || prem->v == kValueBottom) return false;
        const auto& b = st.bc()[prem->v - 1];
        if (b->kind() != Concept::Kind::Pred) return false;
        atoms.push_back(b->atom());
        if (!dm) dm = domain_of(b->atom().pred);
        if (*dm != domain_of(b->atom().pred)) return false;
      }
      if (atoms.empty()) return false;
      if (node->rule == CompletionRule::CR7)
        return se->v == kValueBottom && !domain(*dm).satisfiable(atoms).sat;
      if (se->v == kValueBottom) return false;
      const auto& goal = st.bc()[se->v - 1];
      return goal->kind() == Concept::Kind::Pred &&
             domain_of(goal->atom().pred) == *dm && domain(*dm).implies(atoms, goal->atom());
    }
    case CompletionRule::CR9: {
      if (!se || se->v != kValueBottom || ps.size() != 2) return false;
      const auto* p1 = s_at(0);
      const auto* p2 = s_at(1);
      if (!p1 || !p2 || p1->c != se->c || p2->c != se->c) return false;
      const auto& b1 = st.bc()[p1->v - 1];
      const auto& b2 = st.bc()[p2->v - 1];
      if (b1->kind() != Concept::Kind::Pred || b2->kind() != Concept::Kind::Pred) return false;
      if (domain_of(b1->atom().pred) == domain_of(b2->atom().pred)) return false;
      for (Name f : b1->atom().features)
        if (std::find(b2->atom().features.begin(), b2->atom().features.end(), f) !=
            b2->atom().features.end())
          return true;
      return false;
    }
    case CompletionRule::CR10: {
      if (!re || ps.size() != 2) return false;
      const auto* edge = r_at(0);
      const auto* ri = axiom_ri(st, ps[1]);
      return edge && ri && ri->chain.size() == 1 && st.role_index(ri->chain[0]) == edge->role &&
             st.role_index(ri->super) == re->role && edge->c == re->c && edge->d == re->d;
    }
    case CompletionRule::CR11: {
      if (!re || ps.size() != 3) return false;
      const auto* e1 = r_at(0);
      const auto* e2 = r_at(1);
      const auto* ri = axiom_ri(st, ps[2]);
      return e1 && e2 && ri && ri->chain.size() == 2 &&
             st.role_index(ri->chain[0]) == e1->role && st.role_index(ri->chain[1]) == e2->role &&
             st.role_index(ri->super) == re->role && e1->d == e2->c && e1->c == re->c &&
             e2->d == re->d;
    }
  }
  return false;
}

TraceTree explain(const ClassificationState& st, const Premise& entry) {
  const TraceNode* node = st.trace_of(entry);
  if (!node) throw ElppError("explain: entry is not present in the classification");
  TraceTree tree;
  tree.rule = node->rule;
  tree.entry = entry;
  for (const auto& p : node->premises) {
    if (std::holds_alternative<AxiomRef>(p))
      tree.axioms.push_back(std::get<AxiomRef>(p).index);
    else
      tree.children.push_back(explain(st, p));
  }
  return tree;
}

}  // namespace elpp
