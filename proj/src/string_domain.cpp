// String domain. A conjunction of atoms is solved over a graph whose nodes
// are equality classes of features (union-find over S.same and empty-word
// concatenations) and whose directed edges f -w-> g assert value(g) =
// value(f).w for a nonempty word w. The graph is saturated under:
//
//   - composition:   f -u-> g, g -v-> h      derives f -uv-> h
//   - shared target: a -u-> x, b -v-> x      needs u to be a suffix of v
//                    (|u| <= |v|); v = v'.u  derives b -v'-> a, or merges
//                    a,b when u = v, or is inconsistent otherwise
//   - shared source: b -u-> f, b -v-> g with u a prefix of v, v = u.v''
//                    derives f -v''-> g, or merges f,g when u = v
//   - constants:     a word pinned on one class propagates along edges in
//                    both directions (append forward, suffix-strip backward)
//
// A cycle (labels are nonempty) or a constant clash is inconsistent. On a
// consistent saturated graph a witness is read off in topological order;
// free base classes get the empty word. Implication is decided on the same
// saturated graph; refutations diversify the free bases with a letter that
// occurs in no constant.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "elpp/cdomains.hpp"

namespace elpp {

namespace {

using SK = StringPredicate::Kind;

bool is_suffix(const std::string& suffix, const std::string& of) {
  return suffix.size() <= of.size() &&
         std::equal(suffix.rbegin(), suffix.rend(), of.rbegin());
}

bool is_prefix(const std::string& prefix, const std::string& of) {
  return prefix.size() <= of.size() && std::equal(prefix.begin(), prefix.end(), of.begin());
}

struct UnionFind {
  std::vector<int> parent;

  int make() {
    parent.push_back(static_cast<int>(parent.size()));
    return static_cast<int>(parent.size()) - 1;
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

struct Edge {
  int src, dst;
  std::string label;  // nonempty

  auto operator<=>(const Edge&) const = default;
};

class StrGraph {
 public:
  explicit StrGraph(std::span<const PredicateAtom> conj) {
    size_t label_budget = 0;
    for (const auto& atom : conj) {
      const auto& p = std::get<StringPredicate>(atom.pred);
      label_budget += p.w.size();
    }
    label_cap_ = label_budget + 1;
    for (const auto& atom : conj) {
      const auto& p = std::get<StringPredicate>(atom.pred);
      switch (p.kind) {
        case SK::Top: node(atom.features[0]); break;
        case SK::EqWord: pin_constant(node(atom.features[0]), p.w); break;
        case SK::Same: uf_.unite(node(atom.features[0]), node(atom.features[1])); break;
        case SK::ConcatWord: {
          int f = node(atom.features[0]);
          int g = node(atom.features[1]);
          if (p.w.empty())
            uf_.unite(f, g);
          else
            edges_.insert({f, g, p.w});
          break;
        }
      }
    }
    saturate();
  }

  bool unsat() const { return unsat_; }

  int node(Name f) {
    auto [it, inserted] = node_of_.emplace(f, 0);
    if (inserted) it->second = uf_.make();
    return it->second;
  }

  int cls(Name f) { return uf_.find(node(f)); }

  const std::string* constant_of(int root) {
    auto it = constant_.find(root);
    return it == constant_.end() ? nullptr : &it->second;
  }

  bool has_edge(int src, int dst, const std::string& label) const {
    return edges_.count({src, dst, label}) > 0;
  }

  // Values per class, topological order; free base classes get base(i).
  // Returns nothing when the graph is inconsistent.
  template <typename BaseFn>
  std::optional<std::map<Name, std::string>> witness(BaseFn base) {
    if (unsat_) return std::nullopt;
    std::set<int> roots;
    for (auto& [f, n] : node_of_) roots.insert(uf_.find(n));
    std::map<int, int> indegree;
    for (int r : roots) indegree[r] = 0;
    for (const auto& e : edges_) indegree[e.dst]++;
    std::vector<int> order;
    std::vector<int> queue;
    for (int r : roots)
      if (indegree[r] == 0) queue.push_back(r);
    while (!queue.empty()) {
      int r = queue.back();
      queue.pop_back();
      order.push_back(r);
      for (const auto& e : edges_)
        if (e.src == r && --indegree[e.dst] == 0) queue.push_back(e.dst);
    }
    if (order.size() != roots.size()) return std::nullopt;  // cycle: unreachable here

    std::map<int, std::string> value;
    int free_index = 0;
    for (int r : order) {
      if (const std::string* c = constant_of(r)) {
        value[r] = *c;
        continue;
      }
      const Edge* incoming = nullptr;
      for (const auto& e : edges_)
        if (e.dst == r && (!incoming || e < *incoming)) incoming = &e;
      value[r] = incoming ? value.at(incoming->src) + incoming->label : base(free_index++);
    }
    std::map<Name, std::string> out;
    for (auto& [f, n] : node_of_) out[f] = value.at(uf_.find(n));
    return out;
  }

 private:
  void pin_constant(int n, const std::string& w) {
    int r = uf_.find(n);
    auto [it, inserted] = constant_.emplace(r, w);
    if (!inserted && it->second != w) unsat_ = true;
  }

  // rebuild edges/constants over current representatives
  void canonicalize() {
    std::set<Edge> fresh;
    for (const auto& e : edges_) {
      int s = uf_.find(e.src), d = uf_.find(e.dst);
      if (s == d) {
        unsat_ = true;  // value = value.label with nonempty label
        return;
      }
      fresh.insert({s, d, e.label});
    }
    edges_ = std::move(fresh);
    std::map<int, std::string> consts;
    for (auto& [n, w] : constant_) {
      int r = uf_.find(n);
      auto [it, inserted] = consts.emplace(r, w);
      if (!inserted && it->second != w) {
        unsat_ = true;
        return;
      }
    }
    constant_ = std::move(consts);
  }

  bool has_cycle() const {
    std::map<int, std::vector<int>> adj;
    std::set<int> nodes;
    for (const auto& e : edges_) {
      adj[e.src].push_back(e.dst);
      nodes.insert(e.src);
      nodes.insert(e.dst);
    }
    std::map<int, int> color;
    auto dfs = [&](auto&& self, int n) -> bool {
      color[n] = 1;
      for (int m : adj[n]) {
        if (color[m] == 1) return true;
        if (color[m] == 0 && self(self, m)) return true;
      }
      color[n] = 2;
      return false;
    };
    for (int n : nodes)
      if (color[n] == 0 && dfs(dfs, n)) return true;
    return false;
  }

  void saturate() {
    bool changed = true;
    while (changed && !unsat_) {
      changed = false;
      canonicalize();
      if (unsat_) return;
      if (has_cycle()) {
        unsat_ = true;
        return;
      }

      std::set<Edge> additions;
      std::vector<std::pair<int, int>> merges;
      auto add_edge = [&](int s, int d, const std::string& label) {
        // in a consistent graph every label fits inside the input budget,
        // so an overshoot can only mean inconsistency
        if (s == d || label.size() > label_cap_) {
          unsat_ = true;
          return;
        }
        if (!edges_.count({s, d, label})) additions.insert({s, d, label});
      };

      for (const auto& e1 : edges_) {
        if (unsat_) return;
        for (const auto& e2 : edges_) {
          if (&e1 == &e2) continue;
          // parallel edges with different labels force value(a).u = value(a).v
          if (e1.src == e2.src && e1.dst == e2.dst && e1.label != e2.label) {
            unsat_ = true;
            return;
          }
          // composition
          if (e1.dst == e2.src) add_edge(e1.src, e2.dst, e1.label + e2.label);
          // shared target
          if (e1.dst == e2.dst && e1.src != e2.src) {
            const Edge& small = e1.label.size() <= e2.label.size() ? e1 : e2;
            const Edge& large = e1.label.size() <= e2.label.size() ? e2 : e1;
            if (!is_suffix(small.label, large.label)) {
              unsat_ = true;
              return;
            }
            if (small.label.size() == large.label.size())
              merges.emplace_back(small.src, large.src);
            else
              add_edge(large.src, small.src,
                       large.label.substr(0, large.label.size() - small.label.size()));
          }
          // shared source
          if (e1.src == e2.src && e1.dst != e2.dst) {
            const Edge& small = e1.label.size() <= e2.label.size() ? e1 : e2;
            const Edge& large = e1.label.size() <= e2.label.size() ? e2 : e1;
            if (is_prefix(small.label, large.label)) {
              if (small.label.size() == large.label.size())
                merges.emplace_back(small.dst, large.dst);
              else
                add_edge(small.dst, large.dst, large.label.substr(small.label.size()));
            }
          }
        }
      }
      if (unsat_) return;

      for (auto [a, b] : merges) changed |= uf_.unite(a, b);
      for (const auto& e : additions) changed |= edges_.insert(e).second;

      // constant propagation over current edges
      for (const auto& e : edges_) {
        const std::string* cs = constant_of(uf_.find(e.src));
        const std::string* cd = constant_of(uf_.find(e.dst));
        if (cs && !cd) {
          pin_constant(e.dst, *cs + e.label);
          changed = true;
        } else if (cd && !cs) {
          if (!is_suffix(e.label, *cd)) {
            unsat_ = true;
            return;
          }
          pin_constant(e.src, cd->substr(0, cd->size() - e.label.size()));
          changed = true;
        } else if (cs && cd && *cs + e.label != *cd) {
          unsat_ = true;
          return;
        }
      }
    }
  }

  UnionFind uf_;
  std::map<Name, int> node_of_;
  std::set<Edge> edges_;
  std::map<int, std::string> constant_;
  size_t label_cap_ = 1;
  bool unsat_ = false;
};

class StringDomain final : public ConcreteDomain {
 public:
  DomainId id() const override { return DomainId::Text; }

  bool owns(const Predicate& p) const override {
    return std::holds_alternative<StringPredicate>(p);
  }

  bool apply(const Predicate& p, std::span<const Value> vs) const override {
    if (!owns(p)) throw ElppError("apply: not an S predicate: " + predicate_word(p));
    if (vs.size() != static_cast<size_t>(arity_of(p)))
      throw ElppError("apply: arity breach on " + predicate_word(p));
    for (const auto& v : vs)
      if (!std::holds_alternative<std::string>(v))
        throw ElppError("apply: non-string value passed to " + predicate_word(p));
    const auto& s = std::get<StringPredicate>(p);
    auto val = [&](size_t i) -> const std::string& { return std::get<std::string>(vs[i]); };
    switch (s.kind) {
      case SK::Top: return true;
      case SK::EqWord: return val(0) == s.w;
      case SK::ConcatWord: return val(1) == val(0) + s.w;
      case SK::Same: return val(0) == val(1);
    }
    return false;
  }

  SatResult satisfiable(std::span<const PredicateAtom> conj) const override {
    check_atoms(conj);
    StrGraph graph(conj);
    if (graph.unsat()) return {};
    auto w = graph.witness([](int) { return std::string(); });
    if (!w) return {};
    SatResult r;
    r.sat = true;
    for (auto& [f, v] : *w) r.witness.values[f] = v;
    for (const auto& atom : conj)
      if (!holds_under(r.witness, atom))
        throw ElppError("string decider: witness failed verification");
    return r;
  }

  bool implies(std::span<const PredicateAtom> conj, const PredicateAtom& goal) const override {
    check_atoms(conj);
    check_atoms({&goal, 1});
    StrGraph graph(conj);
    return implied_on(graph, conj, goal);
  }

  std::optional<Assignment> refute_implication(std::span<const PredicateAtom> conj,
                                               const PredicateAtom& goal) const override {
    check_atoms(conj);
    check_atoms({&goal, 1});
    StrGraph graph(conj);
    if (implied_on(graph, conj, goal)) return std::nullopt;
    if (!features_covered(conj, goal)) {
      // a goal feature the premises never mention: the plain witness leaves
      // it undefined and already refutes
      auto r = satisfiable(conj);
      if (r.sat) return r.witness;
    }

    // Diversify free bases with a letter foreign to every constant; scaled
    // lengths keep distinct bases from colliding through edge suffixes.
    size_t scale = 1;
    std::set<char> used_letters;
    auto account = [&](const PredicateAtom& atom) {
      const auto& p = std::get<StringPredicate>(atom.pred);
      scale += p.w.size();
      for (char c : p.w) used_letters.insert(c);
    };
    for (const auto& atom : conj) account(atom);
    account(goal);
    char fresh = 0;
    for (int c = 'z'; c >= 1; --c)
      if (!used_letters.count(static_cast<char>(c))) {
        fresh = static_cast<char>(c);
        break;
      }
    if (fresh == 0) throw ElppError("string decider: no letter left for refutation");

    for (size_t variant = 0; variant < 4; ++variant) {
      auto w = graph.witness([&](int i) {
        if (variant == 0) return std::string();
        return std::string((static_cast<size_t>(i) + 1) * (scale + variant), fresh);
      });
      if (!w) break;
      Assignment candidate;
      for (auto& [f, v] : *w) candidate.values[f] = v;
      bool ok = true;
      for (const auto& atom : conj)
        if (!holds_under(candidate, atom)) {
          ok = false;
          break;
        }
      if (ok && !holds_under(candidate, goal)) return candidate;
    }
    throw ElppError("string decider: refutation construction failed");
  }

 private:
  static bool features_covered(std::span<const PredicateAtom> conj, const PredicateAtom& goal) {
    for (Name f : goal.features) {
      bool seen = false;
      for (const auto& atom : conj)
        if (std::find(atom.features.begin(), atom.features.end(), f) != atom.features.end()) {
          seen = true;
          break;
        }
      if (!seen) return false;
    }
    return true;
  }

  static bool implied_on(StrGraph& graph, std::span<const PredicateAtom> conj,
                         const PredicateAtom& goal) {
    if (graph.unsat()) return true;  // vacuous
    // partial-assignment semantics: an unmentioned feature may stay
    // undefined, so nothing over it is implied
    if (!features_covered(conj, goal)) return false;
    const auto& p = std::get<StringPredicate>(goal.pred);
    auto same_or_equal_constants = [&](Name f, Name g) {
      int cf = graph.cls(f), cg = graph.cls(g);
      if (cf == cg) return true;
      const std::string* a = graph.constant_of(cf);
      const std::string* b = graph.constant_of(cg);
      return a && b && *a == *b;
    };
    switch (p.kind) {
      case SK::Top: return true;
      case SK::EqWord: {
        const std::string* c = graph.constant_of(graph.cls(goal.features[0]));
        return c && *c == p.w;
      }
      case SK::Same: return same_or_equal_constants(goal.features[0], goal.features[1]);
      case SK::ConcatWord: {
        if (p.w.empty()) return same_or_equal_constants(goal.features[0], goal.features[1]);
        int cf = graph.cls(goal.features[0]), cg = graph.cls(goal.features[1]);
        if (graph.has_edge(cf, cg, p.w)) return true;
        const std::string* a = graph.constant_of(cf);
        const std::string* b = graph.constant_of(cg);
        return a && b && *a + p.w == *b;
      }
    }
    return false;
  }
};

}  // namespace

const ConcreteDomain& string_domain() {
  static const StringDomain instance;
  return instance;
}

}  // namespace elpp
