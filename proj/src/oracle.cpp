// Finite-interpretation semantics and the bounded countermodel search.
//
// The search builds candidate countermodels chase-style instead of
// enumerating raw maps. Branch points are the individual placements, the
// witness element of each fired existential head, and the feature values of
// each fired predicate head; everything else (concept bits, role-chain
// super-edges) follows deterministically from the axioms. Every constructor
// of the language is monotone, so whenever a countermodel within the bounds
// exists, the closure of some choice vector is one; a branch dies as soon
// as the goal element lands inside the subsumer or a bottom head fires. The
// goal witness is pinned to element 0, which costs no generality (models
// are closed under relabeling). Found models are re-verified against
// is_model before they are returned.

#include "elpp/oracle.hpp"

#include <algorithm>

namespace elpp {

namespace {

void require(bool cond, const char* what) {
  if (!cond) throw ElppError(what);
}

const std::vector<char>* find_concept(const FiniteInterpretation& interp, Name n) {
  auto it = interp.concept_map.find(n);
  return it == interp.concept_map.end() ? nullptr : &it->second;
}

}  // namespace

std::vector<char> interpret(const ConceptRef& c, const FiniteInterpretation& interp) {
  const size_t n = static_cast<size_t>(interp.size);
  std::vector<char> out(n, 0);
  switch (c->kind()) {
    case Concept::Kind::Top: std::fill(out.begin(), out.end(), 1); break;
    case Concept::Kind::Bottom: break;
    case Concept::Kind::Atomic: {
      const auto* bits = find_concept(interp, c->name());
      require(bits != nullptr, "interpret: concept name not interpreted");
      require(bits->size() == n, "interpret: concept bitmap has wrong size");
      out = *bits;
      break;
    }
    case Concept::Kind::Nominal: {
      auto it = interp.individual_map.find(c->name());
      require(it != interp.individual_map.end(), "interpret: individual not interpreted");
      require(it->second >= 0 && it->second < interp.size, "interpret: individual out of range");
      out[static_cast<size_t>(it->second)] = 1;
      break;
    }
    case Concept::Kind::Conj: {
      auto l = interpret(c->lhs(), interp);
      auto r = interpret(c->rhs(), interp);
      for (size_t i = 0; i < n; ++i) out[i] = l[i] && r[i];
      break;
    }
    case Concept::Kind::Exists: {
      auto it = interp.role_map.find(c->name());
      require(it != interp.role_map.end(), "interpret: role not interpreted");
      auto f = interpret(c->filler(), interp);
      for (const auto& [x, y] : it->second) {
        require(x >= 0 && x < interp.size && y >= 0 && y < interp.size,
                "interpret: role edge out of range");
        if (f[static_cast<size_t>(y)]) out[static_cast<size_t>(x)] = 1;
      }
      break;
    }
    case Concept::Kind::Pred: {
      const auto& atom = c->atom();
      const auto& dom = domain(domain_of(atom.pred));
      for (size_t x = 0; x < n; ++x) {
        std::vector<Value> vs;
        bool defined = true;
        for (Name f : atom.features) {
          auto fit = interp.feature_map.find(f);
          require(fit != interp.feature_map.end(), "interpret: feature not interpreted");
          auto vit = fit->second.find(static_cast<int>(x));
          if (vit == fit->second.end()) {
            defined = false;
            break;
          }
          vs.push_back(vit->second);
        }
        if (!defined) continue;
        bool same_domain = std::all_of(vs.begin(), vs.end(), [&](const Value& v) {
          return domain_of(v) == domain_of(atom.pred);
        });
        out[x] = same_domain && dom.apply(atom.pred, vs);
      }
      break;
    }
  }
  return out;
}

namespace {

std::set<std::pair<int, int>> compose_chain(const FiniteInterpretation& interp,
                                            const std::vector<Name>& chain) {
  auto first = interp.role_map.find(chain.front());
  require(first != interp.role_map.end(), "is_model: role not interpreted");
  std::set<std::pair<int, int>> acc = first->second;
  for (size_t i = 1; i < chain.size(); ++i) {
    auto next = interp.role_map.find(chain[i]);
    require(next != interp.role_map.end(), "is_model: role not interpreted");
    std::set<std::pair<int, int>> step;
    for (const auto& [x, y] : acc)
      for (const auto& [u, z] : next->second)
        if (u == y) step.insert({x, z});
    acc = std::move(step);
  }
  return acc;
}

}  // namespace

bool is_model(const FiniteInterpretation& interp, const KnowledgeBase& kb) {
  for (const auto& constraint : kb.constraints) {
    if (const auto* gci = std::get_if<Gci>(&constraint)) {
      auto l = interpret(gci->lhs, interp);
      auto r = interpret(gci->rhs, interp);
      for (size_t i = 0; i < l.size(); ++i)
        if (l[i] && !r[i]) return false;
    } else {
      const auto& ri = std::get<RoleInclusion>(constraint);
      auto composed = compose_chain(interp, ri.chain);
      auto sup = interp.role_map.find(ri.super);
      require(sup != interp.role_map.end(), "is_model: role not interpreted");
      for (const auto& edge : composed)
        if (!sup->second.count(edge)) return false;
    }
  }
  return true;
}

namespace {

void collect_atoms(const ConceptRef& c, std::vector<PredicateAtom>& out) {
  switch (c->kind()) {
    case Concept::Kind::Pred: out.push_back(c->atom()); break;
    case Concept::Kind::Conj:
      collect_atoms(c->lhs(), out);
      collect_atoms(c->rhs(), out);
      break;
    case Concept::Kind::Exists: collect_atoms(c->filler(), out); break;
    default: break;
  }
}

CandidatePools pools_from_atoms(const std::vector<PredicateAtom>& atoms) {
  CandidatePools pools;

  std::set<Rational> constants;
  std::set<Rational> plus_offsets;
  std::set<std::string> words;
  for (const auto& atom : atoms) {
    if (const auto* q = std::get_if<RationalPredicate>(&atom.pred)) {
      switch (q->kind) {
        case RationalPredicate::Kind::EqConst:
        case RationalPredicate::Kind::GtConst: constants.insert(q->q); break;
        case RationalPredicate::Kind::PlusConst:
          constants.insert(q->q);
          plus_offsets.insert(q->q);
          break;
        default: break;
      }
    } else {
      const auto& s = std::get<StringPredicate>(atom.pred);
      if (s.kind == StringPredicate::Kind::EqWord || s.kind == StringPredicate::Kind::ConcatWord)
        words.insert(s.w);
    }
  }

  if (!constants.empty() ||
      std::any_of(atoms.begin(), atoms.end(), [](const PredicateAtom& a) {
        return domain_of(a.pred) == DomainId::Rational;
      })) {
    std::set<Rational> closed = constants;
    if (closed.empty()) closed.insert(0);
    for (const auto& k : constants)
      for (const auto& q : plus_offsets) {
        closed.insert(k + q);
        closed.insert(k - q);
      }
    std::set<Rational> grid;
    for (const auto& k : closed)
      for (const Rational& off :
           {Rational(-1), Rational(-1, 2), Rational(0), Rational(1, 2), Rational(1)})
        grid.insert(k + off);
    pools.rationals.assign(grid.begin(), grid.end());
  }

  if (std::any_of(atoms.begin(), atoms.end(), [](const PredicateAtom& a) {
        return domain_of(a.pred) == DomainId::Text;
      })) {
    std::set<char> letters;
    for (const auto& w : words)
      for (char c : w) letters.insert(c);
    char fresh = 'a';
    while (letters.count(fresh)) ++fresh;
    std::set<std::string> pool{""};
    for (const auto& w : words) {
      for (size_t i = 0; i <= w.size(); ++i) pool.insert(w.substr(i));  // suffixes incl. w
      pool.insert(w + fresh);
    }
    pools.strings.assign(pool.begin(), pool.end());
  }
  return pools;
}

}  // namespace

CandidatePools candidate_values(const KnowledgeBase& kb) {
  std::vector<PredicateAtom> atoms;
  for (const auto& constraint : kb.constraints)
    if (const auto* gci = std::get_if<Gci>(&constraint)) {
      collect_atoms(gci->lhs, atoms);
      collect_atoms(gci->rhs, atoms);
    }
  return pools_from_atoms(atoms);
}

CandidatePools candidate_values(const KnowledgeBase& kb, const ConceptRef& c,
                                const ConceptRef& d) {
  std::vector<PredicateAtom> atoms;
  for (const auto& constraint : kb.constraints)
    if (const auto* gci = std::get_if<Gci>(&constraint)) {
      collect_atoms(gci->lhs, atoms);
      collect_atoms(gci->rhs, atoms);
    }
  collect_atoms(c, atoms);
  collect_atoms(d, atoms);
  return pools_from_atoms(atoms);
}

// ---------------------------------------------------------------------------
// countermodel search

namespace {

struct NameIndex {
  std::vector<Name> names;
  std::map<Name, int> index;

  int add(Name n) {
    auto [it, inserted] = index.emplace(n, static_cast<int>(names.size()));
    if (inserted) names.push_back(n);
    return it->second;
  }
  int of(Name n) const {
    auto it = index.find(n);
    return it == index.end() ? -1 : it->second;
  }
  int size() const { return static_cast<int>(names.size()); }
};

void collect_names(const ConceptRef& c, NameIndex& concepts, NameIndex& roles, NameIndex& inds,
                   NameIndex& feats) {
  switch (c->kind()) {
    case Concept::Kind::Atomic: concepts.add(c->name()); break;
    case Concept::Kind::Nominal: inds.add(c->name()); break;
    case Concept::Kind::Conj:
      collect_names(c->lhs(), concepts, roles, inds, feats);
      collect_names(c->rhs(), concepts, roles, inds, feats);
      break;
    case Concept::Kind::Exists:
      roles.add(c->name());
      collect_names(c->filler(), concepts, roles, inds, feats);
      break;
    case Concept::Kind::Pred:
      for (Name f : c->atom().features) feats.add(f);
      break;
    default: break;
  }
}

class Searcher {
 public:
  Searcher(const KnowledgeBase& kb, ConceptRef c, ConceptRef d, const CandidatePools& pools,
           uint64_t budget)
      : kb_(kb), goal_c_(std::move(c)), goal_d_(std::move(d)), budget_(budget) {
    collect_names(goal_c_, concepts_, roles_, inds_, feats_);
    collect_names(goal_d_, concepts_, roles_, inds_, feats_);
    for (const auto& constraint : kb_.constraints) {
      if (const auto* gci = std::get_if<Gci>(&constraint)) {
        gcis_.push_back(gci);
        collect_names(gci->lhs, concepts_, roles_, inds_, feats_);
        collect_names(gci->rhs, concepts_, roles_, inds_, feats_);
      } else {
        const auto& ri = std::get<RoleInclusion>(constraint);
        ris_.push_back(&ri);
        for (Name r : ri.chain) roles_.add(r);
        roles_.add(ri.super);
      }
    }

    // per-feature candidate values, restricted to the domains the feature
    // is used with
    std::vector<PredicateAtom> atoms;
    for (const auto* gci : gcis_) {
      collect_atoms(gci->lhs, atoms);
      collect_atoms(gci->rhs, atoms);
    }
    collect_atoms(goal_c_, atoms);
    collect_atoms(goal_d_, atoms);
    feat_values_.resize(static_cast<size_t>(feats_.size()));
    std::vector<bool> uses_q(feat_values_.size()), uses_s(feat_values_.size());
    for (const auto& atom : atoms)
      for (Name f : atom.features) {
        auto fi = static_cast<size_t>(feats_.of(f));
        (domain_of(atom.pred) == DomainId::Rational ? uses_q : uses_s)[fi] = true;
      }
    for (size_t fi = 0; fi < feat_values_.size(); ++fi) {
      if (uses_q[fi])
        for (const auto& v : pools.rationals) feat_values_[fi].emplace_back(v);
      if (uses_s[fi])
        for (const auto& v : pools.strings) feat_values_[fi].emplace_back(v);
    }
  }

  SearchOutcome run(int max_size) {
    SearchOutcome out;
    for (int n = 1; n <= max_size && !exceeded_; ++n) {
      size_ = n;
      bits_.assign(static_cast<size_t>(concepts_.size()),
                   std::vector<char>(static_cast<size_t>(n), 0));
      edges_.assign(static_cast<size_t>(roles_.size()),
                    std::vector<char>(static_cast<size_t>(n) * static_cast<size_t>(n), 0));
      fvals_.assign(static_cast<size_t>(feats_.size()), std::vector<int>(static_cast<size_t>(n), -1));
      ind_.assign(static_cast<size_t>(inds_.size()), -1);
      trail_.clear();
      if (solve() && !exceeded_) {
        out.status = SearchOutcome::Status::Found;
        out.model = extract();
        break;
      }
    }
    out.nodes = nodes_;
    if (exceeded_) out.status = SearchOutcome::Status::BudgetExceeded;
    return out;
  }

 private:
  struct TrailOp {
    enum class Kind : uint8_t { Bit, Edge, Ind, Feat } kind;
    int owner, slot;
  };

  char& bit(int ci, int x) { return bits_[static_cast<size_t>(ci)][static_cast<size_t>(x)]; }

  // swapping a and b is an automorphism of the current partial structure;
  // the goal element 0 always counts as distinguished
  bool interchangeable(int a, int b) {
    if (a == 0 || b == 0) return false;
    for (int v : ind_)
      if (v == a || v == b) return false;
    for (const auto& row : bits_)
      if (row[static_cast<size_t>(a)] != row[static_cast<size_t>(b)]) return false;
    for (const auto& row : fvals_)
      if (row[static_cast<size_t>(a)] != row[static_cast<size_t>(b)]) return false;
    for (const auto& grid : edges_) {
      for (int z = 0; z < size_; ++z) {
        if (z == a || z == b) continue;
        if (grid[static_cast<size_t>(a * size_ + z)] != grid[static_cast<size_t>(b * size_ + z)])
          return false;
        if (grid[static_cast<size_t>(z * size_ + a)] != grid[static_cast<size_t>(z * size_ + b)])
          return false;
      }
      if (grid[static_cast<size_t>(a * size_ + a)] != grid[static_cast<size_t>(b * size_ + b)])
        return false;
      if (grid[static_cast<size_t>(a * size_ + b)] != grid[static_cast<size_t>(b * size_ + a)])
        return false;
    }
    return true;
  }
  char& edge(int ri, int x, int y) {
    return edges_[static_cast<size_t>(ri)][static_cast<size_t>(x * size_ + y)];
  }

  void set_bit(int ci, int x) {
    bit(ci, x) = 1;
    trail_.push_back({TrailOp::Kind::Bit, ci, x});
  }
  void set_edge(int ri, int x, int y) {
    edge(ri, x, y) = 1;
    trail_.push_back({TrailOp::Kind::Edge, ri, x * size_ + y});
  }
  void set_ind(int ii, int x) {
    ind_[static_cast<size_t>(ii)] = x;
    trail_.push_back({TrailOp::Kind::Ind, ii, 0});
  }
  void set_feat(int fi, int x, int value) {
    fvals_[static_cast<size_t>(fi)][static_cast<size_t>(x)] = value;
    trail_.push_back({TrailOp::Kind::Feat, fi, x});
  }

  void undo_to(size_t mark) {
    while (trail_.size() > mark) {
      auto op = trail_.back();
      trail_.pop_back();
      switch (op.kind) {
        case TrailOp::Kind::Bit: bits_[static_cast<size_t>(op.owner)][static_cast<size_t>(op.slot)] = 0; break;
        case TrailOp::Kind::Edge: edges_[static_cast<size_t>(op.owner)][static_cast<size_t>(op.slot)] = 0; break;
        case TrailOp::Kind::Ind: ind_[static_cast<size_t>(op.owner)] = -1; break;
        case TrailOp::Kind::Feat:
          fvals_[static_cast<size_t>(op.owner)][static_cast<size_t>(op.slot)] = -1;
          break;
      }
    }
  }

  bool eval(const ConceptRef& c, int x) {
    switch (c->kind()) {
      case Concept::Kind::Top: return true;
      case Concept::Kind::Bottom: return false;
      case Concept::Kind::Atomic: return bit(concepts_.of(c->name()), x) != 0;
      case Concept::Kind::Nominal: return ind_[static_cast<size_t>(inds_.of(c->name()))] == x;
      case Concept::Kind::Conj: return eval(c->lhs(), x) && eval(c->rhs(), x);
      case Concept::Kind::Exists: {
        int ri = roles_.of(c->name());
        for (int y = 0; y < size_; ++y)
          if (edge(ri, x, y) && eval(c->filler(), y)) return true;
        return false;
      }
      case Concept::Kind::Pred: {
        const auto& atom = c->atom();
        std::vector<Value> vs;
        for (Name f : atom.features) {
          int fi = feats_.of(f);
          int cell = fvals_[static_cast<size_t>(fi)][static_cast<size_t>(x)];
          if (cell < 0) return false;
          const Value& v = feat_values_[static_cast<size_t>(fi)][static_cast<size_t>(cell)];
          if (domain_of(v) != domain_of(atom.pred)) return false;
          vs.push_back(v);
        }
        return domain(domain_of(atom.pred)).apply(atom.pred, vs);
      }
    }
    return false;
  }

  // forced parts of a fired head: atoms and conjunctions are deterministic,
  // existentials and predicate applications wait for a branching step.
  // Returns false on a definite conflict.
  bool force_head(const ConceptRef& c, int x, bool& changed, bool& conflict) {
    switch (c->kind()) {
      case Concept::Kind::Top: return true;
      case Concept::Kind::Bottom: conflict = true; return false;
      case Concept::Kind::Nominal:
        if (ind_[static_cast<size_t>(inds_.of(c->name()))] != x) {
          conflict = true;
          return false;
        }
        return true;
      case Concept::Kind::Atomic: {
        if (!bit(concepts_.of(c->name()), x)) {
          set_bit(concepts_.of(c->name()), x);
          changed = true;
        }
        return true;
      }
      case Concept::Kind::Conj:
        return force_head(c->lhs(), x, changed, conflict) &&
               force_head(c->rhs(), x, changed, conflict);
      default: return true;  // Exists/Pred are branched on later
    }
  }

  // unit propagation to fixpoint; false on conflict (bottom head, nominal
  // mismatch, or the goal element entering the subsumer)
  bool propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      if (close_role_chains()) changed = true;
      for (const auto* gci : gcis_) {
        for (int x = 0; x < size_; ++x) {
          if (!eval(gci->lhs, x) || eval(gci->rhs, x)) continue;
          bool conflict = false;
          force_head(gci->rhs, x, changed, conflict);
          if (conflict) return false;
        }
      }
      if (eval(goal_d_, 0)) return false;
    }
    return true;
  }

  // one deterministic closure round over the role inclusions; true on change
  bool close_role_chains() {
    bool changed = false;
    for (const auto* ri : ris_) {
      std::vector<std::pair<int, int>> pairs;
      int r0 = roles_.of(ri->chain[0]);
      for (int x = 0; x < size_; ++x)
        for (int y = 0; y < size_; ++y)
          if (edge(r0, x, y)) pairs.emplace_back(x, y);
      for (size_t i = 1; i < ri->chain.size(); ++i) {
        int rn = roles_.of(ri->chain[i]);
        std::vector<std::pair<int, int>> step;
        for (auto [x, y] : pairs)
          for (int z = 0; z < size_; ++z)
            if (edge(rn, y, z)) step.emplace_back(x, z);
        pairs = std::move(step);
      }
      int sup = roles_.of(ri->super);
      for (auto [x, z] : pairs)
        if (!edge(sup, x, z)) {
          set_edge(sup, x, z);
          changed = true;
        }
    }
    return changed;
  }

  struct Goal {
    ConceptRef c;
    int x;
  };

  // realizes every pending goal (LIFO), then resumes the solve loop; the
  // goal stack keeps a whole existential subtree under one witness choice
  bool satisfy_chain(std::vector<Goal> goals) {
    while (!goals.empty() && eval(goals.back().c, goals.back().x)) goals.pop_back();
    if (goals.empty()) return solve();
    if (eval(goal_d_, 0)) return false;  // the goal element fell into the subsumer

    Goal goal = goals.back();
    goals.pop_back();
    const ConceptRef& c = goal.c;
    int x = goal.x;
    switch (c->kind()) {
      case Concept::Kind::Top: return satisfy_chain(std::move(goals));
      case Concept::Kind::Bottom: return false;
      case Concept::Kind::Nominal: return false;  // the placement is fixed
      case Concept::Kind::Atomic: {
        size_t mark = trail_.size();
        set_bit(concepts_.of(c->name()), x);
        if (satisfy_chain(std::move(goals))) return true;
        undo_to(mark);
        return false;
      }
      case Concept::Kind::Conj:
        goals.push_back({c->rhs(), x});
        goals.push_back({c->lhs(), x});
        return satisfy_chain(std::move(goals));
      case Concept::Kind::Exists: {
        int ri = roles_.of(c->name());
        // witnesses already inside the filler first: they add no new goals;
        // candidates indistinguishable from an earlier one are skipped
        std::vector<int> order;
        for (int y = 0; y < size_; ++y)
          if (eval(c->filler(), y)) order.push_back(y);
        for (int y = 0; y < size_; ++y)
          if (!eval(c->filler(), y)) order.push_back(y);
        std::vector<int> kept;
        for (int y : order) {
          bool duplicate = false;
          for (int prior : kept)
            if (interchangeable(prior, y)) {
              duplicate = true;
              break;
            }
          if (!duplicate) kept.push_back(y);
        }
        for (int y : kept) {
          if (exceeded_) return false;
          size_t mark = trail_.size();
          if (!edge(ri, x, y)) set_edge(ri, x, y);
          auto rest = goals;
          rest.push_back({c->filler(), y});
          if (satisfy_chain(std::move(rest))) return true;
          undo_to(mark);
        }
        return false;
      }
      case Concept::Kind::Pred: {
        const auto& atom = c->atom();
        std::vector<int> open;
        for (size_t i = 0; i < atom.features.size(); ++i) {
          int fi = feats_.of(atom.features[i]);
          if (fvals_[static_cast<size_t>(fi)][static_cast<size_t>(x)] < 0)
            open.push_back(static_cast<int>(i));
        }
        return satisfy_pred(atom, x, open, 0, goals);
      }
    }
    return false;
  }

  // choose pool values for the open features of a predicate head
  bool satisfy_pred(const PredicateAtom& atom, int x, const std::vector<int>& open, size_t at,
                    const std::vector<Goal>& goals) {
    if (at == open.size()) {
      ConceptRef node = Concept::pred(atom);
      if (!eval(node, x)) return false;  // committed values falsify the atom
      return satisfy_chain(goals);
    }
    int fi = feats_.of(atom.features[static_cast<size_t>(open[at])]);
    const auto& pool = feat_values_[static_cast<size_t>(fi)];
    for (int v = 0; v < static_cast<int>(pool.size()); ++v) {
      if (exceeded_) return false;
      if (domain_of(pool[static_cast<size_t>(v)]) != domain_of(atom.pred)) continue;
      // one concrete domain per feature across all elements
      bool mixed = false;
      for (int e = 0; e < size_ && !mixed; ++e) {
        int cell = fvals_[static_cast<size_t>(fi)][static_cast<size_t>(e)];
        if (cell >= 0 && domain_of(feat_values_[static_cast<size_t>(fi)][static_cast<size_t>(cell)]) !=
                             domain_of(pool[static_cast<size_t>(v)]))
          mixed = true;
      }
      if (mixed) continue;
      size_t mark = trail_.size();
      set_feat(fi, x, v);
      if (satisfy_pred(atom, x, open, at + 1, goals)) return true;
      undo_to(mark);
    }
    return false;
  }

  bool solve() {
    if (++nodes_ > budget_) {
      exceeded_ = true;
      return false;
    }
    // place individuals before anything is evaluated; targets that are
    // interchangeable with an earlier one are skipped
    for (int ii = 0; ii < inds_.size(); ++ii) {
      if (ind_[static_cast<size_t>(ii)] >= 0) continue;
      std::vector<int> kept;
      for (int x = 0; x < size_; ++x) {
        bool duplicate = false;
        for (int prior : kept)
          if (interchangeable(prior, x)) {
            duplicate = true;
            break;
          }
        if (!duplicate) kept.push_back(x);
      }
      for (int x : kept) {
        if (exceeded_) return false;
        size_t mark = trail_.size();
        set_ind(ii, x);
        if (solve()) return true;
        undo_to(mark);
      }
      return false;
    }

    size_t mark = trail_.size();
    if (!propagate()) {
      undo_to(mark);
      return false;
    }
    if (!eval(goal_c_, 0)) {
      if (satisfy_chain({{goal_c_, 0}})) return true;
      undo_to(mark);
      return false;
    }
    for (int x = 0; x < size_; ++x) {
      for (const auto* gci : gcis_) {
        if (!eval(gci->lhs, x) || eval(gci->rhs, x)) continue;
        if (satisfy_chain({{gci->rhs, x}})) return true;
        undo_to(mark);
        return false;
      }
    }
    bool ok = verify_candidate();
    if (!ok) undo_to(mark);
    return ok;
  }

  bool verify_candidate() {
    auto interp = extract();
    if (!is_model(interp, kb_)) return false;
    auto in_c = interpret(goal_c_, interp);
    auto in_d = interpret(goal_d_, interp);
    for (size_t x = 0; x < in_c.size(); ++x)
      if (in_c[x] && !in_d[x]) return true;
    return false;
  }

  FiniteInterpretation extract() {
    FiniteInterpretation interp;
    interp.size = size_;
    for (int ci = 0; ci < concepts_.size(); ++ci) {
      std::vector<char> row(static_cast<size_t>(size_), 0);
      for (int x = 0; x < size_; ++x) row[static_cast<size_t>(x)] = bit(ci, x);
      interp.concept_map[concepts_.names[static_cast<size_t>(ci)]] = std::move(row);
    }
    for (int ri = 0; ri < roles_.size(); ++ri) {
      auto& out = interp.role_map[roles_.names[static_cast<size_t>(ri)]];
      for (int x = 0; x < size_; ++x)
        for (int y = 0; y < size_; ++y)
          if (edge(ri, x, y)) out.insert({x, y});
    }
    for (int ii = 0; ii < inds_.size(); ++ii) {
      int e = ind_[static_cast<size_t>(ii)];
      interp.individual_map[inds_.names[static_cast<size_t>(ii)]] = e < 0 ? 0 : e;
    }
    for (int fi = 0; fi < feats_.size(); ++fi) {
      auto& vals = interp.feature_map[feats_.names[static_cast<size_t>(fi)]];
      for (int x = 0; x < size_; ++x) {
        int cell = fvals_[static_cast<size_t>(fi)][static_cast<size_t>(x)];
        if (cell >= 0) vals.emplace(x, feat_values_[static_cast<size_t>(fi)][static_cast<size_t>(cell)]);
      }
    }
    // names the kb declares but no constraint or query mentions
    for (Name n : kb_.concepts)
      interp.concept_map.emplace(n, std::vector<char>(static_cast<size_t>(size_), 0));
    for (Name n : kb_.roles) interp.role_map.emplace(n, std::set<std::pair<int, int>>{});
    for (Name n : kb_.individuals) interp.individual_map.emplace(n, 0);
    for (Name n : kb_.features) interp.feature_map.emplace(n, std::map<int, Value>{});
    return interp;
  }

  const KnowledgeBase& kb_;
  ConceptRef goal_c_, goal_d_;
  uint64_t budget_;
  uint64_t nodes_ = 0;
  bool exceeded_ = false;

  NameIndex concepts_, roles_, inds_, feats_;
  std::vector<const Gci*> gcis_;
  std::vector<const RoleInclusion*> ris_;
  std::vector<std::vector<Value>> feat_values_;

  int size_ = 1;
  std::vector<std::vector<char>> bits_, edges_;
  std::vector<std::vector<int>> fvals_;
  std::vector<int> ind_;
  std::vector<TrailOp> trail_;
};

}  // namespace

SearchOutcome find_countermodel(const KnowledgeBase& kb, const ConceptRef& c, const ConceptRef& d,
                                int max_size, const CandidatePools& pools, uint64_t budget) {
  if (auto violations = validate(kb); !violations.empty())
    throw ElppError("find_countermodel: kb failed validation: " + violations.front().detail);
  Searcher searcher(kb, c, d, pools, budget);
  auto outcome = searcher.run(max_size);
  if (outcome.status == SearchOutcome::Status::Found) {
    // spot re-verification happens inside the search; keep the public
    // promise anyway
    if (!outcome.model || !is_model(*outcome.model, kb))
      throw ElppError("find_countermodel: candidate failed re-verification");
  }
  return outcome;
}

}  // namespace elpp
