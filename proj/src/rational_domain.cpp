// Rational-number domain. Satisfiability of atom conjunctions is decided by
// Gaussian elimination on the equalities followed by Fourier-Motzkin
// elimination on the strict inequalities, all in exact rational arithmetic.
// Implication is decided by splitting the negated goal into strict/equality
// disjuncts and refuting each one against the premises.

#include <algorithm>
#include <utility>

#include "elpp/cdomains.hpp"

namespace elpp {

namespace {

using RK = RationalPredicate::Kind;

// sum(coef[v] * x_v) REL rhs, REL is "=" or ">"
struct LinCon {
  std::map<Name, Rational> coef;
  Rational rhs = 0;
  bool strict = false;  // false: equality

  void add_term(Name v, const Rational& c) {
    auto [it, inserted] = coef.emplace(v, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) coef.erase(it);
    }
  }
};

// x_v = sum(coef * x_u) + constant, used for back-substitution
struct Subst {
  Name var;
  std::map<Name, Rational> coef;
  Rational constant = 0;
};

// pending bounds of a Fourier-Motzkin-eliminated variable:
// x_v > each lower expr, x_v < each upper expr (as affine expressions)
struct FmStep {
  Name var;
  std::vector<std::pair<std::map<Name, Rational>, Rational>> lowers, uppers;
};

Rational eval_affine(const std::map<Name, Rational>& coef, const Rational& constant,
                     const std::map<Name, Rational>& values) {
  Rational acc = constant;
  for (const auto& [v, c] : coef) acc += c * values.at(v);
  return acc;
}

// Exact feasibility of a conjunction of linear constraints; on success the
// returned map assigns every variable occurring in the system.
std::optional<std::map<Name, Rational>> solve(std::vector<LinCon> cons) {
  std::set<Name> vars;
  for (const auto& c : cons)
    for (const auto& [v, _] : c.coef) vars.insert(v);

  std::vector<Subst> substs;
  std::vector<FmStep> fm_steps;

  // equalities first
  for (;;) {
    auto eq = std::find_if(cons.begin(), cons.end(),
                           [](const LinCon& c) { return !c.strict && !c.coef.empty(); });
    if (eq == cons.end()) break;
    auto [var, c0] = *eq->coef.begin();
    // var = (rhs - rest) / c0
    Subst s;
    s.var = var;
    s.constant = eq->rhs / c0;
    for (const auto& [v, c] : eq->coef)
      if (v != var) s.coef[v] = -c / c0;
    cons.erase(eq);
    for (auto& c : cons) {
      auto it = c.coef.find(var);
      if (it == c.coef.end()) continue;
      Rational factor = it->second;
      c.coef.erase(it);
      for (const auto& [v, sc] : s.coef) c.add_term(v, factor * sc);
      c.rhs -= factor * s.constant;
    }
    substs.push_back(std::move(s));
  }
  // variable-free equalities must read 0 = 0
  for (const auto& c : cons)
    if (!c.strict && c.rhs != 0) return std::nullopt;
  std::erase_if(cons, [](const LinCon& c) { return !c.strict; });

  // strict inequalities: eliminate one variable at a time
  for (;;) {
    Name var{};
    bool found = false;
    for (const auto& c : cons)
      if (!c.coef.empty()) {
        var = c.coef.begin()->first;
        found = true;
        break;
      }
    if (!found) break;

    FmStep step;
    step.var = var;
    std::vector<LinCon> rest;
    for (auto& c : cons) {
      auto it = c.coef.find(var);
      if (it == c.coef.end()) {
        rest.push_back(std::move(c));
        continue;
      }
      // a*var + rest' > rhs  ==>  var > (rhs - rest')/a  (a > 0, lower bound)
      //                           var < (rhs - rest')/a  (a < 0, upper bound)
      Rational a = it->second;
      c.coef.erase(it);
      std::map<Name, Rational> expr;
      for (const auto& [v, cc] : c.coef) expr[v] = -cc / a;
      Rational constant = c.rhs / a;
      if (a > 0)
        step.lowers.emplace_back(std::move(expr), constant);
      else
        step.uppers.emplace_back(std::move(expr), constant);
    }
    // each (lower, upper) pair demands upper - lower > 0
    for (const auto& [le, lc] : step.lowers)
      for (const auto& [ue, uc] : step.uppers) {
        LinCon c;
        c.strict = true;
        for (const auto& [v, cc] : ue) c.add_term(v, cc);
        for (const auto& [v, cc] : le) c.add_term(v, -cc);
        c.rhs = lc - uc;
        // constraint is sum > rhs with sum = upper - lower terms
        rest.push_back(std::move(c));
      }
    cons = std::move(rest);
    fm_steps.push_back(std::move(step));
  }
  // ground strict facts: 0 > rhs
  for (const auto& c : cons)
    if (c.rhs >= 0) return std::nullopt;

  // witness by back-substitution
  std::map<Name, Rational> values;
  for (Name v : vars) values[v] = 0;  // free variables
  for (auto it = fm_steps.rbegin(); it != fm_steps.rend(); ++it) {
    std::optional<Rational> lo, hi;
    for (const auto& [expr, constant] : it->lowers) {
      Rational b = eval_affine(expr, constant, values);
      if (!lo || b > *lo) lo = b;
    }
    for (const auto& [expr, constant] : it->uppers) {
      Rational b = eval_affine(expr, constant, values);
      if (!hi || b < *hi) hi = b;
    }
    Rational v;
    if (lo && hi)
      v = (*lo + *hi) / 2;
    else if (lo)
      v = *lo + 1;
    else if (hi)
      v = *hi - 1;
    else
      v = 0;
    values[it->var] = v;
  }
  for (auto it = substs.rbegin(); it != substs.rend(); ++it)
    values[it->var] = eval_affine(it->coef, it->constant, values);
  return values;
}

void atom_to_cons(const PredicateAtom& atom, std::vector<LinCon>& out) {
  const auto& p = std::get<RationalPredicate>(atom.pred);
  LinCon c;
  switch (p.kind) {
    case RK::Top: return;
    case RK::EqConst:
      c.add_term(atom.features[0], 1);
      c.rhs = p.q;
      break;
    case RK::GtConst:
      c.add_term(atom.features[0], 1);
      c.rhs = p.q;
      c.strict = true;
      break;
    case RK::PlusConst:  // v1 + q = v2
      c.add_term(atom.features[1], 1);
      c.add_term(atom.features[0], -1);
      c.rhs = p.q;
      break;
    case RK::Same:
      c.add_term(atom.features[0], 1);
      c.add_term(atom.features[1], -1);
      c.rhs = 0;
      break;
  }
  if (!c.coef.empty() || c.rhs != 0) out.push_back(std::move(c));
  // Same(f, f) and similar collapse to 0 = 0 and are dropped
}

// The disjuncts of the negated goal, each a single linear constraint.
std::vector<LinCon> negation_disjuncts(const PredicateAtom& goal) {
  const auto& p = std::get<RationalPredicate>(goal.pred);
  std::vector<LinCon> out;
  auto one_var = [&](const Rational& rhs, bool strict, int sign) {
    LinCon c;
    c.add_term(goal.features[0], sign);
    c.rhs = sign > 0 ? rhs : -rhs;
    c.strict = strict;
    return c;
  };
  auto two_var = [&](int sign, const Rational& rhs) {
    // sign=+1: f1 - f0 > rhs ; sign=-1: f0 - f1 > -rhs
    LinCon c;
    c.add_term(goal.features[1], sign);
    c.add_term(goal.features[0], -sign);
    c.rhs = sign > 0 ? rhs : -rhs;
    c.strict = true;
    return c;
  };
  switch (p.kind) {
    case RK::Top: break;  // negation is unsatisfiable: no disjuncts
    case RK::EqConst:
      out.push_back(one_var(p.q, true, 1));   // v > q
      out.push_back(one_var(p.q, true, -1));  // v < q
      break;
    case RK::GtConst:
      out.push_back(one_var(p.q, false, 1));  // v = q
      out.push_back(one_var(p.q, true, -1));  // v < q
      break;
    case RK::PlusConst:
      // not(v0 + q = v1): v1 - v0 > q or v0 - v1 > -q
      out.push_back(two_var(1, p.q));
      out.push_back(two_var(-1, p.q));
      break;
    case RK::Same:
      out.push_back(two_var(1, 0));
      out.push_back(two_var(-1, 0));
      break;
  }
  return out;
}

class RationalDomain final : public ConcreteDomain {
 public:
  DomainId id() const override { return DomainId::Rational; }

  bool owns(const Predicate& p) const override {
    return std::holds_alternative<RationalPredicate>(p);
  }

  bool apply(const Predicate& p, std::span<const Value> vs) const override {
    if (!owns(p)) throw ElppError("apply: not a Q predicate: " + predicate_word(p));
    if (vs.size() != static_cast<size_t>(arity_of(p)))
      throw ElppError("apply: arity breach on " + predicate_word(p));
    for (const auto& v : vs)
      if (!std::holds_alternative<Rational>(v))
        throw ElppError("apply: non-rational value passed to " + predicate_word(p));
    const auto& q = std::get<RationalPredicate>(p);
    auto val = [&](size_t i) -> const Rational& { return std::get<Rational>(vs[i]); };
    switch (q.kind) {
      case RK::Top: return true;
      case RK::EqConst: return val(0) == q.q;
      case RK::GtConst: return val(0) > q.q;
      case RK::PlusConst: return val(0) + q.q == val(1);
      case RK::Same: return val(0) == val(1);
    }
    return false;
  }

  SatResult satisfiable(std::span<const PredicateAtom> conj) const override {
    check_atoms(conj);
    std::vector<LinCon> cons;
    std::set<Name> features;
    for (const auto& atom : conj) {
      atom_to_cons(atom, cons);
      for (Name f : atom.features) features.insert(f);
    }
    auto solution = solve(std::move(cons));
    if (!solution) return {};
    SatResult r;
    r.sat = true;
    for (Name f : features) {
      auto it = solution->find(f);
      r.witness.values[f] = it == solution->end() ? Rational(0) : it->second;
    }
    return r;
  }

  bool implies(std::span<const PredicateAtom> conj, const PredicateAtom& goal) const override {
    return !refute_implication(conj, goal).has_value();
  }

  std::optional<Assignment> refute_implication(std::span<const PredicateAtom> conj,
                                               const PredicateAtom& goal) const override {
    check_atoms(conj);
    check_atoms({&goal, 1});

    // assignments are partial: a goal over a feature the premises never
    // mention fails under a witness that leaves the feature undefined
    std::set<Name> premise_features;
    for (const auto& atom : conj)
      for (Name f : atom.features) premise_features.insert(f);
    bool fresh_goal_feature = std::any_of(goal.features.begin(), goal.features.end(),
                                          [&](Name f) { return !premise_features.count(f); });
    if (fresh_goal_feature) {
      auto r = satisfiable(conj);
      if (!r.sat) return std::nullopt;  // vacuously implied
      return r.witness;                 // goal feature left undefined
    }

    std::vector<LinCon> base;
    std::set<Name> features;
    for (const auto& atom : conj) {
      atom_to_cons(atom, base);
      for (Name f : atom.features) features.insert(f);
    }
    for (Name f : goal.features) features.insert(f);
    for (const auto& disjunct : negation_disjuncts(goal)) {
      auto cons = base;
      cons.push_back(disjunct);
      if (auto solution = solve(std::move(cons))) {
        Assignment w;
        for (Name f : features) {
          auto it = solution->find(f);
          w.values[f] = it == solution->end() ? Rational(0) : it->second;
        }
        return w;
      }
    }
    return std::nullopt;
  }
};

}  // namespace

const ConcreteDomain& rational_domain() {
  static const RationalDomain instance;
  return instance;
}

}  // namespace elpp
