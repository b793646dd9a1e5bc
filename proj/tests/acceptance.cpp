// Acceptance suite: end-to-end checks with pinned tolerances and budgets.
// Prints one PASS/FAIL line per criterion; exits with the failure count.

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>

#include "cdomain_oracles.hpp"
#include "elpp/cdomains.hpp"
#include "elpp/differential.hpp"
#include "elpp/generator.hpp"
#include "elpp/oracle.hpp"
#include "elpp/parser.hpp"
#include "elpp/pipeline.hpp"
#include "elpp/printer.hpp"
#include "elpp/reasoner.hpp"

using namespace elpp;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

PredicateAtom make_q(RationalPredicate::Kind k, const Rational& q, std::vector<Name> fs) {
  return {RationalPredicate{k, q}, std::move(fs)};
}

PredicateAtom make_s(StringPredicate::Kind k, const std::string& w, std::vector<Name> fs) {
  return {StringPredicate{k, w}, std::move(fs)};
}

// --- criterion 1: exact reproduction of the worked classification ---------

Outcome golden_figure() {
  Outcome out;
  auto started = Clock::now();
  auto parsed = parse_ontology(
      "concept X\nconcept A\nconcept B\nrole r1\nindividual b\nindividual c\n"
      "axiom X <= {b}\naxiom X <= {c}\naxiom A <= (exists r1 . X)\n");
  auto& kb = std::get<SourceOntology>(parsed).kb;
  auto st = classify(kb);

  auto x = Concept::atomic(intern(NameKind::Concept, "X"));
  auto a = Concept::atomic(intern(NameKind::Concept, "A"));
  auto nb = Concept::nominal(intern(NameKind::Individual, "b"));
  auto nc = Concept::nominal(intern(NameKind::Individual, "c"));

  auto s_of = [&](const ConceptRef& c) {
    std::set<int> values;
    for (int v : st.s_values(st.bc_index(c))) values.insert(v);
    return values;
  };
  auto v = [&](const ConceptRef& c) { return st.value_of(c); };
  int vtop = st.value_of(Concept::top());

  bool sets_ok = s_of(x) == std::set<int>{vtop, v(x), v(nb), v(nc)} &&
                 s_of(a) == std::set<int>{vtop, v(a)} &&
                 s_of(nb) == std::set<int>{vtop, v(nb)} &&
                 s_of(nc) == std::set<int>{vtop, v(nc)} &&
                 s_of(Concept::top()) == std::set<int>{vtop};
  auto edges = st.r_edges(st.role_index(intern(NameKind::Role, "r1")));
  bool edges_ok = edges == std::vector<std::pair<int, int>>{{st.bc_index(a), st.bc_index(x)}};

  double secs = seconds_since(started);
  out.pass = sets_ok && edges_ok && is_saturated(st) && secs < 1.0;
  if (!sets_ok) out.detail << "  S-sets differ from the published classification\n";
  if (!edges_ok) out.detail << "  R(r1) differs from {(A, X)}\n";
  if (secs >= 1.0) out.detail << "  took " << secs << "s (budget 1s)\n";
  return out;
}

// --- criterion 2 + 6: differential correctness and trace replay -----------

DiffReport diff_report;

Outcome differential() {
  Outcome out;
  auto started = Clock::now();
  DiffParams params;
  params.gen = GenParams::differential();  // <=5 concepts, <=2 roles, <=2 individuals,
                                           // <=8 GCIs, <=2 role inclusions, depth <=2
  params.kb_count = 1000;
  params.queries_per_kb = 2;
  params.seed = 20240817;
  diff_report = run_differential(params);
  double secs = seconds_since(started);

  out.pass = diff_report.disagreements.empty() && diff_report.budget_exceeded == 0 &&
             diff_report.kbs == 1000 && secs < 600.0;
  out.detail << "  " << diff_report.kbs << " kbs, " << diff_report.queries << " queries, "
             << diff_report.holds_true << " true / " << diff_report.holds_false << " false, "
             << diff_report.disagreements.size() << " disagreements, "
             << diff_report.budget_exceeded << " inconclusive, " << secs << "s\n";
  for (const auto& d : diff_report.disagreements)
    out.detail << "  disagreement: " << d.query_c << " <= " << d.query_d << " (" << d.detail
               << ")\n"
               << d.kb_text;
  return out;
}

Outcome trace_replay() {
  Outcome out;
  out.pass = diff_report.trace_entries > 0 &&
             diff_report.trace_replayed == diff_report.trace_entries;
  out.detail << "  " << diff_report.trace_replayed << "/" << diff_report.trace_entries
             << " entries replayed\n";
  return out;
}

// --- criterion 3: concrete-domain decider validation ----------------------

Outcome decider_validation() {
  Outcome out;
  auto started = Clock::now();
  std::mt19937_64 rng(5150);
  const std::vector<Name> features{
      intern(NameKind::Feature, "f0"), intern(NameKind::Feature, "f1"),
      intern(NameKind::Feature, "f2"), intern(NameKind::Feature, "f3")};
  const std::vector<Rational> constants{0, 1, 2, 3, Rational(1, 2), Rational(-1)};
  const std::vector<std::string> words{"", "a", "b", "ab", "ba", "aa"};

  int violations = 0, q_sat = 0, q_unsat = 0, s_sat = 0, s_unsat = 0;
  for (int iter = 0; iter < 500; ++iter) {
    // rational conjunction
    std::vector<PredicateAtom> conj;
    int atoms = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < atoms; ++i) {
      Name f1 = features[rng() % features.size()];
      Name f2 = features[rng() % features.size()];
      const Rational& q = constants[rng() % constants.size()];
      switch (rng() % 5) {
        case 0: conj.push_back(make_q(RationalPredicate::Kind::Top, 0, {f1})); break;
        case 1: conj.push_back(make_q(RationalPredicate::Kind::EqConst, q, {f1})); break;
        case 2: conj.push_back(make_q(RationalPredicate::Kind::GtConst, q, {f1})); break;
        case 3: conj.push_back(make_q(RationalPredicate::Kind::PlusConst, q, {f1, f2})); break;
        default: conj.push_back(make_q(RationalPredicate::Kind::Same, 0, {f1, f2})); break;
      }
    }
    auto r = rational_domain().satisfiable(conj);
    if (r.sat) {
      ++q_sat;
      for (const auto& atom : conj)
        if (!holds_under(r.witness, atom)) ++violations;
    } else {
      ++q_unsat;
      if (testing::rational_grid_search(conj, nullptr, 10000, rng()).has_value()) ++violations;
    }
  }
  for (int iter = 0; iter < 500; ++iter) {
    // string conjunction
    std::vector<PredicateAtom> conj;
    int atoms = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < atoms; ++i) {
      Name f1 = features[rng() % features.size()];
      Name f2 = features[rng() % features.size()];
      const std::string& w = words[rng() % words.size()];
      switch (rng() % 4) {
        case 0: conj.push_back(make_s(StringPredicate::Kind::Top, "", {f1})); break;
        case 1: conj.push_back(make_s(StringPredicate::Kind::EqWord, w, {f1})); break;
        case 2: conj.push_back(make_s(StringPredicate::Kind::ConcatWord, w, {f1, f2})); break;
        default: conj.push_back(make_s(StringPredicate::Kind::Same, "", {f1, f2})); break;
      }
    }
    auto r = string_domain().satisfiable(conj);
    if (r.sat) {
      ++s_sat;
      for (const auto& atom : conj)
        if (!holds_under(r.witness, atom)) ++violations;
    } else {
      ++s_unsat;
      if (testing::string_bounded_search(conj).has_value()) ++violations;
    }
  }
  double secs = seconds_since(started);
  out.pass = violations == 0 && secs < 300.0;
  out.detail << "  Q: " << q_sat << " sat / " << q_unsat << " unsat; S: " << s_sat << " sat / "
             << s_unsat << " unsat; " << violations << " violations, " << secs << "s\n";
  return out;
}

// --- criterion 4: normalization suite --------------------------------------

Outcome normalization_suite() {
  Outcome out;
  std::mt19937_64 rng(8086);
  GenParams params;
  params.max_depth = 3;
  params.max_chain = 4;
  params.max_features = 1;
  int shape_failures = 0, descent_failures = 0;
  for (int iter = 0; iter < 1000; ++iter) {
    auto kb = random_kb(rng, params);
    auto normal = normalize(kb, [&](NormalizationRule, const KnowledgeBase& before,
                                    const KnowledgeBase& after) {
      if (nf_measure(after) >= nf_measure(before)) ++descent_failures;
    });
    if (!is_normal_form(normal)) ++shape_failures;
  }

  // the double conjunction split emits exactly three constraints
  KnowledgeBase golden;
  Name p1 = intern(NameKind::Concept, "P1"), p2 = intern(NameKind::Concept, "P2");
  Name p3 = intern(NameKind::Concept, "P3"), p4 = intern(NameKind::Concept, "P4");
  Name e = intern(NameKind::Concept, "E");
  for (Name n : {p1, p2, p3, p4, e}) golden.declare(n);
  golden.constraints.push_back(
      Gci{Concept::conj(Concept::conj(Concept::atomic(p1), Concept::atomic(p2)),
                        Concept::conj(Concept::atomic(p3), Concept::atomic(p4))),
          Concept::atomic(e)});
  auto normal = normalize(golden);
  bool golden_ok = normal.constraints.size() == 3;
  if (golden_ok) {
    const auto& first = std::get<Gci>(normal.constraints[0]);
    const auto& second = std::get<Gci>(normal.constraints[1]);
    const auto& third = std::get<Gci>(normal.constraints[2]);
    golden_ok = first.lhs->kind() == Concept::Kind::Conj &&
                first.lhs->lhs()->kind() == Concept::Kind::Atomic &&
                first.lhs->rhs()->kind() == Concept::Kind::Atomic &&
                equal(first.rhs, Concept::atomic(e)) &&
                equal(second.lhs, Concept::conj(Concept::atomic(p3), Concept::atomic(p4))) &&
                equal(second.rhs, first.lhs->rhs()) &&
                equal(third.lhs, Concept::conj(Concept::atomic(p1), Concept::atomic(p2))) &&
                equal(third.rhs, first.lhs->lhs());
  }

  out.pass = shape_failures == 0 && descent_failures == 0 && golden_ok;
  out.detail << "  1000 kbs: " << shape_failures << " shape failures, " << descent_failures
             << " non-descending rewrites, double-split golden "
             << (golden_ok ? "ok" : "MISMATCH") << "\n";
  return out;
}

// --- criterion 5: extension preserves subsumption --------------------------

Outcome extension_equivalence() {
  Outcome out;
  std::mt19937_64 rng(64738);
  GenParams params;
  params.max_concepts = 3;
  params.max_roles = 1;
  params.max_individuals = 1;
  params.max_gcis = 4;
  int disagreements = 0, compared = 0, inconclusive = 0;
  for (int iter = 0; iter < 200; ++iter) {
    auto kb = random_kb(rng, params);
    Name a = random_concept_name(rng, kb);
    auto ext = a_extend(kb, a);
    for (Name b : kb.concepts) {
      ++compared;
      auto before = find_countermodel(kb, Concept::atomic(a), Concept::atomic(b),
                                      basic_concepts(kb).size() + 1, candidate_values(kb));
      auto after = find_countermodel(ext.kb, Concept::atomic(a), Concept::atomic(b),
                                     basic_concepts(ext.kb).size() + 1, candidate_values(ext.kb));
      if (before.status == SearchOutcome::Status::BudgetExceeded ||
          after.status == SearchOutcome::Status::BudgetExceeded) {
        ++inconclusive;
        continue;
      }
      if ((before.status == SearchOutcome::Status::None) !=
          (after.status == SearchOutcome::Status::None))
        ++disagreements;
    }
  }
  out.pass = disagreements == 0 && inconclusive == 0;
  out.detail << "  " << compared << " name pairs over 200 kbs: " << disagreements
             << " disagreements, " << inconclusive << " inconclusive\n";
  return out;
}

// --- criterion 7: single-query latency on the benchmark shape --------------

Outcome performance_sanity() {
  Outcome out;
  std::mt19937_64 rng(1999);
  auto kb = random_kb(rng, GenParams::benchmark());  // 20 concepts, 10 roles, 20 individuals
  Name x = random_concept_name(rng, kb);
  Name y = random_concept_name(rng, kb);
  auto started = Clock::now();
  auto verdict = check_subsumption(kb, Concept::atomic(x), Concept::atomic(y));
  double secs = seconds_since(started);
  out.pass = secs < 5.0;
  out.detail << "  " << kb.constraints.size() << " axioms, query " << label(x) << " <= "
             << label(y) << " answered " << (verdict.holds ? "true" : "false") << " in " << secs
             << "s\n";
  return out;
}

// --- criterion 8: parser robustness and round-trip -------------------------

Outcome parser_robustness() {
  Outcome out;
  std::mt19937_64 rng(0xfeedface);
  const std::string alphabet =
      "concept role individual feature axiom top bot and exists o Q S <= (){}[].,\"\\/#-0123456789"
      "\n\n  XYZPabrf'";
  int structured = 0;
  for (int iter = 0; iter < 100000; ++iter) {
    std::string input;
    size_t len = rng() % 200;
    for (size_t i = 0; i < len; ++i) {
      if (rng() % 16 == 0)
        input += static_cast<char>(rng() % 256);
      else
        input += alphabet[rng() % alphabet.size()];
    }
    auto parsed = parse_ontology(input);
    if (std::holds_alternative<std::vector<ParseError>>(parsed) ||
        validate(std::get<SourceOntology>(parsed).kb).empty())
      ++structured;
  }

  GenParams params;
  params.max_features = 2;
  params.max_depth = 3;
  params.max_chain = 4;
  int roundtrip_failures = 0;
  for (int iter = 0; iter < 1000; ++iter) {
    auto kb = random_kb(rng, params);
    auto parsed = parse_ontology(print_kb(kb));
    const auto* onto = std::get_if<SourceOntology>(&parsed);
    if (!onto || onto->kb.constraints.size() != kb.constraints.size()) {
      ++roundtrip_failures;
      continue;
    }
    for (size_t i = 0; i < kb.constraints.size(); ++i)
      if (!equal(onto->kb.constraints[i], kb.constraints[i])) {
        ++roundtrip_failures;
        break;
      }
    if (onto->kb.concepts != kb.concepts || onto->kb.roles != kb.roles ||
        onto->kb.individuals != kb.individuals || onto->kb.features != kb.features)
      ++roundtrip_failures;
  }

  out.pass = structured == 100000 && roundtrip_failures == 0;
  out.detail << "  " << structured << "/100000 fuzz inputs handled, " << roundtrip_failures
             << " round-trip failures over 1000 kbs\n";
  return out;
}

}  // namespace

int main() {
  struct Row {
    int number;
    const char* name;
    Outcome (*fn)();
  };
  const Row rows[] = {
      {1, "golden figure classification", golden_figure},
      {2, "differential correctness vs bounded model search", differential},
      {3, "concrete-domain decider validation", decider_validation},
      {4, "normalization suite", normalization_suite},
      {5, "extension equivalence", extension_equivalence},
      {6, "trace replay", trace_replay},
      {7, "performance sanity", performance_sanity},
      {8, "parser robustness", parser_robustness},
  };

  int failures = 0;
  for (const auto& row : rows) {
    auto started = Clock::now();
    Outcome outcome = row.fn();
    double secs = seconds_since(started);
    std::cout << "criterion " << row.number << ": " << row.name << " ... "
              << (outcome.pass ? "PASS" : "FAIL") << " (" << secs << "s)\n"
              << outcome.detail.str();
    if (!outcome.pass) ++failures;
  }
  std::cout << (failures == 0 ? "all criteria passed" : "FAILURES PRESENT") << "\n";
  return failures;
}
