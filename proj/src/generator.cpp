#include "elpp/generator.hpp"

#include <string>
#include <vector>

namespace elpp {

namespace {

uint64_t pick(std::mt19937_64& rng, uint64_t n) { return n == 0 ? 0 : rng() % n; }

std::vector<Name> draw_names(std::mt19937_64& rng, NameKind kind, const char* stem, int max_count,
                             bool exact, int min_count = 1) {
  int count = exact ? max_count
                    : min_count + static_cast<int>(
                                      pick(rng, static_cast<uint64_t>(max_count - min_count + 1)));
  std::vector<Name> out;
  for (int i = 0; i < count; ++i) out.push_back(intern(kind, stem + std::to_string(i)));
  return out;
}

ConceptRef random_pred(std::mt19937_64& rng, const std::vector<Name>& qf,
                       const std::vector<Name>& sf) {
  static const std::vector<Rational> constants{0, 1, 2, Rational(1, 2), 3};
  static const std::vector<std::string> words{"", "a", "b", "ab", "ba"};
  bool use_q = !qf.empty() && (sf.empty() || pick(rng, 2) == 0);
  if (use_q) {
    Name f1 = qf[pick(rng, qf.size())];
    Name f2 = qf[pick(rng, qf.size())];
    const Rational& q = constants[pick(rng, constants.size())];
    switch (pick(rng, 5)) {
      case 0: return Concept::pred({RationalPredicate{RationalPredicate::Kind::Top, 0}, {f1}});
      case 1: return Concept::pred({RationalPredicate{RationalPredicate::Kind::EqConst, q}, {f1}});
      case 2: return Concept::pred({RationalPredicate{RationalPredicate::Kind::GtConst, q}, {f1}});
      case 3:
        return Concept::pred({RationalPredicate{RationalPredicate::Kind::PlusConst, q}, {f1, f2}});
      default:
        return Concept::pred({RationalPredicate{RationalPredicate::Kind::Same, 0}, {f1, f2}});
    }
  }
  Name f1 = sf[pick(rng, sf.size())];
  Name f2 = sf[pick(rng, sf.size())];
  const std::string& w = words[pick(rng, words.size())];
  switch (pick(rng, 4)) {
    case 0: return Concept::pred({StringPredicate{StringPredicate::Kind::Top, ""}, {f1}});
    case 1: return Concept::pred({StringPredicate{StringPredicate::Kind::EqWord, w}, {f1}});
    case 2:
      return Concept::pred({StringPredicate{StringPredicate::Kind::ConcatWord, w}, {f1, f2}});
    default: return Concept::pred({StringPredicate{StringPredicate::Kind::Same, ""}, {f1, f2}});
  }
}

ConceptRef description(std::mt19937_64& rng, const KnowledgeBase& kb, int depth) {
  std::vector<Name> concepts(kb.concepts.begin(), kb.concepts.end());
  std::vector<Name> roles(kb.roles.begin(), kb.roles.end());
  std::vector<Name> individuals(kb.individuals.begin(), kb.individuals.end());
  std::vector<Name> qf, sf;
  for (Name f : kb.features) (label(f)[0] == 'q' ? qf : sf).push_back(f);

  auto leaf = [&]() -> ConceptRef {
    for (;;) {
      switch (pick(rng, 8)) {
        case 0: return Concept::top();
        case 1:
          if (!individuals.empty()) return Concept::nominal(individuals[pick(rng, individuals.size())]);
          break;
        case 2:
          if (!qf.empty() || !sf.empty()) return random_pred(rng, qf, sf);
          break;
        default:
          if (!concepts.empty()) return Concept::atomic(concepts[pick(rng, concepts.size())]);
          break;
      }
    }
  };
  auto build = [&](auto&& self, int d) -> ConceptRef {
    if (d <= 0 || pick(rng, 3) == 0) return leaf();
    if (!roles.empty() && pick(rng, 2) == 0)
      return Concept::exists(roles[pick(rng, roles.size())], self(self, d - 1));
    return Concept::conj(self(self, d - 1), self(self, d - 1));
  };
  return build(build, depth);
}

}  // namespace

ConceptRef random_description(std::mt19937_64& rng, const KnowledgeBase& kb, int depth) {
  return description(rng, kb, depth);
}

Name random_concept_name(std::mt19937_64& rng, const KnowledgeBase& kb) {
  std::vector<Name> concepts(kb.concepts.begin(), kb.concepts.end());
  if (concepts.empty()) throw ElppError("random_concept_name: kb declares no concepts");
  return concepts[pick(rng, concepts.size())];
}

KnowledgeBase random_kb(std::mt19937_64& rng, const GenParams& params) {
  KnowledgeBase kb;
  bool exact = params.exact_counts;
  for (Name n : draw_names(rng, NameKind::Concept, "P", params.max_concepts, exact)) kb.declare(n);
  for (Name n : draw_names(rng, NameKind::Role, "r", params.max_roles, exact)) kb.declare(n);
  for (Name n : draw_names(rng, NameKind::Individual, "i", params.max_individuals, exact, 0))
    kb.declare(n);
  if (params.max_features > 0) {
    for (Name n : draw_names(rng, NameKind::Feature, "qf", params.max_features, exact)) kb.declare(n);
    for (Name n : draw_names(rng, NameKind::Feature, "sf", params.max_features, exact)) kb.declare(n);
  }

  int gcis = exact ? params.max_gcis
                   : 1 + static_cast<int>(pick(rng, static_cast<uint64_t>(params.max_gcis)));
  for (int i = 0; i < gcis; ++i) {
    ConceptRef lhs = description(rng, kb, params.max_depth);
    ConceptRef rhs = (params.allow_bottom_rhs && pick(rng, 10) == 0)
                         ? Concept::bottom()
                         : description(rng, kb, params.max_depth);
    kb.constraints.push_back(Gci{std::move(lhs), std::move(rhs)});
  }

  std::vector<Name> roles(kb.roles.begin(), kb.roles.end());
  int ris = exact ? params.max_role_incs
                  : static_cast<int>(pick(rng, static_cast<uint64_t>(params.max_role_incs) + 1));
  for (int i = 0; i < ris && !roles.empty(); ++i) {
    int len = 1 + static_cast<int>(pick(rng, static_cast<uint64_t>(params.max_chain)));
    std::vector<Name> chain;
    for (int k = 0; k < len; ++k) chain.push_back(roles[pick(rng, roles.size())]);
    kb.constraints.push_back(RoleInclusion{std::move(chain), roles[pick(rng, roles.size())]});
  }
  return kb;
}

}  // namespace elpp
