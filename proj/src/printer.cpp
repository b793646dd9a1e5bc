#include "elpp/printer.hpp"

#include <algorithm>
#include <sstream>

namespace elpp {

namespace {

void quote_word(std::ostream& out, const std::string& w) {
  out << '"';
  for (char c : w) {
    switch (c) {
      case '"': out << "\\\""; break;
      case '\\': out << "\\\\"; break;
      case '\n': out << "\\n"; break;
      case '\t': out << "\\t"; break;
      case '\r': out << "\\r"; break;
      default: out << c;
    }
  }
  out << '"';
}

void print_pred(std::ostream& out, const PredicateAtom& atom) {
  if (const auto* q = std::get_if<RationalPredicate>(&atom.pred)) {
    switch (q->kind) {
      case RationalPredicate::Kind::Top: out << "Q.top"; break;
      case RationalPredicate::Kind::EqConst: out << "Q.eq[" << q->q << "]"; break;
      case RationalPredicate::Kind::GtConst: out << "Q.gt[" << q->q << "]"; break;
      case RationalPredicate::Kind::PlusConst: out << "Q.plus[" << q->q << "]"; break;
      case RationalPredicate::Kind::Same: out << "Q.same"; break;
    }
  } else {
    const auto& s = std::get<StringPredicate>(atom.pred);
    switch (s.kind) {
      case StringPredicate::Kind::Top: out << "S.top"; break;
      case StringPredicate::Kind::EqWord:
        out << "S.eq[";
        quote_word(out, s.w);
        out << "]";
        break;
      case StringPredicate::Kind::ConcatWord:
        out << "S.concat[";
        quote_word(out, s.w);
        out << "]";
        break;
      case StringPredicate::Kind::Same: out << "S.same"; break;
    }
  }
  out << "(";
  for (size_t i = 0; i < atom.features.size(); ++i) {
    if (i) out << ",";
    out << label(atom.features[i]);
  }
  out << ")";
}

void print_into(std::ostream& out, const ConceptRef& c) {
  switch (c->kind()) {
    case Concept::Kind::Top: out << "top"; break;
    case Concept::Kind::Bottom: out << "bot"; break;
    case Concept::Kind::Atomic: out << label(c->name()); break;
    case Concept::Kind::Nominal: out << "{" << label(c->name()) << "}"; break;
    case Concept::Kind::Conj:
      out << "(";
      print_into(out, c->lhs());
      out << " and ";
      print_into(out, c->rhs());
      out << ")";
      break;
    case Concept::Kind::Exists:
      out << "(exists " << label(c->name()) << " . ";
      print_into(out, c->filler());
      out << ")";
      break;
    case Concept::Kind::Pred: print_pred(out, c->atom()); break;
  }
}

}  // namespace

std::string print_concept(const ConceptRef& c) {
  std::ostringstream out;
  print_into(out, c);
  return out.str();
}

std::string print_constraint(const Constraint& constraint) {
  std::ostringstream out;
  if (const auto* gci = std::get_if<Gci>(&constraint)) {
    print_into(out, gci->lhs);
    out << " <= ";
    print_into(out, gci->rhs);
  } else {
    const auto& ri = std::get<RoleInclusion>(constraint);
    for (size_t i = 0; i < ri.chain.size(); ++i) {
      if (i) out << " o ";
      out << label(ri.chain[i]);
    }
    out << " <= " << label(ri.super);
  }
  return out.str();
}

std::string print_kb(const KnowledgeBase& kb) {
  std::ostringstream out;
  auto declare = [&](const char* keyword, const std::set<Name>& names) {
    std::vector<std::string> labels;
    for (Name n : names) labels.push_back(label(n));
    std::sort(labels.begin(), labels.end());
    for (const auto& l : labels) out << keyword << " " << l << "\n";
  };
  declare("concept", kb.concepts);
  declare("role", kb.roles);
  declare("individual", kb.individuals);
  declare("feature", kb.features);
  for (const auto& constraint : kb.constraints)
    out << "axiom " << print_constraint(constraint) << "\n";
  return out.str();
}

}  // namespace elpp
