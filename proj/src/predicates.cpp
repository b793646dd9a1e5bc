#include "elpp/predicates.hpp"

#include <sstream>

namespace elpp {

std::string_view domain_word(DomainId d) {
  return d == DomainId::Rational ? "Q" : "S";
}

DomainId domain_of(const Predicate& p) {
  return std::holds_alternative<RationalPredicate>(p) ? DomainId::Rational : DomainId::Text;
}

DomainId domain_of(const Value& v) {
  return std::holds_alternative<Rational>(v) ? DomainId::Rational : DomainId::Text;
}

int arity_of(const Predicate& p) {
  if (const auto* q = std::get_if<RationalPredicate>(&p)) {
    switch (q->kind) {
      case RationalPredicate::Kind::Top:
      case RationalPredicate::Kind::EqConst:
      case RationalPredicate::Kind::GtConst: return 1;
      case RationalPredicate::Kind::PlusConst:
      case RationalPredicate::Kind::Same: return 2;
    }
  }
  const auto& s = std::get<StringPredicate>(p);
  switch (s.kind) {
    case StringPredicate::Kind::Top:
    case StringPredicate::Kind::EqWord: return 1;
    case StringPredicate::Kind::ConcatWord:
    case StringPredicate::Kind::Same: return 2;
  }
  return 1;
}

bool operator<(const Predicate& a, const Predicate& b) {
  if (a.index() != b.index()) return a.index() < b.index();
  if (const auto* qa = std::get_if<RationalPredicate>(&a)) {
    const auto& qb = std::get<RationalPredicate>(b);
    if (qa->kind != qb.kind) return qa->kind < qb.kind;
    return qa->q < qb.q;
  }
  const auto& sa = std::get<StringPredicate>(a);
  const auto& sb = std::get<StringPredicate>(b);
  if (sa.kind != sb.kind) return sa.kind < sb.kind;
  return sa.w < sb.w;
}

std::string predicate_word(const Predicate& p) {
  std::ostringstream out;
  if (const auto* q = std::get_if<RationalPredicate>(&p)) {
    switch (q->kind) {
      case RationalPredicate::Kind::Top: out << "Q.top"; break;
      case RationalPredicate::Kind::EqConst: out << "Q.eq[" << q->q << "]"; break;
      case RationalPredicate::Kind::GtConst: out << "Q.gt[" << q->q << "]"; break;
      case RationalPredicate::Kind::PlusConst: out << "Q.plus[" << q->q << "]"; break;
      case RationalPredicate::Kind::Same: out << "Q.same"; break;
    }
    return out.str();
  }
  const auto& s = std::get<StringPredicate>(p);
  auto quote = [&out](const std::string& w) {
    out << '"';
    for (char c : w) {
      if (c == '"' || c == '\\') out << '\\';
      out << c;
    }
    out << '"';
  };
  switch (s.kind) {
    case StringPredicate::Kind::Top: out << "S.top"; break;
    case StringPredicate::Kind::EqWord:
      out << "S.eq[";
      quote(s.w);
      out << "]";
      break;
    case StringPredicate::Kind::ConcatWord:
      out << "S.concat[";
      quote(s.w);
      out << "]";
      break;
    case StringPredicate::Kind::Same: out << "S.same"; break;
  }
  return out.str();
}

bool operator<(const PredicateAtom& a, const PredicateAtom& b) {
  if (a.pred < b.pred) return true;
  if (b.pred < a.pred) return false;
  return a.features < b.features;
}

}  // namespace elpp
