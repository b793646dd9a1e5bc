// Concrete-domain predicate names. Predicate names carry their built-in
// constants (e.g. "greater than 3/2"), so no string munging is needed when
// the deciders take them apart.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "elpp/names.hpp"

namespace elpp {

using Rational = boost::multiprecision::cpp_rational;

enum class DomainId : uint8_t { Rational, Text };

std::string_view domain_word(DomainId d);  // "Q" / "S"

struct RationalPredicate {
  enum class Kind : uint8_t {
    Top,        // arity 1, always true
    EqConst,    // arity 1, v = q
    GtConst,    // arity 1, v > q
    PlusConst,  // arity 2, v1 + q = v2
    Same,       // arity 2, v1 = v2
  };
  Kind kind = Kind::Top;
  Rational q;  // meaningful for EqConst/GtConst/PlusConst

  friend bool operator==(const RationalPredicate&, const RationalPredicate&) = default;
};

struct StringPredicate {
  enum class Kind : uint8_t {
    Top,         // arity 1, always true
    EqWord,      // arity 1, v = w
    ConcatWord,  // arity 2, v2 = v1 . w
    Same,        // arity 2, v1 = v2
  };
  Kind kind = Kind::Top;
  std::string w;  // meaningful for EqWord/ConcatWord

  friend bool operator==(const StringPredicate&, const StringPredicate&) = default;
};

// The variant alternative fixes the owning domain, so predicate names of
// distinct domains are disjoint by construction.
using Predicate = std::variant<RationalPredicate, StringPredicate>;

DomainId domain_of(const Predicate& p);
int arity_of(const Predicate& p);
bool operator<(const Predicate& a, const Predicate& b);  // total order
std::string predicate_word(const Predicate& p);          // stable display form

// A concrete value; which alternative is legal depends on the domain.
using Value = std::variant<Rational, std::string>;

DomainId domain_of(const Value& v);

// One predicate application to an ordered list of feature names.
struct PredicateAtom {
  Predicate pred;
  std::vector<Name> features;

  friend bool operator==(const PredicateAtom&, const PredicateAtom&) = default;
};

bool operator<(const PredicateAtom& a, const PredicateAtom& b);

}  // namespace elpp
