// Hand-written recursive-descent parser for the ontology text format.
//
//   # comment
//   concept X [Y ...]        role r ...      individual b ...    feature f ...
//   axiom <concept> <= <concept>
//   axiom r [o s ...] <= t
//
// Concepts: top | bot | Name | {a} | (C and D and ...) | (exists r . C)
//         | Q.top(f) | Q.eq[q](f) | Q.gt[q](f) | Q.plus[q](f,g) | Q.same(f,g)
//         | S.top(f) | S.eq["w"](f) | S.concat["w"](f,g) | S.same(f,g)
// Rationals are int or int/posint; words use double quotes with backslash
// escapes. Declarations are mandatory before use.
#pragma once

#include <string_view>
#include <variant>

#include "elpp/core.hpp"

namespace elpp {

struct SourceSpan {
  int line = 1, column = 1;  // 1-based
};

struct ParseError {
  SourceSpan span;
  std::string message;  // includes the expected-token set where helpful
};

struct SourceOntology {
  KnowledgeBase kb;
  std::vector<SourceSpan> constraint_spans;  // one per constraint
};

using ParseResult = std::variant<SourceOntology, std::vector<ParseError>>;

ParseResult parse_ontology(std::string_view text);

// One concept expression against an existing kb's inventories.
std::variant<ConceptRef, ParseError> parse_concept(std::string_view text,
                                                   const KnowledgeBase& kb);

}  // namespace elpp
