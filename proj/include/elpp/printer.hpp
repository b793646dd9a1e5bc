// Rendering back into the surface syntax; parse(print(kb)) round-trips.
#pragma once

#include <string>

#include "elpp/core.hpp"

namespace elpp {

std::string print_concept(const ConceptRef& c);
std::string print_constraint(const Constraint& constraint);
std::string print_kb(const KnowledgeBase& kb);

}  // namespace elpp
