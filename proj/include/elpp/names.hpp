// Interned names for concepts, roles, individuals and features.
#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace elpp {

enum class NameKind : uint8_t { Concept, Role, Individual, Feature };

std::string_view kind_word(NameKind k);

// A name is an interned token: cheap equality and total order, with the
// label kept in a process-wide table. Names of different kinds never
// compare equal because the kind participates in the ordering.
struct Name {
  NameKind kind;
  uint32_t id;

  friend auto operator<=>(const Name&, const Name&) = default;
};

// Interning the same (kind, label) twice yields the same token.
Name intern(NameKind kind, std::string_view label);
std::optional<Name> lookup(NameKind kind, std::string_view label);
const std::string& label(Name n);

// Returns a name of the requested kind that does not occur in `used`.
// Deterministic: the result depends only on `used`.
Name fresh_name(NameKind kind, std::span<const Name> used);

}  // namespace elpp
