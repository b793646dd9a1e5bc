// Command dispatch for the elpp executable; factored out so tests can drive
// commands directly.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace elpp {

// Exit codes: 0 success (subsumes: query holds), 1 query answered false,
// 2 usage or parse error, 3 internal invariant breach (differential
// disagreement or exhausted search budget).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace elpp
