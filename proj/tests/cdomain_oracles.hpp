// Independent refutation oracles for the concrete-domain deciders. These
// stay deliberately dumb: the string side exhausts all bounded assignments,
// the rational side samples a constant grid. Nothing here touches the
// deciders' own machinery.
#pragma once

#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "elpp/cdomains.hpp"

namespace elpp::testing {

// All words over `alphabet` with length <= max_len.
inline std::vector<std::string> bounded_words(const std::set<char>& alphabet, size_t max_len) {
  std::vector<std::string> out{""};
  size_t level_begin = 0;
  for (size_t len = 1; len <= max_len; ++len) {
    size_t level_end = out.size();
    for (size_t i = level_begin; i < level_end; ++i)
      for (char c : alphabet) out.push_back(out[i] + c);
    level_begin = level_end;
  }
  return out;
}

// Exhaustive search for an assignment satisfying every atom of `conj` and,
// when `forbid` is given, violating it. Alphabet: letters of the constants
// plus one fresh letter; length bound: longest constant + 2.
inline std::optional<Assignment> string_bounded_search(std::span<const PredicateAtom> conj,
                                                       const PredicateAtom* forbid = nullptr) {
  std::set<char> alphabet;
  size_t longest = 0;
  std::set<Name> features;
  auto account = [&](const PredicateAtom& atom) {
    const auto& p = std::get<StringPredicate>(atom.pred);
    longest = std::max(longest, p.w.size());
    for (char c : p.w) alphabet.insert(c);
    for (Name f : atom.features) features.insert(f);
  };
  for (const auto& atom : conj) account(atom);
  if (forbid) account(*forbid);
  for (char c = 'a'; c <= 'z'; ++c)
    if (!alphabet.count(c)) {
      alphabet.insert(c);
      break;
    }
  auto words = bounded_words(alphabet, longest + 2);

  std::vector<Name> order(features.begin(), features.end());
  Assignment partial;
  auto ready = [&](const PredicateAtom& atom) {
    for (Name f : atom.features)
      if (!partial.find(f)) return false;
    return true;
  };
  auto dfs = [&](auto&& self, size_t i) -> bool {
    if (i == order.size()) return !forbid || !holds_under(partial, *forbid);
    for (const auto& w : words) {
      partial.values[order[i]] = w;
      bool viable = true;
      for (const auto& atom : conj)
        if (ready(atom) && !holds_under(partial, atom)) {
          viable = false;
          break;
        }
      if (viable && self(self, i + 1)) return true;
      partial.values.erase(order[i]);
    }
    return false;
  };
  if (dfs(dfs, 0)) return partial;
  return std::nullopt;
}

// Random sampling over the grid {constants} +- {0, 1/2, 1, 2}; finds an
// assignment satisfying conj (and violating forbid, when given) or gives up
// after `samples` draws.
inline std::optional<Assignment> rational_grid_search(std::span<const PredicateAtom> conj,
                                                      const PredicateAtom* forbid, int samples,
                                                      uint64_t seed) {
  std::set<Rational> grid_set{0};
  std::set<Name> features;
  auto account = [&](const PredicateAtom& atom) {
    const auto& p = std::get<RationalPredicate>(atom.pred);
    if (p.kind != RationalPredicate::Kind::Top && p.kind != RationalPredicate::Kind::Same)
      grid_set.insert(p.q);
    for (Name f : atom.features) features.insert(f);
  };
  for (const auto& atom : conj) account(atom);
  if (forbid) account(*forbid);
  std::vector<Rational> grid;
  for (const auto& c : grid_set)
    for (const Rational& off : {Rational(0), Rational(1, 2), Rational(1), Rational(2)}) {
      grid.push_back(c + off);
      if (off != 0) grid.push_back(c - off);
    }

  std::mt19937_64 rng(seed);
  std::vector<Name> order(features.begin(), features.end());
  for (int s = 0; s < samples; ++s) {
    Assignment w;
    for (Name f : order) w.values[f] = grid[rng() % grid.size()];
    bool ok = true;
    for (const auto& atom : conj)
      if (!holds_under(w, atom)) {
        ok = false;
        break;
      }
    if (ok && forbid && holds_under(w, *forbid)) ok = false;
    if (ok) return w;
  }
  return std::nullopt;
}

}  // namespace elpp::testing
