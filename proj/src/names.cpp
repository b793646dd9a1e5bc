#include "elpp/names.hpp"

#include <map>
#include <mutex>
#include <vector>

namespace elpp {

namespace {

struct Interner {
  std::mutex mu;
  // one table per kind
  std::vector<std::string> labels[4];
  std::map<std::string, uint32_t, std::less<>> index[4];
};

Interner& interner() {
  static Interner it;
  return it;
}

}  // namespace

std::string_view kind_word(NameKind k) {
  switch (k) {
    case NameKind::Concept: return "concept";
    case NameKind::Role: return "role";
    case NameKind::Individual: return "individual";
    case NameKind::Feature: return "feature";
  }
  return "?";
}

Name intern(NameKind kind, std::string_view lbl) {
  auto& it = interner();
  std::lock_guard<std::mutex> lock(it.mu);
  auto k = static_cast<size_t>(kind);
  auto found = it.index[k].find(lbl);
  if (found != it.index[k].end()) return Name{kind, found->second};
  auto id = static_cast<uint32_t>(it.labels[k].size());
  it.labels[k].emplace_back(lbl);
  it.index[k].emplace(std::string(lbl), id);
  return Name{kind, id};
}

std::optional<Name> lookup(NameKind kind, std::string_view lbl) {
  auto& it = interner();
  std::lock_guard<std::mutex> lock(it.mu);
  auto k = static_cast<size_t>(kind);
  auto found = it.index[k].find(lbl);
  if (found == it.index[k].end()) return std::nullopt;
  return Name{kind, found->second};
}

const std::string& label(Name n) {
  auto& it = interner();
  std::lock_guard<std::mutex> lock(it.mu);
  return it.labels[static_cast<size_t>(n.kind)][n.id];
}

Name fresh_name(NameKind kind, std::span<const Name> used) {
  static constexpr const char* prefix[4] = {"_C", "_R", "_I", "_F"};
  for (uint64_t k = 0;; ++k) {
    Name candidate = intern(kind, std::string(prefix[static_cast<size_t>(kind)]) + std::to_string(k));
    bool taken = false;
    for (const Name& u : used) {
      if (u == candidate) {
        taken = true;
        break;
      }
    }
    if (!taken) return candidate;
  }
}

}  // namespace elpp
