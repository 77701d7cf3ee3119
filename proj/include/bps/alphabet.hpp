#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bps/bitset.hpp"

namespace bps {

// Ordered list of distinct symbol names. Declaration order is the canonical
// order everywhere: bit indices, bitstrings, printed sets.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const;
  const std::vector<std::string>& names() const { return names_; }

  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;  // throws ModelError
  bool contains(std::string_view name) const { return find(name).has_value(); }

  SymbolSet empty_set() const { return SymbolSet(size()); }
  SymbolSet full_set() const { return SymbolSet::full(size()); }
  SymbolSet set_of(const std::vector<std::string>& names) const;

  // "{a,b}"; "{}" for the empty set.
  std::string format_set(const SymbolSet& s) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.names_ == b.names_;
  }
  friend bool operator!=(const Alphabet& a, const Alphabet& b) { return !(a == b); }

  // letter followed by letters, digits or underscores
  static bool valid_identifier(std::string_view name);

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace bps
