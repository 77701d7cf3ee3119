#include "bps/alphabet.hpp"

#include <cctype>

#include "bps/error.hpp"

namespace bps {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!valid_identifier(names_[i]))
      throw ModelError("invalid symbol name '" + names_[i] + "'");
    if (!index_.emplace(names_[i], i).second)
      throw ModelError("duplicate symbol name '" + names_[i] + "'");
  }
}

const std::string& Alphabet::name(std::size_t i) const {
  if (i >= names_.size())
    throw std::out_of_range("symbol index " + std::to_string(i) + " out of range");
  return names_[i];
}

std::optional<std::size_t> Alphabet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Alphabet::index_of(std::string_view name) const {
  auto i = find(name);
  if (!i) throw ModelError("unknown symbol '" + std::string(name) + "'");
  return *i;
}

SymbolSet Alphabet::set_of(const std::vector<std::string>& names) const {
  SymbolSet s(size());
  for (const auto& n : names) s.set(index_of(n));
  return s;
}

std::string Alphabet::format_set(const SymbolSet& s) const {
  if (s.universe() != size())
    throw std::invalid_argument("set universe does not match alphabet size");
  std::string out = "{";
  bool first = true;
  s.for_each([&](std::size_t i) {
    if (!first) out += ",";
    out += names_[i];
    first = false;
  });
  out += "}";
  return out;
}

bool Alphabet::valid_identifier(std::string_view name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

}  // namespace bps
