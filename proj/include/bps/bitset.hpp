#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "bps/error.hpp"

namespace bps {

// Set of indices over a fixed, finite universe. The universe size is set at
// construction; binary operations require both operands to share it. The tag
// keeps index spaces apart (symbols vs. rules) at no runtime cost.
template <class Tag>
class IndexSet {
 public:
  IndexSet() = default;

  explicit IndexSet(std::size_t universe)
      : size_(universe), words_((universe + 63) / 64, 0) {}

  static IndexSet of(std::size_t universe, std::initializer_list<std::size_t> bits) {
    IndexSet s(universe);
    for (std::size_t b : bits) s.set(b);
    return s;
  }

  static IndexSet full(std::size_t universe) {
    IndexSet s(universe);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    s.trim();
    return s;
  }

  // Low `universe` bits of `value`, bit i <-> member i.
  static IndexSet from_value(std::size_t universe, std::uint64_t value) {
    IndexSet s(universe);
    if (!s.words_.empty()) {
      s.words_[0] = value;
      for (std::size_t i = 1; i < s.words_.size(); ++i) s.words_[i] = 0;
      s.trim();
    }
    return s;
  }

  std::size_t universe() const { return size_; }

  bool test(std::size_t i) const {
    check_index(i);
    return (words_[i / 64] >> (i % 64)) & 1;
  }

  void set(std::size_t i) {
    check_index(i);
    words_[i / 64] |= std::uint64_t{1} << (i % 64);
  }

  void reset(std::size_t i) {
    check_index(i);
    words_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
  }

  void assign(std::size_t i, bool value) {
    if (value) set(i); else reset(i);
  }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += std::popcount(w);
    return n;
  }

  bool empty() const {
    for (auto w : words_) if (w) return false;
    return true;
  }

  bool subset_of(const IndexSet& other) const {
    check_same(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }

  bool intersects(const IndexSet& other) const {
    check_same(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & other.words_[i]) return true;
    return false;
  }

  IndexSet& operator|=(const IndexSet& other) {
    check_same(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
  }

  IndexSet& operator&=(const IndexSet& other) {
    check_same(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
  }

  IndexSet& operator-=(const IndexSet& other) {
    check_same(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
    return *this;
  }

  friend IndexSet operator|(IndexSet a, const IndexSet& b) { return a |= b; }
  friend IndexSet operator&(IndexSet a, const IndexSet& b) { return a &= b; }
  friend IndexSet operator-(IndexSet a, const IndexSet& b) { return a -= b; }

  friend bool operator==(const IndexSet& a, const IndexSet& b) {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }
  friend bool operator!=(const IndexSet& a, const IndexSet& b) { return !(a == b); }

  // Numeric order: member 0 is the least significant bit.
  friend bool operator<(const IndexSet& a, const IndexSet& b) {
    if (a.size_ != b.size_) return a.size_ < b.size_;
    for (std::size_t i = a.words_.size(); i-- > 0;)
      if (a.words_[i] != b.words_[i]) return a.words_[i] < b.words_[i];
    return false;
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        std::size_t b = static_cast<std::size_t>(std::countr_zero(w));
        f(wi * 64 + b);
        w &= w - 1;
      }
    }
  }

  // Character j is the membership of index j; "01" has member 1 only.
  std::string to_bitstring() const {
    std::string s(size_, '0');
    for_each([&](std::size_t i) { s[i] = '1'; });
    return s;
  }

  static IndexSet parse_bitstring(const std::string& text) {
    IndexSet s(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '1') s.set(i);
      else if (text[i] != '0')
        throw ParseError("bitstring may contain only '0' and '1', got '" +
                         std::string(1, text[i]) + "'");
    }
    return s;
  }

  std::size_t hash() const {
    std::uint64_t h = 0xcbf29ce484222325ull ^ size_;
    for (auto w : words_) {
      h ^= w;
      h *= 0x100000001b3ull;
    }
    return static_cast<std::size_t>(h);
  }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;

  void trim() {
    if (size_ % 64 != 0 && !words_.empty())
      words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  }

  void check_index(std::size_t i) const {
    if (i >= size_)
      throw std::out_of_range("index " + std::to_string(i) + " outside universe of size " +
                              std::to_string(size_));
  }

  void check_same(const IndexSet& other) const {
    if (size_ != other.size_)
      throw std::invalid_argument("operation on sets over different universes (" +
                                  std::to_string(size_) + " vs " +
                                  std::to_string(other.size_) + ")");
  }
};

struct SymbolTag {};
struct RuleTag {};

// A subset of a model's alphabet; doubles as a configuration/state.
using SymbolSet = IndexSet<SymbolTag>;
// A subset of a system's rules, by rule index.
using RuleSet = IndexSet<RuleTag>;

template <class Tag>
struct IndexSetHash {
  std::size_t operator()(const IndexSet<Tag>& s) const { return s.hash(); }
};

}  // namespace bps
