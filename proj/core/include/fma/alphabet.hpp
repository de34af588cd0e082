#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fma/common.hpp"

namespace fmalign {

// Ordered alphabet of the indexed strings.  All comparisons in the library
// use the order  $ < # < regular symbols (regular symbols in byte order).
// '$' begins every string, '#' ends it; each occurs exactly once per string.
class Alphabet {
 public:
  static constexpr char kBegin = '$';
  static constexpr char kEnd = '#';

  Alphabet();
  // Builds from the set of regular symbols (sentinels added implicitly).
  static Alphabet from_symbols(std::string_view regular);
  // Collects regular symbols from sentinel-free texts.
  static Alphabet from_texts(const std::vector<std::string>& texts);

  // Symbol id; 0 = '$', 1 = '#', regular symbols from 2 in byte order.
  // Returns -1 for characters outside the alphabet.
  int id(char c) const { return to_id_[static_cast<unsigned char>(c)]; }
  char at(uint32_t id) const;
  uint32_t size() const { return static_cast<uint32_t>(chars_.size()); }
  // Regular symbols only, in order (no sentinels).
  std::string_view regular() const { return std::string_view(chars_).substr(2); }

  static bool is_sentinel(char c) { return c == kBegin || c == kEnd; }

  bool operator==(const Alphabet& o) const { return chars_ == o.chars_; }

 private:
  std::array<int16_t, 256> to_id_;
  std::string chars_;  // id -> char
};

}  // namespace fmalign
