#include "fma/alphabet.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace fmalign {

Alphabet::Alphabet() {
  to_id_.fill(-1);
  chars_ = {kBegin, kEnd};
  to_id_[static_cast<unsigned char>(kBegin)] = 0;
  to_id_[static_cast<unsigned char>(kEnd)] = 1;
}

Alphabet Alphabet::from_symbols(std::string_view regular) {
  Alphabet a;
  // Deduplicate and order by unsigned byte value so symbols above 0x7f sort
  // after ASCII regardless of char signedness.
  std::set<unsigned char> seen;
  for (char c : regular) {
    if (is_sentinel(c)) throw FormatError("alphabet must not list sentinel symbols");
    seen.insert(static_cast<unsigned char>(c));
  }
  std::vector<unsigned char> ordered(seen.begin(), seen.end());
  for (unsigned char c : ordered) {
    a.to_id_[c] = static_cast<int16_t>(a.chars_.size());
    a.chars_.push_back(static_cast<char>(c));
  }
  return a;
}

Alphabet Alphabet::from_texts(const std::vector<std::string>& texts) {
  std::string syms;
  std::set<unsigned char> seen;
  for (const auto& t : texts)
    for (char c : t) {
      if (is_sentinel(c)) throw FormatError("input text contains a sentinel symbol");
      seen.insert(static_cast<unsigned char>(c));
    }
  for (unsigned char c : seen) syms.push_back(static_cast<char>(c));
  return from_symbols(syms);
}

char Alphabet::at(uint32_t id) const {
  if (id >= chars_.size()) throw ArgumentError("symbol id out of range");
  return chars_[id];
}

}  // namespace fmalign
