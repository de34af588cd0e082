#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fmalign {

// Error taxonomy used across the library.  The CLI maps these to exit codes:
// ArgumentError -> 2 (usage), ModelError/FormatError -> 3 (bad data).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input strings do not fit the similar-strings model (segmentation mismatch,
// non-unique anchors where uniqueness is required, block order violations...).
class ModelError : public Error {
 public:
  using Error::Error;
};

// Malformed external data: alignment text files, variant files, index images.
class FormatError : public Error {
 public:
  using Error::Error;
};

// API misuse: out-of-range coordinates, empty patterns, bad rates.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

}  // namespace fmalign
