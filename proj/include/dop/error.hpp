#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dop {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bracketed-tree syntax problems; offset is 1-based into the input text.
struct TreeParseError : Error {
  std::size_t offset;
  TreeParseError(const std::string& msg, std::size_t off)
      : Error(msg + " at offset " + std::to_string(off)), offset(off) {}
};

// Malformed bank/lexicon/tagset files.
struct FormatError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

// Enumeration asked to exceed its configured bound.
struct LimitError : Error {
  using Error::Error;
};

}  // namespace dop
