#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tslab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: unparsable literal, wrong vector shape, bad parameter.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A configured size cap (window, support, ...) was exceeded.
class LimitError : public Error {
 public:
  using Error::Error;
};

/// Size caps for the exponential parts of the library.
///
/// Defaults can be overridden through the environment variables
/// TSLAB_MAX_SUPPORT (norm support and LP duals) and TSLAB_MAX_WINDOW
/// (Schreier enumeration window).
struct Limits {
  std::size_t max_support = 16;
  std::size_t max_window = 24;
  std::size_t max_membership = 20;
  std::size_t max_functional_window = 10;
  std::size_t max_sign_support = 20;

  static Limits from_environment();
};

void require_within(std::size_t value, std::size_t cap, const std::string& what);

}  // namespace tslab
