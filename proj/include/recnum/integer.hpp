#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace recnum {

/// Exact non-negative integer used for sequence terms and digit values.
/// Arithmetic on it goes through the checked helpers below; wraparound is
/// never silent.
using Natural = unsigned __int128;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an exact value would not fit into 128 bits.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Raised when an operation's input violates its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Raised when a cost or memory guard refuses a computation.
class GuardError : public Error {
 public:
  using Error::Error;
};

[[nodiscard]] bool add_overflows(Natural a, Natural b, Natural* out);
[[nodiscard]] bool mul_overflows(Natural a, Natural b, Natural* out);

Natural checked_add(Natural a, Natural b, std::string_view what = "addition");
Natural checked_mul(Natural a, Natural b, std::string_view what = "multiplication");

std::string to_string(Natural v);
Natural parse_natural(std::string_view text);

inline long double to_long_double(Natural v) { return static_cast<long double>(v); }

}  // namespace recnum
