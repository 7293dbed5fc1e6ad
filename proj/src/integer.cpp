#include "recnum/integer.hpp"

#include <algorithm>

namespace recnum {

bool add_overflows(Natural a, Natural b, Natural* out) { return __builtin_add_overflow(a, b, out); }

bool mul_overflows(Natural a, Natural b, Natural* out) { return __builtin_mul_overflow(a, b, out); }

Natural checked_add(Natural a, Natural b, std::string_view what) {
  Natural r;
  if (add_overflows(a, b, &r)) {
    throw OverflowError("128-bit overflow in " + std::string(what));
  }
  return r;
}

Natural checked_mul(Natural a, Natural b, std::string_view what) {
  Natural r;
  if (mul_overflows(a, b, &r)) {
    throw OverflowError("128-bit overflow in " + std::string(what));
  }
  return r;
}

std::string to_string(Natural v) {
  if (v == 0) return "0";
  std::string s;
  while (v != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

Natural parse_natural(std::string_view text) {
  if (text.empty()) throw PreconditionError("empty integer literal");
  Natural v = 0;
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw PreconditionError("not a non-negative integer: '" + std::string(text) + "'");
    }
    v = checked_add(checked_mul(v, 10, "integer literal"), static_cast<Natural>(c - '0'),
                    "integer literal");
  }
  return v;
}

}  // namespace recnum
