#include "recnum/frequency.hpp"

#include <charconv>
#include <cmath>

#include <fmt/format.h>

namespace recnum {

Frequency Frequency::rational(std::int64_t num, std::uint64_t den) {
  if (den == 0) throw PreconditionError("frequency denominator must be positive");
  Frequency f;
  const auto sden = static_cast<__int128>(den);
  __int128 r = static_cast<__int128>(num) % sden;
  if (r < 0) r += sden;
  f.num_ = static_cast<std::uint64_t>(r);
  f.den_ = den;
  return f;
}

Frequency Frequency::real(double value) {
  Frequency f;
  f.den_ = 0;
  f.real_ = frac(static_cast<long double>(value));
  return f;
}

Frequency Frequency::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    std::int64_t num = 0;
    std::uint64_t den = 0;
    const auto a = text.substr(0, slash);
    const auto b = text.substr(slash + 1);
    auto r1 = std::from_chars(a.data(), a.data() + a.size(), num);
    auto r2 = std::from_chars(b.data(), b.data() + b.size(), den);
    if (r1.ec != std::errc{} || r1.ptr != a.data() + a.size() || r2.ec != std::errc{} ||
        r2.ptr != b.data() + b.size()) {
      throw PreconditionError(fmt::format("cannot parse rational '{}'", text));
    }
    return rational(num, den);
  }
  try {
    std::size_t pos = 0;
    const double v = std::stod(std::string(text), &pos);
    if (pos != text.size()) throw std::invalid_argument("trailing");
    return real(v);
  } catch (const std::exception&) {
    throw PreconditionError(fmt::format("cannot parse frequency '{}'", text));
  }
}

long double Frequency::value() const {
  if (is_rational()) return static_cast<long double>(num_) / static_cast<long double>(den_);
  return real_;
}

long double Frequency::times(Natural k) const {
  if (is_rational()) {
    const Natural r = (static_cast<Natural>(num_) * (k % den_)) % den_;
    return static_cast<long double>(static_cast<std::uint64_t>(r)) /
           static_cast<long double>(den_);
  }
  return frac(real_ * static_cast<long double>(k));
}

std::string Frequency::to_string() const {
  if (is_rational()) return fmt::format("{}/{}", num_, den_);
  return fmt::format("{:.17g}", static_cast<double>(real_));
}

}  // namespace recnum
