#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace ems {

// Exact element of (1/2)Z, stored as its doubled integer value.
// twice = 5 encodes 5/2, twice = 4 encodes 2.
struct HalfInt {
  std::int64_t twice = 0;

  constexpr HalfInt() = default;
  constexpr explicit HalfInt(std::int64_t doubled) : twice(doubled) {}

  static constexpr HalfInt whole(std::int64_t n) { return HalfInt(2 * n); }
  // Numerator over 2; p must be odd.
  static HalfInt half(std::int64_t p) {
    if (p % 2 == 0)
      throw std::invalid_argument("half-integer literal with even numerator: " +
                                  std::to_string(p) + "/2");
    return HalfInt(p);
  }

  constexpr bool is_integer() const { return twice % 2 == 0; }

  constexpr HalfInt operator+(HalfInt o) const { return HalfInt(twice + o.twice); }
  constexpr HalfInt operator-(HalfInt o) const { return HalfInt(twice - o.twice); }
  constexpr HalfInt operator-() const { return HalfInt(-twice); }
  constexpr HalfInt& operator+=(HalfInt o) { twice += o.twice; return *this; }
  constexpr HalfInt& operator-=(HalfInt o) { twice -= o.twice; return *this; }

  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

  // Defined only when the value is an integer.
  constexpr std::int64_t as_integer() const { return twice / 2; }
};

inline HalfInt operator+(HalfInt a, std::int64_t n) { return HalfInt(a.twice + 2 * n); }
inline HalfInt operator-(HalfInt a, std::int64_t n) { return HalfInt(a.twice - 2 * n); }

inline std::string to_string(HalfInt h) {
  if (h.is_integer()) return std::to_string(h.twice / 2);
  return std::to_string(h.twice) + "/2";
}

// Accepts "k" or "p/2".
inline HalfInt parse_halfint(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return HalfInt::whole(std::stoll(text));
    if (text.substr(slash + 1) != "2")
      throw std::invalid_argument("denominator must be 2");
    return HalfInt::half(std::stoll(text.substr(0, slash)));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed half-integer literal: '" + text + "'");
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("half-integer literal out of range: '" + text + "'");
  }
}

}  // namespace ems

template <>
struct std::hash<ems::HalfInt> {
  std::size_t operator()(ems::HalfInt h) const noexcept {
    return std::hash<std::int64_t>{}(h.twice);
  }
};
