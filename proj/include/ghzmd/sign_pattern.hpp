#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace ghzmd {

/// Triple of ±1 values for parties A, B, C. Doubles as an outcome triple
/// (a, b, c) and as the sign pattern labelling a region of the circle.
///
/// Encoded in three bits, A most significant, a set bit meaning -1, so
/// index() runs "+++", "++-", "+-+", "+--", "-++", "-+-", "--+", "---".
class SignPattern {
 public:
  constexpr SignPattern() = default;
  constexpr SignPattern(int sa, int sb, int sc)
      : bits_(static_cast<std::uint8_t>((sa < 0 ? 4 : 0) | (sb < 0 ? 2 : 0) | (sc < 0 ? 1 : 0))) {}

  static constexpr SignPattern from_index(int index) {
    SignPattern p;
    p.bits_ = static_cast<std::uint8_t>(index & 7);
    return p;
  }

  constexpr int a() const { return (bits_ & 4) ? -1 : 1; }
  constexpr int b() const { return (bits_ & 2) ? -1 : 1; }
  constexpr int c() const { return (bits_ & 1) ? -1 : 1; }
  constexpr int product() const { return a() * b() * c(); }
  constexpr int index() const { return bits_; }

  constexpr SignPattern operator-() const { return from_index(bits_ ^ 7); }
  constexpr bool operator==(const SignPattern&) const = default;

  /// The member of {p, -p} with abc = +1. In the model's case tables this
  /// is the β = +1 representative.
  constexpr SignPattern positive_representative() const { return product() > 0 ? *this : -*this; }

  std::string key() const {
    std::string k(3, '+');
    if (a() < 0) k[0] = '-';
    if (b() < 0) k[1] = '-';
    if (c() < 0) k[2] = '-';
    return k;
  }

 private:
  std::uint8_t bits_ = 0;
};

inline constexpr std::array<SignPattern, 8> kAllPatterns = {
    SignPattern::from_index(0), SignPattern::from_index(1), SignPattern::from_index(2),
    SignPattern::from_index(3), SignPattern::from_index(4), SignPattern::from_index(5),
    SignPattern::from_index(6), SignPattern::from_index(7)};

/// β = +1 representatives of the four antipodal pattern pairs, in the order
/// the region labels R1, R2, R3 and the atom pair are usually listed.
inline constexpr std::array<SignPattern, 4> kPairRepresentatives = {
    SignPattern(+1, +1, +1),  // R1: s_A = s_B = s_C
    SignPattern(+1, -1, -1),  // R2: s_A = -s_B = -s_C
    SignPattern(-1, -1, +1),  // R3: -s_A = -s_B = s_C
    SignPattern(-1, +1, -1),  // R4: -s_A = s_B = -s_C
};

/// Index into kPairRepresentatives of the pair containing p.
constexpr int pair_index(SignPattern p) {
  const SignPattern rep = p.positive_representative();
  for (int i = 0; i < 4; ++i) {
    if (kPairRepresentatives[i] == rep) return i;
  }
  return -1;
}

}  // namespace ghzmd
