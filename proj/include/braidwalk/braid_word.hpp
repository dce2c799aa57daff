#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace braidwalk {

// S = {σ1, σ2}^{±1} (Artin generators), Sprime = {a, b}^{±1} with
// a = σ1σ2σ1 and b = σ1σ2.
enum class Alphabet : std::uint8_t { S, Sprime };

enum class Gen : std::uint8_t { Sigma1, Sigma2, A, B };

Alphabet alphabet_of(Gen g) noexcept;
std::string_view to_string(Alphabet a) noexcept;
Alphabet parse_alphabet(std::string_view s);

struct Letter {
  Gen base = Gen::A;
  std::int8_t sign = 1;

  Letter inverse() const noexcept { return {base, static_cast<std::int8_t>(-sign)}; }
  friend bool operator==(const Letter&, const Letter&) = default;
};

inline constexpr Letter kSigma1{Gen::Sigma1, 1};
inline constexpr Letter kSigma1Inv{Gen::Sigma1, -1};
inline constexpr Letter kSigma2{Gen::Sigma2, 1};
inline constexpr Letter kSigma2Inv{Gen::Sigma2, -1};
inline constexpr Letter kA{Gen::A, 1};
inline constexpr Letter kAInv{Gen::A, -1};
inline constexpr Letter kB{Gen::B, 1};
inline constexpr Letter kBInv{Gen::B, -1};

// The four step generators of an alphabet, in the fixed order used by every
// walk: (x, x^{-1}, y, y^{-1}).
std::array<Letter, 4> generators(Alphabet a) noexcept;

// A freely reduced word in B3 over a single alphabet. Construction always
// reduces, so no instance ever holds an adjacent pair x·x^{-1}.
class BraidWord {
 public:
  explicit BraidWord(Alphabet a) : alphabet_(a) {}

  Alphabet alphabet() const noexcept { return alphabet_; }
  std::span<const Letter> letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  // Right multiplication by one letter, keeping the word reduced.
  void append(Letter l);
  BraidWord inverse() const;

  friend BraidWord operator*(const BraidWord& x, const BraidWord& y);
  friend bool operator==(const BraidWord&, const BraidWord&) = default;

  // Reads "s1 S1 s2 S2" / "a A b B" style text; uppercase is the inverse.
  // "e" or the empty string is the identity.
  static BraidWord parse(std::string_view text, Alphabet a);
  std::string to_string() const;

 private:
  Alphabet alphabet_;
  std::vector<Letter> letters_;
};

// Throws std::invalid_argument if letters mix both alphabets. An empty
// sequence needs the alphabet spelled out.
BraidWord free_reduce(std::span<const Letter> letters);
BraidWord free_reduce(std::span<const Letter> letters, Alphabet a);

// Rewrites via a = σ1σ2σ1, b = σ1σ2 and σ1 = b^{-1}a, σ2 = a^{-1}b², then
// reduces.
BraidWord convert_generators(const BraidWord& w, Alphabet target);

// Abelianization B3 -> Z: each σ^{±1} counts ±1, a^{±1} counts ±3, b^{±1}
// counts ±2.
std::int64_t exponent_sum(const BraidWord& w) noexcept;
int exponent_weight(Letter l) noexcept;

// Δ² as (σ1σ2)³ over S or a² over Sprime.
BraidWord full_twist(Alphabet a);

}  // namespace braidwalk
