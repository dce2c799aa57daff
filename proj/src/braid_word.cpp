#include "braidwalk/braid_word.hpp"

#include <stdexcept>

namespace braidwalk {

Alphabet alphabet_of(Gen g) noexcept {
  return (g == Gen::Sigma1 || g == Gen::Sigma2) ? Alphabet::S : Alphabet::Sprime;
}

std::string_view to_string(Alphabet a) noexcept {
  return a == Alphabet::S ? "S" : "Sprime";
}

Alphabet parse_alphabet(std::string_view s) {
  if (s == "S") return Alphabet::S;
  if (s == "Sprime" || s == "S'") return Alphabet::Sprime;
  throw std::invalid_argument("unknown alphabet '" + std::string(s) +
                              "' (expected S or Sprime)");
}

std::array<Letter, 4> generators(Alphabet a) noexcept {
  if (a == Alphabet::S) return {kSigma1, kSigma1Inv, kSigma2, kSigma2Inv};
  return {kA, kAInv, kB, kBInv};
}

void BraidWord::append(Letter l) {
  if (alphabet_of(l.base) != alphabet_)
    throw std::invalid_argument("BraidWord: letter from the wrong alphabet");
  if (!letters_.empty() && letters_.back() == l.inverse())
    letters_.pop_back();
  else
    letters_.push_back(l);
}

BraidWord BraidWord::inverse() const {
  BraidWord r(alphabet_);
  r.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    r.letters_.push_back(it->inverse());
  return r;
}

BraidWord operator*(const BraidWord& x, const BraidWord& y) {
  if (x.alphabet_ != y.alphabet_)
    throw std::invalid_argument("BraidWord: product of words over different alphabets");
  BraidWord r = x;
  for (Letter l : y.letters_) r.append(l);
  return r;
}

BraidWord free_reduce(std::span<const Letter> letters, Alphabet a) {
  BraidWord w(a);
  for (Letter l : letters) {
    if (l.sign != 1 && l.sign != -1)
      throw std::invalid_argument("free_reduce: letter sign must be +1 or -1");
    if (alphabet_of(l.base) != a)
      throw std::invalid_argument("free_reduce: letters mix both alphabets");
    w.append(l);
  }
  return w;
}

BraidWord free_reduce(std::span<const Letter> letters) {
  if (letters.empty())
    throw std::invalid_argument("free_reduce: alphabet of an empty sequence is ambiguous");
  return free_reduce(letters, alphabet_of(letters.front().base));
}

namespace {

void append_image(BraidWord& out, Letter l) {
  auto put = [&](std::initializer_list<Letter> ls) {
    for (Letter x : ls) out.append(x);
  };
  const bool pos = l.sign > 0;
  switch (l.base) {
    case Gen::A:
      if (pos) put({kSigma1, kSigma2, kSigma1});
      else put({kSigma1Inv, kSigma2Inv, kSigma1Inv});
      break;
    case Gen::B:
      if (pos) put({kSigma1, kSigma2});
      else put({kSigma2Inv, kSigma1Inv});
      break;
    case Gen::Sigma1:
      if (pos) put({kBInv, kA});
      else put({kAInv, kB});
      break;
    case Gen::Sigma2:
      if (pos) put({kAInv, kB, kB});
      else put({kBInv, kBInv, kA});
      break;
  }
}

char letter_char(Letter l) {
  switch (l.base) {
    case Gen::A: return l.sign > 0 ? 'a' : 'A';
    case Gen::B: return l.sign > 0 ? 'b' : 'B';
    default: return '?';
  }
}

}  // namespace

BraidWord convert_generators(const BraidWord& w, Alphabet target) {
  if (w.alphabet() == target) return w;
  BraidWord out(target);
  for (Letter l : w.letters()) append_image(out, l);
  return out;
}

int exponent_weight(Letter l) noexcept {
  switch (l.base) {
    case Gen::A: return 3 * l.sign;
    case Gen::B: return 2 * l.sign;
    default: return l.sign;
  }
}

std::int64_t exponent_sum(const BraidWord& w) noexcept {
  std::int64_t e = 0;
  for (Letter l : w.letters()) e += exponent_weight(l);
  return e;
}

BraidWord full_twist(Alphabet a) {
  BraidWord w(a);
  if (a == Alphabet::Sprime) {
    w.append(kA);
    w.append(kA);
  } else {
    for (int i = 0; i < 3; ++i) {
      w.append(kSigma1);
      w.append(kSigma2);
    }
  }
  return w;
}

BraidWord BraidWord::parse(std::string_view text, Alphabet a) {
  BraidWord w(a);
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '.' || text[i] == ','))
      ++i;
  };
  skip();
  if (text.substr(i) == "e") return w;
  while (i < text.size()) {
    const char c = text[i++];
    Letter l;
    if (c == 'a' || c == 'A') {
      l = {Gen::A, static_cast<std::int8_t>(c == 'a' ? 1 : -1)};
    } else if (c == 'b' || c == 'B') {
      l = {Gen::B, static_cast<std::int8_t>(c == 'b' ? 1 : -1)};
    } else if ((c == 's' || c == 'S') && i < text.size() &&
               (text[i] == '1' || text[i] == '2')) {
      l = {text[i] == '1' ? Gen::Sigma1 : Gen::Sigma2,
           static_cast<std::int8_t>(c == 's' ? 1 : -1)};
      ++i;
    } else {
      throw std::invalid_argument("BraidWord::parse: unexpected character '" +
                                  std::string(1, c) + "'");
    }
    if (alphabet_of(l.base) != a)
      throw std::invalid_argument("BraidWord::parse: letters mix both alphabets");
    w.append(l);
    skip();
  }
  return w;
}

std::string BraidWord::to_string() const {
  if (letters_.empty()) return "e";
  std::string s;
  for (Letter l : letters_) {
    if (!s.empty()) s += ' ';
    if (l.base == Gen::Sigma1 || l.base == Gen::Sigma2) {
      s += l.sign > 0 ? 's' : 'S';
      s += l.base == Gen::Sigma1 ? '1' : '2';
    } else {
      s += letter_char(l);
    }
  }
  return s;
}

}  // namespace braidwalk
