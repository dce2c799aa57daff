#include "braidwalk/psl2z.hpp"

#include <stdexcept>

#include "braidwalk/errors.hpp"
#include "braidwalk/psl_geodesic.hpp"

namespace braidwalk {

void push_syllable(std::vector<Syllable>& stack, Syllable s) {
  if (stack.empty()) {
    stack.push_back(s);
    return;
  }
  const Syllable last = stack.back();
  if (last == Syllable::A && s == Syllable::A) {
    stack.pop_back();
  } else if (is_b_type(last) && is_b_type(s)) {
    const int e = (b_exponent(last) + b_exponent(s)) % 3;
    if (e == 0) stack.pop_back();
    else stack.back() = static_cast<Syllable>(e);
  } else {
    stack.push_back(s);
  }
}

Psl2NormalForm::Psl2NormalForm(std::vector<Syllable> syllables)
    : syl_(std::move(syllables)) {
  for (std::size_t i = 1; i < syl_.size(); ++i)
    if (is_b_type(syl_[i]) == is_b_type(syl_[i - 1]))
      throw std::invalid_argument("Psl2NormalForm: syllables must alternate");
}

void Psl2NormalForm::push(Syllable s) { push_syllable(syl_, s); }

Psl2NormalForm Psl2NormalForm::inverse() const {
  Psl2NormalForm r;
  r.syl_.reserve(syl_.size());
  for (auto it = syl_.rbegin(); it != syl_.rend(); ++it)
    r.syl_.push_back(*it == Syllable::A ? Syllable::A
                                        : static_cast<Syllable>(3 - b_exponent(*it)));
  return r;
}

std::string Psl2NormalForm::to_string() const {
  if (syl_.empty()) return "e";
  std::string s;
  for (Syllable x : syl_) {
    if (!s.empty()) s += '.';
    s += x == Syllable::A ? "A" : (x == Syllable::B ? "B" : "B2");
  }
  return s;
}

Psl2NormalForm Psl2NormalForm::parse(std::string_view text) {
  Psl2NormalForm g;
  if (text.empty() || text == "e") return g;
  std::vector<Syllable> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '.' || text[i] == ' ') {
      ++i;
      continue;
    }
    if (text[i] == 'A') {
      out.push_back(Syllable::A);
      ++i;
    } else if (text[i] == 'B') {
      if (i + 1 < text.size() && text[i + 1] == '2') {
        out.push_back(Syllable::B2);
        i += 2;
      } else {
        out.push_back(Syllable::B);
        ++i;
      }
    } else {
      throw std::invalid_argument("Psl2NormalForm::parse: bad syllable");
    }
  }
  return Psl2NormalForm(std::move(out));
}

std::size_t Psl2NormalFormHash::operator()(const Psl2NormalForm& g) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (Syllable s : g.syllables()) h = (h ^ static_cast<std::size_t>(s)) * 1099511628211ULL;
  return h ^ g.size();
}

Psl2NormalForm nf_multiply(const Psl2NormalForm& x, const Psl2NormalForm& y) {
  Psl2NormalForm r = x;
  for (Syllable s : y.syllables()) r.push(s);
  return r;
}

Psl2NormalForm letter_image(Letter l) {
  Psl2NormalForm g;
  switch (l.base) {
    case Gen::A:
      g.push(Syllable::A);
      break;
    case Gen::B:
      g.push(l.sign > 0 ? Syllable::B : Syllable::B2);
      break;
    default: {
      BraidWord single(Alphabet::S);
      single.append(l);
      const BraidWord expanded = convert_generators(single, Alphabet::Sprime);
      for (Letter x : expanded.letters())
        g = nf_multiply(g, letter_image(x));
    }
  }
  return g;
}

Psl2NormalForm project(const BraidWord& w) {
  const BraidWord v = convert_generators(w, Alphabet::Sprime);
  Psl2NormalForm g;
  for (Letter l : v.letters()) {
    if (l.base == Gen::A) g.push(Syllable::A);
    else g.push(l.sign > 0 ? Syllable::B : Syllable::B2);
  }
  return g;
}

BraidWord section_lift(const Psl2NormalForm& g) {
  BraidWord w(Alphabet::Sprime);
  for (Syllable s : g.syllables()) {
    switch (s) {
      case Syllable::A: w.append(kA); break;
      case Syllable::B: w.append(kB); break;
      case Syllable::B2: w.append(kBInv); break;
    }
  }
  return w;
}

int section_exponent(Syllable s) noexcept {
  switch (s) {
    case Syllable::A: return 3;
    case Syllable::B: return 2;
    default: return -2;
  }
}

std::int64_t section_exponent(const Psl2NormalForm& g) noexcept {
  std::int64_t e = 0;
  for (Syllable s : g.syllables()) e += section_exponent(s);
  return e;
}

namespace {

std::int64_t exact_sixth(std::int64_t numerator, const char* what) {
  if (numerator % 6 != 0)
    throw InvariantError(std::string(what) + ": central exponent " +
                         std::to_string(numerator) + " is not divisible by 6");
  return numerator / 6;
}

}  // namespace

CentralPair central_decompose(const BraidWord& w) {
  CentralPair p;
  p.gamma = project(w);
  p.flux = exact_sixth(exponent_sum(w) - section_exponent(p.gamma), "central_decompose");
  return p;
}

std::int64_t cocycle(const Psl2NormalForm& x, const Psl2NormalForm& y) {
  return exact_sixth(section_exponent(x) + section_exponent(y) -
                         section_exponent(nf_multiply(x, y)),
                     "cocycle");
}

CentralPair multiply(const CentralPair& p, const CentralPair& q) {
  return {p.flux + q.flux + cocycle(p.gamma, q.gamma), nf_multiply(p.gamma, q.gamma)};
}

std::size_t CentralPairHash::operator()(const CentralPair& p) const noexcept {
  return Psl2NormalFormHash{}(p.gamma) * 31u ^ std::hash<std::int64_t>{}(p.flux);
}

BraidWord reconstruct(const CentralPair& p, Alphabet a) {
  BraidWord w(Alphabet::Sprime);
  const Letter twist = p.flux >= 0 ? kA : kAInv;
  for (std::int64_t i = 0; i < 2 * (p.flux >= 0 ? p.flux : -p.flux); ++i) w.append(twist);
  return convert_generators(w * section_lift(p.gamma), a);
}

std::int64_t psl_length(const Psl2NormalForm& g, Alphabet a) {
  if (a == Alphabet::Sprime) return static_cast<std::int64_t>(g.size());
  return psl_length_s(g);
}

DeformedMatrix deformed_generator(Syllable s) {
  using P = LaurentPoly;
  LaurentMatrix m;
  if (s == Syllable::A) {
    m.e = {P{}, P::monomial(1, -1), P::monomial(-1, 1), P{}};
    return DeformedMatrix(m);
  }
  m.e = {P{}, P::constant(1), P::constant(-1), P::constant(1)};
  DeformedMatrix b(m);
  return s == Syllable::B ? b : b * b;
}

DeformedMatrix deformed_matrix(const Psl2NormalForm& g) {
  DeformedMatrix acc;
  for (Syllable s : g.syllables()) acc = acc * deformed_generator(s);
  return acc;
}

DeformedMatrix deformed_matrix(const BraidWord& w) { return deformed_matrix(project(w)); }

}  // namespace braidwalk
