#include "braidwalk/burau.hpp"

namespace braidwalk {

LaurentMatrix LaurentMatrix::identity() {
  LaurentMatrix m;
  m(0, 0) = LaurentPoly::constant(1);
  m(1, 1) = LaurentPoly::constant(1);
  return m;
}

LaurentPoly LaurentMatrix::determinant() const {
  return (*this)(0, 0) * (*this)(1, 1) - (*this)(0, 1) * (*this)(1, 0);
}

LaurentMatrix LaurentMatrix::operator-() const {
  LaurentMatrix r;
  for (int i = 0; i < 4; ++i) r.e[i] = -e[i];
  return r;
}

LaurentMatrix operator*(const LaurentMatrix& x, const LaurentMatrix& y) {
  LaurentMatrix r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r(i, j) = x(i, 0) * y(0, j) + x(i, 1) * y(1, j);
  return r;
}

std::size_t LaurentMatrix::hash() const noexcept {
  std::size_t h = 0;
  for (const auto& p : e) h = h * 1000003u ^ p.hash();
  return h;
}

std::string LaurentMatrix::to_string() const {
  return "[[" + e[0].to_string() + ", " + e[1].to_string() + "], [" +
         e[2].to_string() + ", " + e[3].to_string() + "]]";
}

namespace {

LaurentMatrix make(LaurentPoly a, LaurentPoly b, LaurentPoly c, LaurentPoly d) {
  LaurentMatrix m;
  m.e = {std::move(a), std::move(b), std::move(c), std::move(d)};
  return m;
}

LaurentMatrix sigma_matrix(Letter l) {
  using P = LaurentPoly;
  if (l.base == Gen::Sigma1) {
    if (l.sign > 0) return make(P::monomial(1, 2), P::constant(1), P{}, P::constant(1));
    return make(P::monomial(1, -2), P::monomial(-1, -2), P{}, P::constant(1));
  }
  if (l.sign > 0) return make(P::constant(1), P{}, P::monomial(-1, 2), P::monomial(1, 2));
  return make(P::constant(1), P{}, P::constant(1), P::monomial(1, -2));
}

struct GeneratorTable {
  std::array<LaurentMatrix, 8> m;  // index 2*gen + (sign < 0)
  GeneratorTable() {
    for (Gen g : {Gen::Sigma1, Gen::Sigma2})
      for (int s : {1, -1}) {
        Letter l{g, static_cast<std::int8_t>(s)};
        m[index(l)] = sigma_matrix(l);
      }
    for (Gen g : {Gen::A, Gen::B})
      for (int s : {1, -1}) {
        Letter l{g, static_cast<std::int8_t>(s)};
        BraidWord single(Alphabet::Sprime);
        single.append(l);
        const BraidWord expanded = convert_generators(single, Alphabet::S);
        LaurentMatrix acc = LaurentMatrix::identity();
        for (Letter x : expanded.letters())
          acc = acc * m[index(x)];
        m[index(l)] = acc;
      }
  }
  static std::size_t index(Letter l) {
    return 2 * static_cast<std::size_t>(l.base) + (l.sign < 0 ? 1 : 0);
  }
};

const GeneratorTable& table() {
  static const GeneratorTable t;
  return t;
}

}  // namespace

BurauMatrix burau(Letter l) { return table().m[GeneratorTable::index(l)]; }

BurauMatrix burau(const BraidWord& w) {
  LaurentMatrix acc = LaurentMatrix::identity();
  for (Letter l : w.letters()) acc = acc * burau(l);
  return acc;
}

}  // namespace braidwalk
