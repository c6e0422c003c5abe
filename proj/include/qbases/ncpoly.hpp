#pragma once

// Formal noncommutative polynomials over the alphabet {X3, X+, X-}.

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "qbases/matrix.hpp"

namespace qbases {

enum class Letter : int { X3 = 0, Plus = 1, Minus = 2 };

using NcWord = std::vector<Letter>;

inline std::string to_string(Letter l) {
  switch (l) {
    case Letter::X3: return "X3";
    case Letter::Plus: return "X+";
    case Letter::Minus: return "X-";
  }
  return "?";
}

inline std::string to_string(const NcWord& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + to_string(w[i]);
  return s;
}

/// The ladder letter of the opposite direction: X+ <-> X-, X3 fixed.
inline Letter opposite(Letter l) {
  return l == Letter::Plus ? Letter::Minus : l == Letter::Minus ? Letter::Plus : Letter::X3;
}

/// Sparse map word -> coefficient. Zero coefficients are never stored.
class NcPolynomial {
public:
  using Terms = std::map<NcWord, cplx>;

  NcPolynomial() = default;
  NcPolynomial(const NcWord& w, cplx c = 1.0) { add(w, c); }

  static NcPolynomial identity() { return NcPolynomial(NcWord{}); }
  static NcPolynomial letter(Letter l) { return NcPolynomial(NcWord{l}); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  cplx coefficient(const NcWord& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? cplx(0.0, 0.0) : it->second;
  }

  void add(const NcWord& w, cplx c) {
    if (c == cplx(0.0, 0.0)) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second == cplx(0.0, 0.0)) terms_.erase(it);
    }
  }

  NcPolynomial& operator+=(const NcPolynomial& o) {
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
  }
  NcPolynomial& operator-=(const NcPolynomial& o) {
    for (const auto& [w, c] : o.terms_) add(w, -c);
    return *this;
  }
  NcPolynomial& operator*=(cplx s) {
    if (s == cplx(0.0, 0.0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [w, c] : terms_) c *= s;
    return *this;
  }

  friend NcPolynomial operator+(NcPolynomial a, const NcPolynomial& b) { return a += b; }
  friend NcPolynomial operator-(NcPolynomial a, const NcPolynomial& b) { return a -= b; }
  friend NcPolynomial operator*(NcPolynomial a, cplx s) { return a *= s; }
  friend NcPolynomial operator*(cplx s, NcPolynomial a) { return a *= s; }

  /// Concatenation product.
  friend NcPolynomial operator*(const NcPolynomial& a, const NcPolynomial& b) {
    NcPolynomial out;
    for (const auto& [wa, ca] : a.terms_)
      for (const auto& [wb, cb] : b.terms_) {
        NcWord w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        out.add(w, ca * cb);
      }
    return out;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [w, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + std::to_string(c.real()) + (c.imag() != 0.0 ? "+" + std::to_string(c.imag()) + "i" : "") + ")";
      s += w.empty() ? "" : " " + to_string(w);
    }
    return s;
  }

private:
  Terms terms_;
};

inline constexpr std::size_t kMaxSymmetrizeLength = 8;

/// S(O1...On) = (1/n!) sum over all n! orderings of the letters.
inline NcPolynomial symmetrize(const NcWord& w) {
  if (w.size() > kMaxSymmetrizeLength)
    throw WordTooLong("symmetrize accepts words up to length " + std::to_string(kMaxSymmetrizeLength) + ", got " +
                      std::to_string(w.size()));
  std::vector<std::size_t> perm(w.size());
  std::iota(perm.begin(), perm.end(), 0);
  double count = 1.0;
  for (std::size_t k = 2; k <= w.size(); ++k) count *= static_cast<double>(k);
  NcPolynomial out;
  NcWord permuted(w.size());
  do {
    for (std::size_t i = 0; i < perm.size(); ++i) permuted[i] = w[perm[i]];
    out.add(permuted, 1.0 / count);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

/// Linear extension of symmetrize.
inline NcPolynomial symmetrize(const NcPolynomial& p) {
  NcPolynomial out;
  for (const auto& [w, c] : p.terms()) out += symmetrize(w) * c;
  return out;
}

/// Replaces each letter by the matching matrix of the triple; the empty word is the identity.
inline Matrix evaluate(const NcPolynomial& p, const GeneratorTriple& rep) {
  const auto n = rep.dim();
  Matrix out = Matrix::Zero(n, n);
  for (const auto& [w, c] : p.terms()) {
    Matrix prod = identity(n);
    for (Letter l : w) prod = prod * rep[static_cast<int>(l)];
    out += c * prod;
  }
  return out;
}

}  // namespace qbases
