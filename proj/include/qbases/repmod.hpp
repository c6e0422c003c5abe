#pragma once

// Spin-j representation matrices in the quantum bases g_{z'} and the crystal
// basis, together with Casimir operators and commutator diagnostics.
//
// Basis ordering: row/column k carries weight m = j - k (highest weight first),
// so X+ is strictly upper triangular and X- strictly lower triangular.

#include <string>

#include "qbases/matrix.hpp"

namespace qbases {

class BasisKind {
public:
  enum class Tag { Lie, Analytical, Quantum, Crystal };

  static BasisKind lie() { return BasisKind(Tag::Lie, DeformParam()); }
  static BasisKind analytical(DeformParam z) { return BasisKind(Tag::Analytical, z); }
  static BasisKind quantum(DeformParam zprime) { return BasisKind(Tag::Quantum, zprime); }
  static BasisKind crystal() { return BasisKind(Tag::Crystal, DeformParam()); }

  Tag tag() const { return tag_; }
  /// The parameter fixing the commutation relations. Meaningless for Crystal.
  DeformParam zprime() const { return zprime_; }

  bool is_crystal() const { return tag_ == Tag::Crystal; }
  /// Lie, or any quantum basis at z' = 0.
  bool is_lie() const { return !is_crystal() && zprime_.is_zero(); }

  std::string name() const {
    switch (tag_) {
      case Tag::Lie: return "lie";
      case Tag::Analytical: return "analytical";
      case Tag::Quantum: return "quantum";
      case Tag::Crystal: return "crystal";
    }
    return "unknown";
  }

private:
  BasisKind(Tag tag, DeformParam zp) : tag_(tag), zprime_(zp) {}
  Tag tag_;
  DeformParam zprime_;
};

struct IrrepMatrices {
  HalfInt j;
  BasisKind kind = BasisKind::lie();
  Matrix x3;
  Matrix xplus;
  Matrix xminus;

  int dim() const { return j.dim(); }
  /// Weight carried by basis index k.
  HalfInt weight(int k) const { return j - HalfInt::from_twice(2 * k); }
  GeneratorTriple triple() const { return {x3, xplus, xminus}; }
};

/// <j,m+1| X+ |j,m> = <j,m| X- |j,m+1> = sqrt([j+1/2]^2 - [m+1/2]^2) / sqrt([1]).
inline cplx ladder_coefficient(HalfInt j, HalfInt m, DeformParam zprime) {
  const double jh = j.value() + 0.5;
  const double mh = m.value() + 0.5;
  return principal_sqrt(q_number_sq_diff(jh, mh, zprime)) / principal_sqrt(q_number(1.0, zprime));
}

namespace detail {

inline IrrepMatrices empty_irrep(HalfInt j, BasisKind kind) {
  const int d = require_spin(j).dim();
  IrrepMatrices rep{j, kind, Matrix::Zero(d, d), Matrix::Zero(d, d), Matrix::Zero(d, d)};
  for (int k = 0; k < d; ++k) rep.x3(k, k) = rep.weight(k).value();
  return rep;
}

}  // namespace detail

/// Spin-j irrep in the quantum basis g_{z'}. z' = 0 gives the Lie matrices.
inline IrrepMatrices build_irrep(HalfInt j, DeformParam zprime) {
  require_nonzero_unit(zprime, "z'");
  auto rep = detail::empty_irrep(j, zprime.is_zero() ? BasisKind::lie() : BasisKind::quantum(zprime));
  for (int k = 1; k < rep.dim(); ++k) {
    const cplx c = ladder_coefficient(j, rep.weight(k), zprime);
    rep.xplus(k - 1, k) = c;
    rep.xminus(k, k - 1) = c;
  }
  return rep;
}

/// C+|j,m> = |j,m+1>(1 - delta_{j,m}),  C-|j,m> = |j,m-1>(1 - delta_{j,-m}).
inline IrrepMatrices build_crystal_irrep(HalfInt j) {
  auto rep = detail::empty_irrep(j, BasisKind::crystal());
  for (int k = 1; k < rep.dim(); ++k) {
    rep.xplus(k - 1, k) = 1.0;
    rep.xminus(k, k - 1) = 1.0;
  }
  return rep;
}

/// Builds any basis kind. Analytical substitutes z' = z and Lie substitutes
/// z' = 0 into the same quantum-basis builder.
inline IrrepMatrices build_irrep(HalfInt j, BasisKind kind, DeformParam z = {}) {
  switch (kind.tag()) {
    case BasisKind::Tag::Crystal: return build_crystal_irrep(j);
    case BasisKind::Tag::Analytical: {
      auto rep = build_irrep(j, z);
      rep.kind = BasisKind::analytical(z);
      return rep;
    }
    case BasisKind::Tag::Lie: return build_irrep(j, DeformParam());
    case BasisKind::Tag::Quantum: return build_irrep(j, kind.zprime());
  }
  return build_irrep(j, kind.zprime());
}

/// max |[X+,X-] - [2 X3]_{q'}|
inline double commutator_defect(const GeneratorTriple& t, DeformParam zprime) {
  const Matrix rhs = matrix_function(t.x3, [zprime](cplx m) { return q_number(2.0 * m.real(), zprime); });
  return max_norm(commutator(t.xplus, t.xminus) - rhs);
}

inline double commutator_defect(const IrrepMatrices& rep, DeformParam zprime) {
  if (rep.kind.is_crystal()) throw InvalidArgument("commutator_defect is undefined on the crystal basis");
  return commutator_defect(rep.triple(), zprime);
}

/// [1]_{q'} X+X- + [X3 - 1/2]_{q'}^2; equals [j+1/2]_{q'}^2 on a spin-j irrep.
inline Matrix q_casimir_operator(const GeneratorTriple& t, DeformParam zprime) {
  const Matrix g = matrix_function(t.x3, [zprime](cplx m) {
    const cplx v = q_number(m.real() - 0.5, zprime);
    return v * v;
  });
  return q_number(1.0, zprime) * (t.xplus * t.xminus) + g;
}

inline Matrix q_casimir_operator(const IrrepMatrices& rep, DeformParam zprime) {
  if (rep.kind.is_crystal()) throw InvalidArgument("q_casimir_operator needs a quantum basis");
  return q_casimir_operator(rep.triple(), zprime);
}

/// sqrt(1/4 + {L+,L-}/2 + L3^2) - 1/2, which is j times the identity.
inline Matrix lie_casimir_j(const IrrepMatrices& rep) {
  if (!rep.kind.is_lie()) throw NonLieBasis("lie_casimir_j requires the Lie basis, got " + rep.kind.name());
  const auto d = rep.dim();
  const Matrix inner = 0.25 * identity(d) + 0.5 * anticommutator(rep.xplus, rep.xminus) + rep.x3 * rep.x3;
  return matrix_function(inner, [](cplx x) { return std::sqrt(x); }) - 0.5 * identity(d);
}

/// sum_{k=0}^{2j} (C-)^k C3 (1 - C-C+) (C+)^k. C+ is nilpotent of order 2j+1,
/// so the truncation is exact.
inline Matrix crystal_casimir_j(const IrrepMatrices& rep) {
  if (!rep.kind.is_crystal()) throw NonCrystalBasis("crystal_casimir_j requires the crystal basis, got " + rep.kind.name());
  const auto d = rep.dim();
  const Matrix core = rep.x3 * (identity(d) - rep.xminus * rep.xplus);
  Matrix lower = identity(d);
  Matrix raise = identity(d);
  Matrix sum = Matrix::Zero(d, d);
  for (int k = 0; k <= rep.j.twice(); ++k) {
    sum += lower * core * raise;
    lower = lower * rep.xminus;
    raise = raise * rep.xplus;
  }
  return sum;
}

}  // namespace qbases
