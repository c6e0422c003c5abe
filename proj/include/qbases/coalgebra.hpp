#pragma once

// Coproducts on tensor products of generator triples. Kronecker ordering is
// "left factor slow": index (a, b) of V_left (x) V_right maps to a * dim(right) + b.

#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "qbases/basis_map.hpp"
#include "qbases/convergence.hpp"

namespace qbases {

struct TensorRep {
  GeneratorTriple left;
  GeneratorTriple right;
  DeformParam z;       // the Hopf algebra U_q(su(2)), q = e^z
  DeformParam zprime;  // parameter of the commutation relations obeyed by the image
  Matrix d3;
  Matrix dplus;
  Matrix dminus;

  Eigen::Index dim() const { return d3.rows(); }
  GeneratorTriple image() const { return {d3, dplus, dminus}; }
};

namespace detail {

inline Matrix primitive_part(const Matrix& a, const Matrix& b) {
  return kron(a, identity(b.rows())) + kron(identity(a.rows()), b);
}

}  // namespace detail

/// Delta_0(X) = X (x) 1 + 1 (x) X.
inline TensorRep coproduct_primitive(const GeneratorTriple& a, const GeneratorTriple& b) {
  return {a,
          b,
          DeformParam(),
          DeformParam(),
          detail::primitive_part(a.x3, b.x3),
          detail::primitive_part(a.xplus, b.xplus),
          detail::primitive_part(a.xminus, b.xminus)};
}

/// delta(X3) = 0, delta(X+-) = z (X3 (x) X+- - X+- (x) X3).
inline GeneratorTriple cocommutator(const GeneratorTriple& a, const GeneratorTriple& b, DeformParam z) {
  const auto n = a.dim() * b.dim();
  const cplx zz = z.value();
  return {Matrix::Zero(n, n), zz * (kron(a.x3, b.xplus) - kron(a.xplus, b.x3)),
          zz * (kron(a.x3, b.xminus) - kron(a.xminus, b.x3))};
}

/// Delta(X3) = X3 (x) 1 + 1 (x) X3,  Delta(X+-) = q^{X3} (x) X+- + X+- (x) q^{-X3}.
inline TensorRep coproduct_analytical(const GeneratorTriple& a, const GeneratorTriple& b, DeformParam z) {
  const Matrix qa = exp_weight(a.x3, z.value());
  const Matrix qb_inv = exp_weight(b.x3, -z.value());
  return {a,
          b,
          z,
          z,
          detail::primitive_part(a.x3, b.x3),
          kron(qa, b.xplus) + kron(a.xplus, qb_inv),
          kron(qa, b.xminus) + kron(a.xminus, qb_inv)};
}

/// max of |[D3, D+-] -+ D+-| and |[D+, D-] - [2 D3]_{q'}| with q' = e^{t.zprime}.
inline double homomorphism_defect(const TensorRep& t) {
  return std::max(weight_grading_defect(t.image()), commutator_defect(t.image(), t.zprime));
}

/// |(Delta (x) 1) Delta - (1 (x) Delta) Delta| over X3, X+, X-, built from nested analytical coproducts.
inline double coassociativity_defect(const GeneratorTriple& a, const GeneratorTriple& b, const GeneratorTriple& c,
                                     DeformParam z) {
  const auto left_first = coproduct_analytical(coproduct_analytical(a, b, z).image(), c, z);
  const auto right_first = coproduct_analytical(a, coproduct_analytical(b, c, z).image(), z);
  return max_distance(left_first.image(), right_first.image());
}

/// P M P^T where P swaps the two tensor legs; the result acts on V_b (x) V_a.
inline Matrix flip_conjugate(const Matrix& m, Eigen::Index da, Eigen::Index db) {
  const Matrix p = flip_permutation(da, db);
  return p * m * p.transpose();
}

/// Block decomposition of an analytical tensor product into spin-J irreps.
/// Columns of `intertwiner` are the vectors |J, M>, grouped by J descending,
/// normalized so that D+- act on each block exactly as build_irrep(J, z).
struct IrrepDecomposition {
  std::vector<HalfInt> spins;
  std::vector<int> offsets;
  Matrix intertwiner;
  Matrix inverse;
};

/// Highest-weight extraction: for every weight M, the null space of D+ on the
/// D3 = M eigenspace gives the new highest-weight vectors, then D- generates
/// the rest of each block. Null space: singular values below 1e-8 |D+|_2.
inline IrrepDecomposition decompose(const TensorRep& t, HalfInt j1, HalfInt j2) {
  const auto n = t.dim();
  std::vector<double> weights(n);
  for (Eigen::Index i = 0; i < n; ++i) weights[i] = t.d3(i, i).real();
  if (!is_diagonal(t.d3)) throw DecompositionFailure("decompose expects a diagonal weight operator");

  const HalfInt top = j1 + j2;
  const HalfInt bottom = HalfInt::from_twice(std::abs(j1.twice() - j2.twice()));
  const double scale = n > 0 ? Eigen::JacobiSVD<Matrix>(t.dplus).singularValues()(0) : 0.0;
  const double cutoff = 1e-8 * std::max(scale, 1e-300);

  IrrepDecomposition out;
  out.intertwiner = Matrix::Zero(n, n);
  int column = 0;
  for (HalfInt spin = top; spin >= bottom; spin = spin - HalfInt::from_twice(2)) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < n; ++i)
      if (std::abs(weights[i] - spin.value()) < 1e-9) idx.push_back(i);
    Matrix restricted(n, static_cast<Eigen::Index>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c) restricted.col(c) = t.dplus.col(idx[c]);

    Eigen::JacobiSVD<Matrix> svd(restricted, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k)
      if (sv(k) > cutoff) ++rank;
    const int nullity = static_cast<int>(idx.size()) - rank;
    if (nullity != 1)
      throw DecompositionFailure("weight " + spin.str() + " has " + std::to_string(nullity) +
                                 " highest-weight vectors, expected 1 (retry at higher precision)");

    Vector hw = Vector::Zero(n);
    const Vector nullvec = svd.matrixV().col(static_cast<Eigen::Index>(idx.size()) - 1);
    for (std::size_t c = 0; c < idx.size(); ++c) hw(idx[c]) = nullvec(c);

    out.spins.push_back(spin);
    out.offsets.push_back(column);
    Vector state = hw;
    out.intertwiner.col(column++) = state;
    for (int k = 1; k < spin.dim(); ++k) {
      // |J, M-1> := D- |J, M> / c(J, M-1), so D- matches the spin-J ladder entry exactly.
      const HalfInt m_lower = spin - HalfInt::from_twice(2 * k);
      const cplx c = ladder_coefficient(spin, m_lower, t.z);
      if (std::abs(c) == 0.0) throw DecompositionFailure("vanishing ladder coefficient in block " + spin.str());
      state = (t.dminus * state) / c;
      out.intertwiner.col(column++) = state;
    }
  }
  if (column != n) throw DecompositionFailure("decomposition covered " + std::to_string(column) + " of " + std::to_string(n) + " dimensions");
  Eigen::FullPivLU<Matrix> lu(out.intertwiner);
  if (!lu.isInvertible()) throw DecompositionFailure("intertwiner is singular");
  out.inverse = lu.inverse();
  return out;
}

/// Delta(K+-) of the quantum basis g_{z'} inside U_q(su(2)). The analytical
/// coproduct at z is decomposed into spin-J blocks, each block is carried to
/// g_{z'} by change_basis, and the result is conjugated back. Delta(K3) = Delta(J3).
/// The legs of the returned TensorRep are the K irreps at z'.
inline TensorRep coproduct_quantum(HalfInt j1, HalfInt j2, DeformParam z, DeformParam zprime) {
  require_nonzero_unit(z, "z");
  require_nonzero_unit(zprime, "z'");
  const auto a = build_irrep(j1, z);
  const auto b = build_irrep(j2, z);
  const TensorRep analytical = coproduct_analytical(a.triple(), b.triple(), z);

  TensorRep out = analytical;
  out.left = build_irrep(j1, zprime).triple();
  out.right = build_irrep(j2, zprime).triple();
  out.zprime = zprime;
  if (zprime == z) return out;

  const auto dec = decompose(analytical, j1, j2);
  const auto n = analytical.dim();
  Matrix block_plus = Matrix::Zero(n, n);
  Matrix block_minus = Matrix::Zero(n, n);
  for (std::size_t s = 0; s < dec.spins.size(); ++s) {
    const HalfInt spin = dec.spins[s];
    const auto mapped = change_basis(build_irrep(spin, z), {spin, z, zprime});
    block_plus.block(dec.offsets[s], dec.offsets[s], spin.dim(), spin.dim()) = mapped.xplus;
    block_minus.block(dec.offsets[s], dec.offsets[s], spin.dim(), spin.dim()) = mapped.xminus;
  }
  out.dplus = dec.intertwiner * block_plus * dec.inverse;
  out.dminus = dec.intertwiner * block_minus * dec.inverse;
  return out;
}

/// r(z) = |Delta_z(J+-) - Delta_0(J+-) - delta_z(J+-)| on spin j1 (x) spin j2,
/// legs taken as the analytical irreps at z; returns the log-log slope of r against z.
inline ConvergenceFit bialgebra_limit_defect(HalfInt j1, HalfInt j2, std::span<const double> z_sequence) {
  validate_sequence(z_sequence);
  std::vector<double> residuals;
  residuals.reserve(z_sequence.size());
  double scale = 0.0;
  for (double zval : z_sequence) {
    const DeformParam z(zval);
    const auto a = build_irrep(j1, z).triple();
    const auto b = build_irrep(j2, z).triple();
    const auto full = coproduct_analytical(a, b, z);
    const auto prim = coproduct_primitive(a, b);
    const auto delta = cocommutator(a, b, z);
    scale = std::max({scale, max_norm(full.dplus), max_norm(full.dminus)});
    residuals.push_back(std::max(max_norm(full.dplus - prim.dplus - delta.xplus),
                                 max_norm(full.dminus - prim.dminus - delta.xminus)));
  }
  return fit_order(z_sequence, residuals, kRoundoffFloor * std::max(scale, 1.0));
}

}  // namespace qbases
