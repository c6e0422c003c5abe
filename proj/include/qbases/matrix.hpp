#pragma once

// Dense complex matrix helpers shared by the representation and coproduct code.

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <functional>

#include "qbases/scalar.hpp"

namespace qbases {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Largest absolute entry; 0 for an empty matrix.
inline double max_norm(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

inline Matrix anticommutator(const Matrix& a, const Matrix& b) { return a * b + b * a; }

/// Kronecker product, left factor varying slowest.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out = Eigen::kroneckerProduct(a, b).eval();
  return out;
}

inline Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

inline bool is_diagonal(const Matrix& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (r != c && m(r, c) != cplx(0.0, 0.0)) return false;
  return true;
}

/// f(A) for a diagonalizable A. Diagonal input is handled entrywise;
/// otherwise A = V diag(lambda) V^{-1} is used.
inline Matrix matrix_function(const Matrix& a, const std::function<cplx(cplx)>& f) {
  const auto n = a.rows();
  if (is_diagonal(a)) {
    Matrix out = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) out(i, i) = f(a(i, i));
    return out;
  }
  Eigen::ComplexEigenSolver<Matrix> es(a);
  const Matrix& v = es.eigenvectors();
  Vector d = es.eigenvalues().unaryExpr([&](cplx x) { return f(x); });
  return v * d.asDiagonal() * v.inverse();
}

/// exp(z X) for a weight operator X (diagonalizable, real spectrum).
inline Matrix exp_weight(const Matrix& x3, cplx z) {
  return matrix_function(x3, [z](cplx lambda) { return std::exp(z * lambda); });
}

/// Permutation P on C^{da} (x) C^{db} with P (a (x) b) = b (x) a.
inline Matrix flip_permutation(Eigen::Index da, Eigen::Index db) {
  Matrix p = Matrix::Zero(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index k = 0; k < db; ++k) p(k * da + i, i * db + k) = 1.0;
  return p;
}

/// Three matrices (X3, X+, X-) acting on a common space. Irreps, coproduct
/// images and nested coproduct images all share this shape.
struct GeneratorTriple {
  Matrix x3;
  Matrix xplus;
  Matrix xminus;

  Eigen::Index dim() const { return x3.rows(); }

  const Matrix& operator[](int which) const {
    switch (which) {
      case 0: return x3;
      case 1: return xplus;
      default: return xminus;
    }
  }
};

/// max(|[X3,X+] - X+|, |[X3,X-] + X-|)
inline double weight_grading_defect(const GeneratorTriple& t) {
  return std::max(max_norm(commutator(t.x3, t.xplus) - t.xplus),
                  max_norm(commutator(t.x3, t.xminus) + t.xminus));
}

inline double max_distance(const GeneratorTriple& a, const GeneratorTriple& b) {
  return std::max({max_norm(a.x3 - b.x3), max_norm(a.xplus - b.xplus), max_norm(a.xminus - b.xminus)});
}

}  // namespace qbases
