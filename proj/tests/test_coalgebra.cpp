#include <algorithm>

#include "test_support.hpp"

using namespace qbases;
using namespace qbases::testing;

namespace {

GeneratorTriple lie(int two_j) { return build_irrep(spin(two_j), DeformParam()).triple(); }
GeneratorTriple at(int two_j, DeformParam z) { return build_irrep(spin(two_j), z).triple(); }

std::vector<double> sorted_real(const Eigen::VectorXcd& v) {
  std::vector<double> out;
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i).real());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Primitive, Examples) {
  const auto s = coproduct_primitive(lie(0), lie(0));
  EXPECT_EQ(s.dim(), 1);
  EXPECT_EQ(s.dplus(0, 0), cplx(0.0));

  const auto t = coproduct_primitive(lie(1), lie(1));
  Matrix d3 = Matrix::Zero(4, 4);
  d3.diagonal() << 1, 0, 0, -1;
  EXPECT_EQ(t.d3, d3);

  const auto u = coproduct_primitive(lie(1), lie(2));
  EXPECT_LE(max_norm(commutator(u.dplus, u.dminus) - 2.0 * u.d3), 1e-13);
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b) EXPECT_LE(homomorphism_defect(coproduct_primitive(lie(a), lie(b))), 1e-12);
}

TEST(Cocommutator, Examples) {
  const auto zero = cocommutator(lie(1), lie(2), DeformParam());
  EXPECT_EQ(max_norm(zero.x3) + max_norm(zero.xplus) + max_norm(zero.xminus), 0.0);

  const auto d = cocommutator(lie(1), lie(1), DeformParam(1.0));
  // X3 (x) X+ raises the right leg with the left weight, X+ (x) X3 the left leg with the right weight.
  Matrix ref = Matrix::Zero(4, 4);
  ref(0, 1) = 0.5;
  ref(2, 3) = -0.5;
  ref(0, 2) = -0.5;
  ref(1, 3) = 0.5;
  EXPECT_LE(max_norm(d.xplus - ref), 1e-15);
  EXPECT_EQ(max_norm(d.x3), 0.0);
}

TEST(Cocommutator, AntisymmetricUnderFlip) {
  for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 3}}) {
    const DeformParam z(0.3, 0.4);
    const auto ab = cocommutator(lie(a), lie(b), z);
    const auto ba = cocommutator(lie(b), lie(a), z);
    EXPECT_LE(max_norm(flip_conjugate(ab.xplus, a + 1, b + 1) + ba.xplus), 1e-13);
    EXPECT_LE(max_norm(flip_conjugate(ab.xminus, a + 1, b + 1) + ba.xminus), 1e-13);
  }
}

TEST(Analytical, ZeroIsPrimitive) {
  const auto a = coproduct_analytical(lie(2), lie(3), DeformParam());
  const auto p = coproduct_primitive(lie(2), lie(3));
  EXPECT_EQ(a.dplus, p.dplus);
  EXPECT_EQ(a.dminus, p.dminus);
  EXPECT_EQ(a.d3, p.d3);
}

TEST(Analytical, SpinHalfTopRow) {
  const DeformParam z(0.6);
  const auto t = coproduct_analytical(at(1, z), at(1, z), z);
  const double leg = std::sqrt(std::sinh(0.6) / 0.6);
  EXPECT_NEAR(std::abs(t.dplus(0, 1) - std::exp(0.3) * leg), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(t.dplus(0, 2) - std::exp(-0.3) * leg), 0.0, 1e-15);
  EXPECT_EQ(t.dplus(0, 0), cplx(0.0));
  EXPECT_EQ(t.dplus(0, 3), cplx(0.0));
}

TEST(Analytical, Homomorphism) {
  EXPECT_LE(homomorphism_defect(coproduct_analytical(at(1, 0.8), at(1, 0.8), DeformParam(0.8))), 1e-11);
  const DeformParam zc(0.3, 0.4);
  EXPECT_LE(homomorphism_defect(coproduct_analytical(at(2, zc), at(3, zc), zc)), 1e-10);
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b)
      for (auto z : small_params()) {
        const auto t = coproduct_analytical(at(a, z), at(b, z), z);
        EXPECT_EQ(t.d3, coproduct_primitive(at(a, z), at(b, z)).d3);
        EXPECT_LE(homomorphism_defect(t), 1e-10);
      }
}

TEST(Analytical, OracleFromDiagonalWeight) {
  // [D+, D-] compared with [2 D3] built entrywise from the diagonal of D3.
  const DeformParam z(0.0, 0.7);
  const auto t = coproduct_analytical(at(2, z), at(3, z), z);
  Matrix f = Matrix::Zero(t.dim(), t.dim());
  for (Eigen::Index i = 0; i < t.dim(); ++i) f(i, i) = qnum_reference(2.0 * t.d3(i, i).real(), z.value());
  EXPECT_LE(max_norm(commutator(t.dplus, t.dminus) - f), 1e-10);
}

TEST(Coassociativity, Examples) {
  EXPECT_LE(coassociativity_defect(lie(2), lie(1), lie(2), DeformParam()), 1e-12);
  const DeformParam z(0.5);
  EXPECT_LE(coassociativity_defect(at(1, z), at(1, z), at(1, z), z), 1e-10);
  EXPECT_LE(coassociativity_defect(at(1, DeformParam(0, 0.2)), at(2, DeformParam(0, 0.2)), at(1, DeformParam(0, 0.2)),
                                   DeformParam(0, 0.2)),
            1e-9);
}

TEST(Coassociativity, TripleKroneckerOracle) {
  const DeformParam z(0.5);
  const auto a = at(1, z);
  const Matrix qp = exp_weight(a.x3, z.value()), qm = exp_weight(a.x3, -z.value());
  const Matrix ref = kron(kron(qp, qp), a.xplus) + kron(kron(qp, a.xplus), qm) + kron(kron(a.xplus, qm), qm);
  const auto left = coproduct_analytical(coproduct_analytical(a, a, z).image(), a, z);
  const auto right = coproduct_analytical(a, coproduct_analytical(a, a, z).image(), z);
  EXPECT_LE(max_norm(left.dplus - ref), 1e-13);
  EXPECT_LE(max_norm(right.dplus - ref), 1e-13);
}

TEST(Analytical, FlipSymmetry) {
  for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 4}, {3, 0}})
    for (auto z : small_params()) {
      const auto minus = coproduct_analytical(at(a, z), at(b, z), -z);
      const auto swapped = coproduct_analytical(at(b, z), at(a, z), z);
      EXPECT_LE(max_norm(minus.dplus - flip_conjugate(swapped.dplus, b + 1, a + 1)), 1e-12);
      EXPECT_LE(max_norm(minus.dminus - flip_conjugate(swapped.dminus, b + 1, a + 1)), 1e-12);
      EXPECT_LE(max_norm(minus.d3 - flip_conjugate(swapped.d3, b + 1, a + 1)), 1e-12);
    }
}

TEST(Decompose, RejectsNonDiagonalWeight) {
  auto t = coproduct_analytical(at(1, 0.3), at(1, 0.3), DeformParam(0.3));
  t.d3(0, 1) = 0.1;
  EXPECT_THROW(decompose(t, spin(1), spin(1)), DecompositionFailure);
}

TEST(Decompose, BlocksMatchIrreps) {
  const DeformParam z(0.3, 0.4);
  const auto t = coproduct_analytical(at(2, z), at(3, z), z);
  const auto dec = decompose(t, spin(2), spin(3));
  ASSERT_EQ(dec.spins.size(), 3u);
  const Matrix block_plus = dec.inverse * t.dplus * dec.intertwiner;
  for (std::size_t s = 0; s < dec.spins.size(); ++s) {
    const auto irrep = build_irrep(dec.spins[s], z);
    const int o = dec.offsets[s], d = irrep.dim();
    EXPECT_LE(max_norm(block_plus.block(o, o, d, d) - irrep.xplus), 1e-10);
  }
}

TEST(Quantum, SameParameterIsAnalytical) {
  const DeformParam z(0.3, 0.4);
  const auto q = coproduct_quantum(spin(2), spin(3), z, z);
  const auto a = coproduct_analytical(at(2, z), at(3, z), z);
  EXPECT_LE(max_distance(q.image(), a.image()), 1e-10);
}

TEST(Quantum, LieBasisDuality) {
  const DeformParam z(0.4);
  const auto q = coproduct_quantum(spin(1), spin(1), z, DeformParam());
  EXPECT_LE(max_norm(commutator(q.dplus, q.dminus) - 2.0 * q.d3), 1e-10);
  EXPECT_LE(homomorphism_defect(q), 1e-10);
  const auto prim = coproduct_primitive(lie(1), lie(1));
  EXPECT_GT(max_norm(q.dplus - prim.dplus), 0.1);
  // The first-order difference is the co-commutator; what is left is O(z^2).
  const auto delta = cocommutator(lie(1), lie(1), z);
  const double first = max_norm(q.dplus - prim.dplus);
  const double rest = max_norm(q.dplus - prim.dplus - delta.xplus);
  EXPECT_LT(rest, 0.25 * first);
}

TEST(Quantum, HomomorphismAtTargetParameter) {
  EXPECT_LE(homomorphism_defect(coproduct_quantum(spin(1), spin(2), DeformParam(0.3), DeformParam(0.7))), 1e-9);
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      for (auto [z, zp] : std::vector<std::pair<DeformParam, DeformParam>>{
               {0.3, 0.7}, {DeformParam(0, 0.4), 0.0}, {DeformParam(0.3, 0.4), DeformParam(-0.3)}}) {
        const auto q = coproduct_quantum(spin(a), spin(b), z, zp);
        EXPECT_EQ(q.d3, coproduct_primitive(at(a, z), at(b, z)).d3);
        EXPECT_LE(homomorphism_defect(q), 1e-9);
      }
}

TEST(Quantum, CasimirSpectrum) {
  for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 4}})
    for (auto [z, zp] : std::vector<std::pair<DeformParam, DeformParam>>{{0.3, 0.7}, {0.9, 0.0}, {0.0, 0.5}}) {
      const auto q = coproduct_quantum(spin(a), spin(b), z, zp);
      const Matrix c = q_casimir_operator(q.image(), zp);
      const auto got = sorted_real(Eigen::ComplexEigenSolver<Matrix>(c).eigenvalues());
      std::vector<double> want;
      for (int tj = std::abs(a - b); tj <= a + b; tj += 2) {
        const double top = qnum_reference(0.5 * tj + 0.5, zp.value()).real();
        for (int k = 0; k <= tj; ++k) want.push_back(top * top);
      }
      std::sort(want.begin(), want.end());
      ASSERT_EQ(got.size(), want.size());
      for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-9 * std::max(1.0, want[i]));
    }
}

TEST(Quantum, DirectOperatorFunctionRoute) {
  // Oracle at j1 = j2 = 1/2: the basis change as operator functions of the
  // tensor-space Casimir and D3, evaluated in their joint eigenbasis.
  const double zr = 0.4;
  for (double zpr : {0.7, 0.0}) {
    const DeformParam z(zr), zp(zpr);
    const auto t = coproduct_analytical(at(1, z), at(1, z), z);
    const Matrix cas = q_casimir_operator(t.image(), z);
    Eigen::ComplexEigenSolver<Matrix> es(cas + 0.1234 * t.d3);
    const Matrix v = es.eigenvectors();
    const Matrix vi = v.inverse();
    const Matrix cas_d = vi * cas * v, d3_d = vi * t.d3 * v;
    auto factor = [&](double post_weight_shift, const Matrix& ladder) {
      Matrix f = Matrix::Zero(4, 4);
      for (int i = 0; i < 4; ++i) {
        const double lambda = cas_d(i, i).real();
        const double total = std::asinh(zr * std::sqrt(lambda)) / zr - 0.5;  // J from [J+1/2]^2
        const double m = d3_d(i, i).real() + post_weight_shift;
        const cplx den = q_number_sq_diff(total + 0.5, m, z);
        if (std::abs(den) < 1e-12) continue;
        const cplx num = q_number_sq_diff(total + 0.5, m, zp);
        f(i, i) = std::sqrt(q_number(1.0, z) / q_number(1.0, zp)) * std::sqrt(num / den);
      }
      return Matrix(v * f * vi * ladder);
    };
    // Raising lands on weight M; the factor uses [M - 1/2]. Lowering uses [M + 1/2].
    const Matrix kp = factor(-0.5, t.dplus);
    const Matrix km = factor(0.5, t.dminus);
    const auto q = coproduct_quantum(spin(1), spin(1), z, zp);
    EXPECT_LE(max_norm(q.dplus - kp), 1e-10) << zpr;
    EXPECT_LE(max_norm(q.dminus - km), 1e-10) << zpr;
  }
}

TEST(BialgebraLimit, QuadraticOrder) {
  const auto ts = default_t_sequence();
  for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 1}, {2, 2}, {1, 4}}) {
    const auto fit = bialgebra_limit_defect(spin(a), spin(b), ts);
    ASSERT_TRUE(fit.slope.has_value());
    EXPECT_NEAR(*fit.slope, 2.0, 0.1);
  }
}

TEST(BialgebraLimit, RejectsDegenerateSequence) {
  const std::vector<double> one{0.1};
  EXPECT_THROW(bialgebra_limit_defect(spin(1), spin(1), one), InvalidSequence);
  const std::vector<double> narrow{0.1, 0.05};
  EXPECT_THROW(bialgebra_limit_defect(spin(1), spin(1), narrow), InvalidSequence);
}
