#pragma once

// Change of basis between quantum bases g_z -> g_{z'} of one U_q(su(2)) irrep,
// and the renormalized operators whose z' -> infinity limit is the crystal basis.
//
// The prefactor multiplying J+- is an operator function of J3 standing to the
// left of J+-, so it is evaluated on the weight of the state J+- produces:
// for the entry out of |j,m>, [J3 -+ 1/2] becomes [m +- 1/2].

#include <string>

#include "qbases/repmod.hpp"

namespace qbases {

struct BasisChangeSpec {
  HalfInt j;
  DeformParam z;         // parameter of the source basis
  DeformParam z_target;  // parameter of the target basis

  void validate() const {
    require_spin(j);
    require_nonzero_unit(z, "z");
    require_nonzero_unit(z_target, "z_target");
  }
};

namespace detail {

inline std::string describe(HalfInt j, HalfInt m, DeformParam z) {
  return "j=" + j.str() + ", m=" + m.str() + ", z=(" + std::to_string(z.re()) + ", " + std::to_string(z.im()) + ")";
}

/// Scale factor taking the g_z ladder entry out of |j,m> (raising) to the g_{z'} one.
/// Each square root is taken separately on the principal branch, so the
/// factor is the continuation of 1 from z' = z.
inline cplx change_factor(HalfInt j, HalfInt m, DeformParam z, DeformParam zt) {
  const double jh = j.value() + 0.5;
  const double mh = m.value() + 0.5;
  const cplx source = q_number_sq_diff(jh, mh, z);
  if (source == cplx(0.0, 0.0) || (detail::sinh_vanishes(jh + mh, z.value()) || detail::sinh_vanishes(jh - mh, z.value())))
    throw DegenerateDenominator("[j+1/2]^2 - [m+1/2]^2 vanishes in change_basis at " + describe(j, m, z));
  const cplx target = q_number_sq_diff(jh, mh, zt);
  return (principal_sqrt(target) * principal_sqrt(q_number(1.0, z))) / (principal_sqrt(source) * principal_sqrt(q_number(1.0, zt)));
}

}  // namespace detail

/// Maps an irrep built at spec.z into the basis g_{spec.z_target} by scaling
/// ladder entries. This is not a similarity transformation.
inline IrrepMatrices change_basis(const IrrepMatrices& rep, const BasisChangeSpec& spec) {
  spec.validate();
  if (rep.kind.is_crystal()) throw InvalidArgument("change_basis needs a quantum-basis source");
  if (rep.j != spec.j) throw InvalidArgument("change_basis: rep has j=" + rep.j.str() + " but spec has j=" + spec.j.str());
  if (spec.z_target == spec.z) return rep;

  IrrepMatrices out = rep;
  out.kind = spec.z_target.is_zero() ? BasisKind::lie() : BasisKind::quantum(spec.z_target);
  for (int k = 1; k < rep.dim(); ++k) {
    const cplx f = detail::change_factor(rep.j, rep.weight(k), spec.z, spec.z_target);
    out.xplus(k - 1, k) = f * rep.xplus(k - 1, k);
    out.xminus(k, k - 1) = f * rep.xminus(k, k - 1);
  }
  return out;
}

/// C+-^{q'} = sqrt([1]_{q'}) / [j+1/2]_{q'} K+-; entries sqrt(1 - ([m+-1/2]/[j+1/2])^2).
inline IrrepMatrices renormalized_crystal_ops(HalfInt j, DeformParam zprime) {
  auto rep = detail::empty_irrep(j, zprime.is_zero() ? BasisKind::lie() : BasisKind::quantum(zprime));
  const double jh = j.value() + 0.5;
  for (int k = 1; k < rep.dim(); ++k) {
    const cplx r = q_ratio(rep.weight(k).value() + 0.5, jh, zprime);
    const cplx c = principal_sqrt(1.0 - r * r);
    rep.xplus(k - 1, k) = c;
    rep.xminus(k, k - 1) = c;
  }
  return rep;
}

/// Max-norm distance between the renormalized operators at real z' and the crystal matrices.
inline double crystal_limit_defect(HalfInt j, double zprime_real) {
  if (!(zprime_real > 0.0)) throw InvalidArgument("crystal_limit_defect needs z' > 0");
  const auto renorm = renormalized_crystal_ops(j, DeformParam(zprime_real));
  const auto crystal = build_crystal_irrep(j);
  return max_distance(renorm.triple(), crystal.triple());
}

/// C+- = sqrt([1]_q) / sqrt([j+1/2]_q^2 - [J3 -+ 1/2]_q^2) J+- applied to an
/// irrep built at z. A vanishing denominator only occurs on the highest-weight
/// edge, where the operator is defined to annihilate the state.
inline IrrepMatrices crystal_from_quantum(const IrrepMatrices& rep, DeformParam z) {
  require_nonzero_unit(z, "z");
  IrrepMatrices out = rep;
  out.kind = BasisKind::crystal();
  const double jh = rep.j.value() + 0.5;
  const cplx unit = principal_sqrt(q_number(1.0, z));
  for (int k = 1; k < rep.dim(); ++k) {
    const double mh = rep.weight(k).value() + 0.5;
    const cplx den = q_number_sq_diff(jh, mh, z);
    const cplx f = den == cplx(0.0, 0.0) ? cplx(0.0, 0.0) : unit / principal_sqrt(den);
    out.xplus(k - 1, k) = f * rep.xplus(k - 1, k);
    out.xminus(k, k - 1) = f * rep.xminus(k, k - 1);
  }
  return out;
}

}  // namespace qbases
