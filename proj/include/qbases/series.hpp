#pragma once

// Truncated perturbative series for the basis maps and coproducts, compared
// against the exact constructions under joint scaling z = t z0, z' = t z0'.
// The fitted slope of the max-norm residual against t measures the order of
// the neglected terms.

#include <array>
#include <string>
#include <string_view>

#include "qbases/coalgebra.hpp"
#include "qbases/ncpoly.hpp"

namespace qbases {

enum class SeriesCase {
  KSeries,         // K+- = J+- + (z'^2-z^2)/3 S(J3^2 J+-) + (z'^2-z^2)/6 S(J+-^2 J-+) + o(4)
  ISeries,         // same at z' = 0, I in terms of J
  JOfISeries,      // inverse at z' = 0, J in terms of I
  DeltaISeries,    // Delta(I+-) = Delta(J+-) - z^2/3 Delta(S(J3^2 J+-)) - z^2/6 Delta(S(J+-^2 J-+)) + o(4)
  DKSeries,        // Delta(K+-) in terms of K legs with the Delta_0 bracket corrections, + o(4)
  DK3Truncation,   // Delta(K+-) = Delta_0(K+-) + z (K3 (x) K+- - K+- (x) K3) + o(3)
  DITruncation,    // same at z' = 0
};

inline constexpr std::array<SeriesCase, 7> kAllSeriesCases = {
    SeriesCase::KSeries,  SeriesCase::ISeries,       SeriesCase::JOfISeries,  SeriesCase::DeltaISeries,
    SeriesCase::DKSeries, SeriesCase::DK3Truncation, SeriesCase::DITruncation};

inline std::string_view series_case_name(SeriesCase c) {
  switch (c) {
    case SeriesCase::KSeries: return "K-series";
    case SeriesCase::ISeries: return "I-series";
    case SeriesCase::JOfISeries: return "J-of-I-series";
    case SeriesCase::DeltaISeries: return "DeltaI-series";
    case SeriesCase::DKSeries: return "DK-series";
    case SeriesCase::DK3Truncation: return "DK3-truncation";
    case SeriesCase::DITruncation: return "DI-truncation";
  }
  return "?";
}

inline SeriesCase parse_series_case(std::string_view name) {
  for (auto c : kAllSeriesCases)
    if (series_case_name(c) == name) return c;
  throw InvalidArgument("unknown series case: " + std::string(name));
}

/// Generator order n of the neglected remainder o(n).
inline int truncation_order(SeriesCase c) {
  return (c == SeriesCase::DK3Truncation || c == SeriesCase::DITruncation) ? 3 : 4;
}

/// Minimum accepted slope: 0.3 below the claimed order.
inline double required_slope(SeriesCase c) { return truncation_order(c) - 0.3; }

inline bool is_coproduct_case(SeriesCase c) {
  return c == SeriesCase::DeltaISeries || c == SeriesCase::DKSeries || c == SeriesCase::DK3Truncation ||
         c == SeriesCase::DITruncation;
}

/// Cases whose z' is pinned to 0.
inline bool is_lie_case(SeriesCase c) {
  return c == SeriesCase::ISeries || c == SeriesCase::JOfISeries || c == SeriesCase::DeltaISeries ||
         c == SeriesCase::DITruncation;
}

struct SeriesParams {
  HalfInt j1;  // spin for single-irrep cases, left leg for coproduct cases
  HalfInt j2;  // right leg, ignored for single-irrep cases
  DeformParam z0;
  DeformParam z0prime;  // ignored when the case pins z' = 0
};

/// S(X3 X3 X_s)/3 + S(X_s X_s X_{-s})/6 for the ladder letter s.
inline NcPolynomial third_order_correction(Letter ladder) {
  const NcWord w1{Letter::X3, Letter::X3, ladder};
  const NcWord w2{ladder, ladder, opposite(ladder)};
  return symmetrize(w1) * cplx(1.0 / 3.0) + symmetrize(w2) * cplx(1.0 / 6.0);
}

namespace detail {

inline const Matrix& ladder(const GeneratorTriple& t, Letter l) { return l == Letter::Plus ? t.xplus : t.xminus; }

inline const Matrix& ladder(const TensorRep& t, Letter l) { return l == Letter::Plus ? t.dplus : t.dminus; }

/// Delta_0(P) - 1 (x) P - P (x) 1 on the legs a, b.
inline Matrix cross_terms(const NcPolynomial& p, const GeneratorTriple& a, const GeneratorTriple& b) {
  const auto prim = coproduct_primitive(a, b).image();
  return evaluate(p, prim) - kron(identity(a.dim()), evaluate(p, b)) - kron(evaluate(p, a), identity(b.dim()));
}

}  // namespace detail

struct SeriesResidual {
  double residual = 0.0;  // max-norm over X+ and X-
  double scale = 0.0;     // max-norm of the exact ladder matrices
};

/// Residual between the exact object and the truncated series at scale t.
inline SeriesResidual series_residual(SeriesCase kind, const SeriesParams& p, double t) {
  const DeformParam z = p.z0 * t;
  const DeformParam zp = is_lie_case(kind) ? DeformParam() : p.z0prime * t;
  const cplx zv = z.value();
  const cplx c = zp.value() * zp.value() - zv * zv;

  SeriesResidual out;
  for (Letter s : {Letter::Plus, Letter::Minus}) {
    const NcPolynomial corr = third_order_correction(s);
    Matrix diff;
    Matrix exact_ladder;
    switch (kind) {
      case SeriesCase::KSeries:
      case SeriesCase::ISeries: {
        const auto jrep = build_irrep(p.j1, z);
        const auto exact = change_basis(jrep, {p.j1, z, zp});
        exact_ladder = detail::ladder(exact.triple(), s);
        diff = exact_ladder - (detail::ladder(jrep.triple(), s) + c * evaluate(corr, jrep.triple()));
        break;
      }
      case SeriesCase::JOfISeries: {
        const auto irep = build_irrep(p.j1, DeformParam());
        const auto exact = change_basis(irep, {p.j1, DeformParam(), z});
        exact_ladder = detail::ladder(exact.triple(), s);
        diff = exact_ladder - (detail::ladder(irep.triple(), s) + zv * zv * evaluate(corr, irep.triple()));
        break;
      }
      case SeriesCase::DeltaISeries: {
        const auto exact = coproduct_quantum(p.j1, p.j2, z, zp);
        const auto dj = coproduct_analytical(build_irrep(p.j1, z).triple(), build_irrep(p.j2, z).triple(), z);
        exact_ladder = detail::ladder(exact, s);
        diff = exact_ladder - (detail::ladder(dj, s) + c * evaluate(corr, dj.image()));
        break;
      }
      case SeriesCase::DKSeries: {
        const auto exact = coproduct_quantum(p.j1, p.j2, z, zp);
        const auto& a = exact.left;
        const auto& b = exact.right;
        const auto base = coproduct_analytical(a, b, z);
        exact_ladder = detail::ladder(exact, s);
        diff = exact_ladder - (detail::ladder(base, s) + c * detail::cross_terms(corr, a, b));
        break;
      }
      case SeriesCase::DK3Truncation:
      case SeriesCase::DITruncation: {
        const auto exact = coproduct_quantum(p.j1, p.j2, z, zp);
        const auto prim = coproduct_primitive(exact.left, exact.right);
        const auto delta = cocommutator(exact.left, exact.right, z);
        exact_ladder = detail::ladder(exact, s);
        diff = exact_ladder - (detail::ladder(prim, s) + detail::ladder(delta, s));
        break;
      }
    }
    out.scale = std::max(out.scale, max_norm(exact_ladder));
    out.residual = std::max(out.residual, max_norm(diff));
  }
  return out;
}

/// Least-squares order of series_residual over the t sequence.
inline ConvergenceFit series_order_fit(SeriesCase kind, const SeriesParams& p, std::span<const double> t_sequence) {
  validate_sequence(t_sequence);
  std::vector<double> residuals;
  residuals.reserve(t_sequence.size());
  double scale = 0.0;
  for (double t : t_sequence) {
    const auto r = series_residual(kind, p, t);
    residuals.push_back(r.residual);
    scale = std::max(scale, r.scale);
  }
  return fit_order(t_sequence, residuals, kRoundoffFloor * std::max(scale, 1.0));
}

}  // namespace qbases
