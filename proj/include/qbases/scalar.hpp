#pragma once

// Deformation parameters, half-integers and the q-number kernels
// [n]_q = sinh(z n) / z used throughout the library.

#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <string>
#include <string_view>

#include "qbases/errors.hpp"

namespace qbases {

using cplx = std::complex<double>;

/// Complex deformation parameter z = log(q). Always finite; the crystal
/// point z' -> infinity is never stored here.
class DeformParam {
public:
  constexpr DeformParam() = default;
  DeformParam(double re, double im = 0.0) : DeformParam(cplx(re, im)) {}
  explicit DeformParam(cplx z) : z_(z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw InvalidArgument("deformation parameter must be finite");
  }

  cplx value() const { return z_; }
  double re() const { return z_.real(); }
  double im() const { return z_.imag(); }
  bool is_zero() const { return z_ == cplx(0.0, 0.0); }
  /// q = e^z
  cplx q() const { return std::exp(z_); }

  DeformParam operator-() const { return DeformParam(-z_); }
  DeformParam operator*(double t) const { return DeformParam(z_ * t); }
  friend bool operator==(const DeformParam&, const DeformParam&) = default;

private:
  cplx z_{0.0, 0.0};
};

/// Exact half-integer stored as twice its value.
class HalfInt {
public:
  constexpr HalfInt() = default;
  static constexpr HalfInt from_twice(int two_n) { return HalfInt(two_n); }

  static HalfInt from_double(double v) {
    const double twice = 2.0 * v;
    const double rounded = std::round(twice);
    if (!std::isfinite(v) || std::abs(twice - rounded) > 1e-12 || std::abs(rounded) > 1e6)
      throw InvalidArgument("not a half-integer: " + std::to_string(v));
    return HalfInt(static_cast<int>(rounded));
  }

  /// Accepts "3/2", "-1/2", "1.5" or "2".
  static HalfInt parse(std::string_view text) {
    const std::string s(text);
    if (s.empty()) throw InvalidArgument("empty half-integer");
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
      const std::string num = s.substr(0, slash);
      const std::string den = s.substr(slash + 1);
      if (den != "2" && den != "1") throw InvalidArgument("half-integer denominator must be 1 or 2: " + s);
      char* end = nullptr;
      const long n = std::strtol(num.c_str(), &end, 10);
      if (num.empty() || *end != '\0') throw InvalidArgument("bad half-integer numerator: " + s);
      return HalfInt(static_cast<int>(den == "2" ? n : 2 * n));
    }
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (*end != '\0') throw InvalidArgument("bad half-integer: " + s);
    return from_double(v);
  }

  constexpr int twice() const { return two_n_; }
  constexpr double value() const { return 0.5 * two_n_; }
  constexpr bool is_integer() const { return two_n_ % 2 == 0; }
  constexpr bool is_valid_spin() const { return two_n_ >= 0; }
  /// Dimension 2j+1 of the spin-j irrep.
  constexpr int dim() const { return two_n_ + 1; }

  /// "3/2", "1", "-1/2".
  std::string str() const {
    if (two_n_ % 2 == 0) return std::to_string(two_n_ / 2);
    return std::to_string(two_n_) + "/2";
  }

  constexpr HalfInt operator+(HalfInt o) const { return HalfInt(two_n_ + o.two_n_); }
  constexpr HalfInt operator-(HalfInt o) const { return HalfInt(two_n_ - o.two_n_); }
  constexpr HalfInt operator-() const { return HalfInt(-two_n_); }
  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

private:
  constexpr explicit HalfInt(int two_n) : two_n_(two_n) {}
  int two_n_ = 0;
};

/// True when m is an admissible weight of spin j.
inline bool is_weight_of(HalfInt m, HalfInt j) {
  return j.is_valid_spin() && std::abs(m.twice()) <= j.twice() && (j.twice() - m.twice()) % 2 == 0;
}

inline HalfInt require_spin(HalfInt j) {
  if (!j.is_valid_spin()) throw InvalidArgument("spin must be non-negative, got " + j.str());
  return j;
}

namespace detail {

// Below this |z n| the removable singularity of sinh(z n)/z is handled by series.
inline constexpr double kSeriesThreshold = 1e-3;
// Above this |Re(z n)| the exponent is carried separately from the mantissa.
inline constexpr double kScaledThreshold = 300.0;

/// sinh(w) = mantissa * exp(scale), with |mantissa| <= 1 and scale = |Re w|.
struct ScaledSinh {
  cplx mantissa;
  double scale;
};

inline ScaledSinh scaled_sinh(cplx w) {
  const double s = w.real() >= 0.0 ? 1.0 : -1.0;
  const cplx sw = s * w;
  const cplx phase = std::exp(cplx(0.0, sw.imag()));
  const cplx tail = 1.0 - std::exp(-2.0 * sw);
  return {s * phase * tail * 0.5, sw.real()};
}

/// sinh(w)/w for small |w|, Taylor series through w^8.
inline cplx sinhc_series(cplx w) {
  const cplx w2 = w * w;
  return 1.0 + w2 / 6.0 * (1.0 + w2 / 20.0 * (1.0 + w2 / 42.0 * (1.0 + w2 / 72.0)));
}

/// True when sinh(z n) vanishes for n != 0, i.e. z n is a nonzero multiple of i*pi.
inline bool sinh_vanishes(double n, cplx z) {
  if (n == 0.0) return true;
  const cplx w = z * n;
  if (std::abs(w) < 1.0) return false;
  return std::abs(scaled_sinh(w).mantissa) < 1e-12;
}

}  // namespace detail

/// [n]_q := sinh(z n)/z, equal to n at z = 0.
inline cplx q_number(double n, DeformParam z) {
  const cplx zz = z.value();
  const cplx w = zz * n;
  if (std::abs(w) < detail::kSeriesThreshold) return n * detail::sinhc_series(w);
  return std::sinh(w) / zz;
}

/// Direct (non-series) evaluation of sinh(z n)/z, kept for cross-checking the series branch.
inline cplx q_number_direct(double n, DeformParam z) { return std::sinh(z.value() * n) / z.value(); }

/// [a]_q^2 - [b]_q^2, evaluated as [a+b]_q [a-b]_q so that no cancellation
/// occurs and large |Re z| is handled through log-scaled sinh factors.
inline cplx q_number_sq_diff(double a, double b, DeformParam z) {
  const double sum = a + b;
  const double diff = a - b;
  const cplx zz = z.value();
  const double big = std::max(std::abs((zz * sum).real()), std::abs((zz * diff).real()));
  if (big < detail::kScaledThreshold) return q_number(sum, z) * q_number(diff, z);
  const auto s1 = detail::scaled_sinh(zz * sum);
  const auto s2 = detail::scaled_sinh(zz * diff);
  return s1.mantissa * s2.mantissa / (zz * zz) * std::exp(s1.scale + s2.scale);
}

/// [a]_q' / [b]_q' without overflow for large Re(z').
inline cplx q_ratio(double a, double b, DeformParam zp) {
  const cplx z = zp.value();
  if (detail::sinh_vanishes(b, z))
    throw DegenerateDenominator("[" + std::to_string(b) + "]_q' vanishes at z' = (" + std::to_string(zp.re()) +
                                ", " + std::to_string(zp.im()) + ")");
  const double big = std::max(std::abs((z * a).real()), std::abs((z * b).real()));
  if (big < detail::kScaledThreshold) return q_number(a, zp) / q_number(b, zp);
  const auto num = detail::scaled_sinh(z * a);
  const auto den = detail::scaled_sinh(z * b);
  return num.mantissa / den.mantissa * std::exp(num.scale - den.scale);
}

/// Throws DegenerateDenominator when [1]_q vanishes (z = i pi k, k != 0).
/// Principal square root with a zero imaginary part read as +0, so that
/// w and its parity image land on the same side of the branch cut.
inline cplx principal_sqrt(cplx w) {
  if (w.imag() == 0.0) w = cplx(w.real(), 0.0);
  return std::sqrt(w);
}

inline void require_nonzero_unit(DeformParam z, std::string_view what) {
  if (detail::sinh_vanishes(1.0, z.value()))
    throw DegenerateDenominator(std::string("[1]_q vanishes for ") + std::string(what) + " = (" +
                                std::to_string(z.re()) + ", " + std::to_string(z.im()) + ")");
}

}  // namespace qbases
