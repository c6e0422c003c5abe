#pragma once

// Invariant suite over fixed parameter grids. Each registered check produces
// one CheckReport per grid point; reports are returned sorted by check name,
// then by the canonical rendering of their parameters.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qbases/series.hpp"

namespace qbases {

using ParamValue = std::variant<long, double, std::string, cplx>;
using ParamMap = std::map<std::string, ParamValue>;

struct CheckReport {
  std::string check;
  ParamMap parameters;
  double residual = 0.0;
  double threshold = 0.0;
  std::optional<double> slope;
  std::optional<double> slope_threshold;
  bool passed = false;
  /// Error kind and message when the check raised instead of producing a residual.
  std::string note;
  double runtime_ms = 0.0;
};

/// passed <=> residual <= threshold and (no slope or slope >= slope_threshold).
inline bool report_passes(const CheckReport& r) {
  if (!r.note.empty()) return false;
  if (!(r.residual <= r.threshold)) return false;
  if (r.slope && r.slope_threshold && !(*r.slope >= *r.slope_threshold)) return false;
  return true;
}

struct ParameterGrid {
  std::vector<HalfInt> spins;
  std::vector<DeformParam> z;
  std::vector<DeformParam> zprime;
  std::vector<double> t;
  /// Real z' values for the crystal limit, increasing.
  std::vector<double> crystal_zprime;
  /// Largest leg spin used by the triple-tensor coassociativity check.
  HalfInt max_coassoc_spin = HalfInt::from_twice(2);

  static ParameterGrid default_grid() {
    ParameterGrid g;
    for (int tj = 0; tj <= 4; ++tj) g.spins.push_back(HalfInt::from_twice(tj));
    g.z = {DeformParam(0.0), DeformParam(0.3), DeformParam(0.9), DeformParam(0.0, 0.4), DeformParam(0.3, 0.4),
           DeformParam(-0.3)};
    g.zprime = g.z;
    g.t = default_t_sequence();
    g.crystal_zprime = {5.0, 10.0, 20.0, 40.0};
    return g;
  }

  void validate() const {
    if (spins.empty() || z.empty() || zprime.empty()) throw InvalidArgument("parameter grid has an empty axis");
    for (auto j : spins) require_spin(j);
    validate_sequence(t);
    if (crystal_zprime.empty()) throw InvalidArgument("crystal z' sequence is empty");
  }
};

struct SuiteOptions {
  /// Multiplies every residual threshold (not slope thresholds).
  double tol_scale = 1.0;
};

inline const std::vector<std::string>& registered_checks() {
  static const std::vector<std::string> names = {
      "bialgebra_limit", "casimir_crystal", "casimir_lie", "casimir_q",  "change_basis_roundtrip",
      "coassociativity", "commutator",      "crystal_limit", "flip_symmetry", "homomorphism",
      "series:DI",       "series:DK",       "series:DK3",    "series:I",      "series:K",
      "zprime_parity"};
  return names;
}

inline bool is_registered_check(const std::string& name) {
  const auto& names = registered_checks();
  return std::find(names.begin(), names.end(), name) != names.end();
}

/// Deterministic text rendering used for sorting and CSV output.
inline std::string format_param(const ParamValue& v) {
  char buf[96];
  if (const auto* i = std::get_if<long>(&v)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&v)) {
    std::snprintf(buf, sizeof buf, "%.17g", *d);
    return buf;
  }
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  const auto c = std::get<cplx>(v);
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", c.real(), c.imag());
  return buf;
}

inline std::string format_params(const ParamMap& p) {
  std::string out;
  for (const auto& [k, v] : p) out += (out.empty() ? "" : ";") + k + "=" + format_param(v);
  return out;
}

namespace detail {

inline void put_spin(ParamMap& p, const std::string& key, HalfInt j) {
  p[key] = j.str();
  p["two_" + key] = static_cast<long>(j.twice());
}

class SuiteRunner {
public:
  SuiteRunner(const ParameterGrid& grid, const SuiteOptions& opt) : grid_(grid), scale_(opt.tol_scale) {}

  std::vector<CheckReport> run(const std::string& name) {
    reports_.clear();
    if (name == "commutator") commutator();
    else if (name == "casimir_lie") casimir_lie();
    else if (name == "casimir_q") casimir_q();
    else if (name == "casimir_crystal") casimir_crystal();
    else if (name == "change_basis_roundtrip") change_basis_roundtrip();
    else if (name == "crystal_limit") crystal_limit();
    else if (name == "homomorphism") homomorphism();
    else if (name == "coassociativity") coassociativity();
    else if (name == "bialgebra_limit") bialgebra_limit();
    else if (name == "series:K") series(name, {SeriesCase::KSeries});
    else if (name == "series:I") series(name, {SeriesCase::ISeries, SeriesCase::JOfISeries, SeriesCase::DeltaISeries});
    else if (name == "series:DK") series(name, {SeriesCase::DKSeries});
    else if (name == "series:DK3") series(name, {SeriesCase::DK3Truncation});
    else if (name == "series:DI") series(name, {SeriesCase::DITruncation});
    else if (name == "zprime_parity") zprime_parity();
    else if (name == "flip_symmetry") flip_symmetry();
    else throw UnknownCheck("unknown check: " + name);
    return std::move(reports_);
  }

private:
  using Clock = std::chrono::steady_clock;

  /// Runs `body`, which fills residual (and optionally slope fields) of the report.
  void record(const std::string& check, ParamMap params, double threshold,
              const std::function<void(CheckReport&)>& body) {
    CheckReport r;
    r.check = check;
    r.parameters = std::move(params);
    r.threshold = threshold * scale_;
    const auto start = Clock::now();
    try {
      body(r);
    } catch (const Error& e) {
      r.note = std::string(e.kind()) + ": " + e.what();
      r.residual = 0.0;
    }
    r.runtime_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    r.passed = report_passes(r);
    reports_.push_back(std::move(r));
  }

  /// Slope-type report: residual is r(t_min), threshold is r(t_max) or the
  /// round-off floor if larger (the residual must not grow), slope compared
  /// against `required`. No slope is reported when the residual is round-off.
  static void fill_fit(CheckReport& r, const ConvergenceFit& fit, double required) {
    const auto lo = std::min_element(fit.t.begin(), fit.t.end()) - fit.t.begin();
    const auto hi = std::max_element(fit.t.begin(), fit.t.end()) - fit.t.begin();
    r.residual = fit.residuals[lo];
    r.threshold = std::max(fit.residuals[hi], fit.noise_floor);
    r.slope = fit.slope;
    r.slope_threshold = required;
  }

  void commutator() {
    for (auto j : grid_.spins)
      for (auto zp : grid_.zprime) {
        ParamMap p;
        put_spin(p, "j", j);
        p["z_prime"] = zp.value();
        record("commutator", p, 1e-10, [&](CheckReport& r) {
          const auto rep = build_irrep(j, zp);
          r.residual = std::max(commutator_defect(rep, zp), weight_grading_defect(rep.triple()));
        });
      }
  }

  void casimir_lie() {
    for (auto j : grid_.spins) {
      ParamMap p;
      put_spin(p, "j", j);
      record("casimir_lie", p, 1e-10, [&](CheckReport& r) {
        const auto rep = build_irrep(j, BasisKind::lie());
        r.residual = max_norm(lie_casimir_j(rep) - j.value() * identity(rep.dim()));
      });
    }
  }

  void casimir_q() {
    for (auto j : grid_.spins)
      for (auto zp : grid_.zprime) {
        ParamMap p;
        put_spin(p, "j", j);
        p["z_prime"] = zp.value();
        record("casimir_q", p, 1e-10, [&](CheckReport& r) {
          const auto rep = build_irrep(j, zp);
          const cplx v = q_number(j.value() + 0.5, zp);
          r.residual = max_norm(q_casimir_operator(rep, zp) - v * v * identity(rep.dim()));
        });
      }
  }

  void casimir_crystal() {
    for (auto j : grid_.spins) {
      ParamMap p;
      put_spin(p, "j", j);
      record("casimir_crystal", p, 1e-13, [&](CheckReport& r) {
        const auto rep = build_crystal_irrep(j);
        r.residual = max_norm(crystal_casimir_j(rep) - j.value() * identity(rep.dim()));
      });
    }
  }

  void change_basis_roundtrip() {
    for (auto j : grid_.spins)
      for (auto z : grid_.z)
        for (auto zp : grid_.zprime) {
          ParamMap p;
          put_spin(p, "j", j);
          p["z"] = z.value();
          p["z_prime"] = zp.value();
          p["part"] = std::string("forward");
          record("change_basis_roundtrip", p, 1e-10, [&](CheckReport& r) {
            const auto mapped = change_basis(build_irrep(j, z), {j, z, zp});
            r.residual = max_distance(mapped.triple(), build_irrep(j, zp).triple());
          });
          p["part"] = std::string("roundtrip");
          record("change_basis_roundtrip", p, 1e-9, [&](CheckReport& r) {
            const auto source = build_irrep(j, z);
            const auto back = change_basis(change_basis(source, {j, z, zp}), {j, zp, z});
            r.residual = max_distance(back.triple(), source.triple());
          });
        }
  }

  void crystal_limit() {
    for (auto j : grid_.spins) {
      ParamMap p;
      put_spin(p, "j", j);
      p["z_prime"] = grid_.crystal_zprime.back();
      p["part"] = std::string("defect");
      record("crystal_limit", p, 1e-6, [&](CheckReport& r) {
        r.residual = crystal_limit_defect(j, grid_.crystal_zprime.back());
      });
      p.erase("z_prime");
      p["part"] = std::string("monotone");
      // Largest increase of the defect along the increasing z' sequence; must be 0.
      record("crystal_limit", p, 0.0, [&](CheckReport& r) {
        double prev = crystal_limit_defect(j, grid_.crystal_zprime.front());
        for (std::size_t k = 1; k < grid_.crystal_zprime.size(); ++k) {
          const double cur = crystal_limit_defect(j, grid_.crystal_zprime[k]);
          r.residual = std::max(r.residual, cur - prev);
          prev = cur;
        }
      });
    }
  }

  void homomorphism() {
    for (auto j1 : grid_.spins)
      for (auto j2 : grid_.spins)
        for (auto z : grid_.z) {
          ParamMap p;
          put_spin(p, "j1", j1);
          put_spin(p, "j2", j2);
          p["z"] = z.value();
          p["form"] = std::string("analytical");
          record("homomorphism", p, 1e-10, [&](CheckReport& r) {
            r.residual = homomorphism_defect(
                coproduct_analytical(build_irrep(j1, z).triple(), build_irrep(j2, z).triple(), z));
          });
          p["form"] = std::string("quantum");
          for (auto zp : grid_.zprime) {
            p["z_prime"] = zp.value();
            // Absolute 1e-9 for products of size up to 1; larger blocks near a root of unity
            // carry entries in the thousands, so the bound scales with |D+| |D-|.
            record("homomorphism", p, 1e-9, [&](CheckReport& r) {
              const auto t = coproduct_quantum(j1, j2, z, zp);
              r.residual = homomorphism_defect(t);
              r.threshold *= std::max(1.0, max_norm(t.dplus) * max_norm(t.dminus));
            });
          }
        }
  }

  void coassociativity() {
    std::vector<HalfInt> legs;
    for (auto j : grid_.spins)
      if (j <= grid_.max_coassoc_spin) legs.push_back(j);
    for (auto a : legs)
      for (auto b : legs)
        for (auto c : legs)
          for (auto z : grid_.z) {
            ParamMap p;
            put_spin(p, "j1", a);
            put_spin(p, "j2", b);
            put_spin(p, "j3", c);
            p["z"] = z.value();
            record("coassociativity", p, 1e-9, [&](CheckReport& r) {
              r.residual = coassociativity_defect(build_irrep(a, z).triple(), build_irrep(b, z).triple(),
                                                  build_irrep(c, z).triple(), z);
            });
          }
  }

  void bialgebra_limit() {
    for (auto j1 : grid_.spins)
      for (auto j2 : grid_.spins) {
        ParamMap p;
        put_spin(p, "j1", j1);
        put_spin(p, "j2", j2);
        record("bialgebra_limit", p, 0.0,
               [&](CheckReport& r) { fill_fit(r, bialgebra_limit_defect(j1, j2, grid_.t), 1.9); });
      }
  }

  void series(const std::string& check, std::initializer_list<SeriesCase> cases) {
    for (SeriesCase kind : cases) {
      const bool pinned = is_lie_case(kind);
      std::vector<HalfInt> rights = is_coproduct_case(kind) ? grid_.spins : std::vector<HalfInt>{HalfInt()};
      std::vector<DeformParam> zps = pinned ? std::vector<DeformParam>{DeformParam()} : grid_.zprime;
      for (auto j1 : grid_.spins)
        for (auto j2 : rights)
          for (auto z0 : grid_.z)
            for (auto z0p : zps) {
              ParamMap p;
              p["case"] = std::string(series_case_name(kind));
              if (is_coproduct_case(kind)) {
                put_spin(p, "j1", j1);
                put_spin(p, "j2", j2);
              } else {
                put_spin(p, "j", j1);
              }
              p["z0"] = z0.value();
              if (!pinned) p["z0_prime"] = z0p.value();
              record(check, p, 0.0, [&](CheckReport& r) {
                fill_fit(r, series_order_fit(kind, {j1, j2, z0, z0p}, grid_.t), required_slope(kind));
              });
            }
    }
  }

  void zprime_parity() {
    for (auto j : grid_.spins)
      for (auto zp : grid_.zprime) {
        ParamMap p;
        put_spin(p, "j", j);
        p["z_prime"] = zp.value();
        record("zprime_parity", p, 1e-13, [&](CheckReport& r) {
          r.residual = max_distance(build_irrep(j, zp).triple(), build_irrep(j, -zp).triple());
        });
      }
  }

  void flip_symmetry() {
    for (auto j1 : grid_.spins)
      for (auto j2 : grid_.spins)
        for (auto z : grid_.z) {
          ParamMap p;
          put_spin(p, "j1", j1);
          put_spin(p, "j2", j2);
          p["z"] = z.value();
          record("flip_symmetry", p, 1e-12, [&](CheckReport& r) {
            const auto a = build_irrep(j1, z).triple();
            const auto b = build_irrep(j2, z).triple();
            const auto minus = coproduct_analytical(a, b, -z);
            const auto swapped = coproduct_analytical(b, a, z);
            const auto da = a.dim(), db = b.dim();
            // Conjugating the (b, a) coproduct by the flip lands on V_a (x) V_b.
            r.residual = std::max({max_norm(minus.d3 - flip_conjugate(swapped.d3, db, da)),
                                   max_norm(minus.dplus - flip_conjugate(swapped.dplus, db, da)),
                                   max_norm(minus.dminus - flip_conjugate(swapped.dminus, db, da))});
          });
        }
  }

  const ParameterGrid& grid_;
  double scale_;
  std::vector<CheckReport> reports_;
};

}  // namespace detail

/// "all" expands to every registered check; unknown names raise UnknownCheck.
inline std::vector<std::string> resolve_selection(const std::vector<std::string>& selection) {
  std::vector<std::string> out;
  for (const auto& name : selection) {
    if (name == "all") {
      out.insert(out.end(), registered_checks().begin(), registered_checks().end());
    } else if (!is_registered_check(name)) {
      throw UnknownCheck("unknown check: " + name);
    } else {
      out.push_back(name);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<CheckReport> run_suite(const ParameterGrid& grid, const std::vector<std::string>& selection,
                                          const SuiteOptions& options = {}) {
  const auto names = resolve_selection(selection);
  if (names.empty()) return {};
  grid.validate();
  detail::SuiteRunner runner(grid, options);
  std::vector<CheckReport> all;
  for (const auto& name : names) {
    auto part = runner.run(name);
    std::move(part.begin(), part.end(), std::back_inserter(all));
  }
  std::stable_sort(all.begin(), all.end(), [](const CheckReport& a, const CheckReport& b) {
    if (a.check != b.check) return a.check < b.check;
    return format_params(a.parameters) < format_params(b.parameters);
  });
  return all;
}

inline bool all_passed(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.passed; });
}

}  // namespace qbases
