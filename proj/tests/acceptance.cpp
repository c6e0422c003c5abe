// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qbases/io.hpp"
#include "qbases/qbases.hpp"

using namespace qbases;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

HalfInt spin(int two_j) { return HalfInt::from_twice(two_j); }

std::vector<HalfInt> spins_up_to(int max_two_j) {
  std::vector<HalfInt> out;
  for (int t = 0; t <= max_two_j; ++t) out.push_back(spin(t));
  return out;
}

std::vector<DeformParam> twelve_params() {
  return {DeformParam(0.0),      DeformParam(0.1),       DeformParam(0.5),       DeformParam(1.0),
          DeformParam(-0.7),     DeformParam(0.0, 0.3),  DeformParam(0.0, -0.8), DeformParam(0.0, 1.0),
          DeformParam(0.3, 0.4), DeformParam(-0.5, 0.5), DeformParam(0.6, -0.6), DeformParam(-0.2, -0.9)};
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Outcome within(double worst, double tol) { return {worst <= tol, "max " + sci(worst) + " (tol " + sci(tol) + ")"}; }

Outcome commutator_identity() {
  double bracket = 0.0, grading = 0.0;
  for (auto j : spins_up_to(12))
    for (auto zp : twelve_params()) {
      const auto rep = build_irrep(j, zp);
      bracket = std::max(bracket, commutator_defect(rep, zp));
      grading = std::max(grading, weight_grading_defect(rep.triple()));
    }
  return {bracket <= 1e-10 && grading <= 1e-10,
          "[X+, X-] " + sci(bracket) + ", [X3, X+-] " + sci(grading) + " (tol 1e-10)"};
}

Outcome basis_change() {
  double forward = 0.0, round_trip = 0.0;
  for (auto j : spins_up_to(8))
    for (auto z : twelve_params())
      for (auto a : twelve_params()) {
        const auto src = build_irrep(j, z);
        const auto out = change_basis(src, {j, z, a});
        forward = std::max(forward, max_distance(out.triple(), build_irrep(j, a).triple()));
        const auto back = change_basis(out, {j, a, z});
        round_trip = std::max(round_trip, max_distance(back.triple(), src.triple()));
      }
  return {forward <= 1e-10 && round_trip <= 1e-9,
          "forward " + sci(forward) + " (tol 1e-10), round trip " + sci(round_trip) + " (tol 1e-09)"};
}

Outcome coproduct_homomorphism() {
  double worst = 0.0;
  for (auto j1 : spins_up_to(4))
    for (auto j2 : spins_up_to(4))
      for (auto z : twelve_params())
        worst = std::max(worst, homomorphism_defect(coproduct_analytical(build_irrep(j1, z).triple(),
                                                                         build_irrep(j2, z).triple(), z)));
  return within(worst, 1e-10);
}

Outcome coassociativity() {
  double worst = 0.0;
  for (auto a : spins_up_to(2))
    for (auto b : spins_up_to(2))
      for (auto c : spins_up_to(2))
        for (auto z : twelve_params())
          worst = std::max(worst, coassociativity_defect(build_irrep(a, z).triple(), build_irrep(b, z).triple(),
                                                         build_irrep(c, z).triple(), z));
  return within(worst, 1e-9);
}

Outcome bialgebra_limit() {
  const auto ts = default_t_sequence();
  double lowest = INFINITY;
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b) {
      const auto fit = bialgebra_limit_defect(spin(a), spin(b), ts);
      if (!fit.slope) return {false, "no slope for " + spin(a).str() + " (x) " + spin(b).str()};
      lowest = std::min(lowest, *fit.slope);
    }
  return {lowest >= 1.9, "min slope " + sci(lowest) + " (need >= 1.9)"};
}

Outcome perturbative_orders() {
  const auto reports = run_suite(ParameterGrid::default_grid(),
                                 {"series:K", "series:I", "series:DK", "series:DK3", "series:DI"}, {});
  std::map<std::string, double> lowest;
  std::map<std::string, int> failed;
  for (const auto& r : reports) {
    const auto name = std::get<std::string>(r.parameters.at("case"));
    if (!lowest.count(name)) lowest[name] = INFINITY, failed[name] = 0;
    if (r.slope) lowest[name] = std::min(lowest[name], *r.slope);
    if (!r.passed) ++failed[name];
  }
  bool ok = true;
  std::string detail;
  for (const auto& [name, s] : lowest) {
    const double need = required_slope(parse_series_case(name));
    ok = ok && failed[name] == 0;
    detail += (detail.empty() ? "" : ", ") + name + " min slope " + (std::isinf(s) ? "exact" : sci(s)) + " (need " +
              sci(need) + ")";
  }
  return {ok, detail};
}

Outcome lie_basis_duality() {
  double lie = 0.0, smallest_gap = INFINITY;
  for (auto j1 : spins_up_to(3))
    for (auto j2 : spins_up_to(3))
      for (auto z : {DeformParam(0.3), DeformParam(0.9), DeformParam(0.0, 0.4), DeformParam(0.3, 0.4)}) {
        const auto q = coproduct_quantum(j1, j2, z, DeformParam());
        lie = std::max(lie, homomorphism_defect(q));
        if (j1.twice() > 0 && j2.twice() > 0)
          smallest_gap = std::min(smallest_gap, max_norm(q.dplus - coproduct_primitive(q.left, q.right).dplus));
      }
  // First-order difference is delta; what remains falls off quadratically.
  const auto ts = default_t_sequence();
  double first_lo = INFINITY, first_hi = 0.0, rest = INFINITY;
  for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 2}}) {
    std::vector<double> diff, resid;
    for (double t : ts) {
      const DeformParam z(0.9 * t);
      const auto q = coproduct_quantum(spin(a), spin(b), z, DeformParam());
      const auto prim = coproduct_primitive(q.left, q.right);
      const auto delta = cocommutator(q.left, q.right, z);
      diff.push_back(max_norm(q.dplus - prim.dplus));
      resid.push_back(max_norm(q.dplus - prim.dplus - delta.xplus));
    }
    const auto f1 = fit_order(ts, diff), f2 = fit_order(ts, resid);
    if (!f1.slope || !f2.slope) return {false, "degenerate fit"};
    first_lo = std::min(first_lo, *f1.slope);
    first_hi = std::max(first_hi, *f1.slope);
    rest = std::min(rest, *f2.slope);
  }
  const bool ok = lie <= 1e-10 && smallest_gap > 1e-3 && first_lo >= 0.9 && first_hi <= 1.1 && rest >= 1.9;
  return {ok, "Lie relations " + sci(lie) + " (tol 1e-10), |DI - D0| >= " + sci(smallest_gap) + " with slope " +
                  sci(first_lo) + ".." + sci(first_hi) + ", |DI - D0 - delta| slope " + sci(rest) + " (need >= 1.9)"};
}

Outcome crystal_limit() {
  double at40 = 0.0, casimir = 0.0;
  bool monotone = true;
  for (auto j : spins_up_to(8)) {
    double prev = crystal_limit_defect(j, 5.0);
    for (double zp : {10.0, 20.0, 40.0}) {
      const double cur = crystal_limit_defect(j, zp);
      // strictly decreasing until the defect reaches exact zero
      if (cur > prev || (prev > 0.0 && cur == prev)) monotone = false;
      prev = cur;
    }
    at40 = std::max(at40, prev);
    const auto rep = build_crystal_irrep(j);
    casimir = std::max(casimir, max_norm(crystal_casimir_j(rep) - j.value() * identity(rep.dim())));
  }
  return {at40 <= 1e-6 && monotone && casimir <= 1e-13,
          "defect at 40: " + sci(at40) + " (tol 1e-06), monotone " + (monotone ? "yes" : "no") + ", crystal Casimir " +
              sci(casimir) + " (tol 1e-13)"};
}

Outcome casimir_identities() {
  double q = 0.0, lie = 0.0;
  for (auto j : spins_up_to(8)) {
    for (auto zp : twelve_params()) {
      const auto rep = build_irrep(j, zp);
      const cplx top = q_number(j.value() + 0.5, zp);
      q = std::max(q, max_norm(q_casimir_operator(rep, zp) - top * top * identity(rep.dim())));
    }
    const auto l = build_irrep(j, DeformParam());
    lie = std::max(lie, max_norm(lie_casimir_j(l) - j.value() * identity(l.dim())));
  }
  return {q <= 1e-10 && lie <= 1e-10, "quantum " + sci(q) + ", Lie " + sci(lie) + " (tol 1e-10)"};
}

Outcome symmetries() {
  double parity = 0.0, flip = 0.0;
  for (auto j : spins_up_to(8))
    for (auto zp : twelve_params())
      parity = std::max(parity, max_distance(build_irrep(j, zp).triple(), build_irrep(j, -zp).triple()));
  for (auto a : spins_up_to(4))
    for (auto b : spins_up_to(4))
      for (auto z : twelve_params()) {
        const auto ta = build_irrep(a, z).triple(), tb = build_irrep(b, z).triple();
        const auto minus = coproduct_analytical(ta, tb, -z);
        const auto swapped = coproduct_analytical(tb, ta, z);
        for (int k = 0; k < 3; ++k)
          flip = std::max(flip, max_norm(minus.image()[k] - flip_conjugate(swapped.image()[k], b.dim(), a.dim())));
      }
  return {parity <= 1e-13 && flip <= 1e-12,
          "z' parity " + sci(parity) + " (tol 1e-13), flip " + sci(flip) + " (tol 1e-12)"};
}

Outcome determinism() {
  auto render = [] {
    io::OutputDocument doc;
    doc.command = "verify";
    doc.reports = run_suite(ParameterGrid::default_grid(), {"all"}, {});
    doc.has_reports = true;
    return io::to_canonical_json(doc);
  };
  const std::string a = render(), b = render();
  return {a == b, std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 deformed commutator identity", commutator_identity},
      {"2 basis-change correctness", basis_change},
      {"3 coproduct homomorphism", coproduct_homomorphism},
      {"4 co-associativity", coassociativity},
      {"5 bialgebra limit", bialgebra_limit},
      {"6 perturbative orders", perturbative_orders},
      {"7 Lie-basis duality", lie_basis_duality},
      {"8 crystal limit", crystal_limit},
      {"9 Casimir identities", casimir_identities},
      {"10 symmetry suite", symmetries},
      {"11 determinism", determinism},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) ++failures;
    std::printf("[%s] %s: %s\n", o.passed ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
