// qbases: build quantum-basis matrices, coproducts and basis changes, and run
// the verification suite. Exit codes: 0 ok, 1 verification failed, 2 usage or
// parameter error (structured JSON on stderr).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qbases/io.hpp"
#include "qbases/qbases.hpp"

namespace {

using namespace qbases;
using io::json;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
  std::string format = "json";
  std::string out = "-";
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", o.out, "Output path, '-' for stdout");
}

int emit(const io::OutputDocument& doc, const CommonOptions& o) {
  const std::string text = o.format == "csv" ? io::to_csv(doc) : io::to_canonical_json(doc);
  if (o.out == "-" || o.out == "stdout") {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw InvalidArgument("cannot open output file: " + o.out);
  f << text;
  return kExitOk;
}

void emit_error(const std::string& kind, const std::string& message, const json& context = json::object()) {
  json err = {{"error", {{"kind", kind}, {"message", message}}}};
  if (!context.empty()) err["error"]["context"] = context;
  std::cerr << io::canonical_json(err);
}

void put_param(json& params, const std::string& key, DeformParam z) { params[key] = io::to_json(z.value()); }

void put_triple(io::OutputDocument& doc, const std::string& prefix, const GeneratorTriple& t) {
  doc.matrices.emplace_back(prefix + "3", t.x3);
  doc.matrices.emplace_back(prefix + "+", t.xplus);
  doc.matrices.emplace_back(prefix + "-", t.xminus);
}

struct IrrepArgs {
  std::string j;
  std::string basis;
  std::optional<std::string> z;
  std::optional<std::string> zprime;
  CommonOptions common;
};

io::OutputDocument cmd_irrep(const IrrepArgs& a, json& context) {
  const HalfInt j = require_spin(HalfInt::parse(a.j));
  io::OutputDocument doc;
  doc.command = "irrep";
  io::put_spin(doc.parameters, "j", j);
  doc.parameters["basis"] = a.basis;
  context = doc.parameters;

  IrrepMatrices rep;
  if (a.basis == "crystal") {
    if (a.z || a.zprime) throw InvalidArgument("--z and --z-prime do not apply to the crystal basis");
    rep = build_crystal_irrep(j);
  } else if (a.basis == "lie") {
    if (a.z || a.zprime) throw InvalidArgument("--z and --z-prime do not apply to the Lie basis");
    rep = build_irrep(j, BasisKind::lie());
  } else if (a.basis == "analytical") {
    if (a.zprime) throw InvalidArgument("--z-prime does not apply to the analytical basis, use --z");
    if (!a.z) throw InvalidArgument("--z is required for the analytical basis");
    const DeformParam z = io::parse_complex(*a.z);
    put_param(doc.parameters, "z", z);
    context = doc.parameters;
    rep = build_irrep(j, BasisKind::analytical(z), z);
  } else {
    if (a.z) throw InvalidArgument("--z does not apply to the quantum basis irrep, use --z-prime");
    if (!a.zprime) throw InvalidArgument("--z-prime is required for the quantum basis");
    const DeformParam zp = io::parse_complex(*a.zprime);
    put_param(doc.parameters, "z_prime", zp);
    context = doc.parameters;
    rep = build_irrep(j, zp);
  }
  put_triple(doc, "X", rep.triple());
  return doc;
}

struct CoproductArgs {
  std::string j1, j2, z;
  std::optional<std::string> zprime;
  CommonOptions common;
};

io::OutputDocument cmd_coproduct(const CoproductArgs& a, json& context) {
  const HalfInt j1 = require_spin(HalfInt::parse(a.j1));
  const HalfInt j2 = require_spin(HalfInt::parse(a.j2));
  const DeformParam z = io::parse_complex(a.z);
  io::OutputDocument doc;
  doc.command = "coproduct";
  io::put_spin(doc.parameters, "j1", j1);
  io::put_spin(doc.parameters, "j2", j2);
  put_param(doc.parameters, "z", z);
  doc.parameters["ordering"] = "left factor slow: (a, b) -> a * dim(j2) + b";
  context = doc.parameters;

  TensorRep t;
  if (a.zprime) {
    const DeformParam zp = io::parse_complex(*a.zprime);
    put_param(doc.parameters, "z_prime", zp);
    context = doc.parameters;
    t = coproduct_quantum(j1, j2, z, zp);
  } else {
    require_nonzero_unit(z, "z");
    t = coproduct_analytical(build_irrep(j1, z).triple(), build_irrep(j2, z).triple(), z);
  }
  put_triple(doc, "D", t.image());
  return doc;
}

struct ChangeBasisArgs {
  std::string j, z, z_target;
  CommonOptions common;
};

io::OutputDocument cmd_change_basis(const ChangeBasisArgs& a, json& context) {
  const HalfInt j = require_spin(HalfInt::parse(a.j));
  const DeformParam z = io::parse_complex(a.z);
  const DeformParam target = io::parse_complex(a.z_target);
  io::OutputDocument doc;
  doc.command = "change-basis";
  io::put_spin(doc.parameters, "j", j);
  put_param(doc.parameters, "z", z);
  put_param(doc.parameters, "z_target", target);
  context = doc.parameters;

  const auto source = build_irrep(j, z);
  const auto mapped = change_basis(source, {j, z, target});
  const auto expected = build_irrep(j, target);
  put_triple(doc, "source.X", source.triple());
  put_triple(doc, "target.X", expected.triple());
  put_triple(doc, "mapped.X", mapped.triple());
  doc.residual = max_distance(mapped.triple(), expected.triple());
  return doc;
}

struct VerifyArgs {
  std::string checks = "all";
  std::string grid = "default";
  std::optional<double> tol_scale;
  bool timing = false;
  CommonOptions common;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

double tol_scale_from_env() {
  const char* env = std::getenv("QBASES_TOL_SCALE");
  if (!env || !*env) return 1.0;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(env, &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used != std::string(env).size()) throw InvalidArgument(std::string("bad QBASES_TOL_SCALE: ") + env);
  return v;
}

io::OutputDocument cmd_verify(const VerifyArgs& a, json& context) {
  SuiteOptions opts;
  opts.tol_scale = a.tol_scale ? *a.tol_scale : tol_scale_from_env();
  if (!(opts.tol_scale > 0.0) || !std::isfinite(opts.tol_scale))
    throw InvalidArgument("tolerance scale must be a positive finite number");
  const auto grid = a.grid == "default" ? ParameterGrid::default_grid() : io::load_grid(a.grid);
  const auto selection = resolve_selection(split_list(a.checks));

  io::OutputDocument doc;
  doc.command = "verify";
  doc.parameters["checks"] = selection;
  doc.parameters["grid"] = a.grid;
  doc.parameters["tol_scale"] = opts.tol_scale;
  context = doc.parameters;
  doc.reports = run_suite(grid, selection, opts);
  doc.has_reports = true;
  doc.with_timing = a.timing;
  return doc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-basis representations, coproducts and verification suite"};
  app.require_subcommand(1);

  IrrepArgs irrep;
  auto* c_irrep = app.add_subcommand("irrep", "Matrices X3, X+, X- of a spin-j irrep");
  c_irrep->add_option("--j", irrep.j, "Spin, e.g. 3/2 or 1.5")->required();
  c_irrep->add_option("--basis", irrep.basis, "Basis kind")
      ->required()
      ->check(CLI::IsMember({"lie", "analytical", "quantum", "crystal"}));
  c_irrep->add_option("--z", irrep.z, "Deformation z as re[,im] (analytical basis)");
  c_irrep->add_option("--z-prime", irrep.zprime, "Basis parameter z' as re[,im] (quantum basis)");
  add_common(c_irrep, irrep.common);

  CoproductArgs copr;
  auto* c_copr = app.add_subcommand("coproduct", "Coproduct D3, D+, D- on spin j1 (x) spin j2");
  c_copr->add_option("--j1", copr.j1, "Left spin")->required();
  c_copr->add_option("--j2", copr.j2, "Right spin")->required();
  c_copr->add_option("--z", copr.z, "Deformation z as re[,im]")->required();
  c_copr->add_option("--z-prime", copr.zprime, "Quantum basis parameter z' (default: analytical, z' = z)");
  add_common(c_copr, copr.common);

  ChangeBasisArgs cb;
  auto* c_cb = app.add_subcommand("change-basis", "Map a spin-j irrep from basis z to basis z-target");
  c_cb->add_option("--j", cb.j, "Spin")->required();
  c_cb->add_option("--z", cb.z, "Source basis parameter as re[,im]")->required();
  c_cb->add_option("--z-target", cb.z_target, "Target basis parameter as re[,im]")->required();
  add_common(c_cb, cb.common);

  VerifyArgs ver;
  auto* c_ver = app.add_subcommand("verify", "Run verification checks over a parameter grid");
  c_ver->add_option("--checks", ver.checks, "Comma-separated check names or 'all'");
  c_ver->add_option("--grid", ver.grid, "'default' or path to a JSON grid file");
  c_ver->add_option("--tol-scale", ver.tol_scale, "Multiplier on absolute thresholds (env QBASES_TOL_SCALE)");
  c_ver->add_flag("--timing", ver.timing, "Include per-check runtime_ms (output no longer deterministic)");
  add_common(c_ver, ver.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error("UsageError", e.what());
    return kExitUsage;
  }

  json context = json::object();
  try {
    if (c_irrep->parsed()) return emit(cmd_irrep(irrep, context), irrep.common);
    if (c_copr->parsed()) return emit(cmd_coproduct(copr, context), copr.common);
    if (c_cb->parsed()) return emit(cmd_change_basis(cb, context), cb.common);
    const auto doc = cmd_verify(ver, context);
    emit(doc, ver.common);
    return all_passed(doc.reports) ? kExitOk : kExitFailed;
  } catch (const Error& e) {
    emit_error(e.kind(), e.what(), context);
    return kExitUsage;
  }
}
