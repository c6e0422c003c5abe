#pragma once

// Output documents (schema_version "1") and their canonical JSON / CSV forms.
//
// Canonical JSON: object keys sorted, floats written with 17 significant
// digits, complex numbers as [re, im], matrices row-major as arrays of rows.
// Parsing a canonical document and writing it again reproduces it byte for byte.

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qbases/verify.hpp"

namespace qbases::io {

using json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

inline json to_json(cplx c) { return json::array({c.real(), c.imag()}); }

inline json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const json& rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto m = n == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(rows.at(0).size());
  Matrix out(n, m);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < m; ++c) {
      const auto& e = rows.at(r).at(c);
      out(r, c) = cplx(e.at(0).get<double>(), e.at(1).get<double>());
    }
  return out;
}

inline json to_json(const ParamValue& v) {
  return std::visit([](const auto& x) -> json {
    using T = std::decay_t<decltype(x)>;
    if constexpr (std::is_same_v<T, cplx>) return to_json(x);
    else return json(x);
  }, v);
}

inline json to_json(const ParamMap& p) {
  json out = json::object();
  for (const auto& [k, v] : p) out[k] = to_json(v);
  return out;
}

inline json to_json(const CheckReport& r, bool with_timing) {
  json out = {{"check", r.check},
              {"parameters", to_json(r.parameters)},
              {"residual", r.residual},
              {"threshold", r.threshold},
              {"passed", r.passed}};
  if (r.slope) out["slope"] = *r.slope;
  if (r.slope_threshold) out["slope_threshold"] = *r.slope_threshold;
  if (!r.note.empty()) out["note"] = r.note;
  if (with_timing) out["runtime_ms"] = r.runtime_ms;
  return out;
}

/// Spin parameter in both encodings: "3/2" and two_j = 3.
inline void put_spin(json& params, const std::string& key, HalfInt j) {
  params[key] = j.str();
  params["two_" + key] = j.twice();
}

struct OutputDocument {
  std::string command;
  json parameters = json::object();
  std::vector<std::pair<std::string, Matrix>> matrices;
  std::vector<CheckReport> reports;
  std::optional<double> residual;
  bool has_reports = false;
  bool with_timing = false;

  json to_json() const {
    json doc = {{"schema_version", kSchemaVersion}, {"command", command}, {"parameters", parameters}};
    if (!matrices.empty()) {
      json mats = json::object();
      for (const auto& [name, m] : matrices) mats[name] = io::to_json(m);
      doc["matrices"] = std::move(mats);
    }
    if (residual) doc["residual"] = *residual;
    if (has_reports) {
      json reps = json::array();
      for (const auto& r : reports) reps.push_back(io::to_json(r, with_timing));
      doc["reports"] = std::move(reps);
      doc["all_passed"] = all_passed(reports);
    }
    return doc;
  }
};

namespace detail {

inline std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline bool is_flat(const json& j) {
  if (!j.is_array()) return !j.is_object();
  for (const auto& e : j)
    if (e.is_object() || (e.is_array() && !is_flat(e))) return false;
  return true;
}

inline void write(std::string& out, const json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner + json(it.key()).dump() + ": ";
        write(out, it.value(), indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      if (is_flat(j)) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          write(out, j[i], indent + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        write(out, j[i], indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case json::value_t::number_float: out += format_double(j.get<double>()); return;
    default: out += j.dump(); return;
  }
}

}  // namespace detail

/// Canonical text form of any JSON value, newline terminated.
inline std::string canonical_json(const json& j) {
  std::string out;
  detail::write(out, j, 0);
  out += "\n";
  return out;
}

inline std::string to_canonical_json(const OutputDocument& doc) { return canonical_json(doc.to_json()); }

/// Matrices as rows "name,row,col,re,im"; reports as one row per report.
inline std::string to_csv(const OutputDocument& doc) {
  std::ostringstream os;
  if (!doc.matrices.empty()) {
    os << "name,row,col,re,im\n";
    for (const auto& [name, m] : doc.matrices)
      for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
          os << name << ',' << r << ',' << c << ',' << detail::format_double(m(r, c).real()) << ','
             << detail::format_double(m(r, c).imag()) << '\n';
  }
  if (doc.residual) os << "residual\n" << detail::format_double(*doc.residual) << '\n';
  if (doc.has_reports) {
    os << "check,parameters,residual,threshold,slope,slope_threshold,passed,note\n";
    for (const auto& r : doc.reports) {
      os << r.check << ",\"" << format_params(r.parameters) << "\"," << detail::format_double(r.residual) << ','
         << detail::format_double(r.threshold) << ',' << (r.slope ? detail::format_double(*r.slope) : "") << ','
         << (r.slope_threshold ? detail::format_double(*r.slope_threshold) : "") << ','
         << (r.passed ? "true" : "false") << ",\"" << r.note << "\"\n";
    }
  }
  return os.str();
}

/// Complex flag text "re" or "re,im".
inline DeformParam parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  try {
    std::size_t used = 0;
    if (comma == std::string::npos) {
      const double re = std::stod(text, &used);
      if (used != text.size()) throw InvalidArgument("");
      return DeformParam(re);
    }
    const std::string a = text.substr(0, comma), b = text.substr(comma + 1);
    const double re = std::stod(a, &used);
    if (used != a.size()) throw InvalidArgument("");
    const double im = std::stod(b, &used);
    if (used != b.size()) throw InvalidArgument("");
    return DeformParam(re, im);
  } catch (const std::logic_error&) {
    throw InvalidArgument("bad complex value '" + text + "', expected re[,im]");
  } catch (const InvalidArgument&) {
    throw InvalidArgument("bad complex value '" + text + "', expected re[,im]");
  }
}

namespace detail {

inline DeformParam param_from_json(const json& v) {
  if (v.is_number()) return DeformParam(v.get<double>());
  if (v.is_array() && v.size() == 2) return DeformParam(v[0].get<double>(), v[1].get<double>());
  if (v.is_string()) return parse_complex(v.get<std::string>());
  throw InvalidArgument("grid deformation parameters must be numbers, [re, im] pairs or \"re,im\" strings");
}

inline HalfInt spin_from_json(const json& v) {
  if (v.is_string()) return require_spin(HalfInt::parse(v.get<std::string>()));
  if (v.is_number()) return require_spin(HalfInt::from_double(v.get<double>()));
  throw InvalidArgument("grid spins must be strings like \"3/2\" or numbers");
}

}  // namespace detail

/// Grid file: any of "spins", "z", "z_prime", "t", "crystal_z_prime",
/// "max_coassoc_spin"; missing keys keep their default values.
inline ParameterGrid grid_from_json(const json& j) {
  auto g = ParameterGrid::default_grid();
  if (!j.is_object()) throw InvalidArgument("grid file must hold a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& key = it.key();
    const auto& v = it.value();
    if (key == "spins") {
      g.spins.clear();
      for (const auto& e : v) g.spins.push_back(detail::spin_from_json(e));
    } else if (key == "z" || key == "z_prime") {
      std::vector<DeformParam> vals;
      for (const auto& e : v) vals.push_back(detail::param_from_json(e));
      (key == "z" ? g.z : g.zprime) = std::move(vals);
    } else if (key == "t" || key == "crystal_z_prime") {
      (key == "t" ? g.t : g.crystal_zprime) = v.get<std::vector<double>>();
    } else if (key == "max_coassoc_spin") {
      g.max_coassoc_spin = detail::spin_from_json(v);
    } else {
      throw InvalidArgument("unknown grid key: " + key);
    }
  }
  return g;
}

inline ParameterGrid load_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open grid file: " + path);
  try {
    return grid_from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw InvalidArgument("malformed grid file " + path + ": " + e.what());
  }
}

}  // namespace qbases::io
