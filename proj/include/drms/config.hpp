#pragma once

/// Run configuration: INI loading and the built-in example presets.

#include <array>
#include <charconv>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "drms/algebra.hpp"
#include "drms/errors.hpp"
#include "drms/expr.hpp"
#include "drms/spaces.hpp"
#include "drms/verify.hpp"
#include "drms/weierstrass.hpp"

namespace drms {

struct DomainSpec {
  double u_min = 1.0, u_max = 2.0, v_min = -1.0, v_max = 1.0;
  int nu = 101, nv = 101;
  double u0 = 1.0, v0 = 0.0;

  DomainGrid grid() const { return DomainGrid(u_min, u_max, v_min, v_max, nu, nv, u0, v0); }
};

struct OutputPaths {
  std::string report;         // validation summary
  std::string csv;            // validation per-node CSV
  std::string mesh;           // synthesized mesh CSV
  std::string verify_report;  // verification summary
  std::string verify_csv;     // verification per-node CSV
};

struct RunConfig {
  std::string name;  // preset name or config path
  SpaceKind space = SpaceKind::FirstKind;
  double c = 1.0;
  Algebra algebra = Algebra::Para;
  DomainSpec domain;
  std::array<std::string, 4> psi{"0", "0", "0", "0"};
  Point initial;
  ValidationTolerances validation;
  VerifyTolerances verification;
  OutputPaths output;
  // Closed-form coordinates (x, y, z, t) in u, v, when known.
  std::optional<std::array<std::string, 4>> reference;
  std::optional<std::array<std::string, 4>> derived_reference;
  std::string notes;

  SpaceModel model() const { return SpaceModel(space, c); }
  WeierstrassData data() const { return WeierstrassData::parse(psi, algebra); }
};

inline SpaceKind parse_space(const std::string& s) {
  if (s == "S41" || s == "s41") return SpaceKind::FirstKind;
  if (s == "S43" || s == "s43") return SpaceKind::SecondKind;
  throw InputError("unknown space '" + s + "' (expected S41 or S43)");
}

inline Algebra parse_algebra(const std::string& s) {
  if (s == "complex") return Algebra::Complex;
  if (s == "para" || s == "paracomplex") return Algebra::Para;
  throw InputError("unknown algebra '" + s + "' (expected complex or para)");
}

inline double parse_real(const std::string& key, const std::string& text) {
  double x = 0.0;
  const char* b = text.data();
  const char* e = b + text.size();
  while (b < e && *b == ' ') ++b;
  if (b < e && *b == '+') ++b;
  auto [ptr, ec] = std::from_chars(b, e, x);
  if (ec != std::errc{} || ptr != e) throw InputError("'" + key + "' is not a number: " + text);
  return x;
}

inline int parse_count(const std::string& key, const std::string& text) {
  int n = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  if (ec != std::errc{} || ptr != text.data() + text.size() || n < 2) {
    throw InputError("'" + key + "' must be an integer >= 2: " + text);
  }
  return n;
}

/// Parses "NUxNV".
inline std::pair<int, int> parse_grid_override(const std::string& text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) throw InputError("grid must look like NUxNV: " + text);
  return {parse_count("grid", text.substr(0, x)), parse_count("grid", text.substr(x + 1))};
}

/// INI loader. Sections: [space] [algebra] [domain] [psi] [initial]
/// [tolerances] [output]; unknown sections or keys are rejected.
inline RunConfig load_config_string(const std::string& text, const std::string& name = "config") {
  boost::property_tree::ptree pt;
  std::istringstream is(text);
  try {
    boost::property_tree::ini_parser::read_ini(is, pt);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw InputError(std::string("malformed config: ") + e.what());
  }
  static const std::map<std::string, std::set<std::string>> allowed = {
      {"space", {"model", "c"}},
      {"algebra", {"kind"}},
      {"domain", {"u_min", "u_max", "v_min", "v_max", "nu", "nv", "u0", "v0"}},
      {"psi", {"psi1", "psi2", "psi3", "psi4"}},
      {"initial", {"x", "y", "z", "t"}},
      {"tolerances",
       {"residual", "residual_fd", "condition_ii", "degeneracy_floor", "conformality", "tension",
        "density"}},
      {"output", {"report", "csv", "mesh", "verify_report", "verify_csv"}},
  };
  for (const auto& [section, body] : pt) {
    auto it = allowed.find(section);
    if (it == allowed.end() || body.empty()) {
      throw InputError("unknown config section or top-level key '" + section + "'");
    }
    for (const auto& [key, value] : body) {
      if (!it->second.count(key)) {
        throw InputError("unknown key '" + key + "' in section [" + section + "]");
      }
    }
  }
  auto get = [&](const std::string& path) -> std::optional<std::string> {
    if (auto v = pt.get_optional<std::string>(path)) return *v;
    return std::nullopt;
  };
  auto require = [&](const std::string& path) {
    auto v = get(path);
    if (!v) throw InputError("missing required key '" + path + "'");
    return *v;
  };
  auto real_or = [&](const std::string& path, double fallback) {
    auto v = get(path);
    return v ? parse_real(path, *v) : fallback;
  };

  RunConfig cfg;
  cfg.name = name;
  cfg.space = parse_space(require("space.model"));
  cfg.c = real_or("space.c", 1.0);
  cfg.algebra = parse_algebra(require("algebra.kind"));

  DomainSpec& d = cfg.domain;
  d.u_min = parse_real("domain.u_min", require("domain.u_min"));
  d.u_max = parse_real("domain.u_max", require("domain.u_max"));
  d.v_min = parse_real("domain.v_min", require("domain.v_min"));
  d.v_max = parse_real("domain.v_max", require("domain.v_max"));
  d.nu = parse_count("domain.nu", require("domain.nu"));
  d.nv = parse_count("domain.nv", require("domain.nv"));
  d.u0 = real_or("domain.u0", d.u_min);
  d.v0 = real_or("domain.v0", d.v_min);

  for (int k = 0; k < 4; ++k) cfg.psi[k] = require("psi.psi" + std::to_string(k + 1));

  cfg.initial = {real_or("initial.x", 0.0), real_or("initial.y", 0.0), real_or("initial.z", 0.0),
                 real_or("initial.t", 0.0)};

  ValidationTolerances& vt = cfg.validation;
  vt.residual = real_or("tolerances.residual", vt.residual);
  vt.residual_fd = real_or("tolerances.residual_fd", vt.residual_fd);
  vt.condition_ii = real_or("tolerances.condition_ii", vt.condition_ii);
  vt.degeneracy_floor = real_or("tolerances.degeneracy_floor", vt.degeneracy_floor);
  VerifyTolerances& mt = cfg.verification;
  mt.conformality = real_or("tolerances.conformality", mt.conformality);
  mt.tension = real_or("tolerances.tension", mt.tension);
  mt.density = real_or("tolerances.density", mt.density);

  cfg.output.report = get("output.report").value_or("");
  cfg.output.csv = get("output.csv").value_or("");
  cfg.output.mesh = get("output.mesh").value_or("");
  cfg.output.verify_report = get("output.verify_report").value_or("");
  cfg.output.verify_csv = get("output.verify_csv").value_or("");

  // Fail fast on expressions that do not parse under the declared algebra.
  (void)cfg.data();
  (void)cfg.domain.grid();
  return cfg;
}

// Presets --------------------------------------------------------------------

namespace detail {

inline std::string lit(double x) { return "(" + format_double(x) + ")"; }

}  // namespace detail

/// The four worked examples on [1,2] x [-1,1], z0 = (1, 0), 101 x 101, c = 1.
inline std::vector<RunConfig> presets() {
  using detail::lit;
  const double c = 1.0;
  const double u0 = 1.0, v0 = 0.0;
  const std::string dv = "(v - " + lit(v0) + ")";
  const std::string log2 = "2*ln(u/" + lit(u0) + ")";
  std::vector<RunConfig> out;

  {
    const double k = 2.0;
    RunConfig r;
    r.name = "example-4.1";
    r.space = SpaceKind::FirstKind;
    r.c = c;
    r.algebra = Algebra::Para;
    r.psi = {"tau/u", "0", "0", "1/u"};
    r.initial = {0.0, k, 0.0, 0.0};
    r.reference = std::array<std::string, 4>{
        "2*" + dv + "/" + lit(u0), lit(k), "-" + lit(c * k) + "*" + dv + "/" + lit(u0), log2};
    r.notes = "timelike; f2 = k = 2 and the free constant k1 is forced to k1 = c*k = " +
              format_double(c * k);
    out.push_back(r);
  }
  {
    const double k = 0.5;
    RunConfig r;
    r.name = "example-4.2";
    r.space = SpaceKind::FirstKind;
    r.c = c;
    r.algebra = Algebra::Para;
    // 1/sqrt(2) to double precision.
    r.psi = {"0.7071067811865476*tau/u", "0.7071067811865476*tau/u", "0", "1/u"};
    r.initial = {0.0, 0.0, k, 0.0};
    r.reference = std::array<std::string, 4>{"-2*" + dv + "/" + lit(u0),
                                             "-2*" + dv + "/" + lit(u0), lit(k), log2};
    r.derived_reference =
        std::array<std::string, 4>{"1.4142135623730951*" + dv + "/" + lit(u0),
                                   "1.4142135623730951*" + dv + "/" + lit(u0), lit(k), log2};
    r.notes =
        "timelike; f3 = k = 0.5. Integrating this data gives f1 = f2 = sqrt(2)(v - v0)/u0; "
        "the stored reference f1 = f2 = -2(v - v0)/u0 is not conformal for it";
    out.push_back(r);
  }
  {
    const double k = 2.0;
    RunConfig r;
    r.name = "example-5.1";
    r.space = SpaceKind::SecondKind;
    r.c = c;
    r.algebra = Algebra::Complex;
    r.psi = {"i/u", "0", "0", "1/u"};
    r.initial = {0.0, k, 0.0, 0.0};
    r.reference = std::array<std::string, 4>{"-2*" + dv + "/" + lit(u0), lit(k),
                                             lit(c * k) + "*" + dv + "/" + lit(u0), log2};
    r.notes = "spacelike; f2 = k = 2 and the free constant k1 is forced to k1 = c*k = " +
              format_double(c * k);
    out.push_back(r);
  }
  {
    const double k1 = 0.3, k2 = -0.7;
    RunConfig r;
    r.name = "example-5.2";
    r.space = SpaceKind::SecondKind;
    r.c = c;
    r.algebra = Algebra::Para;
    r.psi = {"0", "0", "tau/(2*u)", "1/(2*u)"};
    r.initial = {k1, k2, 0.0, 0.0};
    r.reference = std::array<std::string, 4>{lit(k1), lit(k2), dv + "/" + lit(u0),
                                             "ln(u/" + lit(u0) + ")"};
    r.notes = "timelike; f1 = k1 = 0.3, f2 = k2 = -0.7";
    out.push_back(r);
  }
  for (auto& r : out) r.domain = DomainSpec{1.0, 2.0, -1.0, 1.0, 101, 101, u0, v0};
  return out;
}

inline RunConfig preset(const std::string& name) {
  for (auto& p : presets()) {
    if (p.name == name) return p;
  }
  throw InputError("unknown preset '" + name + "'");
}

}  // namespace drms
