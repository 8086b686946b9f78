// Copyright 2026 The gsic-detect Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end:
//
//   gsic build  --dim D (--t T | --max-t) [--basis gellmann] [--out PATH]
//   gsic detect --state SPEC (--gsic PATH | [--dim D] [--t T | --max-t])
//               [--pairing conj|same|adapted] [--json]
//   gsic scan   --family isotropic|belldiag-c|example4 --dim D [--steps N]
//               [--t T | --max-t] [--csv PATH]
//
// Exit codes: 0 evaluated (any verdict), 2 usage or data error, 3 numeric
// integrity failure.

#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <CLI11.hpp>

#include "gsic/gsic.hpp"
#include "gsic/io.hpp"

namespace gsic::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

/// A state named on the command line, plus the Bell index carrying the
/// largest weight when the state is Bell-diagonal.
struct ParsedState {
  DensityMatrix rho;
  std::string label;
  std::optional<std::pair<int, int>> dominant_bell;
};

namespace detail {

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.emplace_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

inline int parse_int(const std::string& s, const char* what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw InvalidArgument(std::string("bad ") + what + " '" + s + "'");
  return v;
}

inline double parse_double(const std::string& s, const char* what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
    throw InvalidArgument(std::string("bad ") + what + " '" + s + "'");
  return v;
}

inline std::string file_argument(const std::string& s) {
  if (s.size() < 2 || s.front() != '@')
    throw InvalidArgument("expected @path, got '" + s + "'");
  return s.substr(1);
}

}  // namespace detail

/// maxent:d | isotropic:d:alpha | belldiag:d:@weights.json | example4:d:a1 |
/// file:@rho.json
inline ParsedState parse_state_spec(const std::string& spec) {
  const auto parts = detail::split(spec, ':');
  const std::string& kind = parts.front();
  auto expect = [&](std::size_t n) {
    if (parts.size() != n) throw InvalidArgument("malformed state spec '" + spec + "'");
  };
  if (kind == "maxent") {
    expect(2);
    return {max_entangled(detail::parse_int(parts[1], "dimension")), spec, std::pair{0, 0}};
  }
  if (kind == "isotropic") {
    expect(3);
    return {isotropic(detail::parse_int(parts[1], "dimension"),
                      detail::parse_double(parts[2], "alpha")),
            spec, std::pair{0, 0}};
  }
  if (kind == "belldiag") {
    expect(3);
    const int d = detail::parse_int(parts[1], "dimension");
    if (d < 2) throw InvalidArgument("dimension must be >= 2");
    const auto weights = bell_weights_from_json(read_json_file(detail::file_argument(parts[2])), d);
    auto bell = bell_diagonal(d, weights);
    return {std::move(bell.state), spec, std::pair{bell.s_max, bell.t_max}};
  }
  if (kind == "example4") {
    expect(3);
    return {diagonal_mixture_state(detail::parse_int(parts[1], "dimension"),
                                   detail::parse_double(parts[2], "a1")),
            spec, std::pair{0, 0}};
  }
  if (kind == "file") {
    expect(2);
    return {density_from_json(read_json_file(detail::file_argument(parts[1]))), spec,
            std::nullopt};
  }
  throw InvalidArgument("unknown state kind '" + kind + "'");
}

/// Measurement set from either an explicit t or the largest feasible t.
inline GsicSet build_measurement(int d, std::optional<double> t, FeasibleT* limit = nullptr) {
  const auto basis = build_gell_mann_basis(d);
  if (t) return construct_gsic(basis, *t);
  const auto feasible = feasible_t_limit(basis);
  if (limit) *limit = feasible;
  return construct_gsic(basis, feasible.t);
}

struct BuildOptions {
  int dim = 0;
  std::optional<double> t;
  bool max_t = false;
  std::string basis = "gellmann";
  std::string out_path;
};

inline int cmd_gsic_build(const BuildOptions& opt, std::ostream& out) {
  if (opt.basis != "gellmann") throw InvalidArgument("unsupported basis '" + opt.basis + "'");
  if (opt.t.has_value() == opt.max_t)
    throw InvalidArgument("give exactly one of --t or --max-t");
  FeasibleT limit;
  const GsicSet g = build_measurement(opt.dim, opt.max_t ? std::nullopt : opt.t, &limit);
  const auto check = validate_gsic(g);
  if (!check.passed())
    throw NumericIntegrityError("constructed set failed validation (" + check.summary() + ")");
  if (!opt.out_path.empty()) write_json_file(opt.out_path, to_json(g));
  Json summary = {{"d", g.d}, {"t", g.t}, {"a", g.a}};
  if (opt.max_t) summary["cap"] = to_string(limit.cap);
  out << summary.dump() << '\n';
  return kExitOk;
}

struct DetectOptions {
  std::string state;
  std::string gsic_path;
  std::optional<int> dim;
  std::optional<double> t;
  bool max_t = false;
  std::string pairing = "conj";
  bool json = false;
};

inline int cmd_detect(const DetectOptions& opt, std::ostream& out) {
  const ParsedState parsed = parse_state_spec(opt.state);
  const int d = parsed.rho.local_dim();
  if (parsed.rho.parties() != 2) throw InvalidArgument("detect expects a bipartite state");
  if (opt.t && opt.max_t) throw InvalidArgument("give at most one of --t or --max-t");

  GsicSet p;
  if (!opt.gsic_path.empty()) {
    if (opt.dim || opt.t || opt.max_t)
      throw InvalidArgument("--gsic cannot be combined with --dim, --t or --max-t");
    p = gsic_from_json(read_json_file(opt.gsic_path));
  } else {
    if (opt.dim && *opt.dim != d)
      throw InvalidArgument("--dim " + std::to_string(*opt.dim) +
                            " does not match the state's local dimension " + std::to_string(d));
    p = build_measurement(d, opt.t);
  }
  if (p.d != d) throw InvalidArgument("measurement dimension does not match the state");

  MeasurementPair pair;
  if (opt.pairing == "conj") {
    pair = make_pairing(p, Pairing::Conjugate);
  } else if (opt.pairing == "same") {
    pair = make_pairing(p, Pairing::Same);
  } else if (opt.pairing == "adapted") {
    const auto [s, t] = parsed.dominant_bell.value_or(std::pair{0, 0});
    pair = bell_adapted_pairing(p, weyl_operator(d, s, t));
  } else {
    throw InvalidArgument("unknown pairing '" + opt.pairing + "'");
  }

  const auto report = detect_bipartite(parsed.rho, pair.first, pair.second, parsed.label);
  if (opt.json) {
    out << to_json(report).dump() << '\n';
  } else {
    out << std::setprecision(17) << "state:   " << report.state_label << '\n'
        << "d = " << report.d << ", t = " << p.t << ", a = " << p.a << '\n'
        << "J       = " << report.j_value << '\n'
        << "bound   = " << report.bound << '\n'
        << "margin  = " << report.margin << '\n'
        << "verdict: " << to_string(report.verdict) << '\n';
  }
  return kExitOk;
}

struct ScanOptions {
  std::string family;
  int dim = 0;
  int steps = 101;
  std::optional<double> t;
  bool max_t = false;
  std::string csv_path;
};

struct FamilyRange {
  StateFamily family;
  double lo = 0.0;
  double hi = 1.0;
};

/// Parameterized families swept by `gsic scan`.
inline FamilyRange scan_family(const std::string& name, int d) {
  if (d < 2) throw InvalidArgument("dimension must be >= 2");
  if (name == "isotropic")
    return {[d](double alpha) { return isotropic(d, alpha); }, 0.0, 1.0};
  if (name == "belldiag-c") {
    // Weight c on |Phi+>, the rest spread evenly over the other Bell states.
    return {[d](double c) {
              const double rest = (1.0 - c) / (d * d - 1.0);
              RealMatrix w = RealMatrix::Constant(d, d, std::max(rest, 0.0));
              w(0, 0) = c;
              w /= w.sum();
              return bell_diagonal(d, w).state;
            },
            1.0 / (d * d), 1.0};
  }
  if (name == "example4")
    return {[d](double a1) { return diagonal_mixture_state(d, a1); }, 1e-3, 1.0 - 1e-3};
  throw InvalidArgument("unsupported family '" + name + "'");
}

inline void write_scan_csv(std::ostream& os, const ScanResult& scan,
                           std::optional<double> sufficient) {
  os << std::setprecision(17);
  os << "param,j_value,bound,margin,verdict\n";
  for (const auto& row : scan.rows)
    os << row.param << ',' << row.report.j_value << ',' << row.report.bound << ','
       << row.report.margin << ',' << to_string(row.report.verdict) << '\n';
  if (scan.threshold)
    os << "# threshold=" << *scan.threshold << '\n';
  else
    os << "# threshold=none\n";
  if (sufficient) os << "# sufficient_threshold=" << *sufficient << '\n';
}

inline int cmd_scan(const ScanOptions& opt, std::ostream& out) {
  if (opt.t && opt.max_t) throw InvalidArgument("give at most one of --t or --max-t");
  const auto range = scan_family(opt.family, opt.dim);
  const GsicSet p = build_measurement(opt.dim, opt.t);
  const GsicSet q = conjugate_gsic(p);
  const auto scan = scan_threshold(range.family, range.lo, range.hi, opt.steps, p, q);

  std::optional<double> sufficient;
  if (opt.family == "isotropic")
    sufficient = 1.0 / (opt.dim + 1.0);
  else if (p.t != 0.0)
    sufficient = dominant_weight_threshold(opt.dim, p.a);

  if (opt.csv_path.empty()) {
    write_scan_csv(out, scan, sufficient);
  } else {
    std::ofstream file(opt.csv_path, std::ios::binary);
    if (!file) throw InvalidArgument("cannot write '" + opt.csv_path + "'");
    write_scan_csv(file, scan, sufficient);
    out << std::setprecision(17) << "family=" << opt.family << " d=" << opt.dim
        << " t=" << p.t << " a=" << p.a << '\n';
    if (scan.threshold)
      out << "threshold=" << *scan.threshold << '\n';
    else
      out << "threshold=none\n";
    if (sufficient) out << "sufficient_threshold=" << *sufficient << '\n';
  }
  return kExitOk;
}

/// Parses argv-style arguments (args[0] is the program name) and dispatches.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"General SIC measurement construction and entanglement detection", "gsic"};
  app.require_subcommand(1);

  BuildOptions build;
  auto* build_cmd = app.add_subcommand("build", "Construct a measurement set and write it as JSON");
  build_cmd->add_option("--dim", build.dim, "Local dimension d")->required()->check(CLI::Range(2, 64));
  auto* build_t = build_cmd->add_option("--t", build.t, "Construction parameter t");
  auto* build_max = build_cmd->add_flag("--max-t", build.max_t, "Use the largest feasible t");
  build_t->excludes(build_max);
  build_cmd->add_option("--basis", build.basis, "Operator basis")->check(CLI::IsMember({"gellmann"}));
  build_cmd->add_option("--out", build.out_path, "Output JSON path");

  DetectOptions detect;
  auto* detect_cmd = app.add_subcommand("detect", "Evaluate the bipartite criterion on a state");
  detect_cmd->add_option("--state", detect.state, "State spec")->required();
  auto* detect_gsic = detect_cmd->add_option("--gsic", detect.gsic_path, "Measurement set JSON");
  auto* detect_dim = detect_cmd->add_option("--dim", detect.dim, "Local dimension d");
  auto* detect_t = detect_cmd->add_option("--t", detect.t, "Construction parameter t");
  auto* detect_max = detect_cmd->add_flag("--max-t", detect.max_t, "Use the largest feasible t");
  detect_gsic->excludes(detect_dim)->excludes(detect_t)->excludes(detect_max);
  detect_t->excludes(detect_max);
  detect_cmd->add_option("--pairing", detect.pairing, "Second-party measurement")
      ->check(CLI::IsMember({"conj", "same", "adapted"}));
  detect_cmd->add_flag("--json", detect.json, "Print the report as JSON");

  ScanOptions scan;
  auto* scan_cmd = app.add_subcommand("scan", "Sweep a state family and locate the detection threshold");
  scan_cmd->add_option("--family", scan.family, "isotropic | belldiag-c | example4")->required();
  scan_cmd->add_option("--dim", scan.dim, "Local dimension d")->required()->check(CLI::Range(2, 64));
  scan_cmd->add_option("--steps", scan.steps, "Grid points")->check(CLI::Range(10, 1000000));
  auto* scan_t = scan_cmd->add_option("--t", scan.t, "Construction parameter t");
  auto* scan_max = scan_cmd->add_flag("--max-t", scan.max_t, "Use the largest feasible t (default)");
  scan_t->excludes(scan_max);
  scan_cmd->add_option("--csv", scan.csv_path, "Output CSV path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (build_cmd->parsed()) return cmd_gsic_build(build, out);
    if (detect_cmd->parsed()) return cmd_detect(detect, out);
    if (scan_cmd->parsed()) return cmd_scan(scan, out);
  } catch (const InfeasibleParameter& e) {
    err << "error: infeasible t: operator index " << e.index() << " has min eigenvalue "
        << e.min_eigenvalue() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericIntegrityError& e) {
    err << "numeric integrity failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitUsage;
}

}  // namespace gsic::cli
