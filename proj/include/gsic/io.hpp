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

// JSON documents:
//
//   GsicSet:         {d, t, a, basis_id, operators: [[[re, im], ...], ...]}
//   DensityMatrix:   {local_dim, parties, matrix: [[re, im], ...]}
//   DetectionReport: {state_label, d, N, t, a, j_value, bound, margin, verdict}
//
// Matrices are flattened row-major. Loaded measurement sets and states are
// re-validated before they are returned.

#pragma once

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gsic/criteria.hpp"
#include "gsic/errors.hpp"
#include "gsic/gsic_set.hpp"
#include "gsic/linalg.hpp"
#include "gsic/states.hpp"

namespace gsic {

using Json = nlohmann::json;

inline Json matrix_to_json(const ComplexMatrix& m) {
  Json entries = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      entries.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
  return entries;
}

inline ComplexMatrix matrix_from_json(const Json& entries, int dim) {
  if (!entries.is_array() ||
      entries.size() != static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim))
    throw InvalidArgument("matrix must be an array of " + std::to_string(dim * dim) +
                          " [re, im] pairs");
  ComplexMatrix m(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      const Json& e = entries[static_cast<std::size_t>(r * dim + c)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw InvalidArgument("matrix entries must be [re, im] number pairs");
      m(r, c) = Complex{e[0].get<double>(), e[1].get<double>()};
    }
  return m;
}

namespace detail {

template <typename T>
T required(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw InvalidArgument(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("bad field '") + key + "': " + e.what());
  }
}

}  // namespace detail

inline Json to_json(const GsicSet& g) {
  Json ops = Json::array();
  for (const auto& p : g.operators) ops.push_back(matrix_to_json(p));
  return {{"d", g.d}, {"t", g.t}, {"a", g.a}, {"basis_id", g.basis_id}, {"operators", ops}};
}

inline GsicSet gsic_from_json(const Json& j, double tol = kDefaultTolerance) {
  GsicSet g;
  g.d = detail::required<int>(j, "d");
  g.t = detail::required<double>(j, "t");
  g.a = detail::required<double>(j, "a");
  g.basis_id = j.contains("basis_id") ? detail::required<std::string>(j, "basis_id") : "";
  if (g.d < 2) throw InvalidArgument("GsicSet: d must be >= 2");
  const Json& ops = j.at("operators");
  if (!ops.is_array() || ops.size() != static_cast<std::size_t>(g.d) * g.d)
    throw InvalidArgument("GsicSet: expected d^2 operators");
  for (const auto& op : ops) g.operators.push_back(matrix_from_json(op, g.d));
  const auto check = validate_gsic(g, tol);
  if (!check.passed())
    throw InvalidArgument("GsicSet failed validation (" + check.summary() + ")");
  return g;
}

inline Json to_json(const DensityMatrix& rho) {
  return {{"local_dim", rho.local_dim()},
          {"parties", rho.parties()},
          {"matrix", matrix_to_json(rho.matrix())}};
}

inline DensityMatrix density_from_json(const Json& j) {
  const int d = detail::required<int>(j, "local_dim");
  const int n = detail::required<int>(j, "parties");
  if (d < 2 || n < 1) throw InvalidArgument("DensityMatrix: bad local_dim or parties");
  if (!j.contains("matrix")) throw InvalidArgument("missing field 'matrix'");
  return DensityMatrix(matrix_from_json(j.at("matrix"), ipow(d, n)), d, n);
}

inline Json to_json(const DetectionReport& r) {
  return {{"state_label", r.state_label},
          {"d", r.d},
          {"N", r.parties},
          {"t", r.t_values.empty() ? 0.0 : r.t_values.front()},
          {"a", r.a_values.empty() ? 0.0 : r.a_values.front()},
          {"j_value", r.j_value},
          {"bound", r.bound},
          {"margin", r.margin},
          {"verdict", to_string(r.verdict)}};
}

/// d x d table p(s, t) given as a nested array (rows indexed by s).
inline RealMatrix bell_weights_from_json(const Json& j, int d) {
  const Json& table = j.is_object() && j.contains("weights") ? j.at("weights") : j;
  if (!table.is_array() || table.size() != static_cast<std::size_t>(d))
    throw InvalidArgument("Bell weights must be a d x d nested array");
  RealMatrix w(d, d);
  for (int s = 0; s < d; ++s) {
    const Json& row = table[static_cast<std::size_t>(s)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(d))
      throw InvalidArgument("Bell weights must be a d x d nested array");
    for (int t = 0; t < d; ++t) {
      if (!row[static_cast<std::size_t>(t)].is_number())
        throw InvalidArgument("Bell weights must be numbers");
      w(s, t) = row[static_cast<std::size_t>(t)].get<double>();
    }
  }
  return w;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
  if (!out) throw InvalidArgument("failed writing '" + path + "'");
}

}  // namespace gsic
