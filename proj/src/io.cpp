// Copyright 2026 The egra Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "egra/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "egra/error.hpp"

namespace egra {
namespace {

using nlohmann::json;

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

const json& field(const json& doc, const char* key) {
  if (!doc.contains(key)) {
    throw ValidationError(std::string("instance JSON: missing key '") + key +
                          "'");
  }
  return doc.at(key);
}

double number(const json& v, const char* key) {
  if (!v.is_number()) {
    throw ValidationError(std::string("instance JSON: non-numeric entry in '") +
                          key + "'");
  }
  return v.get<double>();
}

Eigen::VectorXd vector_from_json(const json& doc, const char* key,
                                 Eigen::Index expected) {
  const json& arr = field(doc, key);
  if (!arr.is_array()) {
    throw ValidationError(std::string("instance JSON: '") + key +
                          "' must be an array");
  }
  if (expected >= 0 && static_cast<Eigen::Index>(arr.size()) != expected) {
    throw ValidationError(std::string("instance JSON: '") + key + "' has " +
                          std::to_string(arr.size()) + " entries, expected " +
                          std::to_string(expected));
  }
  Eigen::VectorXd v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = number(arr[i], key);
  }
  return v;
}

Eigen::MatrixXd matrix_from_json(const json& doc, const char* key,
                                 Eigen::Index rows, Eigen::Index cols) {
  const json& arr = field(doc, key);
  if (!arr.is_array()) {
    throw ValidationError(std::string("instance JSON: '") + key +
                          "' must be an array of rows");
  }
  const auto r = rows >= 0 ? rows : static_cast<Eigen::Index>(arr.size());
  if (static_cast<Eigen::Index>(arr.size()) != r) {
    throw ValidationError(std::string("instance JSON: '") + key + "' has " +
                          std::to_string(arr.size()) + " rows, expected " +
                          std::to_string(r));
  }
  Eigen::MatrixXd m(r, cols);
  for (Eigen::Index i = 0; i < r; ++i) {
    const json& row = arr[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ValidationError(std::string("instance JSON: row ") +
                            std::to_string(i) + " of '" + key +
                            "' must have " + std::to_string(cols) +
                            " entries");
    }
    for (Eigen::Index j = 0; j < cols; ++j) {
      m(i, j) = number(row[static_cast<std::size_t>(j)], key);
    }
  }
  return m;
}

json interval_to_json(const Interval& i) { return json::array({i.lo, i.hi}); }

Interval interval_from_json(const json& v) {
  if (!v.is_array() || v.size() != 2) {
    throw ValidationError("generator_spec: intervals are [lo, hi] pairs");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

json instance_to_json(const EquilibriumInstance& inst) {
  json doc;
  doc["dim"] = inst.dim();
  doc["P"] = matrix_to_json(inst.P);
  doc["Q"] = matrix_to_json(inst.Q);
  doc["q"] = vector_to_json(inst.q);
  doc["A"] = matrix_to_json(inst.feasible.A);
  doc["b"] = vector_to_json(inst.feasible.b);
  doc["interior_point"] = vector_to_json(inst.feasible.interior_point);
  return doc;
}

EquilibriumInstance instance_from_json(const json& doc) {
  if (!doc.is_object()) {
    throw ValidationError("instance JSON: top level must be an object");
  }
  const json& dim_field = field(doc, "dim");
  if (!dim_field.is_number_integer() || dim_field.get<long long>() < 1) {
    throw ValidationError("instance JSON: 'dim' must be a positive integer");
  }
  const auto m = static_cast<Eigen::Index>(dim_field.get<long long>());
  EquilibriumInstance inst;
  inst.P = matrix_from_json(doc, "P", m, m);
  inst.Q = matrix_from_json(doc, "Q", m, m);
  inst.q = vector_from_json(doc, "q", m);
  inst.feasible.A = matrix_from_json(doc, "A", -1, m);
  inst.feasible.b = vector_from_json(doc, "b", inst.feasible.A.rows());
  inst.feasible.interior_point = vector_from_json(doc, "interior_point", m);
  return inst;
}

json generator_spec_to_json(const GeneratorSpec& spec) {
  json doc;
  doc["dim"] = spec.dim;
  doc["constraint_count"] = spec.constraint_count;
  doc["seed"] = spec.seed;
  doc["q_range"] = interval_to_json(spec.q_range);
  doc["spectrum_neg"] = interval_to_json(spec.spectrum_neg);
  doc["spectrum_pos"] = interval_to_json(spec.spectrum_pos);
  doc["strongly_monotone"] = spec.strongly_monotone;
  doc["strong_gap"] = spec.strong_gap;
  return doc;
}

GeneratorSpec generator_spec_from_json(const json& doc) {
  GeneratorSpec spec;
  spec.dim = doc.at("dim").get<int>();
  spec.constraint_count = doc.value("constraint_count", spec.constraint_count);
  spec.seed = doc.value("seed", spec.seed);
  if (doc.contains("q_range")) spec.q_range = interval_from_json(doc["q_range"]);
  if (doc.contains("spectrum_neg")) {
    spec.spectrum_neg = interval_from_json(doc["spectrum_neg"]);
  }
  if (doc.contains("spectrum_pos")) {
    spec.spectrum_pos = interval_from_json(doc["spectrum_pos"]);
  }
  spec.strongly_monotone = doc.value("strongly_monotone", false);
  spec.strong_gap = doc.value("strong_gap", spec.strong_gap);
  return spec;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

void save_instance(const std::filesystem::path& path,
                   const EquilibriumInstance& inst,
                   const std::optional<GeneratorSpec>& provenance) {
  json doc = instance_to_json(inst);
  if (provenance) doc["generator_spec"] = generator_spec_to_json(*provenance);
  write_text_file(path, doc.dump() + "\n");
}

EquilibriumInstance load_instance(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("cannot parse '" + path.string() + "': " + e.what());
  }
  return instance_from_json(doc);
}

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string trace_to_csv(const SolverTrace& trace) {
  std::string out;
  if (trace.start_projected) out += "# " + trace.note + '\n';
  out += kTraceCsvHeader;
  out += '\n';
  for (const auto& r : trace.records) {
    out += std::to_string(r.n);
    out += ',';
    out += format_double(r.d_n);
    out += ',';
    out += format_double(r.lambda_n);
    out += ',';
    out += format_double(r.elapsed_seconds);
    out += ',';
    out += std::to_string(r.prox_calls);
    out += ',';
    out += std::to_string(r.f_evals);
    out += '\n';
  }
  return out;
}

void write_trace_csv(const std::filesystem::path& path,
                     const SolverTrace& trace) {
  write_text_file(path, trace_to_csv(trace));
}

std::vector<TraceRecord> parse_trace_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line) && !line.empty() && line[0] == '#') {
  }
  if (line != kTraceCsvHeader) {
    throw ValidationError("trace CSV: unexpected header");
  }
  std::vector<TraceRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() != 6) {
      throw ValidationError("trace CSV: expected 6 columns in '" + line + "'");
    }
    TraceRecord r;
    r.n = std::stoi(cells[0]);
    r.d_n = std::strtod(cells[1].c_str(), nullptr);
    r.lambda_n = std::strtod(cells[2].c_str(), nullptr);
    r.elapsed_seconds = std::strtod(cells[3].c_str(), nullptr);
    r.prox_calls = std::stol(cells[4]);
    r.f_evals = std::stol(cells[5]);
    records.push_back(r);
  }
  return records;
}

}  // namespace egra
