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

// Instance JSON and trace CSV formats.
//
// Instance JSON: {"dim": m, "P": [[...]], "Q": [[...]], "q": [...],
// "A": [[...]], "b": [...], "interior_point": [...]} with an optional
// "generator_spec" object. Numbers use shortest round-trip decimal form.
//
// Trace CSV: header n,D_n,lambda_n,elapsed_seconds,prox_calls,f_evals, one
// row per iterate, reals printed with 17 significant digits. A projected
// starting point is noted on a leading "# " line.

#ifndef EGRA_IO_HPP_
#define EGRA_IO_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "egra/generator.hpp"
#include "egra/problem.hpp"
#include "egra/solvers.hpp"

namespace egra {

inline constexpr const char* kTraceCsvHeader =
    "n,D_n,lambda_n,elapsed_seconds,prox_calls,f_evals";

nlohmann::json instance_to_json(const EquilibriumInstance& inst);
// Throws ValidationError describing the first malformed field.
EquilibriumInstance instance_from_json(const nlohmann::json& doc);

nlohmann::json generator_spec_to_json(const GeneratorSpec& spec);
GeneratorSpec generator_spec_from_json(const nlohmann::json& doc);

// Writes the instance (plus provenance when given). Throws IoError.
void save_instance(const std::filesystem::path& path,
                   const EquilibriumInstance& inst,
                   const std::optional<GeneratorSpec>& provenance = {});
// Throws IoError when unreadable, ValidationError when malformed (including
// JSON syntax errors).
EquilibriumInstance load_instance(const std::filesystem::path& path);

// %.17g.
std::string format_double(double value);

std::string trace_to_csv(const SolverTrace& trace);
void write_trace_csv(const std::filesystem::path& path,
                     const SolverTrace& trace);
// Parses the body written by trace_to_csv (the diagnostic count is not
// part of the format and comes back as 0).
std::vector<TraceRecord> parse_trace_csv(const std::string& text);

// Whole-file helpers. Throw IoError.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path,
                     const std::string& text);

}  // namespace egra

#endif  // EGRA_IO_HPP_
