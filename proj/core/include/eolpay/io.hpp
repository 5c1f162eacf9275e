// Copyright 2026 The eolpay Authors
//
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

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "eolpay/domain.hpp"

namespace eolpay {

// Parameter file schema:
//   { "pi": {"00": .., "01": .., "10": .., "11": ..}, "gamma": .., "phi": .., "F": .., "w0": .., "w1": .. }
// "pi" and "gamma" are required; phi and F default to 1, w0 and w1 to 0.
// Values are not validated here; solvers call validate().

ModelParams params_from_json(std::string_view text);
std::string params_to_json(const ModelParams& params, int indent = 2);
ModelParams load_params(const std::filesystem::path& path);

// Contract schema: {"p00": .., "p01": .., "p10": .., "p11": ..}. A document
// with a top-level "contract" object (the `solve` output) is also accepted.
Contract contract_from_json(std::string_view text);
std::string contract_to_json(const Contract& contract, int indent = 2);
Contract load_contract(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace eolpay
