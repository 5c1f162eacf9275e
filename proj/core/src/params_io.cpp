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

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "eolpay/error.hpp"
#include "eolpay/io.hpp"

namespace eolpay {

namespace {

using nlohmann::json;

json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::parse, e.what());
  }
}

double number_field(const json& object, const char* key, const char* context) {
  auto it = object.find(key);
  if (it == object.end()) {
    throw Error(ErrorKind::parse, std::string("missing field \"") + key + "\" in " + context);
  }
  if (!it->is_number()) {
    throw Error(ErrorKind::parse, std::string("field \"") + key + "\" in " + context +
                                      " must be a number");
  }
  return it->get<double>();
}

double optional_number(const json& object, const char* key, double fallback) {
  return object.contains(key) ? number_field(object, key, "parameter file") : fallback;
}

}  // namespace

ModelParams params_from_json(std::string_view text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) throw Error(ErrorKind::parse, "parameter file must be a JSON object");
  auto pi = doc.find("pi");
  if (pi == doc.end() || !pi->is_object()) {
    throw Error(ErrorKind::parse, "missing object \"pi\" in parameter file");
  }
  ModelParams p;
  p.pi00 = number_field(*pi, "00", "\"pi\"");
  p.pi01 = number_field(*pi, "01", "\"pi\"");
  p.pi10 = number_field(*pi, "10", "\"pi\"");
  p.pi11 = number_field(*pi, "11", "\"pi\"");
  p.gamma = number_field(doc, "gamma", "parameter file");
  p.phi = optional_number(doc, "phi", 1.0);
  p.disutility_f = optional_number(doc, "F", 1.0);
  p.w0 = optional_number(doc, "w0", 0.0);
  p.w1 = optional_number(doc, "w1", 0.0);
  return p;
}

std::string params_to_json(const ModelParams& params, int indent) {
  json doc;
  doc["pi"] = {{"00", params.pi00}, {"01", params.pi01}, {"10", params.pi10}, {"11", params.pi11}};
  doc["gamma"] = params.gamma;
  doc["phi"] = params.phi;
  doc["F"] = params.disutility_f;
  doc["w0"] = params.w0;
  doc["w1"] = params.w1;
  return doc.dump(indent);
}

ModelParams load_params(const std::filesystem::path& path) {
  try {
    return params_from_json(read_text_file(path));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::parse) {
      throw Error(ErrorKind::parse, path.string() + ": " + e.what());
    }
    throw;
  }
}

Contract contract_from_json(std::string_view text) {
  json doc = parse_document(text);
  if (doc.is_object() && doc.contains("contract") && doc["contract"].is_object()) {
    doc = doc["contract"];
  }
  if (!doc.is_object()) throw Error(ErrorKind::parse, "contract must be a JSON object");
  return {number_field(doc, "p00", "contract"), number_field(doc, "p01", "contract"),
          number_field(doc, "p10", "contract"), number_field(doc, "p11", "contract")};
}

std::string contract_to_json(const Contract& contract, int indent) {
  json doc = {{"p00", contract.p00}, {"p01", contract.p01}, {"p10", contract.p10},
              {"p11", contract.p11}};
  return doc.dump(indent);
}

Contract load_contract(const std::filesystem::path& path) {
  try {
    return contract_from_json(read_text_file(path));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::parse) {
      throw Error(ErrorKind::parse, path.string() + ": " + e.what());
    }
    throw;
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorKind::io, "write failed for " + path.string());
}

}  // namespace eolpay
