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

#include <stdexcept>
#include <string>
#include <string_view>

namespace eolpay {

enum class ErrorKind {
  // model assumptions
  invalid_params,
  assumption2_violated,
  degenerate,
  out_of_range,
  invalid_transform,
  // linear algebra / LP
  singular_matrix,
  too_large,
  infeasible,
  unbounded,
  // estimation
  insufficient_data,
  collinear,
  separation,
  non_convergence,
  monotone_likelihood,
  insufficient_controls,
  dimension_mismatch,
  // input / output
  parse,
  io,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. `kind` drives the CLI exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& message() const noexcept { return message_; }

  /// True for malformed or unreadable input (as opposed to a model/domain failure).
  bool is_input_error() const noexcept {
    return kind_ == ErrorKind::parse || kind_ == ErrorKind::io;
  }

 private:
  ErrorKind kind_;
  std::string message_;
};

}  // namespace eolpay
