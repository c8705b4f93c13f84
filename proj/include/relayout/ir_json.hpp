// Copyright 2026 The relayout Authors
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

#include <string>
#include <string_view>
#include <vector>

#include "relayout/ir.hpp"

namespace relayout {

/// Canonical JSON text: keys in schema order, two-space indentation, stable
/// across runs for equal input.
std::string serialize_ir(const DocumentIR& doc);

struct DeserializeOptions {
  bool lenient = false;  // tolerate unknown fields
};

/// Throws SchemaError naming the JSON pointer of the first offending field.
DocumentIR deserialize_ir(std::string_view text, DeserializeOptions options = {});

struct Violation {
  std::string code;
  std::string location;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::size_t count(std::string_view code) const;
};

ValidationReport validate_ir(const DocumentIR& doc);

}  // namespace relayout
