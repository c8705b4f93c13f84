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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace relayout {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by IR deserialization; `path()` is a JSON pointer to the first
/// offending field.
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class PdfError : public Error {
 public:
  enum class Code {
    kMalformedStream,
    kMalformedFile,
    kUnsupportedOperator,
    kCyclicXObject,
    kDepthExceeded,
    kEncrypted,
    kUnsupportedFeature,
  };

  PdfError(Code code, const std::string& what, std::int64_t offset = -1)
      : Error(what), code_(code), offset_(offset) {}

  Code code() const { return code_; }
  std::int64_t offset() const { return offset_; }

 private:
  Code code_;
  std::int64_t offset_;
};

class FontError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class PlaceholderError : public Error {
 public:
  explicit PlaceholderError(int id)
      : Error("unknown placeholder {v" + std::to_string(id) + "}"), id_(id) {}
  int id() const { return id_; }

 private:
  int id_;
};

class BackendError : public Error {
 public:
  enum class Code { kUnavailable, kProtocol };
  BackendError(Code code, const std::string& what) : Error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

class RenderError : public Error {
 public:
  enum class Code { kMissingFontResource, kUntypesetParagraph, kEmptyDocument };
  RenderError(Code code, const std::string& what) : Error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

class EvalError : public Error {
 public:
  enum class Code { kPageCountMismatch, kMissingPath };
  EvalError(Code code, const std::string& what) : Error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

/// Non-fatal findings collected while processing a document.
struct Warning {
  std::string code;
  std::string message;
};

using Warnings = std::vector<Warning>;

}  // namespace relayout
