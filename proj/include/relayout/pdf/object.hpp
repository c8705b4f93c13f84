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

// PDF object model and tokenizer shared by the reader and the writer.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace relayout::pdf {

struct Ref {
  int num = 0;
  int gen = 0;

  friend auto operator<=>(const Ref&, const Ref&) = default;
};

struct Name {
  std::string value;
  friend bool operator==(const Name&, const Name&) = default;
};

struct String {
  std::string bytes;
  bool hex = false;
  friend bool operator==(const String&, const String&) = default;
};

class Object;
using Array = std::vector<Object>;
using Dict = std::map<std::string, Object, std::less<>>;

struct Stream {
  Dict dict;
  std::string raw;  // still encoded
};

class Object {
 public:
  using Value = std::variant<std::monostate, bool, std::int64_t, double, Name, String, Array,
                             Dict, Ref, std::shared_ptr<const Stream>>;

  Object() = default;
  Object(bool v) : value_(v) {}
  Object(int v) : value_(static_cast<std::int64_t>(v)) {}
  Object(std::int64_t v) : value_(v) {}
  Object(double v) : value_(v) {}
  Object(Name v) : value_(std::move(v)) {}
  Object(String v) : value_(std::move(v)) {}
  Object(Array v) : value_(std::move(v)) {}
  Object(Dict v) : value_(std::move(v)) {}
  Object(Ref v) : value_(v) {}
  Object(std::shared_ptr<const Stream> v) : value_(std::move(v)) {}

  static Object name(std::string v) { return Object(Name{std::move(v)}); }
  static Object string(std::string v) { return Object(String{std::move(v), false}); }

  bool is_null() const { return std::holds_alternative<std::monostate>(value_); }
  bool is_bool() const { return std::holds_alternative<bool>(value_); }
  bool is_int() const { return std::holds_alternative<std::int64_t>(value_); }
  bool is_number() const { return is_int() || std::holds_alternative<double>(value_); }
  bool is_name() const { return std::holds_alternative<Name>(value_); }
  bool is_name(std::string_view n) const { return is_name() && name_value() == n; }
  bool is_string() const { return std::holds_alternative<String>(value_); }
  bool is_array() const { return std::holds_alternative<Array>(value_); }
  bool is_dict() const { return std::holds_alternative<Dict>(value_); }
  bool is_ref() const { return std::holds_alternative<Ref>(value_); }
  bool is_stream() const { return std::holds_alternative<std::shared_ptr<const Stream>>(value_); }

  bool as_bool() const { return std::get<bool>(value_); }
  std::int64_t as_int() const {
    return is_int() ? std::get<std::int64_t>(value_)
                    : static_cast<std::int64_t>(std::get<double>(value_));
  }
  double as_number() const {
    return is_int() ? static_cast<double>(std::get<std::int64_t>(value_)) : std::get<double>(value_);
  }
  const std::string& name_value() const { return std::get<Name>(value_).value; }
  const String& as_string() const { return std::get<String>(value_); }
  const Array& as_array() const { return std::get<Array>(value_); }
  const Dict& as_dict() const { return std::get<Dict>(value_); }
  Ref as_ref() const { return std::get<Ref>(value_); }
  const Stream& as_stream() const { return *std::get<std::shared_ptr<const Stream>>(value_); }
  const std::shared_ptr<const Stream>& stream_ptr() const {
    return std::get<std::shared_ptr<const Stream>>(value_);
  }

  const Value& value() const { return value_; }

 private:
  Value value_;
};

/// Looks up `key`, returning null when absent.
const Object& lookup(const Dict& dict, std::string_view key);

enum class TokenKind {
  kEnd,
  kInteger,
  kReal,
  kName,
  kString,
  kHexString,
  kArrayOpen,
  kArrayClose,
  kDictOpen,
  kDictClose,
  kKeyword,
};

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;  // decoded name/string bytes or keyword spelling
  double number = 0;
  std::int64_t integer = 0;
  std::size_t offset = 0;
};

/// Tokenizer over PDF syntax; used for file structure and content streams.
class Lexer {
 public:
  explicit Lexer(std::string_view data, std::size_t pos = 0) : data_(data), pos_(pos) {}

  Token next();
  Token peek();
  std::size_t position() const { return pos_; }
  void seek(std::size_t pos) { pos_ = pos; }
  std::string_view data() const { return data_; }
  void skip_whitespace();

 private:
  std::string_view data_;
  std::size_t pos_ = 0;
};

bool is_pdf_whitespace(char c);
bool is_pdf_delimiter(char c);

/// Parses one object starting at the lexer position (resolving `n g R`
/// references syntactically but never loading them). Streams are not
/// handled here; see Document.
Object parse_object(Lexer& lexer);
/// Continues parsing after `first` has already been read.
Object parse_object(Lexer& lexer, const Token& first);

/// Serializes an object in PDF syntax (used by the writer and for tests).
std::string to_pdf_syntax(const Object& object);
std::string format_number(double value);
std::string escape_name(std::string_view name);
std::string literal_string(std::string_view bytes);
std::string hex_string(std::string_view bytes);

}  // namespace relayout::pdf
