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

#include "relayout/pdf/object.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "relayout/errors.hpp"

namespace relayout::pdf {

const Object& lookup(const Dict& dict, std::string_view key) {
  static const Object kNull;
  auto it = dict.find(key);
  return it == dict.end() ? kNull : it->second;
}

bool is_pdf_whitespace(char c) {
  return c == ' ' || c == '\n' || c == '\r' || c == '\t' || c == '\f' || c == '\0';
}

bool is_pdf_delimiter(char c) {
  return c == '(' || c == ')' || c == '<' || c == '>' || c == '[' || c == ']' || c == '{' ||
         c == '}' || c == '/' || c == '%';
}

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

[[noreturn]] void malformed(const std::string& what, std::size_t offset) {
  throw PdfError(PdfError::Code::kMalformedStream, what, static_cast<std::int64_t>(offset));
}

}  // namespace

void Lexer::skip_whitespace() {
  while (pos_ < data_.size()) {
    const char c = data_[pos_];
    if (is_pdf_whitespace(c)) {
      ++pos_;
    } else if (c == '%') {
      while (pos_ < data_.size() && data_[pos_] != '\n' && data_[pos_] != '\r') ++pos_;
    } else {
      break;
    }
  }
}

Token Lexer::peek() {
  const auto saved = pos_;
  Token t = next();
  pos_ = saved;
  return t;
}

Token Lexer::next() {
  skip_whitespace();
  Token tok;
  tok.offset = pos_;
  if (pos_ >= data_.size()) return tok;
  const char c = data_[pos_];
  if (c == '[') {
    ++pos_;
    tok.kind = TokenKind::kArrayOpen;
  } else if (c == ']') {
    ++pos_;
    tok.kind = TokenKind::kArrayClose;
  } else if (c == '<' && pos_ + 1 < data_.size() && data_[pos_ + 1] == '<') {
    pos_ += 2;
    tok.kind = TokenKind::kDictOpen;
  } else if (c == '>' && pos_ + 1 < data_.size() && data_[pos_ + 1] == '>') {
    pos_ += 2;
    tok.kind = TokenKind::kDictClose;
  } else if (c == '<') {
    ++pos_;
    tok.kind = TokenKind::kHexString;
    int hi = -1;
    while (pos_ < data_.size() && data_[pos_] != '>') {
      const int v = hex_value(data_[pos_]);
      if (v >= 0) {
        if (hi < 0) {
          hi = v;
        } else {
          tok.text.push_back(static_cast<char>(hi * 16 + v));
          hi = -1;
        }
      } else if (!is_pdf_whitespace(data_[pos_])) {
        malformed("bad character in hex string", pos_);
      }
      ++pos_;
    }
    if (pos_ >= data_.size()) malformed("unterminated hex string", tok.offset);
    ++pos_;
    if (hi >= 0) tok.text.push_back(static_cast<char>(hi * 16));
  } else if (c == '(') {
    ++pos_;
    tok.kind = TokenKind::kString;
    int depth = 1;
    while (pos_ < data_.size()) {
      char ch = data_[pos_++];
      if (ch == '\\') {
        if (pos_ >= data_.size()) break;
        char e = data_[pos_++];
        switch (e) {
          case 'n': tok.text.push_back('\n'); break;
          case 'r': tok.text.push_back('\r'); break;
          case 't': tok.text.push_back('\t'); break;
          case 'b': tok.text.push_back('\b'); break;
          case 'f': tok.text.push_back('\f'); break;
          case '(': tok.text.push_back('('); break;
          case ')': tok.text.push_back(')'); break;
          case '\\': tok.text.push_back('\\'); break;
          case '\r':
            if (pos_ < data_.size() && data_[pos_] == '\n') ++pos_;
            break;
          case '\n': break;
          default:
            if (e >= '0' && e <= '7') {
              int v = e - '0';
              for (int k = 0; k < 2 && pos_ < data_.size() && data_[pos_] >= '0' && data_[pos_] <= '7'; ++k) {
                v = v * 8 + (data_[pos_++] - '0');
              }
              tok.text.push_back(static_cast<char>(v & 0xFF));
            } else {
              tok.text.push_back(e);
            }
        }
      } else if (ch == '(') {
        ++depth;
        tok.text.push_back(ch);
      } else if (ch == ')') {
        if (--depth == 0) break;
        tok.text.push_back(ch);
      } else {
        tok.text.push_back(ch);
      }
    }
    if (depth != 0) malformed("unterminated string", tok.offset);
  } else if (c == '/') {
    ++pos_;
    tok.kind = TokenKind::kName;
    while (pos_ < data_.size() && !is_pdf_whitespace(data_[pos_]) &&
           !is_pdf_delimiter(data_[pos_])) {
      if (data_[pos_] == '#' && pos_ + 2 < data_.size() && hex_value(data_[pos_ + 1]) >= 0 &&
          hex_value(data_[pos_ + 2]) >= 0) {
        tok.text.push_back(
            static_cast<char>(hex_value(data_[pos_ + 1]) * 16 + hex_value(data_[pos_ + 2])));
        pos_ += 3;
      } else {
        tok.text.push_back(data_[pos_++]);
      }
    }
  } else if ((c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.') {
    const std::size_t start = pos_;
    ++pos_;
    bool real = c == '.';
    while (pos_ < data_.size() &&
           ((data_[pos_] >= '0' && data_[pos_] <= '9') || data_[pos_] == '.' ||
            data_[pos_] == '-')) {
      if (data_[pos_] == '.') real = true;
      ++pos_;
    }
    const std::string text(data_.substr(start, pos_ - start));
    tok.text = text;
    if (real) {
      tok.kind = TokenKind::kReal;
      tok.number = std::strtod(text.c_str(), nullptr);
    } else {
      tok.kind = TokenKind::kInteger;
      tok.integer = std::strtoll(text.c_str(), nullptr, 10);
      tok.number = static_cast<double>(tok.integer);
    }
  } else if (c == ')' || c == '>' || c == '{' || c == '}') {
    ++pos_;
    tok.kind = TokenKind::kKeyword;
    tok.text = std::string(1, c);
  } else {
    tok.kind = TokenKind::kKeyword;
    while (pos_ < data_.size() && !is_pdf_whitespace(data_[pos_]) &&
           !is_pdf_delimiter(data_[pos_])) {
      tok.text.push_back(data_[pos_++]);
    }
  }
  return tok;
}

Object parse_object(Lexer& lexer) { return parse_object(lexer, lexer.next()); }

Object parse_object(Lexer& lexer, const Token& first) {
  switch (first.kind) {
    case TokenKind::kEnd: malformed("unexpected end of data", first.offset);
    case TokenKind::kInteger: {
      // Look ahead for `gen R`.
      const auto saved = lexer.position();
      const Token second = lexer.next();
      if (second.kind == TokenKind::kInteger) {
        const Token third = lexer.next();
        if (third.kind == TokenKind::kKeyword && third.text == "R") {
          return Object(Ref{static_cast<int>(first.integer), static_cast<int>(second.integer)});
        }
      }
      lexer.seek(saved);
      return Object(first.integer);
    }
    case TokenKind::kReal: return Object(first.number);
    case TokenKind::kName: return Object(Name{first.text});
    case TokenKind::kString: return Object(String{first.text, false});
    case TokenKind::kHexString: return Object(String{first.text, true});
    case TokenKind::kArrayOpen: {
      Array arr;
      for (;;) {
        const Token t = lexer.next();
        if (t.kind == TokenKind::kArrayClose) break;
        if (t.kind == TokenKind::kEnd) malformed("unterminated array", first.offset);
        arr.push_back(parse_object(lexer, t));
      }
      return Object(std::move(arr));
    }
    case TokenKind::kDictOpen: {
      Dict dict;
      for (;;) {
        const Token key = lexer.next();
        if (key.kind == TokenKind::kDictClose) break;
        if (key.kind != TokenKind::kName) malformed("dictionary key is not a name", key.offset);
        const Token vt = lexer.next();
        if (vt.kind == TokenKind::kDictClose) {
          dict[key.text] = Object();
          break;
        }
        dict[key.text] = parse_object(lexer, vt);
      }
      return Object(std::move(dict));
    }
    case TokenKind::kKeyword:
      if (first.text == "true") return Object(true);
      if (first.text == "false") return Object(false);
      if (first.text == "null") return Object();
      malformed("unexpected keyword '" + first.text + "'", first.offset);
    case TokenKind::kArrayClose:
    case TokenKind::kDictClose:
      malformed("unexpected closing delimiter", first.offset);
  }
  return Object();
}

std::string format_number(double value) {
  if (std::abs(value) < 5e-7) return "0";
  if (std::floor(value) == value && std::abs(value) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(value));
    return buf;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  std::string s(buf);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

std::string escape_name(std::string_view name) {
  std::string out = "/";
  for (char c : name) {
    const auto u = static_cast<unsigned char>(c);
    if (u < 33 || u > 126 || is_pdf_delimiter(c) || c == '#') {
      char buf[4];
      std::snprintf(buf, sizeof(buf), "#%02X", u);
      out += buf;
    } else {
      out += c;
    }
  }
  return out;
}

std::string literal_string(std::string_view bytes) {
  std::string out = "(";
  for (char c : bytes) {
    if (c == '(' || c == ')' || c == '\\') {
      out += '\\';
      out += c;
    } else if (c == '\r') {
      out += "\\r";
    } else if (c == '\n') {
      out += "\\n";
    } else {
      out += c;
    }
  }
  out += ')';
  return out;
}

std::string hex_string(std::string_view bytes) {
  static constexpr char kDigits[] = "0123456789ABCDEF";
  std::string out = "<";
  for (char c : bytes) {
    const auto u = static_cast<unsigned char>(c);
    out += kDigits[u >> 4];
    out += kDigits[u & 15];
  }
  out += '>';
  return out;
}

std::string to_pdf_syntax(const Object& object) {
  struct Visitor {
    std::string operator()(std::monostate) const { return "null"; }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_number(v); }
    std::string operator()(const Name& n) const { return escape_name(n.value); }
    std::string operator()(const String& s) const {
      return s.hex ? hex_string(s.bytes) : literal_string(s.bytes);
    }
    std::string operator()(const Array& a) const {
      std::string out = "[";
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) out += ' ';
        out += to_pdf_syntax(a[i]);
      }
      return out + "]";
    }
    std::string operator()(const Dict& d) const {
      std::string out = "<<";
      for (const auto& [k, v] : d) {
        out += escape_name(k);
        out += ' ';
        out += to_pdf_syntax(v);
        out += ' ';
      }
      return out + ">>";
    }
    std::string operator()(const Ref& r) const {
      return std::to_string(r.num) + " " + std::to_string(r.gen) + " R";
    }
    std::string operator()(const std::shared_ptr<const Stream>&) const {
      throw Error("streams must be written as indirect objects");
    }
  };
  return std::visit(Visitor{}, object.value());
}

}  // namespace relayout::pdf
