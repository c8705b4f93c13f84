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

#include "relayout/placeholders.hpp"

#include <cctype>

#include "relayout/text.hpp"

namespace relayout {
namespace {

bool is_blank(char c) { return c == ' ' || c == '\t'; }

}  // namespace

std::vector<TokenMatch> scan_tokens(std::string_view text) {
  std::vector<TokenMatch> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '{') {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    bool loose = false;
    while (j < text.size() && is_blank(text[j])) {
      ++j;
      loose = true;
    }
    if (j >= text.size() || (text[j] != 'v' && text[j] != 'V')) {
      ++i;
      continue;
    }
    if (text[j] == 'V') loose = true;
    ++j;
    while (j < text.size() && is_blank(text[j])) {
      ++j;
      loose = true;
    }
    const std::size_t digits_begin = j;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    const std::size_t digits_end = j;
    while (j < text.size() && is_blank(text[j])) {
      ++j;
      loose = true;
    }
    const bool closed = j < text.size() && text[j] == '}';
    const bool has_digits = digits_end > digits_begin;
    if (!closed && !has_digits) {
      ++i;
      continue;
    }
    TokenMatch m;
    m.begin = i;
    m.end = closed ? j + 1 : digits_end;
    if (closed && has_digits && !loose && digits_end - digits_begin <= 9 &&
        text[digits_begin] != '0') {
      m.id = std::stoi(std::string(text.substr(digits_begin, digits_end - digits_begin)));
    }
    out.push_back(m);
    i = m.end;
  }
  return out;
}

std::string restore_text(std::string_view masked, const std::vector<Placeholder>& placeholders) {
  std::string out;
  std::size_t pos = 0;
  for (const auto& tok : scan_tokens(masked)) {
    out.append(masked.substr(pos, tok.begin - pos));
    const Placeholder* found = nullptr;
    if (tok.id) {
      for (const auto& ph : placeholders) {
        if (ph.id == *tok.id) found = &ph;
      }
    }
    if (found) {
      out += found->restored_text();
    } else {
      out.append(masked.substr(tok.begin, tok.end - tok.begin));
    }
    pos = tok.end;
  }
  out.append(masked.substr(pos));
  return out;
}

std::string strip_tokens_and_space(std::string_view masked) {
  std::string without;
  std::size_t pos = 0;
  for (const auto& tok : scan_tokens(masked)) {
    without.append(masked.substr(pos, tok.begin - pos));
    if (!tok.id) without.append(masked.substr(tok.begin, tok.end - tok.begin));
    pos = tok.end;
  }
  without.append(masked.substr(pos));
  std::u32string out;
  for (char32_t cp : text::decode(without)) {
    if (!text::is_space(cp)) out.push_back(cp);
  }
  return text::encode(out);
}

}  // namespace relayout
