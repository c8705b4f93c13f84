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

// Font dictionaries: code splitting, widths, and text extraction.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relayout/errors.hpp"
#include "relayout/ir.hpp"
#include "relayout/pdf/document.hpp"

namespace relayout::pdf {

struct Std14Metrics {
  std::string name;
  int ascent = 0;
  int descent = 0;
};

/// Maps a BaseFont name (subset prefixes and common aliases such as Arial
/// included) to one of the fourteen standard fonts.
std::optional<Std14Metrics> find_std14(std::string_view base_font);
std::optional<double> std14_width(std::string_view std14_name, std::string_view glyph_name);
/// Glyph name under one of the standard encodings (WinAnsiEncoding,
/// StandardEncoding, MacRomanEncoding) or a standard font's built-in one.
const char* encoding_glyph(std::string_view encoding, std::uint8_t code);
/// Unicode text for a glyph name (glyph list, uniXXXX, uXXXX[XX], ligatures).
std::optional<std::u32string> glyph_unicode(std::string_view glyph_name);

/// Character map as used by ToUnicode streams and embedded CID encodings.
class CMap {
 public:
  static CMap parse(std::string_view data);
  static CMap identity(int bytes = 2);

  struct Code {
    std::uint32_t value = 0;
    int bytes = 1;
  };
  std::vector<Code> split(std::string_view data) const;
  std::optional<std::u32string> unicode(std::uint32_t code) const;
  std::optional<std::uint32_t> cid(std::uint32_t code) const;
  bool empty() const { return unicode_.empty() && unicode_ranges_.empty() && !identity_; }

 private:
  struct CodespaceRange {
    std::uint32_t low = 0;
    std::uint32_t high = 0;
    int bytes = 1;
  };
  struct UnicodeRange {
    std::uint32_t low = 0;
    std::uint32_t high = 0;
    std::u32string start;
    std::vector<std::u32string> values;  // array form
  };
  struct CidRange {
    std::uint32_t low = 0;
    std::uint32_t high = 0;
    std::uint32_t start = 0;
  };

  std::vector<CodespaceRange> codespace_;
  std::map<std::uint32_t, std::u32string> unicode_;
  std::vector<UnicodeRange> unicode_ranges_;
  std::map<std::uint32_t, std::uint32_t> cids_;
  std::vector<CidRange> cid_ranges_;
  bool identity_ = false;
};

struct Glyph {
  std::uint32_t code = 0;
  int bytes = 1;
  std::u32string text;  // U+FFFD when no mapping exists
  double width = 0;     // glyph space, 1/1000 em
  bool word_space = false;  // single-byte code 32
};

class Font {
 public:
  enum class Kind { kSimple, kType0, kType3 };

  /// `warnings` collects MissingWidth and MissingUnicode findings; each code
  /// is reported once per font.
  std::vector<Glyph> decode(std::string_view bytes, Warnings* warnings) const;
  FontRecord record() const;

  std::string font_id;
  std::string base_font;
  Kind kind = Kind::kSimple;
  int ascent = 750;
  int descent = -250;
  bool embedded = false;
  bool vertical = false;
  bool code_is_unicode = false;  // UCS-2 style CMaps
  double default_width = 0;
  double width_scale = 1.0;  // Type3 glyph space to 1/1000 em
  std::map<std::uint32_t, double> widths;
  std::optional<std::string> std14;  // standard metrics fallback
  std::vector<std::string> encoding;  // simple fonts: glyph name per code
  std::optional<CMap> to_unicode;
  CMap code_map = CMap::identity(1);
  std::map<std::uint32_t, double> cid_widths;  // Type0 /W

 private:
  double width_for(std::uint32_t code, std::uint32_t cid, bool& missing) const;
  mutable std::map<std::uint32_t, bool> reported_;
  mutable std::map<std::uint32_t, bool> reported_width_;
};

/// Builds a Font from a font dictionary.
Font load_font(const Document& doc, const Dict& font_dict, std::string font_id, Warnings* warnings);

}  // namespace relayout::pdf
