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

#include "relayout/pdf/font.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <unordered_map>

#include "relayout/text.hpp"

namespace relayout::pdf {
namespace {

struct Std14Glyph {
  int code;
  const char* name;
  int width;
};

struct Std14FontData {
  const char* name;
  int ascent;
  int descent;
  int bbox[4];
  const Std14Glyph* glyphs;
  int count;
};

struct GlyphNameEntry {
  const char* name;
  std::uint32_t cp;
};

#include "std14_data.inc"

const Std14FontData* std14_data(std::string_view name) {
  for (const auto& f : kStd14Fonts) {
    if (name == f.name) return &f;
  }
  return nullptr;
}

const std::unordered_map<std::string_view, int>& std14_widths(const Std14FontData& font) {
  static std::unordered_map<const Std14FontData*, std::unordered_map<std::string_view, int>> cache;
  auto& m = cache[&font];
  if (m.empty()) {
    for (int i = 0; i < font.count; ++i) m.emplace(font.glyphs[i].name, font.glyphs[i].width);
  }
  return m;
}

std::string strip_subset(std::string_view name) {
  if (name.size() > 7 && name[6] == '+' &&
      std::all_of(name.begin(), name.begin() + 6, [](char c) { return c >= 'A' && c <= 'Z'; })) {
    name.remove_prefix(7);
  }
  return std::string(name);
}

std::optional<std::uint32_t> parse_hex(std::string_view s) {
  if (s.empty() || s.size() > 6) return std::nullopt;
  std::uint32_t v = 0;
  for (char c : s) {
    v <<= 4;
    if (c >= '0' && c <= '9') v |= static_cast<std::uint32_t>(c - '0');
    else if (c >= 'A' && c <= 'F') v |= static_cast<std::uint32_t>(c - 'A' + 10);
    else return std::nullopt;  // glyph names use upper-case hex only
  }
  return v;
}

std::optional<std::u32string> component_unicode(std::string_view name) {
  const auto* begin = std::begin(kGlyphNames);
  const auto* end = std::end(kGlyphNames);
  const auto* it = std::lower_bound(begin, end, name, [](const GlyphNameEntry& e, std::string_view n) {
    return std::string_view(e.name) < n;
  });
  if (it != end && name == it->name) return std::u32string(1, static_cast<char32_t>(it->cp));
  if (name.size() >= 7 && name.substr(0, 3) == "uni" && (name.size() - 3) % 4 == 0) {
    std::u32string out;
    for (std::size_t i = 3; i < name.size(); i += 4) {
      const auto v = parse_hex(name.substr(i, 4));
      if (!v || (*v >= 0xD800 && *v <= 0xDFFF)) return std::nullopt;
      out.push_back(static_cast<char32_t>(*v));
    }
    return out;
  }
  if (name.size() >= 5 && name.size() <= 7 && name[0] == 'u') {
    const auto v = parse_hex(name.substr(1));
    if (v && *v <= 0x10FFFF && !(*v >= 0xD800 && *v <= 0xDFFF)) {
      return std::u32string(1, static_cast<char32_t>(*v));
    }
  }
  return std::nullopt;
}

std::uint32_t big_endian(std::string_view bytes) {
  std::uint32_t v = 0;
  for (char c : bytes) v = (v << 8) | static_cast<unsigned char>(c);
  return v;
}

std::u32string utf16be(std::string_view bytes) {
  std::u32string out;
  for (std::size_t i = 0; i + 1 < bytes.size(); i += 2) {
    std::uint32_t u = big_endian(bytes.substr(i, 2));
    if (u >= 0xD800 && u <= 0xDBFF && i + 3 < bytes.size()) {
      const std::uint32_t lo = big_endian(bytes.substr(i + 2, 2));
      if (lo >= 0xDC00 && lo <= 0xDFFF) {
        u = 0x10000 + ((u - 0xD800) << 10) + (lo - 0xDC00);
        i += 2;
      }
    }
    out.push_back(static_cast<char32_t>(u));
  }
  if (bytes.size() == 1) out.push_back(static_cast<unsigned char>(bytes[0]));
  return out;
}

std::u32string cmap_destination(const Token& t) {
  if (t.kind == TokenKind::kName) return glyph_unicode(t.text).value_or(U"�");
  return utf16be(t.text);
}

double number_or(const Object& o, double fallback) { return o.is_number() ? o.as_number() : fallback; }

}  // namespace

std::optional<Std14Metrics> find_std14(std::string_view base_font) {
  const std::string name = strip_subset(base_font);
  if (const auto* f = std14_data(name)) return Std14Metrics{f->name, f->ascent, f->descent};
  std::string lower;
  for (char c : name) {
    if (c != ' ' && c != ',' && c != '-') lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  std::string family;
  if (lower.rfind("helvetica", 0) == 0 || lower.rfind("arial", 0) == 0) family = "Helvetica";
  else if (lower.rfind("times", 0) == 0) family = "Times";
  else if (lower.rfind("courier", 0) == 0) family = "Courier";
  else if (lower.rfind("symbol", 0) == 0) family = "Symbol";
  else if (lower.find("dingbats") != std::string::npos) family = "ZapfDingbats";
  else return std::nullopt;
  if (family == "Symbol" || family == "ZapfDingbats") {
    const auto* f = std14_data(family);
    return Std14Metrics{f->name, f->ascent, f->descent};
  }
  const bool bold = lower.find("bold") != std::string::npos;
  const bool italic = lower.find("italic") != std::string::npos || lower.find("oblique") != std::string::npos;
  std::string full = family;
  const char* slant = family == "Times" ? "Italic" : "Oblique";
  if (bold && italic) full += std::string("-Bold") + slant;
  else if (bold) full += "-Bold";
  else if (italic) full += std::string("-") + slant;
  else if (family == "Times") full += "-Roman";
  const auto* f = std14_data(full);
  return Std14Metrics{f->name, f->ascent, f->descent};
}

std::optional<double> std14_width(std::string_view std14_name, std::string_view glyph_name) {
  const auto* f = std14_data(std14_name);
  if (!f) return std::nullopt;
  const auto& m = std14_widths(*f);
  if (auto it = m.find(glyph_name); it != m.end()) return it->second;
  return std::nullopt;
}

const char* encoding_glyph(std::string_view encoding, std::uint8_t code) {
  if (encoding == "WinAnsiEncoding") return kWinAnsiEncoding[code];
  if (encoding == "StandardEncoding") return kStandardEncoding[code];
  if (encoding == "MacRomanEncoding") return kMacRomanEncoding[code];
  if (const auto* f = std14_data(encoding)) {
    for (int i = 0; i < f->count; ++i) {
      if (f->glyphs[i].code == code) return f->glyphs[i].name;
    }
  }
  return nullptr;
}

std::optional<std::u32string> glyph_unicode(std::string_view glyph_name) {
  if (auto dot = glyph_name.find('.'); dot != std::string_view::npos) glyph_name = glyph_name.substr(0, dot);
  if (glyph_name.empty()) return std::nullopt;
  std::u32string out;
  std::size_t start = 0;
  while (start <= glyph_name.size()) {
    const auto us = glyph_name.find('_', start);
    const auto part = glyph_name.substr(start, us == std::string_view::npos ? std::string_view::npos : us - start);
    const auto u = component_unicode(part);
    if (!u) return std::nullopt;
    out += *u;
    if (us == std::string_view::npos) break;
    start = us + 1;
  }
  return out;
}

CMap CMap::identity(int bytes) {
  CMap m;
  m.identity_ = true;
  m.codespace_.push_back({0, bytes >= 4 ? 0xFFFFFFFFu : (1u << (8 * bytes)) - 1, bytes});
  return m;
}

CMap CMap::parse(std::string_view data) {
  CMap m;
  Lexer lex(data);
  auto hex_token = [&](Token& t) {
    t = lex.next();
    return t.kind == TokenKind::kHexString || t.kind == TokenKind::kString;
  };
  for (;;) {
    const Token t = lex.next();
    if (t.kind == TokenKind::kEnd) break;
    if (t.kind != TokenKind::kKeyword) continue;
    if (t.text == "begincodespacerange") {
      Token lo, hi;
      while (hex_token(lo) && hex_token(hi)) {
        m.codespace_.push_back({big_endian(lo.text), big_endian(hi.text),
                                static_cast<int>(std::max<std::size_t>(1, lo.text.size()))});
      }
    } else if (t.text == "beginbfchar") {
      Token src;
      while (hex_token(src)) {
        const Token dst = lex.next();
        m.unicode_[big_endian(src.text)] = cmap_destination(dst);
      }
    } else if (t.text == "beginbfrange") {
      Token lo, hi;
      while (hex_token(lo) && hex_token(hi)) {
        UnicodeRange r;
        r.low = big_endian(lo.text);
        r.high = big_endian(hi.text);
        const Token dst = lex.next();
        if (dst.kind == TokenKind::kArrayOpen) {
          for (Token e = lex.next(); e.kind != TokenKind::kArrayClose && e.kind != TokenKind::kEnd; e = lex.next()) {
            r.values.push_back(cmap_destination(e));
          }
        } else {
          r.start = cmap_destination(dst);
        }
        if (r.high >= r.low) m.unicode_ranges_.push_back(std::move(r));
      }
    } else if (t.text == "begincidchar") {
      Token src;
      while (hex_token(src)) {
        const Token cid = lex.next();
        m.cids_[big_endian(src.text)] = static_cast<std::uint32_t>(cid.integer);
      }
    } else if (t.text == "begincidrange") {
      Token lo, hi;
      while (hex_token(lo) && hex_token(hi)) {
        const Token cid = lex.next();
        m.cid_ranges_.push_back({big_endian(lo.text), big_endian(hi.text), static_cast<std::uint32_t>(cid.integer)});
      }
    }
  }
  // Last definition wins for overlapping ranges.
  std::reverse(m.unicode_ranges_.begin(), m.unicode_ranges_.end());
  std::reverse(m.cid_ranges_.begin(), m.cid_ranges_.end());
  return m;
}

std::vector<CMap::Code> CMap::split(std::string_view data) const {
  std::vector<Code> out;
  if (codespace_.empty()) {
    for (char c : data) out.push_back({static_cast<unsigned char>(c), 1});
    return out;
  }
  int shortest = 4;
  for (const auto& r : codespace_) shortest = std::min(shortest, r.bytes);
  std::size_t pos = 0;
  while (pos < data.size()) {
    bool matched = false;
    for (int n = 1; n <= 4 && pos + static_cast<std::size_t>(n) <= data.size(); ++n) {
      const std::uint32_t v = big_endian(data.substr(pos, static_cast<std::size_t>(n)));
      for (const auto& r : codespace_) {
        if (r.bytes == n && v >= r.low && v <= r.high) {
          out.push_back({v, n});
          pos += static_cast<std::size_t>(n);
          matched = true;
          break;
        }
      }
      if (matched) break;
    }
    if (!matched) {
      const auto n = std::min<std::size_t>(static_cast<std::size_t>(shortest), data.size() - pos);
      out.push_back({big_endian(data.substr(pos, n)), static_cast<int>(n)});
      pos += n;
    }
  }
  return out;
}

std::optional<std::u32string> CMap::unicode(std::uint32_t code) const {
  if (auto it = unicode_.find(code); it != unicode_.end()) return it->second;
  for (const auto& r : unicode_ranges_) {
    if (code < r.low || code > r.high) continue;
    if (!r.values.empty()) {
      const auto i = code - r.low;
      if (i < r.values.size()) return r.values[i];
      return std::nullopt;
    }
    std::u32string s = r.start;
    if (s.empty()) return std::nullopt;
    s.back() = static_cast<char32_t>(s.back() + (code - r.low));
    return s;
  }
  return std::nullopt;
}

std::optional<std::uint32_t> CMap::cid(std::uint32_t code) const {
  if (identity_) return code;
  if (auto it = cids_.find(code); it != cids_.end()) return it->second;
  for (const auto& r : cid_ranges_) {
    if (code >= r.low && code <= r.high) return r.start + (code - r.low);
  }
  return std::nullopt;
}

double Font::width_for(std::uint32_t code, std::uint32_t cid, bool& missing) const {
  missing = false;
  if (kind == Kind::kType0) {
    if (auto it = cid_widths.find(cid); it != cid_widths.end()) return it->second;
    return default_width;
  }
  if (auto it = widths.find(code); it != widths.end()) return it->second * width_scale;
  if (std14 && code < encoding.size() && !encoding[code].empty()) {
    if (auto w = std14_width(*std14, encoding[code])) return *w;
  }
  missing = true;
  return default_width * width_scale;
}

std::vector<Glyph> Font::decode(std::string_view bytes, Warnings* warnings) const {
  std::vector<Glyph> out;
  for (const auto& c : code_map.split(bytes)) {
    Glyph g;
    g.code = c.value;
    g.bytes = c.bytes;
    g.word_space = c.bytes == 1 && c.value == 32;
    const std::uint32_t cid = code_map.cid(c.value).value_or(0);
    bool missing = false;
    g.width = width_for(c.value, cid, missing);

    std::optional<std::u32string> text;
    if (to_unicode) text = to_unicode->unicode(c.value);
    if (!text && kind != Kind::kType0 && c.value < encoding.size() && !encoding[c.value].empty()) {
      text = glyph_unicode(encoding[c.value]);
    }
    if (!text && kind != Kind::kType0 && c.value >= 32 && c.value < 127) {
      text = std::u32string(1, static_cast<char32_t>(c.value));
    }
    if (!text && code_is_unicode) text = std::u32string(1, static_cast<char32_t>(c.value));
    if (!text || text->empty()) {
      text = U"�";
      if (warnings && !reported_[c.value]) {
        warnings->push_back({"MissingUnicode", font_id + ": no Unicode mapping for code " + std::to_string(c.value)});
      }
      reported_[c.value] = true;
    }
    if (missing && warnings && !reported_width_[c.value]) {
      warnings->push_back({"MissingWidth", font_id + ": no width for code " + std::to_string(c.value)});
      reported_width_[c.value] = true;
    }
    g.text = std::move(*text);
    out.push_back(std::move(g));
  }
  return out;
}

FontRecord Font::record() const {
  FontRecord r;
  r.font_id = font_id;
  r.name = base_font;
  r.ascent = ascent;
  r.descent = descent;
  r.default_width = default_width * (kind == Kind::kType0 ? 1.0 : width_scale);
  r.embedded = embedded;
  if (kind == Kind::kType0) {
    r.widths = cid_widths;
  } else {
    for (const auto& [code, w] : widths) r.widths[code] = w * width_scale;
    if (std14) {
      for (std::uint32_t code = 0; code < encoding.size(); ++code) {
        if (encoding[code].empty() || r.widths.count(code)) continue;
        if (auto w = std14_width(*std14, encoding[code])) r.widths[code] = *w;
      }
    }
  }
  return r;
}

Font load_font(const Document& doc, const Dict& dict, std::string font_id, Warnings* warnings) {
  Font font;
  font.font_id = std::move(font_id);
  const Object subtype = doc.get(dict, "Subtype");
  const Object base = doc.get(dict, "BaseFont");
  font.base_font = base.is_name() ? base.name_value() : (subtype.is_name("Type3") ? "Type3" : "Unnamed");

  const Object to_unicode = doc.get(dict, "ToUnicode");
  if (to_unicode.is_stream()) {
    try {
      font.to_unicode = CMap::parse(doc.decode_stream(to_unicode.as_stream()));
    } catch (const Error& e) {
      if (warnings) warnings->push_back({"BadToUnicode", font.font_id + ": " + e.what()});
    }
  }

  auto read_descriptor = [&](const Dict& holder) {
    const Object fd = doc.get(holder, "FontDescriptor");
    if (!fd.is_dict()) return Dict{};
    return fd.as_dict();
  };
  auto apply_metrics = [&](const Dict& desc) {
    const double asc = number_or(doc.get(desc, "Ascent"), 0);
    double dsc = number_or(doc.get(desc, "Descent"), 0);
    if (dsc > 0) dsc = -dsc;
    if (!doc.get(desc, "FontFile").is_null() || !doc.get(desc, "FontFile2").is_null() ||
        !doc.get(desc, "FontFile3").is_null()) {
      font.embedded = true;
    }
    if (asc > 0 && asc > dsc) {
      font.ascent = static_cast<int>(std::lround(asc));
      font.descent = static_cast<int>(std::lround(dsc));
      return;
    }
    if (font.std14) return;
    const Object bbox = doc.get(desc, "FontBBox");
    if (bbox.is_array() && bbox.as_array().size() == 4) {
      const double lo = number_or(doc.resolve(bbox.as_array()[1]), 0);
      const double hi = number_or(doc.resolve(bbox.as_array()[3]), 0);
      if (hi > lo && hi > 0) {
        font.ascent = static_cast<int>(std::lround(hi));
        font.descent = static_cast<int>(std::lround(std::min(0.0, lo)));
      }
    }
  };

  if (subtype.is_name("Type0")) {
    font.kind = Font::Kind::kType0;
    font.default_width = 1000;
    const Object enc = doc.get(dict, "Encoding");
    font.code_map = CMap::identity(2);
    if (enc.is_name()) {
      const std::string& n = enc.name_value();
      font.vertical = n.size() > 2 && n.substr(n.size() - 2) == "-V";
      if (n != "Identity-H" && n != "Identity-V") {
        if (n.rfind("Uni", 0) == 0 && (n.find("UCS2") != std::string::npos || n.find("UTF16") != std::string::npos)) {
          font.code_is_unicode = true;
        } else if (warnings) {
          warnings->push_back({"UnsupportedEncoding", font.font_id + ": CMap " + n + " read as Identity-H"});
        }
      }
    } else if (enc.is_stream()) {
      font.code_map = CMap::parse(doc.decode_stream(enc.as_stream()));
    }
    if (font.vertical && warnings) {
      warnings->push_back({"VerticalWriting", font.font_id + ": vertical writing laid out horizontally"});
    }
    const Object descendants = doc.get(dict, "DescendantFonts");
    Dict cid_font;
    if (descendants.is_array() && !descendants.as_array().empty()) {
      const Object d = doc.resolve(descendants.as_array()[0]);
      if (d.is_dict()) cid_font = d.as_dict();
    }
    font.default_width = number_or(doc.get(cid_font, "DW"), 1000);
    const Object w = doc.get(cid_font, "W");
    if (w.is_array()) {
      const auto& arr = w.as_array();
      for (std::size_t i = 0; i < arr.size();) {
        const Object first = doc.resolve(arr[i]);
        if (!first.is_number() || i + 1 >= arr.size()) break;
        const Object second = doc.resolve(arr[i + 1]);
        const auto start = static_cast<std::uint32_t>(first.as_int());
        if (second.is_array()) {
          std::uint32_t cid = start;
          for (const auto& v : second.as_array()) font.cid_widths[cid++] = number_or(doc.resolve(v), 0);
          i += 2;
        } else if (second.is_number() && i + 2 < arr.size()) {
          const auto last = static_cast<std::uint32_t>(second.as_int());
          const double width = number_or(doc.resolve(arr[i + 2]), 0);
          for (std::uint32_t cid = start; cid <= last && cid - start < 65536; ++cid) font.cid_widths[cid] = width;
          i += 3;
        } else {
          break;
        }
      }
    }
    apply_metrics(read_descriptor(cid_font));
    if (!font.to_unicode && !font.code_is_unicode && warnings) {
      warnings->push_back({"MissingToUnicode", font.font_id + ": composite font without ToUnicode"});
    }
    return font;
  }

  font.kind = subtype.is_name("Type3") ? Font::Kind::kType3 : Font::Kind::kSimple;
  if (font.kind == Font::Kind::kSimple) {
    if (auto s = find_std14(font.base_font)) {
      font.std14 = s->name;
      font.ascent = s->ascent;
      font.descent = s->descent;
    }
  }
  const Dict desc = read_descriptor(dict);
  font.embedded = !doc.get(desc, "FontFile").is_null() || !doc.get(desc, "FontFile2").is_null() ||
                  !doc.get(desc, "FontFile3").is_null();
  const int flags = static_cast<int>(number_or(doc.get(desc, "Flags"), 0));
  const bool symbolic = (flags & 4) != 0 && (flags & 32) == 0;

  std::string base_encoding;
  if (font.std14 && (*font.std14 == "Symbol" || *font.std14 == "ZapfDingbats")) {
    base_encoding = *font.std14;
  } else if (font.kind == Font::Kind::kType3) {
    base_encoding = "";
  } else if (!(symbolic && font.embedded)) {
    base_encoding = subtype.is_name("TrueType") ? "WinAnsiEncoding" : "StandardEncoding";
  }
  const Object enc = doc.get(dict, "Encoding");
  Array differences;
  if (enc.is_name()) {
    base_encoding = enc.name_value();
  } else if (enc.is_dict()) {
    const Object be = doc.get(enc.as_dict(), "BaseEncoding");
    if (be.is_name()) base_encoding = be.name_value();
    const Object diff = doc.get(enc.as_dict(), "Differences");
    if (diff.is_array()) differences = diff.as_array();
  }
  font.encoding.assign(256, std::string());
  if (!base_encoding.empty()) {
    for (int code = 0; code < 256; ++code) {
      if (const char* g = encoding_glyph(base_encoding, static_cast<std::uint8_t>(code))) font.encoding[code] = g;
    }
  }
  std::int64_t code = 0;
  for (const auto& item : differences) {
    const Object v = doc.resolve(item);
    if (v.is_number()) {
      code = v.as_int();
    } else if (v.is_name()) {
      if (code >= 0 && code < 256) font.encoding[static_cast<std::size_t>(code)] = v.name_value();
      ++code;
    }
  }

  const Object first_char = doc.get(dict, "FirstChar");
  const Object widths = doc.get(dict, "Widths");
  if (widths.is_array()) {
    std::int64_t c = first_char.is_number() ? first_char.as_int() : 0;
    for (const auto& w : widths.as_array()) {
      const Object v = doc.resolve(w);
      if (v.is_number() && c >= 0) font.widths[static_cast<std::uint32_t>(c)] = v.as_number();
      ++c;
    }
  }
  font.default_width = number_or(doc.get(desc, "MissingWidth"), 0);

  if (font.kind == Font::Kind::kType3) {
    const Object fm = doc.get(dict, "FontMatrix");
    double matrix[6] = {0.001, 0, 0, 0.001, 0, 0};
    if (fm.is_array() && fm.as_array().size() == 6) {
      for (int i = 0; i < 6; ++i) matrix[i] = number_or(doc.resolve(fm.as_array()[i]), matrix[i]);
    }
    font.width_scale = matrix[0] * 1000.0;
    const Object bbox = doc.get(dict, "FontBBox");
    if (bbox.is_array() && bbox.as_array().size() == 4) {
      const double lo = number_or(doc.resolve(bbox.as_array()[1]), 0) * matrix[3] * 1000.0;
      const double hi = number_or(doc.resolve(bbox.as_array()[3]), 0) * matrix[3] * 1000.0;
      if (hi > lo && hi > 0) {
        font.ascent = static_cast<int>(std::lround(hi));
        font.descent = static_cast<int>(std::lround(std::min(0.0, lo)));
      }
    }
  }
  apply_metrics(desc);
  return font;
}

}  // namespace relayout::pdf
