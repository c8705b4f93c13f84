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


#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "relayout/pdf_writer.hpp"

namespace relayout {
namespace {

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}

  std::uint32_t u(std::size_t at, int bytes) const {
    if (at + static_cast<std::size_t>(bytes) > data_.size()) throw FontError("MalformedFont: truncated table data");
    std::uint32_t v = 0;
    for (int i = 0; i < bytes; ++i) v = (v << 8) | static_cast<unsigned char>(data_[at + static_cast<std::size_t>(i)]);
    return v;
  }
  std::uint16_t u16(std::size_t at) const { return static_cast<std::uint16_t>(u(at, 2)); }
  std::int16_t i16(std::size_t at) const { return static_cast<std::int16_t>(u(at, 2)); }
  std::uint32_t u32(std::size_t at) const { return u(at, 4); }
  std::size_t size() const { return data_.size(); }

 private:
  std::string_view data_;
};

struct Table {
  std::size_t offset = 0;
  std::size_t length = 0;
};

void read_cmap4(const Reader& r, std::size_t at, std::map<char32_t, std::uint16_t>& out) {
  const std::size_t segs = r.u16(at + 6) / 2;
  const std::size_t ends = at + 14;
  const std::size_t starts = ends + 2 * segs + 2;
  const std::size_t deltas = starts + 2 * segs;
  const std::size_t ranges = deltas + 2 * segs;
  for (std::size_t s = 0; s < segs; ++s) {
    const std::uint32_t end = r.u16(ends + 2 * s);
    const std::uint32_t start = r.u16(starts + 2 * s);
    const std::uint16_t delta = r.u16(deltas + 2 * s);
    const std::uint16_t range = r.u16(ranges + 2 * s);
    if (start > end) continue;
    for (std::uint32_t c = start; c <= end && c != 0xFFFF; ++c) {
      std::uint16_t gid = 0;
      if (range == 0) {
        gid = static_cast<std::uint16_t>(c + delta);
      } else {
        const std::size_t slot = ranges + 2 * s + range + 2 * (c - start);
        gid = r.u16(slot);
        if (gid != 0) gid = static_cast<std::uint16_t>(gid + delta);
      }
      if (gid != 0) out.emplace(static_cast<char32_t>(c), gid);
    }
  }
}

void read_cmap12(const Reader& r, std::size_t at, std::map<char32_t, std::uint16_t>& out) {
  const std::uint32_t groups = r.u32(at + 12);
  for (std::uint32_t g = 0; g < groups; ++g) {
    const std::size_t rec = at + 16 + 12 * static_cast<std::size_t>(g);
    const std::uint32_t start = r.u32(rec);
    const std::uint32_t end = r.u32(rec + 4);
    const std::uint32_t glyph = r.u32(rec + 8);
    if (end < start || end > 0x10FFFF) throw FontError("MalformedFont: bad cmap group");
    for (std::uint32_t c = start; c <= end; ++c) {
      const std::uint32_t gid = glyph + (c - start);
      if (gid != 0 && gid <= 0xFFFF) out.emplace(static_cast<char32_t>(c), static_cast<std::uint16_t>(gid));
    }
  }
}

std::string postscript_name(const Reader& r, const Table& name) {
  const std::size_t count = r.u16(name.offset + 2);
  const std::size_t strings = name.offset + r.u16(name.offset + 4);
  std::string best;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t rec = name.offset + 6 + 12 * i;
    const std::uint16_t platform = r.u16(rec);
    const std::uint16_t name_id = r.u16(rec + 6);
    const std::size_t len = r.u16(rec + 8);
    const std::size_t off = strings + r.u16(rec + 10);
    if (name_id != 6) continue;
    std::string s;
    if (platform == 3 || platform == 0) {
      for (std::size_t k = 0; k + 1 < len; k += 2) {
        const std::uint16_t ch = r.u16(off + k);
        if (ch < 0x80) s += static_cast<char>(ch);
      }
    } else {
      for (std::size_t k = 0; k < len; ++k) s += static_cast<char>(r.u(off + k, 1));
    }
    if (!s.empty()) {
      best = s;
      break;
    }
  }
  std::string clean;
  for (char ch : best) {
    if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_') clean += ch;
  }
  return clean.empty() ? "RelayoutFont" : clean;
}

}  // namespace

TrueTypeFont parse_truetype(std::string_view bytes) {
  const Reader r(bytes);
  if (bytes.size() < 12) throw FontError("MalformedFont: file too short");
  const std::uint32_t version = r.u32(0);
  if (version == 0x4F54544F) throw FontError("MalformedFont: CFF outlines are not supported, use a TrueType font");
  if (version != 0x00010000 && version != 0x74727565) throw FontError("MalformedFont: not a TrueType font");
  const std::size_t num_tables = r.u16(4);
  std::map<std::string, Table> tables;
  for (std::size_t i = 0; i < num_tables; ++i) {
    const std::size_t rec = 12 + 16 * i;
    std::string tag(bytes.substr(rec, 4));
    Table t{r.u32(rec + 8), r.u32(rec + 12)};
    if (t.offset + t.length > bytes.size()) throw FontError("MalformedFont: table " + tag + " out of range");
    tables[tag] = t;
  }
  for (const char* required : {"head", "hhea", "hmtx", "maxp", "cmap"}) {
    if (!tables.count(required)) throw FontError(std::string("MalformedFont: missing ") + required + " table");
  }
  if (!tables.count("glyf")) throw FontError("MalformedFont: no glyf table");

  TrueTypeFont font;
  const Table head = tables["head"];
  font.units_per_em = r.u16(head.offset + 18);
  if (font.units_per_em < 16) throw FontError("MalformedFont: bad unitsPerEm");
  const double scale = 1000.0 / font.units_per_em;
  font.bbox = {r.i16(head.offset + 36) * scale, r.i16(head.offset + 38) * scale, r.i16(head.offset + 40) * scale,
               r.i16(head.offset + 42) * scale};
  const Table hhea = tables["hhea"];
  font.ascent = static_cast<int>(std::lround(r.i16(hhea.offset + 4) * scale));
  font.descent = static_cast<int>(std::lround(r.i16(hhea.offset + 6) * scale));
  const std::size_t metrics = r.u16(hhea.offset + 34);
  font.num_glyphs = r.u16(tables["maxp"].offset + 4);
  if (metrics == 0 || metrics > static_cast<std::size_t>(font.num_glyphs)) {
    throw FontError("MalformedFont: bad numberOfHMetrics");
  }
  const Table hmtx = tables["hmtx"];
  font.advances.resize(static_cast<std::size_t>(font.num_glyphs));
  double last = 0;
  for (std::size_t g = 0; g < font.advances.size(); ++g) {
    if (g < metrics) last = r.u16(hmtx.offset + 4 * g) * scale;
    font.advances[g] = last;
  }

  const Table cmap = tables["cmap"];
  const std::size_t subtables = r.u16(cmap.offset + 2);
  std::size_t best = 0;
  int best_rank = 0;
  for (std::size_t i = 0; i < subtables; ++i) {
    const std::size_t rec = cmap.offset + 4 + 8 * i;
    const std::uint16_t platform = r.u16(rec);
    const std::uint16_t encoding = r.u16(rec + 2);
    const std::size_t at = cmap.offset + r.u32(rec + 4);
    const std::uint16_t format = r.u16(at);
    int rank = 0;
    if (format == 12 && (platform == 3 || platform == 0)) rank = 3;
    else if (format == 4 && platform == 3 && encoding == 1) rank = 2;
    else if (format == 4 && platform == 0) rank = 1;
    if (rank > best_rank) {
      best_rank = rank;
      best = at;
    }
  }
  if (best_rank == 0) throw FontError("MalformedFont: no Unicode cmap");
  if (r.u16(best) == 12) read_cmap12(r, best, font.cmap);
  else read_cmap4(r, best, font.cmap);
  for (auto it = font.cmap.begin(); it != font.cmap.end();) {
    it = it->second >= font.num_glyphs ? font.cmap.erase(it) : std::next(it);
  }
  font.postscript_name = tables.count("name") ? postscript_name(r, tables["name"]) : "RelayoutFont";
  return font;
}

FontResource embed_font(std::string_view font_bytes, const std::set<char32_t>& glyphs) {
  const TrueTypeFont font = parse_truetype(font_bytes);
  FontResource res;
  res.base_font = font.postscript_name;
  res.ascent = font.ascent;
  res.descent = font.descent;
  res.bbox = font.bbox;
  res.program = std::string(font_bytes);
  for (char32_t cp : glyphs) {
    std::uint16_t gid = 0;
    if (auto it = font.cmap.find(cp); it != font.cmap.end()) {
      gid = it->second;
    } else {
      char buf[16];
      std::snprintf(buf, sizeof buf, "U+%04X", static_cast<unsigned>(cp));
      res.warnings.push_back({"MissingGlyph", std::string(buf) + " is not in " + font.postscript_name});
    }
    res.codes[cp] = gid;
    res.widths[gid] = font.advances[gid];
    if (gid != 0) res.to_unicode.emplace(gid, std::u32string(1, cp));
  }
  return res;
}

FontMetrics truetype_metrics(std::string_view font_bytes, std::string font_id) {
  const TrueTypeFont font = parse_truetype(font_bytes);
  FontMetrics m;
  m.font_id = std::move(font_id);
  m.name = font.postscript_name;
  m.ascent = font.ascent;
  m.descent = font.descent;
  m.default_width = font.advances.empty() ? 500 : font.advances[0];
  m.wide_width = m.default_width;
  for (const auto& [cp, gid] : font.cmap) m.widths[cp] = font.advances[gid];
  return m;
}

TargetFont TargetFont::from_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read font file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  TargetFont font;
  font.program = buf.str();
  font.metrics = truetype_metrics(font.program);
  return font;
}

}  // namespace relayout
