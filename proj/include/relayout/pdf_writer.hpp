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


// Rebuilding pages from the IR: pass-through graphics, typeset translations,
// relocated placeholder runs and embedded target fonts.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "relayout/errors.hpp"
#include "relayout/ir.hpp"
#include "relayout/typeset.hpp"

namespace relayout {

struct TrueTypeFont {
  std::string postscript_name;
  int units_per_em = 1000;
  int num_glyphs = 0;
  int ascent = 0;   // 1/1000 em
  int descent = 0;  // 1/1000 em
  Box bbox;         // 1/1000 em
  std::map<char32_t, std::uint16_t> cmap;
  std::vector<double> advances;  // per glyph id, 1/1000 em
};

/// Reads the tables needed for embedding. Throws FontError (MalformedFont)
/// for anything that is not a well-formed TrueType-outline font.
TrueTypeFont parse_truetype(std::string_view bytes);

/// Two-byte Identity-H font resource. Codes are glyph ids for embedded
/// programs and code points for the metrics-only font.
struct FontResource {
  std::string base_font;
  int ascent = 0;
  int descent = 0;
  Box bbox;
  std::map<std::uint32_t, double> widths;  // code -> 1/1000 em
  std::map<std::uint32_t, std::u32string> to_unicode;
  std::map<char32_t, std::uint32_t> codes;  // requested character -> code
  std::string program;  // TrueType bytes, empty when not embedded
  Warnings warnings;
};

/// Missing characters map to glyph 0 with a MissingGlyph warning; an empty
/// set still embeds the whole program.
FontResource embed_font(std::string_view font_bytes, const std::set<char32_t>& glyphs);

FontMetrics truetype_metrics(std::string_view font_bytes, std::string font_id = "T1");

/// Font for translated text: a TrueType program, or the bundled
/// metrics-only font when `program` is empty.
struct TargetFont {
  FontMetrics metrics = FontMetrics::bundled();
  std::string program;

  static TargetFont from_file(const std::filesystem::path& path);
};

/// Fonts and images shared by all pages of one output document.
class PageResources {
 public:
  PageResources(const DocumentIR& doc, TargetFont target);

  /// Hex string for `text` in the target font; records the characters used.
  std::string target_codes(std::u32string_view text);
  /// Resource name and hex code for a source character drawn verbatim.
  std::pair<std::string, std::string> mirror_code(const CharRecord& c);
  std::string image_name(const PassthroughOp& op);

  const TargetFont& target() const { return target_; }

  struct Mirror {
    std::string name;
    const FontRecord* record = nullptr;
    std::map<std::pair<std::string, long long>, std::uint32_t> codes;  // (text, width x 1000)
  };
  const std::map<std::string, Mirror>& mirrors() const { return mirrors_; }
  const std::vector<const ImageData*>& images() const { return images_; }
  const std::set<char32_t>& target_chars() const { return target_chars_; }

 private:
  const DocumentIR& doc_;
  TargetFont target_;
  std::optional<TrueTypeFont> parsed_;
  std::set<char32_t> target_chars_;
  std::map<std::string, Mirror> mirrors_;
  std::vector<const ImageData*> images_;
  std::map<const ImageData*, std::string> image_names_;
};

/// Content stream for a translated page. Throws RenderError when a
/// paragraph has no typeset result or a source font is unknown.
std::string render_page(const DocumentIR& doc, const PageIR& page, const TypesetPage& typeset,
                        PageResources& resources);

/// Content stream redrawing the source page: pass-through graphics and all
/// characters at their recorded positions.
std::string render_source_page(const DocumentIR& doc, const PageIR& page, PageResources& resources);

enum class OutputMode { kMono, kDualAlternating };

struct WriteOptions {
  OutputMode mode = OutputMode::kMono;
  bool compress = false;
};

struct RenderedPage {
  Box media_box;
  std::string content;
};

/// PDF 1.7 with a classic xref table.
std::string assemble_document(const std::vector<RenderedPage>& pages, const PageResources& resources,
                              const WriteOptions& options = {}, Warnings* warnings = nullptr);

/// Renders and assembles the whole document; in dual mode each source page
/// precedes its translation.
std::string write_pdf(const DocumentIR& doc, const std::vector<TypesetPage>& typeset, const TargetFont& font,
                      const WriteOptions& options = {}, Warnings* warnings = nullptr);

}  // namespace relayout
