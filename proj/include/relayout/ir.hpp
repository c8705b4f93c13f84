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

// The intermediate representation shared by every pipeline stage. Parsing
// fills pages with characters and pass-through graphics; later stages add
// layout elements, paragraphs, translations and scale decisions. Rendering
// reads the finished IR back.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relayout/geometry.hpp"

namespace relayout {

inline constexpr std::string_view kIrVersion = "1";

struct Color {
  std::string space = "gray";  // gray | rgb | cmyk
  std::vector<double> components{0.0};

  friend bool operator==(const Color&, const Color&) = default;
};

struct GraphicsState {
  Matrix ctm;
  int clip_id = 0;  // 0: no clip; otherwise the id of a clip pass-through op
  std::string font_id;
  double font_size = 0;
  double char_spacing = 0;
  double word_spacing = 0;
  double horizontal_scale = 100;
  double leading = 0;
  double text_rise = 0;
  double line_width = 1;
  Color fill_color;
  Color stroke_color;

  friend bool operator==(const GraphicsState&, const GraphicsState&) = default;
};

struct FontRecord {
  std::string font_id;
  std::string name;
  int ascent = 0;   // 1/1000 em
  int descent = 0;  // 1/1000 em, <= 0
  std::map<std::uint32_t, double> widths;  // code -> advance, 1/1000 em
  double default_width = 0;
  bool embedded = false;

  friend bool operator==(const FontRecord&, const FontRecord&) = default;
};

struct CharRecord {
  std::string char_unicode;
  std::string font_id;
  double font_size = 0;  // effective, device space
  Box box;
  int render_order = 0;
  double baseline_y = 0;
  int state_id = 0;

  friend bool operator==(const CharRecord&, const CharRecord&) = default;
};

struct LayoutElement {
  int id = 0;
  std::string class_name;
  Box box;
  double conf = 0;

  friend bool operator==(const LayoutElement&, const LayoutElement&) = default;
};

enum class PlaceholderType { kCitationMarker, kFormula, kInlineImage, kCodeSpan, kSymbolRun };

std::string_view to_string(PlaceholderType type);
std::optional<PlaceholderType> placeholder_type_from(std::string_view name);

/// A masked fragment. `lead_ws` and `trail_ws` hold whitespace absorbed
/// into the token together with the fragment; unmasking substitutes
/// lead_ws + source_chars + trail_ws.
struct Placeholder {
  PlaceholderType type = PlaceholderType::kFormula;
  int id = 0;
  std::string placeholder;
  std::string source_chars;
  std::string lead_ws;
  std::string trail_ws;
  std::vector<int> source_units;  // CharRecord render orders
  std::vector<int> source_ops;    // pass-through op ids

  std::string restored_text() const { return lead_ws + source_chars + trail_ws; }

  friend bool operator==(const Placeholder&, const Placeholder&) = default;
};

std::string placeholder_token(int id);

struct ParagraphRef {
  int page = 0;
  int index = 0;

  friend bool operator==(const ParagraphRef&, const ParagraphRef&) = default;
};

enum class TranslationStatus { kPending, kTranslated, kFailed, kSkipped };
std::string_view to_string(TranslationStatus status);

enum class FitStatus { kFit, kOverflowAtMin };
std::string_view to_string(FitStatus status);

struct ScaleRecord {
  double gamma = 1.0;
  int iterations = 0;
  FitStatus status = FitStatus::kFit;

  friend bool operator==(const ScaleRecord&, const ScaleRecord&) = default;
};

struct Paragraph {
  std::string input;
  std::string output;
  std::string pdf_unicode;
  std::string layout_label;
  std::vector<Placeholder> placeholders;
  Box box;
  // One entry per code point of pdf_unicode: a char render order, 0 for
  // inferred whitespace, or -op_id for an inline pass-through unit.
  std::vector<int> unit_ids;
  std::optional<ParagraphRef> continuation_of;
  int element_id = 0;
  std::string font_id;
  double base_size = 0;
  TranslationStatus status = TranslationStatus::kPending;
  std::string failure;
  std::optional<ScaleRecord> scale;

  friend bool operator==(const Paragraph&, const Paragraph&) = default;
};

enum class PassthroughKind { kPath, kClip, kImage };
std::string_view to_string(PassthroughKind kind);

/// One path construction operator with operands in user space. `op` uses the
/// content stream spelling (m, l, c, v, y, h, re).
struct PathCommand {
  std::string op;
  std::vector<double> operands;

  friend bool operator==(const PathCommand&, const PathCommand&) = default;
};

struct ImageData {
  int width = 0;
  int height = 0;
  int bits_per_component = 8;
  std::string color_space = "DeviceGray";
  std::string filter;  // empty when the data is not encoded
  bool image_mask = false;
  std::string data;  // raw stream bytes

  friend bool operator==(const ImageData&, const ImageData&) = default;
};

struct PassthroughOp {
  int id = 0;
  PassthroughKind kind = PassthroughKind::kPath;
  int state_id = 0;
  int after_render_order = 0;  // number of chars shown before this op
  std::vector<PathCommand> path;
  std::string paint;      // f, f*, S, B, B*, n
  std::string clip_rule;  // W or W* for clip ops
  int parent_clip = 0;
  Box box;  // device space
  std::optional<ImageData> image;

  friend bool operator==(const PassthroughOp&, const PassthroughOp&) = default;
};

struct PageIR {
  int page_number = 0;
  std::string unit = "point";
  Box media_box;
  std::vector<LayoutElement> page_layout;
  std::vector<std::string> pdf_font;
  std::vector<CharRecord> pdf_character;
  std::vector<Paragraph> paragraph;
  std::vector<PassthroughOp> passthrough_ops;

  const CharRecord* find_char(int render_order) const;
  const PassthroughOp* find_op(int id) const;

  friend bool operator==(const PageIR&, const PageIR&) = default;
};

struct DocumentIR {
  std::string source_lang = "en";
  std::string target_lang = "zh";
  std::vector<FontRecord> fonts;
  std::vector<GraphicsState> states;
  std::vector<PageIR> pages;

  const FontRecord* find_font(std::string_view font_id) const;
  /// Returns the index of `state`, appending it when not already present.
  int intern_state(const GraphicsState& state);

  friend bool operator==(const DocumentIR&, const DocumentIR&) = default;
};

}  // namespace relayout
