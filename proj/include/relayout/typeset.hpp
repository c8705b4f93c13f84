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


// Line breaking and the scale search that fits translated text back into
// the source paragraph boxes.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "relayout/errors.hpp"
#include "relayout/formula_mask.hpp"
#include "relayout/geometry.hpp"
#include "relayout/ir.hpp"

namespace relayout {

/// Horizontal metrics of the font used for translated text, in 1/1000 em.
struct FontMetrics {
  std::string font_id = "T1";
  std::string name = "RelayoutSans";
  int ascent = 718;
  int descent = -207;
  std::map<char32_t, double> widths;
  double default_width = 500;
  double wide_width = 1000;  // spaceless scripts missing from `widths`

  double advance(char32_t cp) const;

  static FontMetrics monospace(double advance = 500, int ascent = 800, int descent = -400);
  /// Helvetica widths for the Latin-1 range, full width for CJK.
  static FontMetrics bundled();
};

/// One layout unit: a code point, or an unbreakable restored run when
/// `object` is a placeholder id.
struct FlowUnit {
  char32_t cp = 0;
  int object = 0;
  double width = 0;  // objects only, at gamma 1

  friend bool operator==(const FlowUnit&, const FlowUnit&) = default;
};
using Flow = std::vector<FlowUnit>;

Flow text_flow(std::u32string_view text);

struct TypesetConfig {
  double step = 0.05;
  double min_gamma = 0.6;
  double line_factor = 1.2;
};

struct Line {
  std::size_t begin = 0;  // flow indices, trailing spaces excluded
  std::size_t end = 0;
  double width = 0;
  bool justify = false;  // broken inside a spaceless run
};

struct LineLayout {
  bool fit = true;
  double gamma = 1.0;
  double size = 0;  // effective glyph size
  double line_height = 0;
  double height = 0;
  std::vector<Line> lines;
};

/// Greedy breaking at spaces, after a letter-hyphen, after padding dots and
/// around spaceless characters. Height is the line pitch times (lines - 1)
/// plus one ascent-to-descent extent.
LineLayout layout_lines(const Flow& flow, const Box& box, double base_size, double gamma, const FontMetrics& metrics,
                        const TypesetConfig& config = {});

struct ScalingResult {
  double gamma = 1.0;
  int iterations = 0;
  FitStatus status = FitStatus::kFit;
  LineLayout layout;
};

/// Tries gamma = 1, 1 - step, ... down to min_gamma. Throws ConfigError on a
/// non-positive step or a min_gamma outside (0, 1].
ScalingResult fit_paragraph(const Flow& flow, const Box& box, double base_size, const FontMetrics& metrics,
                            const TypesetConfig& config = {});

struct PlacedGlyph {
  char32_t cp = 0;
  double x = 0;
  double baseline = 0;
  double size = 0;
  Box box;
};

struct PlacedObject {
  int placeholder_id = 0;
  double x = 0;
  double baseline = 0;
  double gamma = 1.0;
};

struct PlacedParagraph {
  std::string font_id;
  std::vector<PlacedGlyph> glyphs;  // spaces are not emitted
  std::vector<PlacedObject> objects;
};

PlacedParagraph place_glyphs(const Flow& flow, const LineLayout& layout, const Box& box, const FontMetrics& metrics);

struct TypesetParagraph {
  int index = 0;  // on the page
  bool verbatim = false;  // only restored runs: drawn where they were
  ScalingResult fit;
  PlacedParagraph placed;
  std::map<int, FormulaRecord> records;  // by placeholder id
};

struct TypesetPage {
  std::vector<TypesetParagraph> paragraphs;
};

/// Flow for the paragraph's output (its input while still pending), with
/// placeholder widths taken from `records`.
Flow paragraph_flow(const Paragraph& paragraph, const std::map<int, FormulaRecord>& records);

/// Typesets every paragraph of the page and stores the scale records.
/// OverflowAtMin paragraphs add a warning and keep their min-gamma layout.
TypesetPage typeset_page(PageIR& page, const FontMetrics& metrics, const TypesetConfig& config = {},
                         Warnings* warnings = nullptr);

}  // namespace relayout
