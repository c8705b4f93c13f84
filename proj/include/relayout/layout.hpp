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

// Page segmentation, reading order, paragraph grouping and stitching of
// paragraphs that continue across columns or pages.

#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "relayout/ir.hpp"

namespace relayout {

struct LayoutConfig {
  double header_band = 0.08;     // fraction of media box height
  double footer_band = 0.08;
  double column_gap = 0.03;      // fraction of page width
  double column_span = 0.60;     // fraction of text block height
  double fragment_gap = 1.5;     // max x gap inside a line fragment, in font sizes
  double paragraph_gap = 1.6;    // baseline gap in median line heights
  double size_jump = 1.25;       // font size ratio that starts a new block
  double indent_em = 1.0;
  double space_gap = 0.25;       // inferred space, in font sizes
  double inline_image_lines = 2.5;
  double heuristic_conf = 0.75;
  std::set<std::string, std::less<>> continuation_words = {"and", "or", "but", "which", "that",
                                                           "where", "while", "with", "whereas"};
};

/// Per-page element lists from an external detector, keyed by 0-based page number.
using Detections = std::map<int, std::vector<LayoutElement>>;

/// Reads `[[{class_name, box, conf}, ...], ...]` or `{"pages": [...]}`.
/// Throws SchemaError on malformed input.
Detections parse_detections(std::string_view json_text);

/// Labels regions of a page. External detections for the page (if any) are
/// kept verbatim; characters they do not cover get heuristic elements.
std::vector<LayoutElement> segment_layout(const PageIR& page, const LayoutConfig& config = {},
                                          const std::vector<LayoutElement>* detections = nullptr);

/// Recursive XY-cut order of element ids.
std::vector<int> reading_order(const std::vector<LayoutElement>& elements, const Box& media_box);

/// Element index for every character: the smallest containing element, with
/// formula regions only used when no other element contains the char, else
/// the nearest element; -1 only when there are no elements.
std::vector<int> assign_chars(const PageIR& page, const std::vector<LayoutElement>& elements);

std::vector<Paragraph> build_paragraphs(const PageIR& page, const std::vector<LayoutElement>& elements,
                                        const std::vector<int>& order, const LayoutConfig& config = {});

enum class StitchDecision { kKeep, kMerge, kMergeDehyphenate };
std::string_view to_string(StitchDecision decision);

StitchDecision stitch_cross_units(const Paragraph& tail, const Paragraph& head, const LayoutConfig& config = {});

/// Runs segmentation, ordering and paragraph building on every page, then
/// links continued paragraphs through `continuation_of`.
void analyze_document(DocumentIR& doc, const LayoutConfig& config = {}, const Detections* detections = nullptr);

/// Links paragraphs split across columns or pages; returns the number of links.
int stitch_document(DocumentIR& doc, const LayoutConfig& config = {});

}  // namespace relayout
