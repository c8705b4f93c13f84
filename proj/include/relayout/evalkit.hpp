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


// Layout-fidelity metrics between a source and a translated document, the
// untranslated-block count and the judge prompt artifact.

#pragma once

#include <string>
#include <vector>

#include "relayout/geometry.hpp"
#include "relayout/ir.hpp"

namespace relayout {

/// Intersection over union; 0 when the union is empty.
double iou(const Box& a, const Box& b);

/// Boxes divided by the media box width and height.
std::vector<LayoutElement> normalize(const std::vector<LayoutElement>& elements, const Box& media_box);

struct ElementPair {
  int src_id = 0;
  int dst_id = 0;
  double iou = 0;
  std::string src_class;
  std::string dst_class;
};

struct ElementMatch {
  std::vector<ElementPair> pairs;
  std::vector<int> unmatched_src;
  std::vector<int> unmatched_dst;
};

/// Walks `src_order`, pairing each element with the unused dst element at most
/// `window` positions from the dst cursor that maximizes IoU (> 0). Orders
/// hold element ids.
ElementMatch match_elements(const std::vector<LayoutElement>& src, const std::vector<LayoutElement>& dst,
                            const std::vector<int>& src_order, const std::vector<int>& dst_order, int window = 3);

struct PageBIoU {
  int page_number = 0;
  ElementMatch match;
  double page_mean = 0;
  double coverage = 0;
};

struct BIoUReport {
  std::vector<PageBIoU> per_page;
  double document_mean = 0;
  double coverage = 0;
};

/// Compares page_layout of equally long documents. Throws
/// EvalError(kPageCountMismatch).
BIoUReport compute_biou(const DocumentIR& src, const DocumentIR& dst);

/// Translated pages of a dual-alternating output (every second page).
DocumentIR deinterleave(const DocumentIR& dual);

struct UTBReport {
  std::vector<int> per_page;
  int total = 0;
  double mean = 0;
};

UTBReport count_utb(const DocumentIR& doc);

/// The judge prompt followed by an attachment manifest. Throws
/// EvalError(kMissingPath) when a list is empty or a path does not exist.
std::string emit_judge_prompt(const std::vector<std::string>& original_image_paths,
                              const std::vector<std::string>& system_image_paths);

std::string format_report(const BIoUReport& biou, const UTBReport* utb = nullptr);
std::string report_json(const BIoUReport& biou, const UTBReport* utb = nullptr);

}  // namespace relayout
