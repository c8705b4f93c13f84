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

#include "relayout/ir.hpp"

#include <algorithm>

namespace relayout {

std::string_view to_string(PlaceholderType type) {
  switch (type) {
    case PlaceholderType::kCitationMarker: return "citation_marker";
    case PlaceholderType::kFormula: return "formula";
    case PlaceholderType::kInlineImage: return "inline_image";
    case PlaceholderType::kCodeSpan: return "code_span";
    case PlaceholderType::kSymbolRun: return "symbol_run";
  }
  return "formula";
}

std::optional<PlaceholderType> placeholder_type_from(std::string_view name) {
  for (auto t : {PlaceholderType::kCitationMarker, PlaceholderType::kFormula,
                 PlaceholderType::kInlineImage, PlaceholderType::kCodeSpan,
                 PlaceholderType::kSymbolRun}) {
    if (to_string(t) == name) return t;
  }
  return std::nullopt;
}

std::string placeholder_token(int id) { return "{v" + std::to_string(id) + "}"; }

std::string_view to_string(TranslationStatus status) {
  switch (status) {
    case TranslationStatus::kPending: return "pending";
    case TranslationStatus::kTranslated: return "translated";
    case TranslationStatus::kFailed: return "failed";
    case TranslationStatus::kSkipped: return "skipped";
  }
  return "pending";
}

std::string_view to_string(FitStatus status) {
  return status == FitStatus::kFit ? "Fit" : "OverflowAtMin";
}

std::string_view to_string(PassthroughKind kind) {
  switch (kind) {
    case PassthroughKind::kPath: return "path";
    case PassthroughKind::kClip: return "clip";
    case PassthroughKind::kImage: return "image";
  }
  return "path";
}

const CharRecord* PageIR::find_char(int render_order) const {
  // Render orders are dense 1..N for parsed pages; fall back to a scan.
  if (render_order >= 1 && static_cast<std::size_t>(render_order) <= pdf_character.size() &&
      pdf_character[render_order - 1].render_order == render_order) {
    return &pdf_character[render_order - 1];
  }
  auto it = std::find_if(pdf_character.begin(), pdf_character.end(),
                         [&](const CharRecord& c) { return c.render_order == render_order; });
  return it == pdf_character.end() ? nullptr : &*it;
}

const PassthroughOp* PageIR::find_op(int id) const {
  if (id >= 1 && static_cast<std::size_t>(id) <= passthrough_ops.size() &&
      passthrough_ops[id - 1].id == id) {
    return &passthrough_ops[id - 1];
  }
  auto it = std::find_if(passthrough_ops.begin(), passthrough_ops.end(),
                         [&](const PassthroughOp& op) { return op.id == id; });
  return it == passthrough_ops.end() ? nullptr : &*it;
}

const FontRecord* DocumentIR::find_font(std::string_view font_id) const {
  auto it = std::find_if(fonts.begin(), fonts.end(),
                         [&](const FontRecord& f) { return f.font_id == font_id; });
  return it == fonts.end() ? nullptr : &*it;
}

int DocumentIR::intern_state(const GraphicsState& state) {
  for (std::size_t i = states.size(); i-- > 0;) {
    if (states[i] == state) return static_cast<int>(i);
  }
  states.push_back(state);
  return static_cast<int>(states.size() - 1);
}

}  // namespace relayout
