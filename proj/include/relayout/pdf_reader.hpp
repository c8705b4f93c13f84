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

// Content stream interpretation: pages become characters with device-space
// boxes plus the drawing operations that are carried through untouched.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "relayout/errors.hpp"
#include "relayout/ir.hpp"

namespace relayout {

namespace pdf {
class Document;
struct PageEntry;
}  // namespace pdf

struct ReadOptions {
  bool lenient = false;  // skip unsupported operators with a warning
  int depth_limit = 16;  // Form XObject nesting
};

struct ReadResult {
  DocumentIR ir;
  Warnings warnings;
};

/// Expresses `m` in the space defined by `ctm` (row-vector convention,
/// m × ctm): the rule used by `cm` and Form XObjects.
Matrix compose_matrix(const Matrix& m, const Matrix& ctm);

struct CharGeometry {
  Box box;
  double baseline_y = 0;
  double effective_size = 0;
  double advance = 0;  // glyph advance in text space (width/1000 × size)
};

/// Box of glyph `code` drawn at the origin of `text_matrix` with the font
/// size, horizontal scale and rise of `state`, mapped through the CTM. A
/// code with no width uses the font default and adds a MissingWidth warning.
CharGeometry char_box(std::uint32_t code, const FontRecord& font, const GraphicsState& state,
                      const Matrix& text_matrix = Matrix(), Warnings* warnings = nullptr);

/// Interprets one page of a loaded document, appending fonts and graphics
/// states to `doc`.
PageIR interpret_page(const pdf::Document& source, const pdf::PageEntry& page, int page_number,
                      DocumentIR& doc, const ReadOptions& options, Warnings& warnings);

/// Interprets a bare content stream against `resources` (a PDF dictionary in
/// source syntax, "<< >>" when empty). Used by tests and small tools.
PageIR interpret_content(std::string_view content, std::string_view resources, DocumentIR& doc,
                         const ReadOptions& options, Warnings& warnings, Box media_box = {0, 0, 612, 792});

ReadResult read_pdf(std::string bytes, const ReadOptions& options = {});
ReadResult read_pdf_file(const std::filesystem::path& path, const ReadOptions& options = {});

}  // namespace relayout
