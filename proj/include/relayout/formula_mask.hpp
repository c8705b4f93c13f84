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

// Script detection, formula records and the reversible placeholder masking
// applied to paragraphs around translation.

#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "relayout/geometry.hpp"
#include "relayout/ir.hpp"

namespace relayout {

enum class ScriptKind { kNormal, kSuperscript, kSubscript };
std::string_view to_string(ScriptKind kind);

struct ScriptConfig {
  double size_ratio = 0.80;
  double offset_factor = 0.15;  // of the body size
};

struct ScriptSpan {
  std::vector<int> unit_ids;
  ScriptKind kind = ScriptKind::kNormal;
  double size_ratio = 1.0;
  double baseline_offset = 0;
};

/// Most frequent font size on a line; ties go to the larger size.
double body_size(const std::vector<CharRecord>& line_chars);

/// Maximal runs of equal kind over chars of one visual line.
std::vector<ScriptSpan> detect_scripts(const std::vector<CharRecord>& line_chars, const ScriptConfig& config = {});

struct UnitOffset {
  int unit = 0;  // render order, or -op id
  double dx = 0;
  double dy = 0;
  double scale = 1;
};

std::vector<UnitOffset> compute_offsets(const std::vector<CharRecord>& units, double line_baseline_y,
                                        double body_size, double anchor_x);

/// A masked run and its geometry relative to the baseline-left anchor point.
struct FormulaRecord {
  int placeholder_id = 0;
  Box anchor;
  double baseline = 0;
  double body_size = 0;
  std::vector<UnitOffset> offsets;  // chars first, then ops
};

/// Baseline of the line hosting the placeholder's first unit.
double host_baseline(const Paragraph& paragraph, const PageIR& page, const Placeholder& placeholder);

FormulaRecord make_formula_record(const PageIR& page, const Placeholder& placeholder, double baseline,
                                  double body_size);

/// Maps original device space onto a run placed at (x, baseline) scaled by gamma.
Matrix relocation(const FormulaRecord& record, double x, double baseline, double gamma);

struct PlacedUnit {
  int unit = 0;
  Box box;
  double baseline = 0;
  double size = 0;
};

/// Char boxes of the record after relocation.
std::vector<PlacedUnit> reconstruct(const PageIR& page, const FormulaRecord& record, double x, double baseline,
                                    double gamma);

struct MaskConfig {
  ScriptConfig scripts;
  bool citations = true;
  bool code_spans = true;
  bool scripts_enabled = true;
};

/// Populates input and placeholders from pdf_unicode. Ops claimed by formula
/// runs are added to `claimed_ops` and skipped by later paragraphs.
void mask_paragraph(Paragraph& paragraph, const PageIR& page, const DocumentIR& doc, const MaskConfig& config = {},
                    std::set<int>* claimed_ops = nullptr);

void mask_document(DocumentIR& doc, const MaskConfig& config = {});

struct RunUnit {
  enum class Kind { kText, kRestore };
  Kind kind = Kind::kText;
  std::string text;  // restore units hold the restored text
  int placeholder_id = 0;

  friend bool operator==(const RunUnit&, const RunUnit&) = default;
};

/// Splits translated text into text runs and restoration units in output
/// order. Throws PlaceholderError for ids without a record.
std::vector<RunUnit> unmask(std::string_view output, const std::vector<Placeholder>& placeholders);

std::string flatten(const std::vector<RunUnit>& units);

}  // namespace relayout
