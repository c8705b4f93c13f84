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


// End-to-end driver: parse, segment, mask, translate, typeset and render one
// document, plus the evaluation of a translated output against its source.

#pragma once

#include <exception>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relayout/evalkit.hpp"
#include "relayout/formula_mask.hpp"
#include "relayout/layout.hpp"
#include "relayout/pdf_writer.hpp"
#include "relayout/translate.hpp"
#include "relayout/typeset.hpp"

namespace relayout {

struct PipelineOptions {
  std::string lang_in = "en";
  std::string lang_out = "zh";
  LayoutConfig layout;
  MaskConfig mask;
  TranslateConfig translate;
  TypesetConfig typeset;
  bool dual = false;
  bool compress = false;
  bool lenient = false;
};

/// "mock:<mode>" or "http". Throws ConfigError.
std::unique_ptr<Backend> make_backend(std::string_view translator, const HttpBackendConfig& http = {});

struct PipelineInput {
  std::string pdf;
  const Detections* detections = nullptr;
  std::vector<GlossaryEntry> user_glossary;
  TargetFont font;
};

struct PipelineOutput {
  DocumentIR ir;  // after typesetting
  std::vector<TypesetPage> typeset;
  std::string mono_pdf;
  std::string dual_pdf;  // empty unless requested
  TranslationStats stats;
  int user_glossary = 0;
  Warnings warnings;
};

/// Called with a stage name and the IR after that stage: parsed, segmented,
/// masked, translated, typeset.
using StageHook = std::function<void(std::string_view stage, const DocumentIR& doc)>;

/// Throws PdfError, ConfigError, BackendError, RenderError or FontError.
/// A document without pages is rejected with RenderError(kEmptyDocument).
PipelineOutput run_pipeline(const PipelineInput& input, Backend& backend, const PipelineOptions& options = {},
                            const StageHook& hook = {});

/// Deterministic JSON run report. `error` is set when the run failed.
std::string run_report(const PipelineOutput* output, const std::string& input_name, std::string_view model,
                       int exit_code, const std::vector<std::string>& errors);

/// 0 success, 2 parse failure, 3 backend unavailable, 4 render failure,
/// 5 configuration error; anything else is 1.
int exit_code_for(const std::exception& error);

/// Name of the error class, used in reports.
std::string error_name(const std::exception& error);

/// Both documents are segmented heuristically so that the same pipeline
/// produces the compared elements. `dual` de-interleaves the output first.
struct Evaluation {
  BIoUReport biou;
  std::optional<UTBReport> utb;
};

Evaluation evaluate(const DocumentIR& source, const DocumentIR& output, bool dual = false,
                    const LayoutConfig& layout = {});

/// Replaces page_layout with heuristic elements in reading order.
void resegment(DocumentIR& doc, const LayoutConfig& layout = {});

}  // namespace relayout
