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


#include "relayout/pipeline.hpp"

#include <cstdio>
#include <map>

#include <json.hpp>

#include "relayout/errors.hpp"
#include "relayout/pdf_reader.hpp"

namespace relayout {

std::unique_ptr<Backend> make_backend(std::string_view translator, const HttpBackendConfig& http) {
  if (translator.substr(0, 5) == "mock:") return std::make_unique<MockBackend>(translator.substr(5));
  if (translator == "http") {
    if (http.endpoint.empty()) throw ConfigError("InvalidConfig: http translator needs an endpoint");
    return std::make_unique<HttpBackend>(http);
  }
  throw ConfigError("UnknownTranslator: " + std::string(translator));
}

PipelineOutput run_pipeline(const PipelineInput& input, Backend& backend, const PipelineOptions& options,
                            const StageHook& hook) {
  auto stage = [&hook](std::string_view name, const DocumentIR& doc) {
    if (hook) hook(name, doc);
  };
  PipelineOutput out;
  ReadOptions read;
  read.lenient = options.lenient;
  ReadResult parsed = read_pdf(input.pdf, read);
  if (parsed.ir.pages.empty()) throw RenderError(RenderError::Code::kEmptyDocument, "EmptyDocument: no pages");
  out.ir = std::move(parsed.ir);
  out.warnings = std::move(parsed.warnings);
  out.ir.source_lang = options.lang_in;
  out.ir.target_lang = options.lang_out;
  stage("parsed", out.ir);

  analyze_document(out.ir, options.layout, input.detections);
  stage("segmented", out.ir);
  mask_document(out.ir, options.mask);
  stage("masked", out.ir);

  TranslateConfig tc = options.translate;
  tc.layout = options.layout;
  out.stats = translate_document(out.ir, backend, tc, input.user_glossary);
  out.user_glossary = static_cast<int>(input.user_glossary.size());
  stage("translated", out.ir);

  for (auto& page : out.ir.pages) {
    out.typeset.push_back(typeset_page(page, input.font.metrics, options.typeset, &out.warnings));
  }
  stage("typeset", out.ir);

  WriteOptions wo;
  wo.compress = options.compress;
  out.mono_pdf = write_pdf(out.ir, out.typeset, input.font, wo, &out.warnings);
  if (options.dual) {
    wo.mode = OutputMode::kDualAlternating;
    out.dual_pdf = write_pdf(out.ir, out.typeset, input.font, wo, nullptr);
  }
  return out;
}

int exit_code_for(const std::exception& error) {
  if (dynamic_cast<const PdfError*>(&error) || dynamic_cast<const SchemaError*>(&error)) return 2;
  if (dynamic_cast<const BackendError*>(&error)) return 3;
  if (dynamic_cast<const RenderError*>(&error) || dynamic_cast<const FontError*>(&error)) return 4;
  if (dynamic_cast<const ConfigError*>(&error) || dynamic_cast<const PlaceholderError*>(&error)) return 5;
  if (const auto* e = dynamic_cast<const EvalError*>(&error)) {
    return e->code() == EvalError::Code::kPageCountMismatch ? 2 : 5;
  }
  return 1;
}

std::string error_name(const std::exception& error) {
  if (const auto* e = dynamic_cast<const RenderError*>(&error)) {
    switch (e->code()) {
      case RenderError::Code::kEmptyDocument: return "EmptyDocument";
      case RenderError::Code::kMissingFontResource: return "MissingFontResource";
      case RenderError::Code::kUntypesetParagraph: return "UntypesetParagraph";
    }
  }
  if (const auto* e = dynamic_cast<const EvalError*>(&error)) {
    return e->code() == EvalError::Code::kPageCountMismatch ? "PageCountMismatch" : "MissingPath";
  }
  if (const auto* e = dynamic_cast<const BackendError*>(&error)) {
    return e->code() == BackendError::Code::kUnavailable ? "BackendUnavailable" : "BackendProtocol";
  }
  if (dynamic_cast<const PdfError*>(&error)) return "ParseError";
  if (dynamic_cast<const SchemaError*>(&error)) return "SchemaError";
  if (dynamic_cast<const FontError*>(&error)) return "FontError";
  if (dynamic_cast<const ConfigError*>(&error)) return "ConfigError";
  return "Error";
}

std::string run_report(const PipelineOutput* output, const std::string& input_name, std::string_view model,
                       int exit_code, const std::vector<std::string>& errors) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["input"] = input_name;
  j["model"] = std::string(model);
  j["exit_code"] = exit_code;
  j["errors"] = errors;
  if (!output) return j.dump(2) + "\n";

  const DocumentIR& doc = output->ir;
  int paragraphs = 0;
  int placeholders = 0;
  int overflow = 0;
  std::map<std::string, int> histogram;
  std::map<std::string, int> status;
  for (const auto& page : doc.pages) {
    for (const auto& p : page.paragraph) {
      ++paragraphs;
      placeholders += static_cast<int>(p.placeholders.size());
      ++status[std::string(to_string(p.status))];
      if (!p.scale) continue;
      char key[16];
      std::snprintf(key, sizeof key, "%.2f", p.scale->gamma);
      ++histogram[key];
      if (p.scale->status == FitStatus::kOverflowAtMin) ++overflow;
    }
  }
  const UTBReport utb = count_utb(doc);
  int user = 0;
  for (const auto& g : output->stats.glossary) user += g.origin == GlossaryEntry::Origin::kUser;

  j["pages"] = doc.pages.size();
  j["paragraphs"] = paragraphs;
  j["placeholders"] = placeholders;
  j["status"] = status;
  ordered_json hist = ordered_json::object();
  for (auto it = histogram.rbegin(); it != histogram.rend(); ++it) hist[it->first] = it->second;
  j["gamma_histogram"] = hist;
  j["overflow_at_min"] = overflow;
  j["utb"] = {{"per_page", utb.per_page}, {"total", utb.total}, {"mean", utb.mean}};
  j["glossary"] = {{"entries", output->stats.glossary.size()},
                   {"user", user},
                   {"auto", static_cast<int>(output->stats.glossary.size()) - user}};
  ordered_json terms = ordered_json::array();
  for (const auto& g : output->stats.glossary) {
    terms.push_back({{"source", g.source_term},
                     {"target", g.target_term},
                     {"origin", g.origin == GlossaryEntry::Origin::kUser ? "user" : "auto"},
                     {"frequency", g.frequency}});
  }
  j["glossary"]["terms"] = terms;
  j["translation"] = {{"units", output->stats.units},
                      {"batches", output->stats.batches},
                      {"skipped", output->stats.skipped},
                      {"flagged", output->stats.flagged},
                      {"backend_calls", output->stats.backend_calls}};
  ordered_json warnings = ordered_json::array();
  for (const auto& w : output->warnings) warnings.push_back({{"code", w.code}, {"message", w.message}});
  j["warnings"] = warnings;
  return j.dump(2) + "\n";
}

void resegment(DocumentIR& doc, const LayoutConfig& layout) {
  for (auto& page : doc.pages) {
    page.page_layout.clear();
    auto elements = segment_layout(page, layout);
    const auto order = reading_order(elements, page.media_box);
    std::map<int, LayoutElement> by_id;
    for (auto& e : elements) by_id[e.id] = std::move(e);
    for (int id : order) page.page_layout.push_back(by_id.at(id));
  }
}

Evaluation evaluate(const DocumentIR& source, const DocumentIR& output, bool dual, const LayoutConfig& layout) {
  DocumentIR src = source;
  DocumentIR dst = dual ? deinterleave(output) : output;
  resegment(src, layout);
  resegment(dst, layout);
  Evaluation ev;
  ev.biou = compute_biou(src, dst);
  bool translated = false;
  for (const auto& page : output.pages) {
    for (const auto& p : page.paragraph) translated |= p.status != TranslationStatus::kPending;
  }
  if (translated) ev.utb = count_utb(output);
  return ev;
}

}  // namespace relayout
