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


#include <doctest.h>

#include <json.hpp>

#include "relayout/corpus.hpp"
#include "relayout/errors.hpp"
#include "relayout/ir_json.hpp"
#include "relayout/pdf_reader.hpp"
#include "relayout/pipeline.hpp"

using namespace relayout;

namespace {

PipelineOutput run(const corpus::Fixture& f, const std::string& mode, bool dual, StageHook hook = {}) {
  PipelineInput in;
  in.pdf = f.pdf;
  Detections det;
  if (!f.detections.empty()) {
    det = parse_detections(f.detections);
    in.detections = &det;
  }
  PipelineOptions options;
  options.dual = dual;
  options.translate.parallelism = 2;
  MockBackend backend(mode);
  return run_pipeline(in, backend, options, hook);
}

}  // namespace

TEST_CASE("corpus widths agree with the bundled metrics") {
  const FontMetrics m = FontMetrics::bundled();
  for (char c = 32; c < 127; ++c) CHECK(corpus::helvetica_width(c) == m.advance(static_cast<char32_t>(c)));
}

TEST_CASE("run_pipeline is deterministic and reports every stage") {
  const auto fixtures = corpus::all();
  for (const auto& f : fixtures) {
    CAPTURE(f.name);
    std::vector<std::string> stages;
    std::vector<std::string> dumps;
    const auto hook = [&](std::string_view stage, const DocumentIR& doc) {
      stages.emplace_back(stage);
      dumps.push_back(serialize_ir(doc));
    };
    const PipelineOutput a = run(f, "bracket", true, hook);
    const std::vector<std::string> first = dumps;
    dumps.clear();
    const PipelineOutput b = run(f, "bracket", true, hook);
    CHECK(a.mono_pdf == b.mono_pdf);
    CHECK(a.dual_pdf == b.dual_pdf);
    CHECK(first == dumps);
    CHECK(run_report(&a, f.name, "mock:bracket", 0, {}) == run_report(&b, f.name, "mock:bracket", 0, {}));
    CHECK(std::vector<std::string>(stages.begin(), stages.begin() + 5) ==
          std::vector<std::string>{"parsed", "segmented", "masked", "translated", "typeset"});
    CHECK(read_pdf(a.dual_pdf).ir.pages.size() == 2 * a.ir.pages.size());
  }
}

TEST_CASE("run report fields") {
  const PipelineOutput out = run(corpus::standard()[3], "expand:1.3", false);
  const auto report = nlohmann::json::parse(run_report(&out, "formula_region.pdf", "mock:expand:1.3", 0, {}));
  CHECK(report["input"] == "formula_region.pdf");
  CHECK(report["exit_code"] == 0);
  CHECK(report["pages"] == 1);
  CHECK(report["paragraphs"].get<int>() > 0);
  CHECK(report["placeholders"].get<int>() > 0);
  CHECK(report["overflow_at_min"] == 0);
  CHECK(report["utb"]["total"] == 0);
  CHECK(report.contains("gamma_histogram"));

  const auto failed = nlohmann::json::parse(run_report(nullptr, "x.pdf", "mock:identity", 2, {"ParseError: bad"}));
  CHECK(failed["exit_code"] == 2);
  CHECK(failed["errors"][0] == "ParseError: bad");
}

TEST_CASE("errors map to exit codes") {
  CHECK(exit_code_for(PdfError(PdfError::Code::kMalformedFile, "x")) == 2);
  CHECK(exit_code_for(BackendError(BackendError::Code::kUnavailable, "x")) == 3);
  CHECK(exit_code_for(RenderError(RenderError::Code::kEmptyDocument, "x")) == 4);
  CHECK(exit_code_for(FontError("x")) == 4);
  CHECK(exit_code_for(ConfigError("x")) == 5);
  CHECK(exit_code_for(PlaceholderError(3)) == 5);
  CHECK(exit_code_for(EvalError(EvalError::Code::kPageCountMismatch, "x")) == 2);
  CHECK(exit_code_for(std::runtime_error("x")) == 1);

  CHECK_THROWS_AS(make_backend("mock:sideways"), ConfigError);
  CHECK_THROWS_AS(make_backend("deepl"), ConfigError);
  CHECK(make_backend("mock:identity")->model() == MockBackend("identity").model());

  PipelineInput empty;
  empty.pdf = "%PDF-1.4\n1 0 obj << /Type /Catalog /Pages 2 0 R >> endobj\n"
              "2 0 obj << /Type /Pages /Kids [] /Count 0 >> endobj\n"
              "trailer << /Root 1 0 R >>\n%%EOF\n";
  MockBackend backend("identity");
  CHECK_THROWS_AS(run_pipeline(empty, backend), RenderError);
}
