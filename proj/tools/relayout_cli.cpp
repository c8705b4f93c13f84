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


// Command line driver: translate documents, evaluate outputs, write the
// synthetic corpus and the judge prompt.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "relayout/corpus.hpp"
#include "relayout/errors.hpp"
#include "relayout/evalkit.hpp"
#include "relayout/ir_json.hpp"
#include "relayout/pdf_reader.hpp"
#include "relayout/pipeline.hpp"

#include <json.hpp>

namespace fs = std::filesystem;
using namespace relayout;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// "Name: message", without repeating a name the message already starts with.
std::string describe(const std::exception& e) {
  const std::string name = error_name(e);
  const std::string what = e.what();
  return what.rfind(name + ":", 0) == 0 ? what : name + ": " + what;
}

void spill(const fs::path& path, const std::string& data) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << data;
}

struct TranslateArgs {
  std::vector<std::string> files;
  std::string output = ".";
  std::string glossary;
  std::string translator = "mock:identity";
  std::string ir_dump;
  std::string detections;
  std::string font;
  HttpBackendConfig http;
  PipelineOptions options;
};

int translate_one(const std::string& file, const TranslateArgs& args, Backend& backend,
                  const std::vector<GlossaryEntry>& glossary, const Detections* detections, const TargetFont& font) {
  const fs::path in(file);
  const std::string stem = in.stem().string() + "." + args.options.lang_out;
  const fs::path out_dir(args.output);
  std::vector<std::string> errors;
  int code = 0;
  std::optional<PipelineOutput> result;
  try {
    PipelineInput input;
    input.pdf = slurp(in);
    input.detections = detections;
    input.user_glossary = glossary;
    input.font = font;
    int stage_no = 0;
    StageHook hook;
    if (!args.ir_dump.empty()) {
      hook = [&](std::string_view stage, const DocumentIR& doc) {
        char name[64];
        std::snprintf(name, sizeof name, "%s.%d_%.*s.json", stem.c_str(), ++stage_no, static_cast<int>(stage.size()),
                      stage.data());
        spill(fs::path(args.ir_dump) / name, serialize_ir(doc));
      };
    }
    const auto start = std::chrono::steady_clock::now();
    result = run_pipeline(input, backend, args.options, hook);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    spill(out_dir / (stem + ".mono.pdf"), result->mono_pdf);
    if (args.options.dual) spill(out_dir / (stem + ".dual.pdf"), result->dual_pdf);
    std::fprintf(stderr, "%s: %zu pages in %.2f s\n", file.c_str(), result->ir.pages.size(), secs);
  } catch (const std::exception& e) {
    code = exit_code_for(e);
    errors.push_back(describe(e));
    std::fprintf(stderr, "%s: %s\n", file.c_str(), errors.back().c_str());
  }
  try {
    spill(out_dir / (stem + ".report.json"),
          run_report(result ? &*result : nullptr, in.filename().string(), backend.model(), code, errors));
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", e.what());
    if (code == 0) code = 5;
  }
  return code;
}

int run_translate(TranslateArgs& args) {
  std::vector<GlossaryEntry> glossary;
  Detections detections;
  TargetFont font;
  std::unique_ptr<Backend> backend;
  try {
    if (args.files.empty()) throw ConfigError("no input files (use --files)");
    if (!args.glossary.empty()) glossary = parse_glossary_csv(slurp(args.glossary));
    if (!args.detections.empty()) {
      if (args.files.size() > 1) throw ConfigError("--detections applies to a single input file");
      detections = parse_detections(slurp(args.detections));
    }
    if (!args.font.empty()) font = TargetFont::from_file(args.font);
    backend = make_backend(args.translator, args.http);
  } catch (const SchemaError& e) {
    std::fprintf(stderr, "ConfigError: %s\n", e.what());
    return 5;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", describe(e).c_str());
    return exit_code_for(e);
  }
  int code = 0;
  for (const auto& file : args.files) {
    const int c = translate_one(file, args, *backend, glossary, args.detections.empty() ? nullptr : &detections, font);
    if (code == 0) code = c;
  }
  return code;
}

struct EvalArgs {
  std::string source;
  std::string output;
  std::string translated_ir;
  std::string report;
  std::string json;
  bool dual = false;
};

int run_eval(const EvalArgs& args) {
  std::vector<std::string> errors;
  int code = 0;
  std::string text;
  std::string json;
  try {
    const DocumentIR src = read_pdf(slurp(args.source)).ir;
    const DocumentIR dst = read_pdf(slurp(args.output)).ir;
    Evaluation ev = evaluate(src, dst, args.dual);
    if (!args.translated_ir.empty()) ev.utb = count_utb(deserialize_ir(slurp(args.translated_ir)));
    text = format_report(ev.biou, ev.utb ? &*ev.utb : nullptr);
    json = report_json(ev.biou, ev.utb ? &*ev.utb : nullptr);
  } catch (const std::exception& e) {
    code = exit_code_for(e);
    errors.push_back(describe(e));
    text = "error " + errors.back() + "\n";
    json = nlohmann::ordered_json({{"errors", errors}, {"exit_code", code}}).dump(2) + "\n";
  }
  try {
    if (args.report.empty()) {
      if (errors.empty()) std::cout << text;
    } else {
      spill(args.report, text);
    }
    if (!args.json.empty()) spill(args.json, json);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return code ? code : 5;
  }
  if (!errors.empty()) std::fprintf(stderr, "%s\n", errors.front().c_str());
  return code;
}

int run_corpus(const std::string& dir) {
  try {
    for (const auto& f : corpus::all()) {
      spill(fs::path(dir) / (f.name + ".pdf"), f.pdf);
      if (!f.detections.empty()) spill(fs::path(dir) / (f.name + ".detections.json"), f.detections);
      std::printf("%s\n", (fs::path(dir) / (f.name + ".pdf")).string().c_str());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 5;
  }
  return 0;
}

int run_judge_prompt(const std::vector<std::string>& originals, const std::vector<std::string>& systems,
                     const std::string& out) {
  try {
    const std::string prompt = emit_judge_prompt(originals, systems);
    if (out.empty()) {
      std::cout << prompt;
    } else {
      spill(out, prompt);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return exit_code_for(e);
  }
  return 0;
}

void add_translate_options(CLI::App& app, TranslateArgs& a) {
  app.add_option("--files", a.files, "Input PDF files");
  app.add_option("--output,-o", a.output, "Output directory")->capture_default_str();
  app.add_option("--lang-in", a.options.lang_in, "Source language")->capture_default_str();
  app.add_option("--lang-out", a.options.lang_out, "Target language")->capture_default_str();
  app.add_option("--glossary", a.glossary, "CSV with source,target[,acronym] columns");
  app.add_option("--translator", a.translator, "mock:identity|mock:bracket|mock:expand:<f>|http")
      ->capture_default_str();
  app.add_option("--scale-step", a.options.typeset.step, "Font scale decrement")->capture_default_str();
  app.add_option("--scale-min", a.options.typeset.min_gamma, "Smallest font scale")->capture_default_str();
  app.add_flag("--use-alternating-pages-dual", a.options.dual, "Also write source and translated pages interleaved");
  app.add_option("--ir-dump", a.ir_dump, "Directory for IR snapshots after each stage");
  app.add_option("--detections", a.detections, "Layout detections JSON for the input");
  app.add_option("--font", a.font, "TrueType font for the translated text");
  app.add_flag("--compress", a.options.compress, "Flate-compress content streams");
  app.add_flag("--lenient", a.options.lenient, "Skip unsupported operators with a warning");
  app.add_option("--http-endpoint", a.http.endpoint, "Chat completion URL for --translator http");
  app.add_option("--http-model", a.http.model, "Model name sent to the endpoint");
  app.add_option("--api-key-env", a.http.api_key_env, "Environment variable holding the API key")
      ->capture_default_str();
  app.add_option("--timeout", a.http.timeout_seconds, "HTTP timeout in seconds")->capture_default_str();
  app.add_option("--retries", a.options.translate.retries, "Retries for failed paragraphs")->capture_default_str();
  app.add_option("--batch-chars", a.options.translate.batch_chars, "Characters per request")->capture_default_str();
  app.add_option("--parallelism", a.options.translate.parallelism, "Concurrent requests")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Layout-preserving PDF translation"};
  app.set_config("--config", "", "File of key = value lines; flags override it");
  app.require_subcommand(0, 1);

  TranslateArgs top;
  add_translate_options(app, top);
  TranslateArgs sub;
  CLI::App* translate = app.add_subcommand("translate", "Translate PDF files");
  add_translate_options(*translate, sub);

  EvalArgs eval;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Compare a translated PDF with its source");
  eval_cmd->add_option("source", eval.source, "Source PDF")->required();
  eval_cmd->add_option("output", eval.output, "Translated PDF")->required();
  eval_cmd->add_option("--ir", eval.translated_ir, "Translated IR dump, enables the untranslated-block count");
  eval_cmd->add_option("--report", eval.report, "Text report path (default: stdout)");
  eval_cmd->add_option("--json", eval.json, "JSON report path");
  eval_cmd->add_flag("--dual", eval.dual, "Output interleaves source and translated pages");

  std::string corpus_dir = "corpus";
  CLI::App* corpus_cmd = app.add_subcommand("corpus", "Write the synthetic fixture documents");
  corpus_cmd->add_option("--out", corpus_dir, "Directory")->capture_default_str();

  std::vector<std::string> originals;
  std::vector<std::string> systems;
  std::string prompt_out;
  CLI::App* judge = app.add_subcommand("judge-prompt", "Write the comparative judge prompt");
  judge->add_option("--original", originals, "Rendered original page images")->required();
  judge->add_option("--systems", systems, "Rendered pages of each system");
  judge->add_option("--out", prompt_out, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 5;
  }

  if (*eval_cmd) return run_eval(eval);
  if (*corpus_cmd) return run_corpus(corpus_dir);
  if (*judge) return run_judge_prompt(originals, systems, prompt_out);
  return run_translate(*translate ? sub : top);
}
