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

// Glossary extraction, prompt assembly, translation backends and the
// document-level translation pass.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relayout/ir.hpp"
#include "relayout/layout.hpp"

namespace relayout {

struct GlossaryEntry {
  enum class Origin { kAuto, kUser };

  std::string source_term;
  std::string target_term;
  std::optional<std::string> acronym;
  int frequency = 0;
  Origin origin = Origin::kAuto;

  friend bool operator==(const GlossaryEntry&, const GlossaryEntry&) = default;
};

struct GlossaryConfig {
  int min_freq = 3;
  int min_words = 2;
  int max_words = 5;
};

std::vector<GlossaryEntry> extract_glossary(const DocumentIR& doc, const GlossaryConfig& config = {});

/// UTF-8 CSV with a `source,target[,acronym]` header. Throws ConfigError.
std::vector<GlossaryEntry> parse_glossary_csv(std::string_view csv);

/// User entries win over automatic ones with the same source term.
std::vector<GlossaryEntry> merge_glossaries(const std::vector<GlossaryEntry>& user,
                                            const std::vector<GlossaryEntry>& automatic);

/// Entries mentioned in `text`: by acronym, by the full term, or by any run of
/// two or more consecutive words of the term.
std::vector<GlossaryEntry> glossary_slice(const std::vector<GlossaryEntry>& glossary, std::string_view text);

struct PromptConfig {
  std::string role =
      "You are a professional translator of scientific and technical documents. "
      "You translate faithfully, keep the register of academic writing and never add commentary.";
};

std::string build_prompt(const std::vector<std::string>& batch, const std::vector<GlossaryEntry>& glossary,
                         std::string_view source_lang, std::string_view target_lang,
                         const PromptConfig& config = {});

/// Splits a completion of the form "[1] ...\n[2] ..." into `expected`
/// segments. Throws BackendError(kProtocol) on a count mismatch.
std::vector<std::string> parse_numbered_segments(std::string_view completion, std::size_t expected);

struct PseudoMode {
  enum class Kind { kIdentity, kBracket, kExpand };
  Kind kind = Kind::kIdentity;
  double factor = 1.0;
};

/// "identity", "bracket" or "expand:<f>" with f >= 1. Throws ConfigError
/// (UnknownMode) otherwise.
PseudoMode parse_pseudo_mode(std::string_view mode);

std::string pseudo_translate(std::string_view text, const PseudoMode& mode);
std::string pseudo_translate(std::string_view text, std::string_view mode);

struct PlaceholderViolation {
  enum class Kind { kMissing, kDuplicate, kUnknown, kMalformed };
  Kind kind = Kind::kMissing;
  int id = 0;
  std::string span;  // offending text for malformed tokens

  friend bool operator==(const PlaceholderViolation&, const PlaceholderViolation&) = default;
};

std::string describe(const PlaceholderViolation& violation);

/// Empty when every expected token occurs exactly once and nothing else
/// token-like appears. Expected ids are those of `placeholders` plus any
/// well-formed token in `input`.
std::vector<PlaceholderViolation> verify_placeholders(std::string_view input, std::string_view output,
                                                      const std::vector<Placeholder>& placeholders);

struct TranslationRequest {
  std::vector<std::string> texts;
  std::string source_lang;
  std::string target_lang;
  std::vector<GlossaryEntry> glossary;
  std::string prompt;
};

struct TranslationResult {
  std::vector<std::string> outputs;
  std::vector<bool> flagged;          // identity fallback applied
  std::vector<std::string> failures;  // violation summary for flagged texts
  std::string model;
  double latency_ms = 0;
  int calls = 0;
};

class Backend {
 public:
  virtual ~Backend() = default;
  /// One output per request text, in order. Throws BackendError.
  virtual std::vector<std::string> translate(const TranslationRequest& request) = 0;
  virtual std::string model() const = 0;
};

class MockBackend : public Backend {
 public:
  explicit MockBackend(PseudoMode mode) : mode_(mode) {}
  explicit MockBackend(std::string_view mode) : mode_(parse_pseudo_mode(mode)) {}

  std::vector<std::string> translate(const TranslationRequest& request) override;
  std::string model() const override;

 private:
  PseudoMode mode_;
};

struct HttpBackendConfig {
  std::string endpoint;  // http(s)://host[:port]/path
  std::string model;
  std::string api_key_env = "RELAYOUT_API_KEY";
  int timeout_seconds = 60;
  std::string system_role;
};

/// Posts a chat-style body (system + user messages) and reads the first
/// completion text.
class HttpBackend : public Backend {
 public:
  explicit HttpBackend(HttpBackendConfig config);

  std::vector<std::string> translate(const TranslationRequest& request) override;
  std::string model() const override { return config_.model; }

 private:
  HttpBackendConfig config_;
};

struct TranslateConfig {
  int retries = 2;
  std::size_t batch_chars = 4000;
  int parallelism = 4;
  bool glossary_pass = true;
  GlossaryConfig glossary;
  PromptConfig prompt;
  LayoutConfig layout;  // continuation rules for stitched units
};

/// Calls the backend, verifies placeholders, retries failed texts and falls
/// back to the input for texts still failing. Throws BackendError when the
/// backend stays unavailable or answers with the wrong number of texts.
TranslationResult translate_batch(Backend& backend, const TranslationRequest& request,
                                  const TranslateConfig& config = {});

/// A chain of paragraphs linked by continuation_of, translated as one text.
struct TranslationUnit {
  std::vector<ParagraphRef> parts;
  std::vector<StitchDecision> joins;  // joins[i] links parts[i] and parts[i + 1]
  std::string text;                   // masked, placeholders renumbered
  std::vector<int> offsets;           // placeholder id offset of each part
};

std::vector<TranslationUnit> build_units(const DocumentIR& doc, const LayoutConfig& config = {});

/// Distributes a unit's translated text over its paragraphs. Returns false
/// (and leaves outputs untouched) when placeholders cannot be kept with their
/// own paragraph.
bool split_unit_output(DocumentIR& doc, const TranslationUnit& unit, std::string_view output);

struct TranslationStats {
  int units = 0;
  int batches = 0;
  int skipped = 0;
  int flagged = 0;
  int backend_calls = 0;
  std::vector<GlossaryEntry> glossary;
};

/// Glossary pass, then batched translation of every unit; fills
/// Paragraph::output and status.
TranslationStats translate_document(DocumentIR& doc, Backend& backend, const TranslateConfig& config = {},
                                    const std::vector<GlossaryEntry>& user_glossary = {});

}  // namespace relayout
