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

#include "relayout/translate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <future>
#include <map>
#include <regex>
#include <set>

#include "relayout/errors.hpp"
#include "relayout/placeholders.hpp"
#include "relayout/text.hpp"

namespace relayout {
namespace {

const std::set<std::string, std::less<>> kFunctionWords = {"of", "and", "for", "the", "in", "on", "to", "a", "an",
                                                          "with", "by", "from"};
const std::set<std::string, std::less<>> kLeadingStops = {"The", "A", "An", "In", "On", "This", "These", "That",
                                                          "We", "Our", "It", "Its", "For", "Of", "And", "To",
                                                          "As", "At", "By", "If", "When", "With", "From"};

bool word_char(char32_t cp) { return text::is_letter(cp) || text::is_digit(cp) || cp == U'-' || cp == U'\''; }

bool capitalized(std::string_view word) {
  const std::u32string u = text::decode(word);
  return !u.empty() && text::is_upper(u.front());
}

// Runs of words separated only by whitespace; punctuation and placeholder
// tokens end a run.
std::vector<std::vector<std::string>> word_chains(std::string_view s) {
  std::vector<std::vector<std::string>> chains(1);
  std::u32string word;
  auto flush = [&] {
    if (!word.empty()) chains.back().push_back(text::encode(word));
    word.clear();
  };
  auto cut = [&] {
    flush();
    if (!chains.back().empty()) chains.emplace_back();
  };
  std::size_t pos = 0;
  auto tokens = scan_tokens(s);
  std::size_t next_token = 0;
  const std::string str(s);
  while (pos < str.size()) {
    if (next_token < tokens.size() && tokens[next_token].begin == pos) {
      cut();
      pos = tokens[next_token++].end;
      continue;
    }
    std::size_t len = 1;
    const unsigned char lead = static_cast<unsigned char>(str[pos]);
    if (lead >= 0xF0) len = 4;
    else if (lead >= 0xE0) len = 3;
    else if (lead >= 0xC0) len = 2;
    const std::u32string cp = text::decode(std::string_view(str).substr(pos, len));
    const char32_t c = cp.empty() ? 0 : cp.front();
    if (word_char(c) && !text::is_spaceless(c)) {
      word += c;
    } else if (text::is_space(c)) {
      flush();
    } else {
      cut();
    }
    pos += len;
  }
  flush();
  return chains;
}

std::string join_words(const std::vector<std::string>& words, std::size_t b, std::size_t e) {
  std::string out;
  for (std::size_t i = b; i < e; ++i) {
    if (i > b) out += ' ';
    out += words[i];
  }
  return out;
}

std::size_t count_occurrences(std::string_view hay, std::string_view needle) {
  if (needle.empty()) return 0;
  std::size_t n = 0;
  for (std::size_t pos = hay.find(needle); pos != std::string_view::npos; pos = hay.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

bool whole_word_at(std::string_view hay, std::size_t pos, std::size_t len) {
  auto alnum = [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) != 0; };
  const bool left = pos == 0 || !alnum(hay[pos - 1]);
  const bool right = pos + len >= hay.size() || !alnum(hay[pos + len]);
  return left && right;
}

bool contains_word(std::string_view hay, std::string_view needle) {
  if (needle.empty()) return false;
  for (std::size_t pos = hay.find(needle); pos != std::string_view::npos; pos = hay.find(needle, pos + 1)) {
    if (whole_word_at(hay, pos, needle.size())) return true;
  }
  return false;
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// Term preceding a parenthesized acronym whose capitalized words spell it.
std::optional<std::string> acronym_term(const std::vector<std::string>& before, std::string_view acronym) {
  std::string letters;
  for (char ch : acronym) {
    if (std::isupper(static_cast<unsigned char>(ch))) letters += ch;
  }
  if (letters.size() < 2) return std::nullopt;
  std::vector<std::string> picked;
  std::size_t caps = 0;
  for (std::size_t i = before.size(); i-- > 0 && caps < letters.size();) {
    const std::string& w = before[i];
    if (capitalized(w)) {
      picked.insert(picked.begin(), w);
      ++caps;
    } else if (!picked.empty() && kFunctionWords.count(w)) {
      picked.insert(picked.begin(), w);
    } else {
      break;
    }
  }
  while (!picked.empty() && !capitalized(picked.front())) picked.erase(picked.begin());
  if (caps < 2 || caps != letters.size()) return std::nullopt;
  std::string initials;
  for (const auto& w : picked) {
    if (!capitalized(w)) continue;
    for (char ch : w) {
      // Hyphenated words contribute each capitalized part.
      if (std::isupper(static_cast<unsigned char>(ch))) {
        initials += ch;
        break;
      }
    }
  }
  if (initials != letters) return std::nullopt;
  return join_words(picked, 0, picked.size());
}

std::string renumber_tokens(std::string_view s, int delta) {
  if (delta == 0) return std::string(s);
  std::string out;
  std::size_t pos = 0;
  for (const auto& tok : scan_tokens(s)) {
    out.append(s.substr(pos, tok.begin - pos));
    if (tok.id) {
      out += placeholder_token(*tok.id + delta);
    } else {
      out.append(s.substr(tok.begin, tok.end - tok.begin));
    }
    pos = tok.end;
  }
  out.append(s.substr(pos));
  return out;
}

int max_placeholder_id(const Paragraph& p) {
  int k = 0;
  for (const auto& ph : p.placeholders) k = std::max(k, ph.id);
  for (const auto& tok : scan_tokens(p.input)) {
    if (tok.id) k = std::max(k, *tok.id);
  }
  return k;
}

std::string trim_right(std::string s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

}  // namespace

std::vector<GlossaryEntry> extract_glossary(const DocumentIR& doc, const GlossaryConfig& config) {
  std::vector<std::string> texts;
  for (const auto& page : doc.pages) {
    for (const auto& p : page.paragraph) texts.push_back(p.input.empty() ? p.pdf_unicode : p.input);
  }

  std::map<std::string, GlossaryEntry> entries;
  static const std::regex kAcronym(R"(\(([A-Z][A-Za-z0-9-]{1,9})\))");
  for (const std::string& t : texts) {
    for (auto it = std::sregex_iterator(t.begin(), t.end(), kAcronym); it != std::sregex_iterator(); ++it) {
      const auto chains = word_chains(std::string_view(t).substr(0, it->position()));
      if (chains.empty()) continue;
      // The acronym must directly follow the words (only spaces in between).
      const std::string tail = t.substr(0, it->position());
      if (tail.empty() || tail.back() != ' ') continue;
      const auto& words = chains.back().empty() && chains.size() > 1 ? chains[chains.size() - 2] : chains.back();
      const std::string acronym = (*it)[1].str();
      if (auto term = acronym_term(words, acronym)) {
        GlossaryEntry& e = entries[*term];
        e.source_term = *term;
        e.acronym = acronym;
      }
    }
  }

  std::map<std::string, int> counts;
  for (const std::string& t : texts) {
    for (const auto& chain : word_chains(t)) {
      for (int n = config.min_words; n <= config.max_words; ++n) {
        for (std::size_t i = 0; i + n <= chain.size(); ++i) {
          bool ok = !kLeadingStops.count(chain[i]);
          for (std::size_t k = i; k < i + n && ok; ++k) ok = capitalized(chain[k]);
          if (ok) ++counts[join_words(chain, i, i + n)];
        }
      }
    }
  }
  std::vector<std::pair<std::string, int>> frequent;
  for (const auto& [term, c] : counts) {
    if (c >= config.min_freq) frequent.emplace_back(term, c);
  }
  for (const auto& [term, c] : frequent) {
    bool subsumed = false;
    for (const auto& [other, oc] : frequent) {
      if (other.size() > term.size() && oc == c && (" " + other + " ").find(" " + term + " ") != std::string::npos) {
        subsumed = true;
        break;
      }
    }
    if (subsumed) continue;
    GlossaryEntry& e = entries[term];
    e.source_term = term;
  }

  std::vector<GlossaryEntry> out;
  for (auto& [term, e] : entries) {
    std::size_t freq = 0;
    for (const std::string& t : texts) freq += count_occurrences(t, term);
    e.frequency = std::max<int>(1, static_cast<int>(freq));
    e.origin = GlossaryEntry::Origin::kAuto;
    out.push_back(e);
  }
  std::stable_sort(out.begin(), out.end(), [](const GlossaryEntry& a, const GlossaryEntry& b) {
    if (a.frequency != b.frequency) return a.frequency > b.frequency;
    return a.source_term < b.source_term;
  });
  return out;
}

std::vector<GlossaryEntry> parse_glossary_csv(std::string_view csv) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  if (csv.substr(0, 3) == "\xEF\xBB\xBF") csv.remove_prefix(3);
  for (std::size_t i = 0; i < csv.size(); ++i) {
    const char ch = csv[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < csv.size() && csv[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
      continue;
    }
    if (ch == '"') {
      quoted = true;
      any = true;
    } else if (ch == ',') {
      row.push_back(field);
      field.clear();
      any = true;
    } else if (ch == '\n' || ch == '\r') {
      if (ch == '\r' && i + 1 < csv.size() && csv[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        row.push_back(field);
        rows.push_back(row);
      }
      row.clear();
      field.clear();
      any = false;
    } else {
      field += ch;
      any = true;
    }
  }
  if (quoted) throw ConfigError("glossary CSV: unterminated quoted field");
  if (any || !field.empty()) {
    row.push_back(field);
    rows.push_back(row);
  }
  if (rows.empty()) throw ConfigError("glossary CSV: missing header");

  std::vector<std::string> header = rows.front();
  for (auto& h : header) h = text::trim(h);
  auto column = [&](std::string_view name) -> int {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return static_cast<int>(i);
    }
    return -1;
  };
  const int src = column("source");
  const int tgt = column("target");
  const int acr = column("acronym");
  if (src < 0 || tgt < 0) throw ConfigError("glossary CSV: header must contain source,target");

  std::vector<GlossaryEntry> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& cells = rows[r];
    auto cell = [&](int c) { return c >= 0 && c < static_cast<int>(cells.size()) ? text::trim(cells[c]) : std::string(); };
    GlossaryEntry e;
    e.source_term = cell(src);
    if (e.source_term.empty()) throw ConfigError("glossary CSV: empty source term on row " + std::to_string(r + 1));
    e.target_term = cell(tgt);
    if (const std::string a = cell(acr); !a.empty()) e.acronym = a;
    e.frequency = 0;
    e.origin = GlossaryEntry::Origin::kUser;
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<GlossaryEntry> merge_glossaries(const std::vector<GlossaryEntry>& user,
                                            const std::vector<GlossaryEntry>& automatic) {
  std::vector<GlossaryEntry> out = user;
  std::map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < out.size(); ++i) seen.emplace(out[i].source_term, i);
  for (const auto& e : automatic) {
    const auto [it, fresh] = seen.emplace(e.source_term, out.size());
    if (fresh) {
      out.push_back(e);
      continue;
    }
    // The user's translation wins; what extraction measured is kept.
    GlossaryEntry& u = out[it->second];
    if (!u.acronym) u.acronym = e.acronym;
    u.frequency = std::max(u.frequency, e.frequency);
  }
  return out;
}

std::vector<GlossaryEntry> glossary_slice(const std::vector<GlossaryEntry>& glossary, std::string_view text) {
  std::vector<GlossaryEntry> out;
  for (const auto& e : glossary) {
    bool hit = e.acronym && contains_word(text, *e.acronym);
    const std::vector<std::string> words = split_words(e.source_term);
    if (words.size() <= 1) {
      hit = hit || contains_word(text, e.source_term);
    } else {
      for (std::size_t b = 0; b + 1 < words.size() && !hit; ++b) {
        for (std::size_t end = b + 2; end <= words.size() && !hit; ++end) {
          hit = contains_word(text, join_words(words, b, end));
        }
      }
    }
    if (hit) out.push_back(e);
  }
  return out;
}

std::string build_prompt(const std::vector<std::string>& batch, const std::vector<GlossaryEntry>& glossary,
                         std::string_view source_lang, std::string_view target_lang, const PromptConfig& config) {
  std::string joined;
  for (const auto& t : batch) joined += t + "\n";
  std::string out = config.role + "\n\n";
  out += "Translate each numbered paragraph below from " + std::string(source_lang) + " to " +
         std::string(target_lang) + ".\n";
  out += "Tokens of the form {v<id>} (for example {v1}) are placeholders: copy every one of them exactly once, "
         "unchanged, and translate nothing inside them. You may move a placeholder to where it belongs in the "
         "translated sentence.\n";
  out += "Answer with exactly " + std::to_string(batch.size()) +
         " paragraphs, each on its own line and prefixed with the same [n] marker, and nothing else.\n";
  std::string terms;
  for (const auto& e : glossary_slice(glossary, joined)) {
    if (e.target_term.empty()) continue;
    terms += e.source_term + " ⇒ " + e.target_term + "\n";
  }
  if (!terms.empty()) out += "\nGlossary (use these translations consistently):\n" + terms;
  out += "\nParagraphs:\n";
  for (std::size_t i = 0; i < batch.size(); ++i) out += "[" + std::to_string(i + 1) + "] " + batch[i] + "\n";
  return out;
}

std::vector<std::string> parse_numbered_segments(std::string_view completion, std::size_t expected) {
  std::vector<std::string> out;
  static const std::regex kMarker(R"(^\s*\[(\d+)\]\s?)");
  std::size_t pos = 0;
  bool any_marker = false;
  std::string loose;
  while (pos <= completion.size()) {
    std::size_t eol = completion.find('\n', pos);
    if (eol == std::string_view::npos) eol = completion.size();
    std::string line(completion.substr(pos, eol - pos));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::smatch m;
    if (std::regex_search(line, m, kMarker) && std::stoul(m[1].str()) == out.size() + 1) {
      any_marker = true;
      out.push_back(line.substr(m[0].length()));
    } else if (!out.empty()) {
      if (!text::trim(line).empty()) out.back() += " " + text::trim(line);
    } else if (!text::trim(line).empty()) {
      loose += (loose.empty() ? "" : " ") + text::trim(line);
    }
    pos = eol + 1;
  }
  if (!any_marker && expected == 1 && !loose.empty()) out.push_back(loose);
  for (auto& s : out) s = text::trim(s);
  if (out.size() != expected) {
    throw BackendError(BackendError::Code::kProtocol, "expected " + std::to_string(expected) +
                                                          " segments, got " + std::to_string(out.size()));
  }
  return out;
}

PseudoMode parse_pseudo_mode(std::string_view mode) {
  if (mode == "identity") return {PseudoMode::Kind::kIdentity, 1.0};
  if (mode == "bracket") return {PseudoMode::Kind::kBracket, 1.0};
  if (mode.substr(0, 7) == "expand:") {
    const std::string num(mode.substr(7));
    char* end = nullptr;
    const double f = std::strtod(num.c_str(), &end);
    if (!num.empty() && end == num.c_str() + num.size() && std::isfinite(f) && f >= 1.0) {
      return {PseudoMode::Kind::kExpand, f};
    }
  }
  throw ConfigError("UnknownMode: '" + std::string(mode) + "'");
}

std::string pseudo_translate(std::string_view s, const PseudoMode& mode) {
  switch (mode.kind) {
    case PseudoMode::Kind::kIdentity: return std::string(s);
    case PseudoMode::Kind::kBracket: {
      std::string out;
      std::string word;
      auto flush = [&] {
        if (!word.empty()) out += "⟦" + word + "⟧";
        word.clear();
      };
      std::size_t pos = 0;
      for (const auto& tok : scan_tokens(s)) {
        if (!tok.id) continue;
        for (char32_t cp : text::decode(s.substr(pos, tok.begin - pos))) {
          if (text::is_space(cp)) {
            flush();
            out += text::encode(cp);
          } else {
            word += text::encode(cp);
          }
        }
        flush();
        out.append(s.substr(tok.begin, tok.end - tok.begin));
        pos = tok.end;
      }
      for (char32_t cp : text::decode(s.substr(pos))) {
        if (text::is_space(cp)) {
          flush();
          out += text::encode(cp);
        } else {
          word += text::encode(cp);
        }
      }
      flush();
      return out;
    }
    case PseudoMode::Kind::kExpand: {
      const std::size_t len = text::length(s);
      const auto goal = static_cast<std::size_t>(std::ceil(mode.factor * static_cast<double>(len) - 1e-9));
      std::string out(s);
      for (std::size_t n = len; n < goal; ++n) out += "·";
      return out;
    }
  }
  return std::string(s);
}

std::string pseudo_translate(std::string_view text, std::string_view mode) {
  return pseudo_translate(text, parse_pseudo_mode(mode));
}

std::string describe(const PlaceholderViolation& v) {
  switch (v.kind) {
    case PlaceholderViolation::Kind::kMissing: return "Missing(" + std::to_string(v.id) + ")";
    case PlaceholderViolation::Kind::kDuplicate: return "Duplicate(" + std::to_string(v.id) + ")";
    case PlaceholderViolation::Kind::kUnknown: return "Unknown(" + std::to_string(v.id) + ")";
    case PlaceholderViolation::Kind::kMalformed: return "Malformed(" + v.span + ")";
  }
  return "";
}

std::vector<PlaceholderViolation> verify_placeholders(std::string_view input, std::string_view output,
                                                      const std::vector<Placeholder>& placeholders) {
  std::set<int> expected;
  for (const auto& ph : placeholders) expected.insert(ph.id);
  for (const auto& tok : scan_tokens(input)) {
    if (tok.id) expected.insert(*tok.id);
  }
  std::map<int, int> seen;
  std::vector<PlaceholderViolation> unknown;
  std::vector<PlaceholderViolation> malformed;
  for (const auto& tok : scan_tokens(output)) {
    if (!tok.id) {
      malformed.push_back({PlaceholderViolation::Kind::kMalformed, 0,
                           std::string(output.substr(tok.begin, tok.end - tok.begin))});
      continue;
    }
    if (!expected.count(*tok.id)) {
      unknown.push_back({PlaceholderViolation::Kind::kUnknown, *tok.id, {}});
      continue;
    }
    ++seen[*tok.id];
  }
  std::vector<PlaceholderViolation> out;
  for (int id : expected) {
    const int n = seen.count(id) ? seen[id] : 0;
    if (n == 0) out.push_back({PlaceholderViolation::Kind::kMissing, id, {}});
    if (n > 1) out.push_back({PlaceholderViolation::Kind::kDuplicate, id, {}});
  }
  out.insert(out.end(), unknown.begin(), unknown.end());
  out.insert(out.end(), malformed.begin(), malformed.end());
  return out;
}

std::vector<std::string> MockBackend::translate(const TranslationRequest& request) {
  std::vector<std::string> out;
  out.reserve(request.texts.size());
  for (const auto& t : request.texts) out.push_back(pseudo_translate(t, mode_));
  return out;
}

std::string MockBackend::model() const {
  switch (mode_.kind) {
    case PseudoMode::Kind::kIdentity: return "mock:identity";
    case PseudoMode::Kind::kBracket: return "mock:bracket";
    case PseudoMode::Kind::kExpand: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "mock:expand:%g", mode_.factor);
      return buf;
    }
  }
  return "mock";
}

TranslationResult translate_batch(Backend& backend, const TranslationRequest& request, const TranslateConfig& config) {
  const std::size_t n = request.texts.size();
  TranslationResult result;
  result.outputs = request.texts;
  result.flagged.assign(n, false);
  result.failures.assign(n, "");
  result.model = backend.model();
  const auto start = std::chrono::steady_clock::now();

  std::vector<std::size_t> pending(n);
  for (std::size_t i = 0; i < n; ++i) pending[i] = i;
  const int attempts = 1 + std::max(0, config.retries);
  for (int attempt = 0; attempt < attempts && !pending.empty(); ++attempt) {
    TranslationRequest sub = request;
    sub.texts.clear();
    for (std::size_t i : pending) sub.texts.push_back(request.texts[i]);
    std::vector<std::string> outputs;
    try {
      ++result.calls;
      outputs = backend.translate(sub);
      if (outputs.size() != sub.texts.size()) {
        throw BackendError(BackendError::Code::kProtocol, "backend returned " + std::to_string(outputs.size()) +
                                                              " texts for " + std::to_string(sub.texts.size()));
      }
    } catch (const BackendError&) {
      if (attempt + 1 >= attempts) throw;
      continue;
    }
    std::vector<std::size_t> still;
    for (std::size_t k = 0; k < pending.size(); ++k) {
      const std::size_t i = pending[k];
      const auto violations = verify_placeholders(request.texts[i], outputs[k], {});
      if (violations.empty()) {
        result.outputs[i] = outputs[k];
        result.failures[i].clear();
      } else {
        std::string msg;
        for (const auto& v : violations) msg += (msg.empty() ? "" : " ") + describe(v);
        result.failures[i] = msg;
        still.push_back(i);
      }
    }
    pending = std::move(still);
  }
  for (std::size_t i : pending) {
    result.outputs[i] = request.texts[i];
    result.flagged[i] = true;
  }
  result.latency_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::vector<TranslationUnit> build_units(const DocumentIR& doc, const LayoutConfig& config) {
  auto key = [](ParagraphRef r) { return std::pair<int, int>(r.page, r.index); };
  std::map<std::pair<int, int>, ParagraphRef> next;
  std::set<std::pair<int, int>> continued;
  for (std::size_t pi = 0; pi < doc.pages.size(); ++pi) {
    for (std::size_t i = 0; i < doc.pages[pi].paragraph.size(); ++i) {
      const auto& c = doc.pages[pi].paragraph[i].continuation_of;
      if (!c || c->page < 0 || c->page >= static_cast<int>(doc.pages.size()) || c->index < 0 ||
          c->index >= static_cast<int>(doc.pages[c->page].paragraph.size())) {
        continue;
      }
      if (next.count(key(*c))) continue;
      next[key(*c)] = {static_cast<int>(pi), static_cast<int>(i)};
      continued.insert({static_cast<int>(pi), static_cast<int>(i)});
    }
  }
  auto para = [&](ParagraphRef r) -> const Paragraph& { return doc.pages[r.page].paragraph[r.index]; };

  std::vector<TranslationUnit> units;
  for (std::size_t pi = 0; pi < doc.pages.size(); ++pi) {
    for (std::size_t i = 0; i < doc.pages[pi].paragraph.size(); ++i) {
      ParagraphRef ref{static_cast<int>(pi), static_cast<int>(i)};
      if (continued.count(key(ref))) continue;
      TranslationUnit u;
      u.parts.push_back(ref);
      u.offsets.push_back(0);
      u.text = para(ref).input;
      int k = max_placeholder_id(para(ref));
      for (auto it = next.find(key(ref)); it != next.end(); it = next.find(key(it->second))) {
        const ParagraphRef head = it->second;
        StitchDecision d = stitch_cross_units(para(u.parts.back()), para(head), config);
        if (d == StitchDecision::kKeep) d = StitchDecision::kMerge;
        std::string joined = trim_right(u.text);
        if (d == StitchDecision::kMergeDehyphenate) {
          if (joined.size() >= 3 && joined.compare(joined.size() - 3, 3, "‐") == 0) {
            joined.resize(joined.size() - 3);
          } else if (!joined.empty() && joined.back() == '-') {
            joined.pop_back();
          }
        } else {
          joined += ' ';
        }
        std::string head_text = para(head).input;
        head_text.erase(0, head_text.find_first_not_of(" \t\r\n") == std::string::npos
                               ? head_text.size()
                               : head_text.find_first_not_of(" \t\r\n"));
        u.text = joined + renumber_tokens(head_text, k);
        u.parts.push_back(head);
        u.joins.push_back(d);
        u.offsets.push_back(k);
        k += max_placeholder_id(para(head));
      }
      units.push_back(std::move(u));
    }
  }
  return units;
}

bool split_unit_output(DocumentIR& doc, const TranslationUnit& unit, std::string_view output) {
  auto para = [&](ParagraphRef r) -> Paragraph& { return doc.pages[r.page].paragraph[r.index]; };
  if (unit.parts.size() == 1) {
    para(unit.parts.front()).output = std::string(output);
    return true;
  }
  std::vector<std::string> pieces;
  std::string rest = text::trim(output);
  for (std::size_t i = 0; i + 1 < unit.parts.size(); ++i) {
    const int boundary = unit.offsets[i + 1];
    std::size_t lo = 0;
    std::size_t hi = rest.size();
    for (const auto& tok : scan_tokens(rest)) {
      if (!tok.id) continue;
      if (*tok.id <= boundary) lo = std::max(lo, tok.end);
      else hi = std::min(hi, tok.begin);
    }
    if (lo > hi) return false;

    double own = 0;
    double total = 0;
    for (std::size_t k = i; k < unit.parts.size(); ++k) {
      const double len = static_cast<double>(text::length(para(unit.parts[k]).pdf_unicode));
      total += len;
      if (k == i) own = len;
    }
    const double target = total > 0 ? own / total * static_cast<double>(text::length(rest)) : 0;

    // Candidate cut points: spaces (dropped) and boundaries next to spaceless
    // scripts; none may fall inside a token.
    std::vector<std::pair<std::size_t, std::size_t>> cuts;  // byte offset, cp index
    std::vector<std::pair<std::size_t, std::size_t>> token_spans;
    for (const auto& tok : scan_tokens(rest)) token_spans.emplace_back(tok.begin, tok.end);
    auto inside_token = [&](std::size_t b) {
      for (const auto& [tb, te] : token_spans) {
        if (b > tb && b < te) return true;
      }
      return false;
    };
    const std::u32string cps = text::decode(rest);
    std::size_t byte = 0;
    for (std::size_t c = 0; c < cps.size(); ++c) {
      const std::size_t len = text::encode(cps[c]).size();
      const bool space = text::is_space(cps[c]);
      const bool between_spaceless = c > 0 && (text::is_spaceless(cps[c]) || text::is_spaceless(cps[c - 1])) &&
                                     !text::is_space(cps[c - 1]) && !space;
      if ((space || between_spaceless) && byte >= lo && byte <= hi && !inside_token(byte)) cuts.emplace_back(byte, c);
      byte += len;
    }
    std::size_t cut = lo;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [b, c] : cuts) {
      const double d = std::abs(static_cast<double>(c) - target);
      if (d < best) {
        best = d;
        cut = b;
      }
    }
    pieces.push_back(renumber_tokens(text::trim(rest.substr(0, cut)), -unit.offsets[i]));
    rest = text::trim(rest.substr(cut));
  }
  pieces.push_back(renumber_tokens(rest, -unit.offsets.back()));
  for (std::size_t i = 0; i < unit.parts.size(); ++i) para(unit.parts[i]).output = pieces[i];
  return true;
}

TranslationStats translate_document(DocumentIR& doc, Backend& backend, const TranslateConfig& config,
                                    const std::vector<GlossaryEntry>& user_glossary) {
  TranslationStats stats;
  auto para = [&](ParagraphRef r) -> Paragraph& { return doc.pages[r.page].paragraph[r.index]; };
  const std::vector<TranslationUnit> units = build_units(doc, config.layout);
  stats.units = static_cast<int>(units.size());

  std::vector<std::size_t> todo;
  for (std::size_t u = 0; u < units.size(); ++u) {
    if (strip_tokens_and_space(units[u].text).empty()) {
      for (const auto& ref : units[u].parts) {
        para(ref).output = para(ref).input;
        para(ref).status = TranslationStatus::kSkipped;
        ++stats.skipped;
      }
    } else {
      todo.push_back(u);
    }
  }

  std::vector<GlossaryEntry> glossary = merge_glossaries(user_glossary, extract_glossary(doc, config.glossary));
  if (config.glossary_pass) {
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < glossary.size(); ++i) {
      if (glossary[i].target_term.empty()) open.push_back(i);
    }
    if (!open.empty()) {
      TranslationRequest req;
      req.source_lang = doc.source_lang;
      req.target_lang = doc.target_lang;
      for (std::size_t i : open) req.texts.push_back(glossary[i].source_term);
      req.prompt = build_prompt(req.texts, {}, doc.source_lang, doc.target_lang, config.prompt);
      const TranslationResult r = translate_batch(backend, req, config);
      stats.backend_calls += r.calls;
      for (std::size_t k = 0; k < open.size(); ++k) {
        if (!r.flagged[k]) glossary[open[k]].target_term = r.outputs[k];
      }
    }
  }
  stats.glossary = glossary;

  std::vector<std::vector<std::size_t>> batches;
  std::size_t chars = 0;
  for (std::size_t u : todo) {
    const std::size_t len = text::length(units[u].text);
    if (batches.empty() || (chars + len > config.batch_chars && !batches.back().empty())) {
      batches.emplace_back();
      chars = 0;
    }
    batches.back().push_back(u);
    chars += len;
  }
  stats.batches = static_cast<int>(batches.size());

  auto run_batch = [&](const std::vector<std::size_t>& batch) {
    TranslationRequest req;
    req.source_lang = doc.source_lang;
    req.target_lang = doc.target_lang;
    std::string joined;
    for (std::size_t u : batch) {
      req.texts.push_back(units[u].text);
      joined += units[u].text + "\n";
    }
    req.glossary = glossary_slice(glossary, joined);
    req.prompt = build_prompt(req.texts, req.glossary, doc.source_lang, doc.target_lang, config.prompt);
    return translate_batch(backend, req, config);
  };

  const std::size_t width = static_cast<std::size_t>(std::max(1, config.parallelism));
  for (std::size_t start = 0; start < batches.size(); start += width) {
    std::vector<std::future<TranslationResult>> wave;
    const std::size_t end = std::min(batches.size(), start + width);
    for (std::size_t b = start; b < end; ++b) {
      wave.push_back(std::async(width > 1 ? std::launch::async : std::launch::deferred, run_batch,
                                std::cref(batches[b])));
    }
    for (std::size_t b = start; b < end; ++b) {
      const TranslationResult r = wave[b - start].get();
      stats.backend_calls += r.calls;
      for (std::size_t k = 0; k < batches[b].size(); ++k) {
        const TranslationUnit& unit = units[batches[b][k]];
        bool ok = !r.flagged[k];
        std::string failure = r.failures[k];
        if (ok && !split_unit_output(doc, unit, r.outputs[k])) {
          ok = false;
          failure = "PlaceholderSplit";
        }
        for (const auto& ref : unit.parts) {
          Paragraph& p = para(ref);
          if (ok) {
            p.status = TranslationStatus::kTranslated;
            p.failure.clear();
          } else {
            p.output = p.input;
            p.status = TranslationStatus::kFailed;
            p.failure = failure;
            ++stats.flagged;
          }
        }
      }
    }
  }
  return stats;
}

}  // namespace relayout
