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


#include "relayout/evalkit.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>

#include <json.hpp>

#include "relayout/errors.hpp"
#include "relayout/layout.hpp"
#include "relayout/placeholders.hpp"

namespace relayout {

double iou(const Box& a, const Box& b) { return iou<double>(a, b); }

std::vector<LayoutElement> normalize(const std::vector<LayoutElement>& elements, const Box& media_box) {
  std::vector<LayoutElement> out = elements;
  for (auto& e : out) e.box = normalize_to(e.box, media_box);
  return out;
}

ElementMatch match_elements(const std::vector<LayoutElement>& src, const std::vector<LayoutElement>& dst,
                            const std::vector<int>& src_order, const std::vector<int>& dst_order, int window) {
  std::map<int, const LayoutElement*> src_by_id;
  std::map<int, const LayoutElement*> dst_by_id;
  for (const auto& e : src) src_by_id[e.id] = &e;
  for (const auto& e : dst) dst_by_id[e.id] = &e;

  ElementMatch m;
  std::vector<bool> used(dst_order.size(), false);
  int cursor = 0;
  for (int sid : src_order) {
    const auto s = src_by_id.find(sid);
    if (s == src_by_id.end()) continue;
    int best = -1;
    double best_iou = 0;
    const int lo = std::max(0, cursor - window);
    const int hi = std::min(static_cast<int>(dst_order.size()) - 1, cursor + window);
    for (int k = lo; k <= hi; ++k) {
      if (used[static_cast<std::size_t>(k)]) continue;
      const auto d = dst_by_id.find(dst_order[static_cast<std::size_t>(k)]);
      if (d == dst_by_id.end()) continue;
      const double v = iou(s->second->box, d->second->box);
      if (v > best_iou) {
        best_iou = v;
        best = k;
      }
    }
    if (best < 0) {
      m.unmatched_src.push_back(sid);
      continue;
    }
    used[static_cast<std::size_t>(best)] = true;
    const LayoutElement& d = *dst_by_id.at(dst_order[static_cast<std::size_t>(best)]);
    m.pairs.push_back({sid, d.id, best_iou, s->second->class_name, d.class_name});
    cursor = best + 1;
  }
  for (std::size_t k = 0; k < dst_order.size(); ++k) {
    if (!used[k] && dst_by_id.count(dst_order[k])) m.unmatched_dst.push_back(dst_order[k]);
  }
  return m;
}

BIoUReport compute_biou(const DocumentIR& src, const DocumentIR& dst) {
  if (src.pages.size() != dst.pages.size()) {
    throw EvalError(EvalError::Code::kPageCountMismatch,
                    "PageCountMismatch: " + std::to_string(src.pages.size()) + " vs " +
                        std::to_string(dst.pages.size()) + " pages");
  }
  BIoUReport report;
  std::size_t matched = 0;
  std::size_t possible = 0;
  for (std::size_t i = 0; i < src.pages.size(); ++i) {
    const PageIR& sp = src.pages[i];
    const PageIR& dp = dst.pages[i];
    const auto s = normalize(sp.page_layout, sp.media_box);
    const auto d = normalize(dp.page_layout, dp.media_box);
    const Box unit{0, 0, 1, 1};
    PageBIoU page;
    page.page_number = sp.page_number;
    page.match = match_elements(s, d, reading_order(s, unit), reading_order(d, unit));
    const std::size_t n = std::max(s.size(), d.size());
    if (n == 0) {
      // Nothing to compare on either side.
      page.page_mean = 1.0;
      page.coverage = 1.0;
    } else if (!page.match.pairs.empty()) {
      double sum = 0;
      for (const auto& p : page.match.pairs) sum += p.iou;
      page.page_mean = sum / static_cast<double>(page.match.pairs.size());
      page.coverage = static_cast<double>(page.match.pairs.size()) / static_cast<double>(n);
    }
    matched += page.match.pairs.size();
    possible += n;
    report.document_mean += page.page_mean;
    report.per_page.push_back(std::move(page));
  }
  if (!report.per_page.empty()) report.document_mean /= static_cast<double>(report.per_page.size());
  report.coverage = possible == 0 ? 1.0 : static_cast<double>(matched) / static_cast<double>(possible);
  report.document_mean = std::clamp(report.document_mean, 0.0, 1.0);
  return report;
}

DocumentIR deinterleave(const DocumentIR& dual) {
  DocumentIR out = dual;
  out.pages.clear();
  for (std::size_t i = 1; i < dual.pages.size(); i += 2) {
    out.pages.push_back(dual.pages[i]);
    out.pages.back().page_number = static_cast<int>(out.pages.size()) - 1;
  }
  return out;
}

UTBReport count_utb(const DocumentIR& doc) {
  UTBReport r;
  for (const auto& page : doc.pages) {
    int n = 0;
    for (const auto& p : page.paragraph) {
      const std::string in = strip_tokens_and_space(p.input);
      if (in.empty()) continue;
      if (p.status == TranslationStatus::kFailed || strip_tokens_and_space(p.output) == in) ++n;
    }
    r.per_page.push_back(n);
    r.total += n;
  }
  r.mean = doc.pages.empty() ? 0.0 : static_cast<double>(r.total) / static_cast<double>(doc.pages.size());
  return r;
}

namespace {

constexpr const char* kJudgePrompt =
    "Role: You are a senior Academic Journal Editor performing a comparative evaluation of PDF translations "
    "produced by three different translation systems.\n"
    "\n"
    "Task: Compare ALL THREE translated pages against the Original simultaneously. Because you are comparing "
    "them side-by-side, score them relative to each other.\n"
    "\n"
    "Evaluation Rubrics (1-5 each):\n"
    "- Layout Fidelity: Maintenance of columns, margins, font hierarchies, positioning of figures/tables.\n"
    "- Translation Precision: Accuracy of academic meaning, scientific claims, data descriptions.\n"
    "- Visual Aesthetics: Professional typography, line spacing, absence of text overlaps or bleeding.\n"
    "- Terminology Consistency: Uniform use of domain-specific jargon, citations, figure labels.\n"
    "\n"
    "Untranslated Blocks Count: Count the number of distinct text blocks that remain in the original language. "
    "Any text block that appears identical to the Original (still in English) should be counted. Output the "
    "integer count.\n"
    "\n"
    "Output Format:\n"
    "system|Layout Fidelity:<score>|Translation Precision:<score>|Visual Aesthetics:<score>|Terminology "
    "Consistency:<score>|Untranslated Blocks:<count>\n";

void require_paths(const std::vector<std::string>& paths, const char* what) {
  if (paths.empty()) throw EvalError(EvalError::Code::kMissingPath, std::string("MissingPath: no ") + what + " images");
  for (const auto& p : paths) {
    std::error_code ec;
    if (!std::filesystem::exists(p, ec)) throw EvalError(EvalError::Code::kMissingPath, "MissingPath: " + p);
  }
}

std::string fixed(double v, int digits = 4) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string join_ids(const std::vector<int>& ids) {
  std::string s;
  for (int id : ids) s += (s.empty() ? "" : ",") + std::to_string(id);
  return s.empty() ? "-" : s;
}

}  // namespace

std::string emit_judge_prompt(const std::vector<std::string>& original_image_paths,
                              const std::vector<std::string>& system_image_paths) {
  require_paths(original_image_paths, "original");
  require_paths(system_image_paths, "system");
  std::string out = kJudgePrompt;
  out += "\nAttachments:\n";
  for (std::size_t i = 0; i < original_image_paths.size(); ++i) {
    out += "Original " + std::to_string(i + 1) + ": " + original_image_paths[i] + "\n";
  }
  for (std::size_t i = 0; i < system_image_paths.size(); ++i) {
    out += "System " + std::to_string(i + 1) + ": " + system_image_paths[i] + "\n";
  }
  return out;
}

std::string format_report(const BIoUReport& biou, const UTBReport* utb) {
  std::ostringstream s;
  s << "BIoU document_mean " << fixed(biou.document_mean) << "  coverage " << fixed(biou.coverage) << "\n";
  if (utb) s << "UTB total " << utb->total << "  mean " << fixed(utb->mean, 2) << "\n";
  for (std::size_t i = 0; i < biou.per_page.size(); ++i) {
    const PageBIoU& p = biou.per_page[i];
    s << "\npage " << p.page_number << "  mean " << fixed(p.page_mean) << "  coverage " << fixed(p.coverage);
    if (utb && i < utb->per_page.size()) s << "  utb " << utb->per_page[i];
    s << "\n  src  dst  iou     class\n";
    for (const auto& pair : p.match.pairs) {
      char line[160];
      std::snprintf(line, sizeof line, "  %-4d %-4d %.4f  %s", pair.src_id, pair.dst_id, pair.iou,
                    pair.src_class.c_str());
      s << line;
      if (pair.dst_class != pair.src_class) s << " -> " << pair.dst_class;
      s << "\n";
    }
    s << "  unmatched src " << join_ids(p.match.unmatched_src) << "\n";
    s << "  unmatched dst " << join_ids(p.match.unmatched_dst) << "\n";
  }
  return s.str();
}

std::string report_json(const BIoUReport& biou, const UTBReport* utb) {
  using nlohmann::ordered_json;
  ordered_json pages = ordered_json::array();
  for (const auto& p : biou.per_page) {
    ordered_json pairs = ordered_json::array();
    for (const auto& pair : p.match.pairs) {
      pairs.push_back({{"src_id", pair.src_id},
                       {"dst_id", pair.dst_id},
                       {"iou", pair.iou},
                       {"src_class", pair.src_class},
                       {"dst_class", pair.dst_class}});
    }
    pages.push_back({{"page_number", p.page_number},
                     {"matched_pairs", pairs},
                     {"unmatched_src", p.match.unmatched_src},
                     {"unmatched_dst", p.match.unmatched_dst},
                     {"page_mean", p.page_mean},
                     {"coverage", p.coverage}});
  }
  ordered_json j = {{"per_page", pages}, {"document_mean", biou.document_mean}, {"coverage", biou.coverage}};
  if (utb) j["utb"] = {{"per_page", utb->per_page}, {"total", utb->total}, {"mean", utb->mean}};
  return j.dump(2) + "\n";
}

}  // namespace relayout
