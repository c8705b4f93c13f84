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


#include "relayout/typeset.hpp"

#include <algorithm>
#include <cmath>

#include "relayout/pdf/font.hpp"
#include "relayout/text.hpp"

namespace relayout {
namespace {

constexpr double kFitTolerance = 0.01;  // pt; absorbs coordinate rounding in parsed boxes

bool is_space_unit(const FlowUnit& u) { return u.object == 0 && text::is_space(u.cp); }
bool is_spaceless_unit(const FlowUnit& u) { return u.object == 0 && text::is_spaceless(u.cp); }

// A break is allowed between flow[i] and flow[i + 1] (both non-space).
bool break_after(const Flow& flow, std::size_t i) {
  const FlowUnit& a = flow[i];
  const FlowUnit& b = flow[i + 1];
  if (is_spaceless_unit(a) || is_spaceless_unit(b)) return true;
  if (a.object) return false;
  if (a.cp == U'·') return true;
  return (a.cp == U'-' || a.cp == 0x2010) && i > 0 && flow[i - 1].object == 0 && text::is_letter(flow[i - 1].cp) &&
         b.object == 0 && text::is_letter(b.cp);
}

struct Piece {
  std::size_t begin = 0;
  std::size_t end = 0;  // non-space part
  double width = 0;
  double glue = 0;  // following spaces
};

}  // namespace

double FontMetrics::advance(char32_t cp) const {
  if (auto it = widths.find(cp); it != widths.end()) return it->second;
  return text::is_spaceless(cp) ? wide_width : default_width;
}

FontMetrics FontMetrics::monospace(double advance, int ascent, int descent) {
  FontMetrics m;
  m.name = "RelayoutMono";
  m.ascent = ascent;
  m.descent = descent;
  m.default_width = advance;
  m.wide_width = advance;
  return m;
}

FontMetrics FontMetrics::bundled() {
  FontMetrics m;
  const auto std14 = pdf::find_std14("Helvetica");
  m.ascent = std14->ascent;
  m.descent = std14->descent;
  m.default_width = 556;
  for (int code = 32; code < 256; ++code) {
    const char* glyph = pdf::encoding_glyph("WinAnsiEncoding", static_cast<std::uint8_t>(code));
    if (!glyph) continue;
    const auto u = pdf::glyph_unicode(glyph);
    const auto w = pdf::std14_width(std14->name, glyph);
    if (u && u->size() == 1 && w) m.widths[u->front()] = *w;
  }
  m.widths[0x2010] = m.widths[U'-'];
  m.widths[0xFFFC] = 1000;
  return m;
}

Flow text_flow(std::u32string_view s) {
  Flow flow;
  for (char32_t cp : s) flow.push_back({text::is_space(cp) ? U' ' : cp, 0, 0});
  return flow;
}

LineLayout layout_lines(const Flow& flow, const Box& box, double base_size, double gamma, const FontMetrics& metrics,
                        const TypesetConfig& config) {
  LineLayout out;
  out.gamma = gamma;
  out.size = base_size * gamma;
  out.line_height = config.line_factor * base_size * gamma;
  auto width_of = [&](const FlowUnit& u) { return u.object ? u.width * gamma : metrics.advance(u.cp) * out.size / 1000; };

  std::vector<Piece> pieces;
  std::size_t i = 0;
  while (i < flow.size() && is_space_unit(flow[i])) ++i;
  while (i < flow.size()) {
    Piece p;
    p.begin = i;
    while (i < flow.size() && !is_space_unit(flow[i])) {
      p.width += width_of(flow[i]);
      ++i;
      if (i < flow.size() && !is_space_unit(flow[i]) && break_after(flow, i - 1)) break;
    }
    p.end = i;
    while (i < flow.size() && is_space_unit(flow[i])) p.glue += width_of(flow[i++]);
    pieces.push_back(p);
  }

  const double limit = box.width() + kFitTolerance;
  bool too_wide = false;
  double glue = 0;
  for (const Piece& p : pieces) {
    if (p.width > limit) too_wide = true;
    if (!out.lines.empty() && out.lines.back().width + glue + p.width <= limit) {
      out.lines.back().end = p.end;
      out.lines.back().width += glue + p.width;
    } else {
      out.lines.push_back({p.begin, p.end, p.width, false});
    }
    glue = p.glue;
  }
  for (std::size_t k = 0; k + 1 < out.lines.size(); ++k) {
    const Line& line = out.lines[k];
    const std::size_t next = out.lines[k + 1].begin;
    out.lines[k].justify =
        next == line.end && (is_spaceless_unit(flow[line.end - 1]) || is_spaceless_unit(flow[next]));
  }

  if (!out.lines.empty()) {
    out.height = static_cast<double>(out.lines.size() - 1) * out.line_height +
                 (metrics.ascent - metrics.descent) * out.size / 1000;
  }
  out.fit = !too_wide && out.height <= box.height() + kFitTolerance;
  return out;
}

ScalingResult fit_paragraph(const Flow& flow, const Box& box, double base_size, const FontMetrics& metrics,
                            const TypesetConfig& config) {
  if (!(config.step > 0)) throw ConfigError("InvalidConfig: scale step must be positive");
  if (!(config.min_gamma > 0) || config.min_gamma > 1) throw ConfigError("InvalidConfig: scale minimum must be in (0, 1]");
  ScalingResult result;
  for (int k = 0;; ++k) {
    double gamma = 1.0 - k * config.step;
    const bool last = gamma <= config.min_gamma + 1e-9;
    if (last) gamma = config.min_gamma;
    result.layout = layout_lines(flow, box, base_size, gamma, metrics, config);
    result.gamma = gamma;
    ++result.iterations;
    if (result.layout.fit) {
      result.status = FitStatus::kFit;
      return result;
    }
    if (last) {
      result.status = FitStatus::kOverflowAtMin;
      return result;
    }
  }
}

PlacedParagraph place_glyphs(const Flow& flow, const LineLayout& layout, const Box& box, const FontMetrics& metrics) {
  PlacedParagraph out;
  out.font_id = metrics.font_id;
  const double s = layout.size;
  const double top = box.y2 - metrics.ascent * s / 1000;
  for (std::size_t k = 0; k < layout.lines.size(); ++k) {
    const Line& line = layout.lines[k];
    const double baseline = top - static_cast<double>(k) * layout.line_height;
    double gap = 0;
    if (line.justify && line.end - line.begin > 1) {
      gap = std::max(0.0, box.width() - line.width) / static_cast<double>(line.end - line.begin - 1);
    }
    double x = box.x;
    for (std::size_t i = line.begin; i < line.end; ++i) {
      const FlowUnit& u = flow[i];
      if (u.object) {
        out.objects.push_back({u.object, x, baseline, layout.gamma});
        x += u.width * layout.gamma;
      } else {
        const double adv = metrics.advance(u.cp) * s / 1000;
        if (!text::is_space(u.cp)) {
          out.glyphs.push_back({u.cp, x, baseline, s,
                                {x, baseline + metrics.descent * s / 1000, x + adv, baseline + metrics.ascent * s / 1000}});
        }
        x += adv;
      }
      x += gap;
    }
  }
  return out;
}

Flow paragraph_flow(const Paragraph& paragraph, const std::map<int, FormulaRecord>& records) {
  const std::string& source =
      paragraph.status == TranslationStatus::kPending || paragraph.output.empty() ? paragraph.input : paragraph.output;
  Flow flow;
  auto append_text = [&](std::string_view s) {
    const Flow part = text_flow(text::decode(s));
    flow.insert(flow.end(), part.begin(), part.end());
  };
  for (const RunUnit& unit : unmask(source, paragraph.placeholders)) {
    if (unit.kind == RunUnit::Kind::kText) {
      append_text(unit.text);
      continue;
    }
    const Placeholder* ph = nullptr;
    for (const auto& p : paragraph.placeholders) {
      if (p.id == unit.placeholder_id) ph = &p;
    }
    append_text(ph->lead_ws);
    const auto it = records.find(ph->id);
    flow.push_back({0, ph->id, it == records.end() ? 0.0 : it->second.anchor.width()});
    append_text(ph->trail_ws);
  }
  return flow;
}

TypesetPage typeset_page(PageIR& page, const FontMetrics& metrics, const TypesetConfig& config, Warnings* warnings) {
  TypesetPage out;
  for (std::size_t i = 0; i < page.paragraph.size(); ++i) {
    Paragraph& p = page.paragraph[i];
    TypesetParagraph tp;
    tp.index = static_cast<int>(i);
    for (const auto& ph : p.placeholders) {
      tp.records.emplace(ph.id, make_formula_record(page, ph, host_baseline(p, page, ph), p.base_size));
    }
    const Flow flow = paragraph_flow(p, tp.records);
    tp.verbatim = std::all_of(flow.begin(), flow.end(), [](const FlowUnit& u) { return u.object || text::is_space(u.cp); });
    if (tp.verbatim) {
      tp.fit.iterations = 1;
      tp.placed.font_id = metrics.font_id;
      for (const FlowUnit& u : flow) {
        if (!u.object) continue;
        const FormulaRecord& rec = tp.records.at(u.object);
        tp.placed.objects.push_back({u.object, rec.anchor.x, rec.baseline, 1.0});
      }
    } else {
      const double base = p.base_size > 0 ? p.base_size : 10.0;
      tp.fit = fit_paragraph(flow, p.box, base, metrics, config);
      tp.placed = place_glyphs(flow, tp.fit.layout, p.box, metrics);
      if (tp.fit.status == FitStatus::kOverflowAtMin && warnings) {
        warnings->push_back({"OverflowAtMin", "page " + std::to_string(page.page_number) + " paragraph " +
                                                  std::to_string(i) + " overflows its box at the minimum scale"});
      }
    }
    p.scale = ScaleRecord{tp.fit.gamma, tp.fit.iterations, tp.fit.status};
    out.paragraphs.push_back(std::move(tp));
  }
  return out;
}

}  // namespace relayout
