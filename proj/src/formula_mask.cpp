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

#include "relayout/formula_mask.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <regex>

#include "relayout/errors.hpp"
#include "relayout/placeholders.hpp"
#include "relayout/text.hpp"

namespace relayout {
namespace {

bool blank(std::string_view s) {
  for (char32_t cp : text::decode(s)) {
    if (!text::is_space(cp)) return false;
  }
  return true;
}

bool overlaps_line(const Box& line, const Box& c) {
  const double h = std::min(line.height(), c.height());
  if (h <= 0) return true;
  return std::min(line.y2, c.y2) - std::max(line.y, c.y) >= 0.3 * h;
}

// Line index for each code point position of the paragraph (-1 for positions
// that are not chars).
std::vector<int> line_of_positions(const Paragraph& p, const PageIR& page, int* line_count) {
  std::vector<int> out(p.unit_ids.size(), -1);
  Box line{};
  int current = -1;
  for (std::size_t i = 0; i < p.unit_ids.size(); ++i) {
    if (p.unit_ids[i] <= 0) continue;
    const CharRecord* c = page.find_char(p.unit_ids[i]);
    if (!c) continue;
    if (current < 0 || !overlaps_line(line, c->box)) {
      ++current;
      line = c->box;
    } else {
      line = unite(line, c->box);
    }
    out[i] = current;
  }
  *line_count = current + 1;
  return out;
}

bool monospace(const DocumentIR& doc, std::string_view font_id) {
  const FontRecord* f = doc.find_font(font_id);
  if (!f) return false;
  std::string name = f->name;
  std::transform(name.begin(), name.end(), name.begin(), [](unsigned char ch) { return std::tolower(ch); });
  for (std::string_view marker : {"courier", "mono", "consol", "code"}) {
    if (name.find(marker) != std::string::npos) return true;
  }
  return false;
}

struct Run {
  std::size_t begin = 0;  // code point positions, [begin, end)
  std::size_t end = 0;
  PlaceholderType type = PlaceholderType::kFormula;
  std::vector<int> ops;
  std::size_t lead = 0;  // absorbed whitespace before/after
  std::size_t trail = 0;
};

class Masker {
 public:
  Masker(Paragraph& p, const PageIR& page, const DocumentIR& doc, const MaskConfig& config, std::set<int>* claimed)
      : p_(p), page_(page), doc_(doc), config_(config), claimed_(claimed), cps_(text::decode(p.pdf_unicode)) {
    masked_.assign(cps_.size(), false);
    if (p_.unit_ids.size() != cps_.size()) p_.unit_ids.assign(cps_.size(), 0);
  }

  void run() {
    images();
    formulas();
    if (config_.code_spans) code_spans();
    if (config_.scripts_enabled) scripts();
    if (config_.citations) citations();
    assemble();
  }

 private:
  const CharRecord* char_at(std::size_t i) const {
    return p_.unit_ids[i] > 0 ? page_.find_char(p_.unit_ids[i]) : nullptr;
  }

  bool free(std::size_t b, std::size_t e) const {
    for (std::size_t i = b; i < e; ++i) {
      if (masked_[i]) return false;
    }
    return true;
  }

  void add(Run r) {
    while (r.begin < r.end && text::is_space(cps_[r.begin])) ++r.begin;
    while (r.end > r.begin && text::is_space(cps_[r.end - 1])) --r.end;
    if (r.begin >= r.end || !free(r.begin, r.end)) return;
    for (std::size_t i = r.begin; i < r.end; ++i) masked_[i] = true;
    runs_.push_back(std::move(r));
  }

  // Marks maximal runs of positions satisfying `pred`; whitespace between two
  // matching positions joins them.
  template <typename Pred>
  void mark_runs(PlaceholderType type, Pred pred) {
    std::size_t i = 0;
    while (i < cps_.size()) {
      if (masked_[i] || !pred(i)) {
        ++i;
        continue;
      }
      std::size_t end = i + 1;
      std::size_t j = end;
      while (j < cps_.size() && !masked_[j]) {
        if (pred(j)) {
          end = ++j;
        } else if (text::is_space(cps_[j])) {
          ++j;
        } else {
          break;
        }
      }
      add({i, end, type, {}});
      i = std::max(end, i + 1);
    }
  }

  void images() {
    for (std::size_t i = 0; i < cps_.size(); ++i) {
      if (p_.unit_ids[i] < 0) add({i, i + 1, PlaceholderType::kInlineImage, {}});
    }
  }

  Box run_box(const Run& r) const {
    Box box{};
    bool first = true;
    for (std::size_t i = r.begin; i < r.end; ++i) {
      if (const CharRecord* c = char_at(i)) {
        box = first ? c->box : unite(box, c->box);
        first = false;
      }
    }
    return box;
  }

  void claim_ops(Run& r, const Box& region) {
    const bool has_chars = [&] {
      for (std::size_t i = r.begin; i < r.end; ++i) {
        if (char_at(i)) return true;
      }
      return false;
    }();
    const Box near = has_chars ? run_box(r) : region;
    const Box grown{near.x - 2, near.y - 2, near.x2 + 2, near.y2 + 2};
    for (const auto& op : page_.passthrough_ops) {
      if (op.kind != PassthroughKind::kPath) continue;
      if (claimed_ && claimed_->count(op.id)) continue;
      // Extents rather than areas, so zero-height rules (fraction bars) count.
      const bool touches =
          op.box.x <= grown.x2 && op.box.x2 >= grown.x && op.box.y <= grown.y2 && op.box.y2 >= grown.y;
      if (!contains(region, op.box, 1.0) || !touches) continue;
      r.ops.push_back(op.id);
      if (claimed_) claimed_->insert(op.id);
    }
  }

  void formulas() {
    std::vector<const LayoutElement*> regions;
    for (const auto& e : page_.page_layout) {
      if (e.class_name == "formula_region" && intersection_area(e.box, p_.box) > 0) regions.push_back(&e);
    }
    if (p_.layout_label == "formula_region") {
      const LayoutElement* own = nullptr;
      for (const auto& e : page_.page_layout) {
        if (e.id == p_.element_id) own = &e;
      }
      const std::size_t before = runs_.size();
      add({0, cps_.size(), PlaceholderType::kFormula, {}});
      if (runs_.size() > before) claim_ops(runs_.back(), own ? own->box : p_.box);
      return;
    }
    for (const LayoutElement* region : regions) {
      const std::size_t before = runs_.size();
      mark_runs(PlaceholderType::kFormula, [&](std::size_t i) {
        const CharRecord* c = char_at(i);
        if (!c) return false;
        const double cx = 0.5 * (c->box.x + c->box.x2);
        const double cy = 0.5 * (c->box.y + c->box.y2);
        return cx >= region->box.x && cx <= region->box.x2 && cy >= region->box.y && cy <= region->box.y2;
      });
      for (std::size_t k = before; k < runs_.size(); ++k) claim_ops(runs_[k], region->box);
    }
  }

  void code_spans() {
    if (monospace(doc_, p_.font_id)) return;
    mark_runs(PlaceholderType::kCodeSpan, [&](std::size_t i) {
      const CharRecord* c = char_at(i);
      return c && !blank(c->char_unicode) && monospace(doc_, c->font_id);
    });
  }

  void scripts() {
    int lines = 0;
    const std::vector<int> line_of = line_of_positions(p_, page_, &lines);
    for (int l = 0; l < lines; ++l) {
      std::vector<CharRecord> chars;
      std::map<int, std::size_t> position;
      for (std::size_t i = 0; i < cps_.size(); ++i) {
        if (line_of[i] != l || position.count(p_.unit_ids[i])) continue;
        const CharRecord* c = char_at(i);
        if (blank(c->char_unicode)) continue;
        chars.push_back(*c);
        position[c->render_order] = i;
      }
      for (const ScriptSpan& span : detect_scripts(chars, config_.scripts)) {
        if (span.kind == ScriptKind::kNormal) continue;
        std::size_t b = cps_.size();
        std::size_t e = 0;
        for (int u : span.unit_ids) {
          b = std::min(b, position[u]);
          e = std::max(e, position[u] + 1);
        }
        // Code points of one multi-char glyph share the unit id.
        while (e < cps_.size() && p_.unit_ids[e] == p_.unit_ids[e - 1]) ++e;
        add({b, e, PlaceholderType::kSymbolRun, {}});
      }
    }
  }

  void citations() {
    static const std::regex kMarker(R"(\[\d+(?:\s*(?:,|-|–|—)\s*\d+)*\][,.;:]?)");
    const std::string s = p_.pdf_unicode;
    std::vector<std::size_t> cp_at_byte(s.size() + 1, 0);
    std::size_t cp = 0;
    for (std::size_t b = 0; b < s.size(); ++b) {
      if (b > 0 && (static_cast<unsigned char>(s[b]) & 0xC0) != 0x80) ++cp;
      cp_at_byte[b] = cp;
    }
    cp_at_byte[s.size()] = cps_.size();
    for (auto it = std::sregex_iterator(s.begin(), s.end(), kMarker); it != std::sregex_iterator(); ++it) {
      const std::size_t b = cp_at_byte[it->position()];
      const std::size_t e = cp_at_byte[it->position() + it->length()];
      if (!free(b, e)) continue;
      Run r{b, e, PlaceholderType::kCitationMarker, {}};
      std::size_t t = e;
      while (t < cps_.size() && text::is_space(cps_[t]) && !masked_[t]) ++t;
      if (t < cps_.size()) {
        r.trail = t - e;
      } else {
        std::size_t l = b;
        while (l > 0 && text::is_space(cps_[l - 1]) && !masked_[l - 1]) --l;
        r.lead = b - l;
      }
      for (std::size_t i = b - r.lead; i < e + r.trail; ++i) masked_[i] = true;
      runs_.push_back(std::move(r));
    }
  }

  std::string slice(std::size_t b, std::size_t e) const { return text::encode(cps_.substr(b, e - b)); }

  void assemble() {
    std::sort(runs_.begin(), runs_.end(), [](const Run& a, const Run& b) { return a.begin < b.begin; });
    p_.placeholders.clear();
    std::string input;
    std::size_t pos = 0;
    int id = 0;
    for (const Run& r : runs_) {
      const std::size_t lb = r.begin - r.lead;
      const std::size_t te = r.end + r.trail;
      input += slice(pos, lb);
      Placeholder ph;
      ph.type = r.type;
      ph.id = ++id;
      ph.placeholder = placeholder_token(ph.id);
      ph.source_chars = slice(r.begin, r.end);
      ph.lead_ws = slice(lb, r.begin);
      ph.trail_ws = slice(r.end, te);
      for (std::size_t i = lb; i < te; ++i) {
        const int u = p_.unit_ids[i];
        if (u > 0 && (ph.source_units.empty() || ph.source_units.back() != u)) ph.source_units.push_back(u);
        if (u < 0) ph.source_ops.push_back(-u);
      }
      for (int op : r.ops) ph.source_ops.push_back(op);
      input += ph.placeholder;
      p_.placeholders.push_back(std::move(ph));
      pos = te;
    }
    input += slice(pos, cps_.size());
    p_.input = std::move(input);
  }

  Paragraph& p_;
  const PageIR& page_;
  const DocumentIR& doc_;
  const MaskConfig& config_;
  std::set<int>* claimed_;
  std::u32string cps_;
  std::vector<bool> masked_;
  std::vector<Run> runs_;
};

}  // namespace

std::string_view to_string(ScriptKind kind) {
  switch (kind) {
    case ScriptKind::kNormal: return "normal";
    case ScriptKind::kSuperscript: return "superscript";
    case ScriptKind::kSubscript: return "subscript";
  }
  return "normal";
}

double body_size(const std::vector<CharRecord>& line_chars) {
  std::map<long long, int> counts;
  for (const auto& c : line_chars) ++counts[std::llround(c.font_size * 1000)];
  long long best = 0;
  int best_count = 0;
  for (const auto& [size, count] : counts) {
    if (count >= best_count) {
      best = size;
      best_count = count;
    }
  }
  return best / 1000.0;
}

std::vector<ScriptSpan> detect_scripts(const std::vector<CharRecord>& line_chars, const ScriptConfig& config) {
  std::vector<ScriptSpan> spans;
  if (line_chars.empty()) return spans;
  const double body = body_size(line_chars);
  std::vector<double> baselines;
  for (const auto& c : line_chars) {
    if (std::llround(c.font_size * 1000) == std::llround(body * 1000)) baselines.push_back(c.baseline_y);
  }
  std::sort(baselines.begin(), baselines.end());
  const double line_baseline = baselines[baselines.size() / 2];

  for (const auto& c : line_chars) {
    const double ratio = body > 0 ? c.font_size / body : 1.0;
    const double offset = c.baseline_y - line_baseline;
    ScriptKind kind = ScriptKind::kNormal;
    if (ratio <= config.size_ratio + 1e-9) {
      if (offset >= config.offset_factor * body - 1e-9) kind = ScriptKind::kSuperscript;
      if (offset <= -config.offset_factor * body + 1e-9) kind = ScriptKind::kSubscript;
    }
    if (spans.empty() || spans.back().kind != kind) {
      spans.push_back({{}, kind, ratio, offset});
    }
    ScriptSpan& s = spans.back();
    s.unit_ids.push_back(c.render_order);
    s.size_ratio = std::min(s.size_ratio, ratio);
    if (std::abs(offset) > std::abs(s.baseline_offset)) s.baseline_offset = offset;
  }
  return spans;
}

std::vector<UnitOffset> compute_offsets(const std::vector<CharRecord>& units, double line_baseline_y,
                                        double body_size, double anchor_x) {
  std::vector<UnitOffset> out;
  for (const auto& c : units) {
    out.push_back({c.render_order, c.box.x - anchor_x, c.baseline_y - line_baseline_y,
                   body_size > 0 ? c.font_size / body_size : 1.0});
  }
  return out;
}

double host_baseline(const Paragraph& paragraph, const PageIR& page, const Placeholder& placeholder) {
  int lines = 0;
  const std::vector<int> line_of = line_of_positions(paragraph, page, &lines);
  int target = -1;
  for (std::size_t i = 0; i < paragraph.unit_ids.size() && target < 0; ++i) {
    if (!placeholder.source_units.empty() && paragraph.unit_ids[i] == placeholder.source_units.front()) {
      target = line_of[i];
    }
  }
  std::set<int> own(placeholder.source_units.begin(), placeholder.source_units.end());
  std::vector<CharRecord> host;
  std::vector<CharRecord> all;
  for (std::size_t i = 0; i < paragraph.unit_ids.size(); ++i) {
    if (line_of[i] != target || target < 0) continue;
    const CharRecord* c = page.find_char(paragraph.unit_ids[i]);
    if (!c || blank(c->char_unicode)) continue;
    all.push_back(*c);
    if (!own.count(c->render_order)) host.push_back(*c);
  }
  const std::vector<CharRecord>& pool = host.empty() ? all : host;
  if (pool.empty()) {
    for (int u : placeholder.source_units) {
      if (const CharRecord* c = page.find_char(u)) return c->baseline_y;
    }
    for (int op : placeholder.source_ops) {
      if (const PassthroughOp* o = page.find_op(op)) return o->box.y;
    }
    return paragraph.box.y;
  }
  const double body = body_size(pool);
  std::vector<double> baselines;
  for (const auto& c : pool) {
    if (std::llround(c.font_size * 1000) == std::llround(body * 1000)) baselines.push_back(c.baseline_y);
  }
  std::sort(baselines.begin(), baselines.end());
  return baselines[baselines.size() / 2];
}

FormulaRecord make_formula_record(const PageIR& page, const Placeholder& placeholder, double baseline,
                                  double body_size) {
  FormulaRecord rec;
  rec.placeholder_id = placeholder.id;
  rec.baseline = baseline;
  rec.body_size = body_size;
  bool first = true;
  std::vector<CharRecord> chars;
  for (int u : placeholder.source_units) {
    const CharRecord* c = page.find_char(u);
    if (!c) continue;
    chars.push_back(*c);
    rec.anchor = first ? c->box : unite(rec.anchor, c->box);
    first = false;
  }
  std::vector<const PassthroughOp*> ops;
  for (int id : placeholder.source_ops) {
    const PassthroughOp* op = page.find_op(id);
    if (!op) continue;
    ops.push_back(op);
    rec.anchor = first ? op->box : unite(rec.anchor, op->box);
    first = false;
  }
  rec.offsets = compute_offsets(chars, baseline, body_size, rec.anchor.x);
  for (const PassthroughOp* op : ops) rec.offsets.push_back({-op->id, op->box.x - rec.anchor.x, op->box.y - baseline, 1.0});
  return rec;
}

Matrix relocation(const FormulaRecord& record, double x, double baseline, double gamma) {
  return Matrix::translation(-record.anchor.x, -record.baseline) * Matrix::scaling(gamma, gamma) *
         Matrix::translation(x, baseline);
}

std::vector<PlacedUnit> reconstruct(const PageIR& page, const FormulaRecord& record, double x, double baseline,
                                    double gamma) {
  std::vector<PlacedUnit> out;
  for (const UnitOffset& off : record.offsets) {
    if (off.unit <= 0) continue;
    const CharRecord* c = page.find_char(off.unit);
    if (!c) continue;
    const double base = baseline + off.dy * gamma;
    const double left = x + off.dx * gamma;
    PlacedUnit u;
    u.unit = off.unit;
    u.baseline = base;
    u.size = c->font_size * gamma;
    u.box = {left, base + (c->box.y - c->baseline_y) * gamma, left + c->box.width() * gamma,
             base + (c->box.y2 - c->baseline_y) * gamma};
    out.push_back(u);
  }
  return out;
}

void mask_paragraph(Paragraph& paragraph, const PageIR& page, const DocumentIR& doc, const MaskConfig& config,
                    std::set<int>* claimed_ops) {
  Masker(paragraph, page, doc, config, claimed_ops).run();
}

void mask_document(DocumentIR& doc, const MaskConfig& config) {
  for (auto& page : doc.pages) {
    std::set<int> claimed;
    for (auto& p : page.paragraph) mask_paragraph(p, page, doc, config, &claimed);
  }
}

std::vector<RunUnit> unmask(std::string_view output, const std::vector<Placeholder>& placeholders) {
  std::vector<RunUnit> units;
  auto push_text = [&units](std::string_view s) {
    if (s.empty()) return;
    if (!units.empty() && units.back().kind == RunUnit::Kind::kText) {
      units.back().text += s;
    } else {
      units.push_back({RunUnit::Kind::kText, std::string(s), 0});
    }
  };
  std::size_t pos = 0;
  for (const TokenMatch& m : scan_tokens(output)) {
    if (!m.id) continue;  // malformed tokens stay text
    const Placeholder* ph = nullptr;
    for (const auto& p : placeholders) {
      if (p.id == *m.id) ph = &p;
    }
    if (!ph) throw PlaceholderError(*m.id);
    push_text(output.substr(pos, m.begin - pos));
    units.push_back({RunUnit::Kind::kRestore, ph->restored_text(), ph->id});
    pos = m.end;
  }
  push_text(output.substr(pos));
  return units;
}

std::string flatten(const std::vector<RunUnit>& units) {
  std::string out;
  for (const auto& u : units) out += u.text;
  return out;
}

}  // namespace relayout
