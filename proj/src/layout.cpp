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

#include "relayout/layout.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <optional>
#include <regex>

#include "json.hpp"
#include "relayout/errors.hpp"
#include "relayout/text.hpp"

namespace relayout {
namespace {

double center_x(const Box& b) { return 0.5 * (b.x + b.x2); }
double center_y(const Box& b) { return 0.5 * (b.y + b.y2); }

double median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// True when two boxes sit on one text line: they overlap vertically by at
// least `fraction` of the shorter height. Degenerate boxes use their center.
bool same_line(const Box& a, const Box& b, double fraction = 0.5) {
  const double ha = a.height();
  const double hb = b.height();
  if (ha <= 0 || hb <= 0) {
    const Box& flat = ha <= 0 ? a : b;
    const Box& other = ha <= 0 ? b : a;
    if (other.height() <= 0) return std::abs(flat.y - other.y) < 1e-6;
    const double cy = center_y(flat);
    return cy >= other.y && cy <= other.y2;
  }
  const double overlap = std::min(a.y2, b.y2) - std::max(a.y, b.y);
  return overlap >= fraction * std::min(ha, hb);
}

bool blank(std::string_view s) {
  for (char32_t cp : text::decode(s)) {
    if (!text::is_space(cp)) return false;
  }
  return true;
}

struct Fragment {
  Box box;
  std::vector<int> chars;  // indices into pdf_character
  double size = 0;
};

struct TextLine {
  Box box;
  std::vector<int> chars;
  double size = 0;
  double min_size = std::numeric_limits<double>::infinity();
  double baseline = 0;
};

std::vector<Fragment> build_fragments(const PageIR& page, const std::vector<int>& chars,
                                      const LayoutConfig& config) {
  std::vector<Fragment> frags;
  for (int idx : chars) {
    const CharRecord& c = page.pdf_character[idx];
    if (!frags.empty()) {
      Fragment& f = frags.back();
      const double size = std::max(c.font_size, f.size);
      const double gap = c.box.x - f.box.x2;
      if (same_line(f.box, c.box) && gap >= -0.5 * size && gap <= config.fragment_gap * size) {
        f.box = unite(f.box, c.box);
        f.chars.push_back(idx);
        f.size = size;
        continue;
      }
    }
    frags.push_back({c.box, {idx}, c.font_size});
  }
  return frags;
}

std::vector<TextLine> group_lines(const PageIR& page, const std::vector<Fragment>& frags,
                                  const std::vector<int>& members) {
  std::vector<int> sorted = members;
  std::sort(sorted.begin(), sorted.end(), [&](int a, int b) {
    const Box& ba = frags[a].box;
    const Box& bb = frags[b].box;
    if (ba.y2 != bb.y2) return ba.y2 > bb.y2;
    return ba.x < bb.x;
  });
  std::vector<TextLine> lines;
  for (int fi : sorted) {
    const Fragment& f = frags[fi];
    TextLine* target = nullptr;
    for (auto& line : lines) {
      if (same_line(line.box, f.box)) {
        target = &line;
        break;
      }
    }
    if (!target) {
      lines.push_back({f.box, {}, 0});
      target = &lines.back();
    }
    target->box = unite(target->box, f.box);
    target->chars.insert(target->chars.end(), f.chars.begin(), f.chars.end());
  }
  for (auto& line : lines) {
    std::vector<double> baselines;
    for (int ci : line.chars) {
      const CharRecord& c = page.pdf_character[ci];
      baselines.push_back(c.baseline_y);
      if (blank(c.char_unicode)) continue;
      line.size = std::max(line.size, c.font_size);
      line.min_size = std::min(line.min_size, c.font_size);
    }
    if (!std::isfinite(line.min_size)) line.min_size = line.size;
    line.baseline = median(baselines);
    std::sort(line.chars.begin(), line.chars.end(), [&](int a, int b) {
      return page.pdf_character[a].render_order < page.pdf_character[b].render_order;
    });
  }
  std::sort(lines.begin(), lines.end(), [](const TextLine& a, const TextLine& b) {
    if (a.box.y2 != b.box.y2) return a.box.y2 > b.box.y2;
    return a.box.x < b.box.x;
  });
  return lines;
}

bool is_math_symbol(char32_t cp) {
  static const std::u32string_view kSymbols = U"=+<>^_|−×÷±∞∑∫√";
  if (kSymbols.find(cp) != std::u32string_view::npos) return true;
  return (cp >= 0x0370 && cp <= 0x03FF) || (cp >= 0x2200 && cp <= 0x22FF) ||
         (cp >= 0x27C0 && cp <= 0x27EF) || (cp >= 0x2190 && cp <= 0x21FF) ||
         (cp >= 0x1D400 && cp <= 0x1D7FF);
}

std::string classify(const std::string& content, std::size_t line_count) {
  static const std::regex kCaption(R"(^\s*(Figure|Fig\.|Table)\s*\d)");
  static const std::regex kList(R"(^\s*(•|◦|▪|‣|∙|-|–|\(\d+\)|\d+[.)]|[a-z][.)])\s)");
  const std::u32string u = text::decode(content);
  int math = 0;
  int nonspace = 0;
  int long_words = 0;
  int run = 0;
  for (char32_t cp : u) {
    if (!text::is_space(cp)) ++nonspace;
    if (is_math_symbol(cp)) ++math;
    if (cp < 0x80 && text::is_letter(cp)) {
      ++run;
    } else {
      if (run >= 4) ++long_words;
      run = 0;
    }
  }
  if (run >= 4) ++long_words;
  if (line_count <= 4 && math >= 2 && math >= 0.2 * nonspace && long_words <= 2) return "formula_region";
  if (std::regex_search(content, kCaption)) return "figure_caption";
  if (std::regex_search(content, kList)) return "list_item";
  return "body_text";
}

// Groups lines into blocks separated by vertical gaps, size changes or a lack
// of horizontal overlap, and emits one element per block.
void emit_blocks(const PageIR& page, const std::vector<Fragment>& frags, const std::vector<int>& members,
                 const std::string& forced_label, const LayoutConfig& config, int& next_id,
                 std::vector<LayoutElement>& out) {
  if (members.empty()) return;
  const std::vector<TextLine> lines = group_lines(page, frags, members);
  std::vector<double> heights;
  for (const auto& line : lines) heights.push_back(line.box.height());
  const double line_height = median(heights);

  std::vector<std::vector<const TextLine*>> blocks;
  for (const auto& line : lines) {
    bool split = blocks.empty();
    if (!split) {
      const TextLine& prev = *blocks.back().back();
      const double gap = prev.baseline - line.baseline;
      const double big = std::max(prev.size, line.size);
      const double small = std::min(prev.size, line.size);
      const double overlap = std::min(prev.box.x2, line.box.x2) - std::max(prev.box.x, line.box.x);
      split = gap > config.paragraph_gap * line_height || gap < 0 ||
              (small > 0 && big / small > config.size_jump) || overlap <= 0;
    }
    if (split) blocks.emplace_back();
    blocks.back().push_back(&line);
  }

  for (const auto& block : blocks) {
    Box box = block.front()->box;
    std::string content;
    for (const TextLine* line : block) {
      box = unite(box, line->box);
      if (!content.empty()) content += ' ';
      const CharRecord* prev = nullptr;
      for (int ci : line->chars) {
        const CharRecord& c = page.pdf_character[ci];
        if (prev && c.box.x - prev->box.x2 > config.space_gap * std::max(c.font_size, prev->font_size)) content += ' ';
        content += c.char_unicode;
        prev = &c;
      }
    }
    const std::string label = forced_label.empty() ? classify(content, block.size()) : forced_label;
    out.push_back({next_id++, label, box, config.heuristic_conf});
  }
}

// Vertical whitespace channels that split the body into columns.
std::vector<double> find_separators(const std::vector<Fragment>& frags, const std::vector<int>& body,
                                    double page_width, const LayoutConfig& config) {
  if (body.size() < 2) return {};
  Box extent = frags[body.front()].box;
  for (int fi : body) extent = unite(extent, frags[fi].box);
  const double height = extent.height();
  if (height <= 0 || extent.width() <= 0) return {};

  const double x0 = std::floor(extent.x);
  const int bins = static_cast<int>(std::ceil(extent.x2) - x0);
  std::vector<bool> open(bins);
  std::vector<std::pair<double, double>> spans;
  for (int i = 0; i < bins; ++i) {
    const double cx = x0 + i + 0.5;
    spans.clear();
    for (int fi : body) {
      const Box& b = frags[fi].box;
      if (b.x < cx && b.x2 > cx) spans.emplace_back(b.y, b.y2);
    }
    std::sort(spans.begin(), spans.end());
    double covered = 0;
    double lo = 0;
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& [a, b] : spans) {
      if (a > hi) {
        if (std::isfinite(hi)) covered += hi - lo;
        lo = a;
        hi = b;
      } else {
        hi = std::max(hi, b);
      }
    }
    if (std::isfinite(hi)) covered += hi - lo;
    open[i] = covered <= (1.0 - config.column_span) * height;
  }

  std::vector<double> separators;
  int i = 0;
  while (i < bins) {
    if (!open[i]) {
      ++i;
      continue;
    }
    int j = i;
    while (j < bins && open[j]) ++j;
    const bool interior = i > 0 && j < bins;
    if (interior && (j - i) >= config.column_gap * page_width) separators.push_back(x0 + 0.5 * (i + j));
    i = j;
  }
  return separators;
}

void segment_chars(const PageIR& page, const std::vector<int>& chars, const LayoutConfig& config,
                   int& next_id, std::vector<LayoutElement>& out) {
  if (chars.empty()) return;
  const std::vector<Fragment> frags = build_fragments(page, chars, config);
  const Box& media = page.media_box;
  const double header_limit = media.y2 - config.header_band * media.height();
  const double footer_limit = media.y + config.footer_band * media.height();

  std::vector<int> header, footer, body;
  for (int i = 0; i < static_cast<int>(frags.size()); ++i) {
    const Box& b = frags[i].box;
    if (b.y >= header_limit) {
      header.push_back(i);
    } else if (b.y2 <= footer_limit) {
      footer.push_back(i);
    } else {
      body.push_back(i);
    }
  }

  // Running heads and folios: every fragment is its own element, so a title
  // on the left and an issue label on the right stay apart.
  auto emit_band = [&](std::vector<int> band, const char* label) {
    std::sort(band.begin(), band.end(), [&](int a, int b) {
      if (frags[a].box.y2 != frags[b].box.y2) return frags[a].box.y2 > frags[b].box.y2;
      return frags[a].box.x < frags[b].box.x;
    });
    for (int fi : band) emit_blocks(page, frags, {fi}, label, config, next_id, out);
  };
  emit_band(header, "page_header_hybrid");

  const std::vector<double> separators = find_separators(frags, body, media.width(), config);
  std::vector<std::vector<int>> columns(separators.size() + 1);
  std::vector<int> spanning;
  for (int fi : body) {
    const Box& b = frags[fi].box;
    bool crosses = false;
    for (double s : separators) crosses = crosses || (b.x < s - 0.5 && b.x2 > s + 0.5);
    if (crosses) {
      spanning.push_back(fi);
      continue;
    }
    const double cx = center_x(b);
    std::size_t col = 0;
    while (col < separators.size() && separators[col] < cx) ++col;
    columns[col].push_back(fi);
  }
  emit_blocks(page, frags, spanning, "", config, next_id, out);
  for (const auto& col : columns) emit_blocks(page, frags, col, "", config, next_id, out);
  emit_band(footer, "page_footer");
}

struct Gap {
  double lo = 0;
  double hi = 0;
};

// Widest strictly positive gap in the projection of the boxes on one axis.
std::optional<Gap> widest_gap(const std::vector<const LayoutElement*>& items, bool horizontal) {
  std::vector<std::pair<double, double>> spans;
  for (const auto* e : items) {
    spans.emplace_back(horizontal ? e->box.x : e->box.y, horizontal ? e->box.x2 : e->box.y2);
  }
  std::sort(spans.begin(), spans.end());
  std::optional<Gap> best;
  double reach = spans.front().second;
  for (std::size_t i = 1; i < spans.size(); ++i) {
    if (spans[i].first > reach) {
      const Gap g{reach, spans[i].first};
      // Ties prefer the topmost gap for horizontal cuts (scan runs bottom-up).
      if (!best || g.hi - g.lo > best->hi - best->lo ||
          (!horizontal && g.hi - g.lo == best->hi - best->lo)) {
        best = g;
      }
    }
    reach = std::max(reach, spans[i].second);
  }
  return best;
}

void xy_cut(std::vector<const LayoutElement*> items, std::vector<int>& out) {
  if (items.empty()) return;
  if (items.size() == 1) {
    out.push_back(items.front()->id);
    return;
  }
  if (auto gap = widest_gap(items, true)) {
    const double mid = 0.5 * (gap->lo + gap->hi);
    std::vector<const LayoutElement*> left, right;
    for (const auto* e : items) (center_x(e->box) < mid ? left : right).push_back(e);
    xy_cut(std::move(left), out);
    xy_cut(std::move(right), out);
    return;
  }
  if (auto gap = widest_gap(items, false)) {
    const double mid = 0.5 * (gap->lo + gap->hi);
    std::vector<const LayoutElement*> top, bottom;
    for (const auto* e : items) (center_y(e->box) > mid ? top : bottom).push_back(e);
    xy_cut(std::move(top), out);
    xy_cut(std::move(bottom), out);
    return;
  }
  std::sort(items.begin(), items.end(), [](const LayoutElement* a, const LayoutElement* b) {
    if (a->box.y2 != b->box.y2) return a->box.y2 > b->box.y2;
    if (a->box.x != b->box.x) return a->box.x < b->box.x;
    return a->id < b->id;
  });
  for (const auto* e : items) out.push_back(e->id);
}

double distance_to(const Box& b, double x, double y) {
  const double dx = std::max({b.x - x, 0.0, x - b.x2});
  const double dy = std::max({b.y - y, 0.0, y - b.y2});
  return std::hypot(dx, dy);
}

int smallest_containing(const std::vector<LayoutElement>& elements, double x, double y,
                        bool skip_formulas = false) {
  int best = -1;
  for (int i = 0; i < static_cast<int>(elements.size()); ++i) {
    if (skip_formulas && elements[i].class_name == "formula_region") continue;
    const Box& b = elements[i].box;
    if (x < b.x || x > b.x2 || y < b.y || y > b.y2) continue;
    if (best < 0 || b.area() < elements[best].box.area() ||
        (b.area() == elements[best].box.area() && elements[i].id < elements[best].id)) {
      best = i;
    }
  }
  return best;
}

struct Unit {
  int id = 0;  // render order, or -op id
  double seq = 0;
  Box box;
  double size = 0;
  std::string text;
};

struct UnitLine {
  Box box;
  std::vector<Unit> units;
  double baseline = 0;
};

Paragraph make_paragraph(const PageIR& page, const LayoutElement& element, const std::vector<const UnitLine*>& lines,
                         const LayoutConfig& config) {
  Paragraph p;
  p.layout_label = element.class_name;
  p.element_id = element.id;
  bool first_box = true;
  std::map<long long, int> size_counts;
  std::map<std::string, int> font_counts;
  std::vector<std::pair<std::string, double>> fonts;

  auto push = [&p](std::string_view s, int id) {
    for (char32_t cp : text::decode(s)) {
      p.pdf_unicode += text::encode(cp);
      p.unit_ids.push_back(id);
    }
  };
  auto last_cp = [&p]() -> char32_t {
    const std::u32string u = text::decode(p.pdf_unicode);
    return u.empty() ? 0 : u.back();
  };
  auto second_last_cp = [&p]() -> char32_t {
    const std::u32string u = text::decode(p.pdf_unicode);
    return u.size() < 2 ? 0 : u[u.size() - 2];
  };

  for (const UnitLine* line : lines) {
    if (!p.pdf_unicode.empty() && !line->units.empty()) {
      const char32_t a = last_cp();
      const char32_t b = text::decode(line->units.front().text).front();
      const bool hyphen = (a == U'-' || a == 0x2010) && text::is_letter(second_last_cp()) && text::is_lower(b);
      if (!text::is_space(a) && !text::is_space(b) && !hyphen && !text::is_spaceless(a) &&
          !text::is_spaceless(b)) {
        push(" ", 0);
      }
    }
    const Unit* prev = nullptr;
    for (const Unit& u : line->units) {
      if (prev) {
        const double gap = u.box.x - prev->box.x2;
        const double size = std::max(prev->size, u.size);
        if (!blank(prev->text) && !blank(u.text) && gap > config.space_gap * size) push(" ", 0);
      }
      push(u.text, u.id);
      p.box = first_box ? u.box : unite(p.box, u.box);
      first_box = false;
      if (u.id > 0) {
        const CharRecord* c = page.find_char(u.id);
        if (c && !blank(c->char_unicode)) {
          ++size_counts[std::llround(c->font_size * 1000)];
          fonts.emplace_back(c->font_id, c->font_size);
        }
      }
      prev = &u;
    }
  }

  long long best_size = 0;
  int best_count = 0;
  for (const auto& [size, count] : size_counts) {
    if (count >= best_count) {
      best_size = size;
      best_count = count;
    }
  }
  p.base_size = best_size / 1000.0;
  for (const auto& [font, size] : fonts) {
    if (std::llround(size * 1000) == best_size) ++font_counts[font];
  }
  best_count = 0;
  for (const auto& [font, count] : font_counts) {
    if (count > best_count) {
      p.font_id = font;
      best_count = count;
    }
  }
  p.input = p.pdf_unicode;
  return p;
}

std::vector<Paragraph> element_paragraphs(const PageIR& page, const LayoutElement& element,
                                          const std::vector<int>& chars, const std::vector<const PassthroughOp*>& images,
                                          const LayoutConfig& config) {
  std::vector<UnitLine> lines;
  for (int ci : chars) {
    const CharRecord& c = page.pdf_character[ci];
    Unit u{c.render_order, static_cast<double>(c.render_order), c.box, c.font_size, c.char_unicode};
    // A script-extended line box can reach the next line; a long jump back
    // to the left that leaves the previous glyph's band starts a new line.
    bool new_line = lines.empty() || !same_line(lines.back().box, c.box, 0.3);
    if (!new_line) {
      const Box& last = lines.back().units.back().box;
      new_line = last.x - c.box.x > 2 * c.font_size && !same_line(last, c.box, 0.3);
    }
    if (new_line) {
      lines.push_back({c.box, {}, 0});
    }
    lines.back().box = unite(lines.back().box, c.box);
    lines.back().units.push_back(std::move(u));
  }
  if (lines.empty()) return {};

  std::vector<double> heights;
  std::vector<double> sizes;
  for (auto& line : lines) {
    heights.push_back(line.box.height());
    std::vector<double> baselines;
    for (const auto& u : line.units) {
      const CharRecord* c = page.find_char(u.id);
      baselines.push_back(c->baseline_y);
      if (!blank(u.text)) sizes.push_back(u.size);
    }
    line.baseline = median(baselines);
  }
  const double line_height = median(heights);
  const double em = sizes.empty() ? 0 : median(sizes);

  for (const PassthroughOp* op : images) {
    if (op->box.height() > config.inline_image_lines * line_height) continue;
    UnitLine* target = nullptr;
    double best = 0;
    for (auto& line : lines) {
      const double overlap = std::min(line.box.y2, op->box.y2) - std::max(line.box.y, op->box.y);
      if (overlap > best) {
        best = overlap;
        target = &line;
      }
    }
    if (!target) continue;
    const double size = target->units.front().size;
    target->units.push_back({-op->id, op->after_render_order + 0.5, op->box, size, text::encode(U'\uFFFC')});
    std::stable_sort(target->units.begin(), target->units.end(),
                     [](const Unit& a, const Unit& b) { return a.seq < b.seq; });
  }

  double left = lines.front().box.x;
  for (const auto& line : lines) left = std::min(left, line.box.x);

  std::vector<Paragraph> out;
  std::vector<const UnitLine*> group;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    if (k > 0) {
      const UnitLine& prev = lines[k - 1];
      const UnitLine& line = lines[k];
      const double gap = prev.baseline - line.baseline;
      const bool indented = line.box.x - left > config.indent_em * em && prev.box.x - left <= 0.5 * em;
      if (gap > config.paragraph_gap * line_height || gap < 0 || indented) {
        out.push_back(make_paragraph(page, element, group, config));
        group.clear();
      }
    }
    group.push_back(&lines[k]);
  }
  out.push_back(make_paragraph(page, element, group, config));
  return out;
}

const std::set<char32_t> kTerminal = {U'.', U'!', U'?', U':', U';', 0x3002, 0xFF01, 0xFF1F, 0x2026};

}  // namespace

Detections parse_detections(std::string_view json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw SchemaError("detections", e.what());
  }
  const json* pages = &doc;
  if (doc.is_object()) {
    if (!doc.contains("pages")) throw SchemaError("detections", "missing 'pages'");
    pages = &doc.at("pages");
  }
  if (!pages->is_array()) throw SchemaError("detections", "expected an array of pages");
  Detections out;
  for (std::size_t pi = 0; pi < pages->size(); ++pi) {
    const json& list = (*pages)[pi];
    const std::string where = "detections/" + std::to_string(pi);
    if (!list.is_array()) throw SchemaError(where, "expected an array of elements");
    auto& elements = out[static_cast<int>(pi)];
    for (std::size_t ei = 0; ei < list.size(); ++ei) {
      const json& e = list[ei];
      const std::string at = where + "/" + std::to_string(ei);
      if (!e.is_object() || !e.contains("class_name") || !e.at("class_name").is_string()) {
        throw SchemaError(at, "element needs a string class_name");
      }
      if (!e.contains("box") || !e.at("box").is_array() || e.at("box").size() != 4) {
        throw SchemaError(at, "element needs a 4-number box");
      }
      LayoutElement le;
      le.class_name = e.at("class_name").get<std::string>();
      for (const auto& v : e.at("box")) {
        if (!v.is_number()) throw SchemaError(at + "/box", "expected numbers");
      }
      le.box = {e.at("box")[0].get<double>(), e.at("box")[1].get<double>(), e.at("box")[2].get<double>(),
                e.at("box")[3].get<double>()};
      if (!le.box.is_well_formed()) throw SchemaError(at + "/box", "malformed box");
      le.conf = e.value("conf", 1.0);
      le.id = e.contains("id") && e.at("id").is_number_integer() ? e.at("id").get<int>() : static_cast<int>(ei) + 1;
      elements.push_back(std::move(le));
    }
  }
  return out;
}

std::vector<LayoutElement> segment_layout(const PageIR& page, const LayoutConfig& config,
                                          const std::vector<LayoutElement>* detections) {
  std::vector<LayoutElement> out;
  int next_id = 1;
  std::vector<int> pending;
  if (detections) {
    out = *detections;
    for (const auto& e : out) next_id = std::max(next_id, e.id + 1);
  }
  for (int i = 0; i < static_cast<int>(page.pdf_character.size()); ++i) {
    const Box& b = page.pdf_character[i].box;
    const double cx = center_x(b);
    const double cy = center_y(b);
    bool covered = false;
    for (const auto& e : out) {
      covered = covered || (cx >= e.box.x - 0.5 && cx <= e.box.x2 + 0.5 && cy >= e.box.y - 0.5 && cy <= e.box.y2 + 0.5);
    }
    if (!covered) pending.push_back(i);
  }
  std::stable_sort(pending.begin(), pending.end(), [&](int a, int b) {
    return page.pdf_character[a].render_order < page.pdf_character[b].render_order;
  });
  segment_chars(page, pending, config, next_id, out);
  return out;
}

std::vector<int> reading_order(const std::vector<LayoutElement>& elements, const Box& /*media_box*/) {
  std::vector<const LayoutElement*> items;
  for (const auto& e : elements) items.push_back(&e);
  std::vector<int> out;
  xy_cut(std::move(items), out);
  return out;
}

std::vector<int> assign_chars(const PageIR& page, const std::vector<LayoutElement>& elements) {
  std::vector<int> out(page.pdf_character.size(), -1);
  if (elements.empty()) return out;
  for (std::size_t i = 0; i < page.pdf_character.size(); ++i) {
    const Box& b = page.pdf_character[i].box;
    const double cx = center_x(b);
    const double cy = center_y(b);
    // Inline formula regions stay with their host text so masking sees them.
    int best = smallest_containing(elements, cx, cy, true);
    if (best < 0) best = smallest_containing(elements, cx, cy);
    if (best < 0) {
      double dist = std::numeric_limits<double>::infinity();
      for (int k = 0; k < static_cast<int>(elements.size()); ++k) {
        const double d = distance_to(elements[k].box, cx, cy);
        if (d < dist) {
          dist = d;
          best = k;
        }
      }
    }
    out[i] = best;
  }
  return out;
}

std::vector<Paragraph> build_paragraphs(const PageIR& page, const std::vector<LayoutElement>& elements,
                                        const std::vector<int>& order, const LayoutConfig& config) {
  const std::vector<int> assignment = assign_chars(page, elements);
  std::vector<std::vector<int>> members(elements.size());
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] >= 0) members[assignment[i]].push_back(static_cast<int>(i));
  }
  for (auto& m : members) {
    std::stable_sort(m.begin(), m.end(), [&](int a, int b) {
      return page.pdf_character[a].render_order < page.pdf_character[b].render_order;
    });
  }
  std::vector<std::vector<const PassthroughOp*>> images(elements.size());
  for (const auto& op : page.passthrough_ops) {
    if (op.kind != PassthroughKind::kImage) continue;
    const int k = smallest_containing(elements, center_x(op.box), center_y(op.box));
    if (k >= 0) images[k].push_back(&op);
  }

  std::vector<int> sequence;
  std::vector<bool> seen(elements.size(), false);
  for (int id : order) {
    for (std::size_t k = 0; k < elements.size(); ++k) {
      if (elements[k].id == id && !seen[k]) {
        sequence.push_back(static_cast<int>(k));
        seen[k] = true;
        break;
      }
    }
  }
  for (std::size_t k = 0; k < elements.size(); ++k) {
    if (!seen[k]) sequence.push_back(static_cast<int>(k));
  }

  std::vector<Paragraph> out;
  for (int k : sequence) {
    for (auto& p : element_paragraphs(page, elements[k], members[k], images[k], config)) out.push_back(std::move(p));
  }
  return out;
}

std::string_view to_string(StitchDecision decision) {
  switch (decision) {
    case StitchDecision::kKeep: return "keep";
    case StitchDecision::kMerge: return "merge";
    case StitchDecision::kMergeDehyphenate: return "merge_dehyphenate";
  }
  return "keep";
}

StitchDecision stitch_cross_units(const Paragraph& tail, const Paragraph& head, const LayoutConfig& config) {
  const std::u32string t = text::decode(text::trim(tail.pdf_unicode));
  const std::u32string h = text::decode(text::trim(head.pdf_unicode));
  if (t.empty() || h.empty()) return StitchDecision::kKeep;
  const char32_t last = t.back();
  const char32_t first = h.front();
  if ((last == U'-' || last == 0x2010) && t.size() >= 2 && text::is_letter(t[t.size() - 2]) &&
      !text::is_spaceless(t[t.size() - 2]) && text::is_lower(first)) {
    return StitchDecision::kMergeDehyphenate;
  }
  if (kTerminal.count(last)) return StitchDecision::kKeep;
  if (text::is_lower(first)) return StitchDecision::kMerge;
  std::u32string word;
  for (char32_t cp : h) {
    if (!text::is_letter(cp) || text::is_spaceless(cp)) break;
    word += cp < 0x80 ? static_cast<char32_t>(std::tolower(static_cast<int>(cp))) : cp;
  }
  if (!word.empty() && config.continuation_words.count(text::encode(word))) return StitchDecision::kMerge;
  if (text::is_spaceless(last) && text::is_spaceless(first)) return StitchDecision::kMerge;
  return StitchDecision::kKeep;
}

int stitch_document(DocumentIR& doc, const LayoutConfig& config) {
  auto eligible = [](const Paragraph& p) { return p.layout_label == "body_text" || p.layout_label == "list_item"; };
  int links = 0;
  std::optional<ParagraphRef> prev;
  for (std::size_t pi = 0; pi < doc.pages.size(); ++pi) {
    auto& paragraphs = doc.pages[pi].paragraph;
    for (std::size_t i = 0; i < paragraphs.size(); ++i) {
      Paragraph& p = paragraphs[i];
      if (!eligible(p)) continue;
      const ParagraphRef here{static_cast<int>(pi), static_cast<int>(i)};
      if (prev && !p.continuation_of) {
        const Paragraph& tail = doc.pages[prev->page].paragraph[prev->index];
        bool boundary = false;
        if (prev->page == here.page) {
          boundary = p.box.x >= tail.box.x2 - 1.0 && p.box.y2 > tail.box.y;
        } else {
          boundary = prev->page + 1 == here.page;
        }
        if (boundary && stitch_cross_units(tail, p, config) != StitchDecision::kKeep) {
          p.continuation_of = *prev;
          ++links;
        }
      }
      prev = here;
    }
  }
  return links;
}

void analyze_document(DocumentIR& doc, const LayoutConfig& config, const Detections* detections) {
  for (auto& page : doc.pages) {
    const std::vector<LayoutElement>* det = nullptr;
    if (detections) {
      auto it = detections->find(page.page_number);
      if (it != detections->end()) det = &it->second;
    }
    page.page_layout = segment_layout(page, config, det);
    const std::vector<int> order = reading_order(page.page_layout, page.media_box);
    page.paragraph = build_paragraphs(page, page.page_layout, order, config);
  }
  stitch_document(doc, config);
}

}  // namespace relayout
