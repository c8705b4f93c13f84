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

#include <cmath>
#include <random>

#include "page_fixture.hpp"
#include "relayout/errors.hpp"
#include "relayout/formula_mask.hpp"
#include "relayout/layout.hpp"
#include "relayout/typeset.hpp"

using namespace relayout;

namespace {

std::u32string repeat(std::u32string_view s, int n) {
  std::u32string out;
  for (int i = 0; i < n; ++i) out += s;
  return out;
}

// Lines needed for "abcd " x n with a monospace advance: a line of k words
// spans 5k - 1 characters.
int oracle_lines(int words, double box_width, double advance) {
  const int chars = static_cast<int>(std::floor(box_width / advance + 1e-9));
  const int per_line = (chars + 1) / 5;
  return (words + per_line - 1) / per_line;
}

const FontMetrics kMono = FontMetrics::monospace();
const Box kBox{0, 0, 100, 44};

}  // namespace

TEST_CASE("layout_lines: monospace fixture") {
  const Flow flow = text_flow(repeat(U"abcd ", 20));
  REQUIRE(flow.size() == 100);
  const LineLayout at1 = layout_lines(flow, kBox, 10, 1.0, kMono);
  CHECK(static_cast<int>(at1.lines.size()) == oracle_lines(20, 100, 5.0));
  CHECK(at1.lines.size() == 5);
  CHECK(at1.height == doctest::Approx(60.0));
  CHECK_FALSE(at1.fit);

  const LineLayout at08 = layout_lines(flow, kBox, 10, 0.8, kMono);
  CHECK(static_cast<int>(at08.lines.size()) == oracle_lines(20, 100, 4.0));
  CHECK(at08.lines.size() == 4);
  CHECK(at08.height == doctest::Approx(38.4));
  CHECK(at08.line_height == doctest::Approx(9.6));
  CHECK(at08.fit);

  const LineLayout empty = layout_lines({}, kBox, 10, 1.0, kMono);
  CHECK(empty.fit);
  CHECK(empty.lines.empty());
}

TEST_CASE("layout_lines: unbreakable unit wider than the box overflows") {
  Flow flow = text_flow(U"see ");
  flow.push_back({0, 1, 120});
  const LineLayout l = layout_lines(flow, {0, 0, 100, 500}, 10, 1.0, kMono);
  CHECK_FALSE(l.fit);
  CHECK(layout_lines(flow, {0, 0, 100, 500}, 10, 0.8, kMono).fit);
  CHECK_FALSE(layout_lines(text_flow(repeat(U"x", 30)), {0, 0, 100, 500}, 10, 1.0, kMono).fit);
}

TEST_CASE("layout_lines: break opportunities") {
  // Hyphen after a letter.
  LineLayout l = layout_lines(text_flow(U"typeset-ting"), {0, 0, 40, 100}, 10, 1.0, kMono);
  REQUIRE(l.lines.size() == 2);
  CHECK(l.lines[0].end == 8);
  // Spaceless runs break anywhere and are justified except on the last line.
  const Flow cjk = text_flow(U"这是一个很长的中文句子需要换行");
  l = layout_lines(cjk, {0, 0, 52, 100}, 10, 1.0, kMono);
  REQUIRE(l.lines.size() == 2);
  CHECK(l.lines[0].end - l.lines[0].begin == 10);
  CHECK(l.lines[0].justify);
  CHECK_FALSE(l.lines[1].justify);
  const PlacedParagraph placed = place_glyphs(cjk, l, {0, 0, 52, 100}, kMono);
  CHECK(placed.glyphs[0].box.x == doctest::Approx(0));
  CHECK(placed.glyphs[9].box.x2 == doctest::Approx(52));
  CHECK(placed.glyphs[10].box.x == doctest::Approx(0));
  // Padding dots are breakable.
  l = layout_lines(text_flow(U"abcdefgh····"), {0, 0, 45, 100}, 10, 1.0, kMono);
  CHECK(l.lines.size() == 2);
}

TEST_CASE("fit_paragraph: scale search") {
  const Flow flow = text_flow(repeat(U"abcd ", 20));
  const ScalingResult r = fit_paragraph(flow, kBox, 10, kMono);
  CHECK(r.status == FitStatus::kFit);
  CHECK(r.gamma == doctest::Approx(0.80));
  CHECK(r.iterations == 5);

  const ScalingResult easy = fit_paragraph(text_flow(U"abcd"), kBox, 10, kMono);
  CHECK(easy.gamma == 1.0);
  CHECK(easy.iterations == 1);
  CHECK(easy.status == FitStatus::kFit);

  TypesetConfig coarse;
  coarse.step = 0.10;
  const ScalingResult r10 = fit_paragraph(flow, kBox, 10, kMono, coarse);
  CHECK(r10.gamma == doctest::Approx(0.80));
  CHECK(r10.iterations == 3);

  const ScalingResult hopeless = fit_paragraph(text_flow(repeat(U"abcd ", 200)), kBox, 10, kMono);
  CHECK(hopeless.status == FitStatus::kOverflowAtMin);
  CHECK(hopeless.gamma == 0.6);
  CHECK(hopeless.iterations == 9);
  CHECK_FALSE(hopeless.layout.lines.empty());

  TypesetConfig bad;
  bad.step = 0;
  CHECK_THROWS_AS(fit_paragraph(flow, kBox, 10, kMono, bad), ConfigError);
  bad.step = 0.05;
  bad.min_gamma = 1.2;
  CHECK_THROWS_AS(fit_paragraph(flow, kBox, 10, kMono, bad), ConfigError);
}

TEST_CASE("fit_paragraph: grid, minimality, monotonicity and containment") {
  std::mt19937 rng(20260);
  std::uniform_int_distribution<int> len(0, 160);
  std::uniform_real_distribution<double> dim(30, 220);
  std::uniform_real_distribution<double> lo(0.3, 1.0);
  const std::u32string alphabet = U"abcdefghij klmnop qrst-uvw xyz 中文字 ·";
  for (int trial = 0; trial < 2000; ++trial) {
    std::u32string s;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) s += alphabet[rng() % alphabet.size()];
    const Box box{10, 10, 10 + dim(rng), 10 + dim(rng) / 3};
    TypesetConfig cfg;
    cfg.step = rng() % 2 ? 0.05 : 0.10;
    cfg.min_gamma = lo(rng);
    const Flow flow = text_flow(s);
    const ScalingResult r = fit_paragraph(flow, box, 10, kMono, cfg);

    const double k = (1.0 - r.gamma) / cfg.step;
    const bool on_grid = std::abs(k - std::round(k)) < 1e-9;
    CHECK((on_grid || r.gamma == cfg.min_gamma));
    CHECK(r.gamma >= cfg.min_gamma);
    if (r.status == FitStatus::kFit && r.gamma < 1.0) {
      const double above = r.gamma == cfg.min_gamma ? 1.0 - (r.iterations - 2) * cfg.step : r.gamma + cfg.step;
      CHECK_FALSE(layout_lines(flow, box, 10, above, kMono, cfg).fit);
    }
    const std::size_t cut = s.empty() ? 0 : rng() % (s.size() + 1);
    const ScalingResult prefix = fit_paragraph(text_flow(s.substr(0, cut)), box, 10, kMono, cfg);
    CHECK(prefix.gamma >= r.gamma);

    if (r.status == FitStatus::kFit) {
      const PlacedParagraph placed = place_glyphs(flow, r.layout, box, kMono);
      for (const auto& g : placed.glyphs) {
        CHECK(contains(box, g.box, 0.5));
      }
    }
  }
}

TEST_CASE("place_glyphs: baselines") {
  const FontMetrics helvetica = FontMetrics::bundled();
  CHECK(helvetica.ascent == 718);
  const Box box{72, 690, 300, 708.616};
  const Flow one = text_flow(U"Hi");
  const LineLayout l1 = layout_lines(one, box, 10, 1.0, helvetica);
  const PlacedParagraph p1 = place_glyphs(one, l1, box, helvetica);
  REQUIRE(p1.glyphs.size() == 2);
  CHECK(p1.glyphs[0].baseline == doctest::Approx(701.436));
  CHECK(p1.glyphs[0].x == doctest::Approx(72));
  CHECK(p1.glyphs[1].x == doctest::Approx(72 + 7.22));

  const Flow two = text_flow(U"first line second");
  const Box narrow{0, 0, 60, 100};
  const LineLayout l2 = layout_lines(two, narrow, 10, 1.0, kMono);
  REQUIRE(l2.lines.size() == 2);
  const PlacedParagraph p2 = place_glyphs(two, l2, narrow, kMono);
  CHECK(p2.glyphs.front().baseline - p2.glyphs.back().baseline == doctest::Approx(12));

  CHECK(place_glyphs({}, layout_lines({}, box, 10, 1.0, kMono), box, kMono).glyphs.empty());
}

TEST_CASE("typeset_page: identity text lands on the source glyphs") {
  PageIR page = fixture::letter_page();
  fixture::add_line(page, "the quick brown fox jumps", 72, 700);
  fixture::add_line(page, "over the lazy dog again", 72, 688);
  fixture::add_line(page, "and stops [12] here", 72, 676);
  const std::vector<LayoutElement> elements = {{1, "body_text", {70, 670, 300, 710}, 1}};
  page.page_layout = elements;
  page.paragraph = build_paragraphs(page, elements, {1});
  DocumentIR doc = fixture::one_page_doc(page);
  mask_document(doc);
  Paragraph& p = doc.pages[0].paragraph[0];
  p.output = p.input;
  p.status = TranslationStatus::kTranslated;

  const FontMetrics mono = FontMetrics::monospace(500, 718, -207);
  Warnings warnings;
  const TypesetPage tp = typeset_page(doc.pages[0], mono, {}, &warnings);
  REQUIRE(tp.paragraphs.size() == 1);
  const TypesetParagraph& t = tp.paragraphs[0];
  CHECK(warnings.empty());
  CHECK(t.fit.gamma == 1.0);
  REQUIRE(p.scale.has_value());
  CHECK(p.scale->iterations == 1);
  REQUIRE(t.placed.objects.size() == 1);
  const FormulaRecord& rec = t.records.at(t.placed.objects[0].placeholder_id);
  CHECK(t.placed.objects[0].x == doctest::Approx(rec.anchor.x).epsilon(1e-9));
  CHECK(t.placed.objects[0].baseline == doctest::Approx(676));

  std::vector<CharRecord> shown;
  for (const auto& c : doc.pages[0].pdf_character) {
    if (c.char_unicode != "[" && c.char_unicode != "]" && c.char_unicode != "1" && c.char_unicode != "2") {
      shown.push_back(c);
    }
  }
  REQUIRE(t.placed.glyphs.size() == shown.size());
  for (std::size_t i = 0; i < shown.size(); ++i) {
    CHECK(text::encode(t.placed.glyphs[i].cp) == shown[i].char_unicode);
    CHECK(t.placed.glyphs[i].box.x == doctest::Approx(shown[i].box.x).epsilon(1e-6));
    CHECK(t.placed.glyphs[i].baseline == doctest::Approx(shown[i].baseline_y).epsilon(1e-6));
  }
}

TEST_CASE("typeset_page: restored-only paragraphs stay in place and overflow warns") {
  PageIR page = fixture::letter_page();
  fixture::add_line(page, "x=y+1", 200, 500);
  fixture::add_line(page, "a paragraph that is long", 72, 400);
  const std::vector<LayoutElement> elements = {{1, "formula_region", {190, 490, 240, 510}, 1},
                                               {2, "body_text", {70, 395, 200, 410}, 1}};
  page.page_layout = elements;
  page.paragraph = build_paragraphs(page, elements, {1, 2});
  DocumentIR doc = fixture::one_page_doc(page);
  mask_document(doc);
  auto& paragraphs = doc.pages[0].paragraph;
  REQUIRE(paragraphs.size() == 2);
  paragraphs[0].output = paragraphs[0].input;
  paragraphs[1].output = std::string(200, 'w');
  for (auto& p : paragraphs) p.status = TranslationStatus::kTranslated;
  Warnings warnings;
  const TypesetPage tp = typeset_page(doc.pages[0], FontMetrics::monospace(), {}, &warnings);
  CHECK(tp.paragraphs[0].verbatim);
  REQUIRE(tp.paragraphs[0].placed.objects.size() == 1);
  CHECK(tp.paragraphs[0].placed.objects[0].x == doctest::Approx(200));
  CHECK(tp.paragraphs[0].placed.objects[0].baseline == doctest::Approx(500));
  CHECK(paragraphs[1].scale->status == FitStatus::kOverflowAtMin);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].code == "OverflowAtMin");
}
