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

#include <random>

#include "relayout/errors.hpp"
#include "relayout/ir_json.hpp"
#include "relayout/layout.hpp"
#include "relayout/text.hpp"
#include "page_fixture.hpp"

using namespace relayout;

namespace {

using fixture::add_line;
using fixture::letter_page;

Paragraph para(std::string s, Box box = {72, 100, 300, 200}) {
  Paragraph p;
  p.pdf_unicode = s;
  p.input = s;
  p.layout_label = "body_text";
  p.box = box;
  return p;
}


}  // namespace

TEST_CASE("segment_layout: empty page has no elements") {
  PageIR page = letter_page();
  CHECK(segment_layout(page).empty());
  CHECK(build_paragraphs(page, {}, {}).empty());
}

TEST_CASE("segment_layout: top band line is a page header") {
  PageIR page = letter_page();
  // Baseline within the top 5% of the page, centered.
  add_line(page, "Running Title Of The Document", 233.5, 760);
  add_line(page, "Body text line one continues here", 72, 600);
  add_line(page, "and body text line two follows it", 72, 588);
  const auto elements = segment_layout(page);
  REQUIRE(elements.size() == 2);
  CHECK(elements[0].class_name == "page_header_hybrid");
  CHECK(elements[0].box.y >= 792 * 0.92);
  CHECK(elements[0].conf < 1.0);
  CHECK(elements[1].class_name == "body_text");
  CHECK(elements[1].conf < 1.0);
}

TEST_CASE("segment_layout: bottom band line is a page footer") {
  PageIR page = letter_page();
  add_line(page, "Body text", 72, 400);
  add_line(page, "7", 303, 30);
  const auto elements = segment_layout(page);
  REQUIRE(elements.size() == 2);
  CHECK(elements[1].class_name == "page_footer");
}

TEST_CASE("segment_layout: external detections pass through verbatim") {
  PageIR page = letter_page();
  add_line(page, "Inside the detected box", 72, 600);
  add_line(page, "Outside any detection", 72, 300);
  const std::vector<LayoutElement> det = {{1, "body_text", {54.0, 585.0, 420.0, 620.0}, 0.93}};
  const auto elements = segment_layout(page, {}, &det);
  REQUIRE(elements.size() == 2);
  CHECK(elements[0] == det[0]);
  CHECK(elements[1].id == 2);
  CHECK(elements[1].box.y2 < 310);
}

TEST_CASE("parse_detections: page arrays and schema errors") {
  const Detections d = parse_detections(
      R"([[{"class_name": "body_text", "box": [54.0, 585.0, 420.0, 620.0], "conf": 0.93}], []])");
  REQUIRE(d.size() == 2);
  REQUIRE(d.at(0).size() == 1);
  CHECK(d.at(0)[0].id == 1);
  CHECK(d.at(0)[0].conf == doctest::Approx(0.93));
  CHECK(d.at(1).empty());
  CHECK(parse_detections(R"({"pages": [[]]})").size() == 1);
  CHECK_THROWS_AS(parse_detections(R"([[{"box": [0,0,1,1]}]])"), SchemaError);
  CHECK_THROWS_AS(parse_detections(R"([[{"class_name": "x", "box": [2,0,1,1]}]])"), SchemaError);
  CHECK_THROWS_AS(parse_detections("not json"), SchemaError);
}

TEST_CASE("segment_layout: two columns are split at the gutter") {
  PageIR page = letter_page();
  for (int i = 0; i < 10; ++i) {
    add_line(page, "left column text here", 72, 700 - 12.0 * i);
    add_line(page, "right column text now", 320, 700 - 12.0 * i);
  }
  const auto elements = segment_layout(page);
  REQUIRE(elements.size() == 2);
  CHECK(elements[0].box.x2 < 200);
  CHECK(elements[1].box.x >= 320);

  const auto order = reading_order(elements, page.media_box);
  const int left = elements[0].box.x < elements[1].box.x ? elements[0].id : elements[1].id;
  REQUIRE(order.size() == 2);
  CHECK(order[0] == left);
}

TEST_CASE("segment_layout: small formula block and captions are labelled") {
  PageIR page = letter_page();
  add_line(page, "Ordinary prose before the equation", 72, 600);
  add_line(page, "E = m + c^2", 200, 570);
  add_line(page, "Figure 3: A caption", 72, 500);
  add_line(page, "(1) first enumerated item", 72, 450);
  const auto elements = segment_layout(page);
  REQUIRE(elements.size() == 4);
  CHECK(elements[0].class_name == "body_text");
  CHECK(elements[1].class_name == "formula_region");
  CHECK(elements[2].class_name == "figure_caption");
  CHECK(elements[3].class_name == "list_item");
}

TEST_CASE("reading_order: header above two columns, then left, then right") {
  const std::vector<LayoutElement> elements = {
      {3, "body_text", {320, 100, 540, 600}, 1},
      {1, "body_text", {72, 650, 540, 700}, 1},
      {2, "body_text", {72, 100, 290, 600}, 1},
  };
  CHECK(reading_order(elements, {0, 0, 612, 792}) == std::vector<int>{1, 2, 3});
}

TEST_CASE("reading_order: overlapping boxes fall back to top, x, id") {
  const std::vector<LayoutElement> elements = {
      {2, "a", {100, 100, 300, 300}, 1},
      {1, "a", {100, 100, 300, 300}, 1},
      {3, "a", {50, 150, 250, 350}, 1},
  };
  CHECK(reading_order(elements, {0, 0, 612, 792}) == std::vector<int>{3, 1, 2});
}

TEST_CASE("reading_order: property, output is a permutation of the ids") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> pos(0, 500);
  std::uniform_real_distribution<double> ext(1, 150);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<LayoutElement> elements;
    const int n = 1 + trial % 12;
    for (int i = 0; i < n; ++i) {
      const double x = pos(rng);
      const double y = pos(rng);
      elements.push_back({i + 1, "body_text", {x, y, x + ext(rng), y + ext(rng)}, 1});
    }
    auto order = reading_order(elements, {0, 0, 612, 792});
    std::sort(order.begin(), order.end());
    std::vector<int> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = i + 1;
    CHECK(order == ids);
  }
}

TEST_CASE("build_paragraphs: single spaced lines form one paragraph, a wide gap splits") {
  PageIR page = letter_page();
  add_line(page, "first line of text", 72, 700);
  add_line(page, "second line of text", 72, 688);
  // 2.5 line heights below.
  add_line(page, "third line of text", 72, 688 - 2.5 * 12);
  const std::vector<LayoutElement> elements = {{1, "body_text", {60, 600, 400, 720}, 1}};
  const auto paragraphs = build_paragraphs(page, elements, {1});
  REQUIRE(paragraphs.size() == 2);
  CHECK(paragraphs[0].pdf_unicode == "first line of text second line of text");
  CHECK(paragraphs[1].pdf_unicode == "third line of text");
  CHECK(paragraphs[0].element_id == 1);
  CHECK(paragraphs[0].base_size == doctest::Approx(10));
  CHECK(paragraphs[0].font_id == "F1");
  CHECK(paragraphs[0].input == paragraphs[0].pdf_unicode);
  // Inferred spaces carry unit id 0, glyphs their render order.
  CHECK(paragraphs[0].unit_ids[0] == 1);
  CHECK(paragraphs[0].unit_ids[5] == 0);
}

TEST_CASE("build_paragraphs: first-line indent starts a paragraph") {
  PageIR page = letter_page();
  add_line(page, "end of the first paragraph", 72, 700);
  add_line(page, "Second paragraph starts", 92, 688);
  add_line(page, "and wraps to the margin", 72, 676);
  const std::vector<LayoutElement> elements = {{1, "body_text", {60, 600, 400, 720}, 1}};
  const auto paragraphs = build_paragraphs(page, elements, {1});
  REQUIRE(paragraphs.size() == 2);
  CHECK(paragraphs[1].pdf_unicode == "Second paragraph starts and wraps to the margin");
}

TEST_CASE("build_paragraphs: inline image becomes an object replacement sub-unit") {
  PageIR page = letter_page();
  add_line(page, "see", 72, 700);
  PassthroughOp img;
  img.id = 5;
  img.kind = PassthroughKind::kImage;
  img.after_render_order = 3;
  img.box = {90, 698, 98, 706};
  page.passthrough_ops.push_back(img);
  add_line(page, "here", 101, 700);
  const std::vector<LayoutElement> elements = {{1, "body_text", {60, 690, 200, 710}, 1}};
  const auto paragraphs = build_paragraphs(page, elements, {1});
  REQUIRE(paragraphs.size() == 1);
  CHECK(paragraphs[0].pdf_unicode == "see \xEF\xBF\xBC here");
  CHECK(paragraphs[0].unit_ids == std::vector<int>{1, 2, 3, 0, -5, 0, 4, 5, 6, 7});
}

TEST_CASE("build_paragraphs: line-end hyphen joins without a space") {
  PageIR page = letter_page();
  add_line(page, "the typeset-", 72, 700);
  add_line(page, "ting step", 72, 688);
  const std::vector<LayoutElement> elements = {{1, "body_text", {60, 600, 400, 720}, 1}};
  const auto paragraphs = build_paragraphs(page, elements, {1});
  REQUIRE(paragraphs.size() == 1);
  CHECK(paragraphs[0].pdf_unicode == "the typeset-ting step");
}

TEST_CASE("build_paragraphs: property, every char lands in exactly one paragraph") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> xs(40, 500);
  std::uniform_real_distribution<double> ys(40, 750);
  std::uniform_int_distribution<int> len(1, 12);
  for (int trial = 0; trial < 40; ++trial) {
    PageIR page = letter_page();
    const int lines = 1 + trial % 15;
    for (int i = 0; i < lines; ++i) add_line(page, std::string(len(rng), 'x'), xs(rng), ys(rng), 6 + trial % 7);
    DocumentIR doc = fixture::one_page_doc(page);
    analyze_document(doc);
    std::map<int, int> seen;
    for (const auto& p : doc.pages[0].paragraph) {
      CHECK(p.unit_ids.size() == text::length(p.pdf_unicode));
      for (int u : p.unit_ids) {
        if (u > 0) ++seen[u];
      }
    }
    CHECK(seen.size() == doc.pages[0].pdf_character.size());
    for (const auto& [u, count] : seen) CHECK(count == 1);
    CHECK(validate_ir(doc).count("DanglingUnitRef") == 0);
  }
}

TEST_CASE("stitch_cross_units: hyphen, terminal punctuation and continuation") {
  CHECK(stitch_cross_units(para("a word typeset-"), para("ting continues")) == StitchDecision::kMergeDehyphenate);
  CHECK(stitch_cross_units(para("ends the sentence."), para("The next")) == StitchDecision::kKeep);
  CHECK(stitch_cross_units(para("the model scans the"), para("intermediate layer")) == StitchDecision::kMerge);
  CHECK(stitch_cross_units(para("no terminal"), para("Which starts upper")) == StitchDecision::kMerge);
  CHECK(stitch_cross_units(para("no terminal"), para("Capital word")) == StitchDecision::kKeep);
  CHECK(stitch_cross_units(para("\xE4\xB8\xAD\xE6\x96\x87"), para("\xE7\xBB\xA7\xE7\xBB\xAD")) ==
        StitchDecision::kMerge);
  CHECK(stitch_cross_units(para(""), para("text")) == StitchDecision::kKeep);
  CHECK(to_string(StitchDecision::kMergeDehyphenate) == "merge_dehyphenate");
}

TEST_CASE("stitch_document: links a paragraph continued in the next column") {
  DocumentIR doc;
  PageIR page = letter_page();
  page.paragraph.push_back(para("the model scans the", {72, 100, 290, 700}));
  page.paragraph.push_back(para("intermediate layer.", {320, 600, 540, 700}));
  page.paragraph.push_back(para("and then more", {320, 100, 540, 580}));
  doc.pages.push_back(page);
  PageIR next = letter_page();
  next.page_number = 1;
  next.paragraph.push_back(para("then the following page", {72, 600, 540, 700}));
  doc.pages.push_back(next);

  CHECK(stitch_document(doc) == 2);
  REQUIRE(doc.pages[0].paragraph[1].continuation_of);
  CHECK(*doc.pages[0].paragraph[1].continuation_of == ParagraphRef{0, 0});
  // Same column, directly below: not a boundary.
  CHECK_FALSE(doc.pages[0].paragraph[2].continuation_of);
  // Page boundary after a non-terminal tail.
  REQUIRE(doc.pages[1].paragraph[0].continuation_of);
  CHECK(*doc.pages[1].paragraph[0].continuation_of == ParagraphRef{0, 2});
  // Existing links are left alone.
  CHECK(stitch_document(doc) == 0);
  CHECK(validate_ir(doc).count("DanglingContinuation") == 0);
}
