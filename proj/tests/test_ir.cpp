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

#include <random>

#include "doctest.h"
#include "relayout/errors.hpp"
#include "relayout/ir_json.hpp"

using namespace relayout;

namespace {

DocumentIR citation_document() {
  DocumentIR doc;
  FontRecord font;
  font.font_id = "F189";
  font.name = "KYQJPC+LinBiolinumTB";
  font.ascent = 693;
  font.descent = -234;
  font.widths = {{49, 500.0}};
  doc.fonts.push_back(font);
  GraphicsState gs;
  gs.font_id = "F189";
  gs.font_size = 7.97;
  doc.states.push_back(gs);

  PageIR page;
  page.media_box = {0, 0, 612, 792};
  page.page_layout.push_back({1, "page_header_hybrid", {79, 653, 441, 663}, 1.0});
  page.pdf_font.push_back("F189");
  page.pdf_character.push_back({"1", "F189", 7.97, {45.6, 646.5, 49.4, 654.5}, 1, 648.3, 0});

  Paragraph p;
  p.input = "DeepWalk {v1}APP {v2}InfoWalk{v3}";
  p.output = p.input;
  p.pdf_unicode = "DeepWalk [112], APP [197], InfoWalk [200]";
  p.layout_label = "table_cell_hybrid";
  p.placeholders.push_back({PlaceholderType::kCitationMarker, 1, "{v1}", "[112],", "", " ", {}, {}});
  p.placeholders.push_back({PlaceholderType::kCitationMarker, 2, "{v2}", "[197],", "", " ", {}, {}});
  p.placeholders.push_back({PlaceholderType::kCitationMarker, 3, "{v3}", "[200]", " ", "", {}, {}});
  p.box = {79, 653, 441, 663};
  page.paragraph.push_back(p);
  doc.pages.push_back(page);
  return doc;
}

}  // namespace

TEST_CASE("serialize_ir: empty document") {
  const std::string text = serialize_ir(DocumentIR{});
  CHECK(text.find("\"pages\": []") != std::string::npos);
  CHECK(text.find("\"fonts\": []") != std::string::npos);
  CHECK(text.find("\"states\": []") != std::string::npos);
  CHECK(text.find("\"ir_version\": \"1\"") != std::string::npos);
  CHECK(deserialize_ir(text) == DocumentIR{});
}

TEST_CASE("serialize_ir: citation paragraph block") {
  const std::string text = serialize_ir(citation_document());
  CHECK(text.find("\"placeholder\": \"{v1}\"") != std::string::npos);
  CHECK(text.find("\"source_chars\": \"[112],\"") != std::string::npos);
  for (const char* key : {"\"page_number\"", "\"unit\": \"point\"", "\"page_layout\"",
                          "\"pdf_font\"", "\"pdf_character\"", "\"paragraph\"",
                          "\"placeholders\"", "\"input\"", "\"output\"", "\"pdf_unicode\""}) {
    CHECK_MESSAGE(text.find(key) != std::string::npos, key);
  }
  // Keys follow schema order inside a page.
  CHECK(text.find("\"page_number\"") < text.find("\"page_layout\""));
  CHECK(text.find("\"page_layout\"") < text.find("\"pdf_font\""));
  CHECK(text.find("\"pdf_character\"") < text.find("\"paragraph\""));
}

TEST_CASE("serialize_ir: round trip is byte identical and structural") {
  const auto doc = citation_document();
  const std::string first = serialize_ir(doc);
  const DocumentIR back = deserialize_ir(first);
  CHECK(back == doc);
  CHECK(serialize_ir(back) == first);
  CHECK(serialize_ir(doc) == first);
}

TEST_CASE("deserialize_ir: minimal snippet in an envelope") {
  const std::string text = R"({
  "ir_version": "1",
  "pages": [{
    "page_number": 0,
    "unit": "point",
    "page_layout": [
      {"id": 1, "class_name": "page_header_hybrid",
       "box": {"x": 79, "y": 653, "x2": 441, "y2": 663}, "conf": 1.0}
    ],
    "pdf_font": [
      {"font_id": "F189", "name": "KYQJPC+LinBiolinumTB", "ascent": 693, "descent": -234}
    ],
    "pdf_character": [
      {"char_unicode": "1", "font_size": 7.97,
       "box": {"x": 45.6, "y": 646.5, "x2": 49.4, "y2": 654.5}, "render_order": 1}
    ],
    "paragraph": [
      {"input": "DeepWalk {v1}APP {v2}InfoWalk{v3}",
       "output": "DeepWalk {v1}APP {v2}InfoWalk{v3}",
       "pdf_unicode": "DeepWalk [112], APP [197], InfoWalk [200]",
       "layout_label": "table_cell_hybrid",
       "placeholders": [
         {"type": "citation_marker", "id": 1, "placeholder": "{v1}", "source_chars": "[112],"}
       ]}
    ]
  }]
})";
  const DocumentIR doc = deserialize_ir(text);
  REQUIRE(doc.pages.size() == 1);
  REQUIRE(doc.pages[0].paragraph.size() == 1);
  const auto& p = doc.pages[0].paragraph[0];
  REQUIRE(p.placeholders.size() == 1);
  CHECK(p.placeholders[0].type == PlaceholderType::kCitationMarker);
  CHECK(p.placeholders[0].id == 1);
  CHECK(p.placeholders[0].source_chars == "[112],");
  REQUIRE(doc.fonts.size() == 1);
  CHECK(doc.fonts[0].ascent == 693);
  CHECK(doc.pages[0].pdf_font == std::vector<std::string>{"F189"});
}

TEST_CASE("deserialize_ir: schema errors carry the field path") {
  std::string text = serialize_ir(citation_document());
  SUBCASE("conf out of range") {
    const auto pos = text.find("\"conf\": 1.0");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 11, "\"conf\": 1.5");
    try {
      deserialize_ir(text);
      FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
      CHECK(e.path() == "/pages/0/page_layout/0/conf");
    }
  }
  SUBCASE("unknown field is strict by default and tolerated when lenient") {
    const auto pos = text.find("\"unit\": \"point\"");
    text.insert(pos, "\"rotation\": 90, ");
    CHECK_THROWS_AS(deserialize_ir(text), SchemaError);
    try {
      deserialize_ir(text);
    } catch (const SchemaError& e) {
      CHECK(e.path() == "/pages/0/rotation");
    }
    CHECK(deserialize_ir(text, {.lenient = true}) == citation_document());
  }
  SUBCASE("missing required field") {
    const auto pos = text.find("\"ir_version\": \"1\",");
    text.erase(pos, std::string("\"ir_version\": \"1\",").size());
    CHECK_THROWS_AS(deserialize_ir(text), SchemaError);
  }
  SUBCASE("not json") { CHECK_THROWS_AS(deserialize_ir("{nope"), SchemaError); }
}

TEST_CASE("validate_ir") {
  SUBCASE("well-formed single page document") {
    const auto report = validate_ir(citation_document());
    for (const auto& v : report.violations) MESSAGE(v.code << " " << v.location);
    CHECK(report.ok());
  }
  SUBCASE("dangling font reference") {
    auto doc = citation_document();
    doc.pages[0].pdf_character[0].font_id = "F9";
    const auto report = validate_ir(doc);
    CHECK(report.violations.size() == 1);
    CHECK(report.count("DanglingFontRef") == 1);
  }
  SUBCASE("malformed box") {
    auto doc = citation_document();
    doc.pages[0].page_layout[0].box = {441, 653, 79, 663};
    const auto report = validate_ir(doc);
    CHECK(report.violations.size() == 1);
    CHECK(report.count("MalformedBox") == 1);
  }
  SUBCASE("paragraph token without record") {
    auto doc = citation_document();
    doc.pages[0].paragraph[0].placeholders.pop_back();
    const auto report = validate_ir(doc);
    CHECK(report.count("MissingPlaceholderRecord") == 1);
    CHECK(report.count("UnmaskMismatch") == 1);
  }
  SUBCASE("page numbers contiguous") {
    auto doc = citation_document();
    doc.pages[0].page_number = 3;
    CHECK(validate_ir(doc).count("PageNumberMismatch") == 1);
  }
}

TEST_CASE("serialize_ir: random documents round trip") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coord(-1000.0, 1000.0);
  std::uniform_int_distribution<int> small(0, 4);
  for (int trial = 0; trial < 200; ++trial) {
    DocumentIR doc;
    doc.fonts.push_back({"F1", "Helvetica", 718, -207, {{65, 667.0}}, 556, false});
    const int states = 1 + small(rng);
    for (int s = 0; s < states; ++s) {
      GraphicsState gs;
      gs.ctm = Matrix(coord(rng), coord(rng), coord(rng), coord(rng), coord(rng), coord(rng));
      gs.font_size = std::abs(coord(rng));
      gs.fill_color = {"rgb", {0.1, 0.2, coord(rng)}};
      doc.states.push_back(gs);
    }
    const int pages = small(rng);
    for (int pi = 0; pi < pages; ++pi) {
      PageIR page;
      page.page_number = pi;
      const double x = coord(rng);
      const double y = coord(rng);
      page.media_box = {x, y, x + 612.25, y + 792.125};
      const int nchars = small(rng) * 3;
      for (int c = 0; c < nchars; ++c) {
        const double cx = coord(rng);
        const double cy = coord(rng);
        page.pdf_character.push_back(
            {"\xe4\xb8\xad", "F1", 9.5, {cx, cy, cx + 4.25, cy + 9.0}, c + 1, cy + 2, 0});
      }
      Paragraph p;
      p.input = "a {v1} b";
      p.output = "x {v1}";
      p.pdf_unicode = "a [1] b";
      p.layout_label = "body_text";
      p.placeholders.push_back({PlaceholderType::kCitationMarker, 1, "{v1}", "[1]", "", "", {1}, {}});
      p.scale = ScaleRecord{0.85, 4, FitStatus::kFit};
      if (pi > 0) p.continuation_of = ParagraphRef{pi - 1, 0};
      page.paragraph.push_back(p);
      PassthroughOp op;
      op.id = 1;
      op.path.push_back({"re", {coord(rng), coord(rng), 10, 20}});
      op.paint = "f";
      op.box = {0, 0, 10, 20};
      page.passthrough_ops.push_back(op);
      PassthroughOp image;
      image.id = 2;
      image.kind = PassthroughKind::kImage;
      image.image = ImageData{2, 2, 8, "DeviceGray", "", false, std::string("\x00\xff\x7f\x01", 4)};
      page.passthrough_ops.push_back(image);
      doc.pages.push_back(page);
    }
    const auto text = serialize_ir(doc);
    const auto back = deserialize_ir(text);
    REQUIRE(back == doc);
    REQUIRE(serialize_ir(back) == text);
  }
}
