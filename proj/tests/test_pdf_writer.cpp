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

#include <fstream>
#include <sstream>

#include "pdf_builder.hpp"
#include "relayout/formula_mask.hpp"
#include "relayout/ir_json.hpp"
#include "relayout/layout.hpp"
#include "relayout/pdf_reader.hpp"
#include "relayout/pdf_writer.hpp"
#include "relayout/translate.hpp"
#include "relayout/typeset.hpp"

using namespace relayout;
using doctest::Approx;

namespace {

const char* kResources = "<< /Font << /F1 5 0 R >> >>";
const char* kHelvetica = "<< /Type /Font /Subtype /Type1 /BaseFont /Helvetica /Encoding /WinAnsiEncoding >>";

std::string one_page(const std::string& content) {
  return testpdf::Builder::single_page(content, kResources, {{5, kHelvetica}});
}

std::string multi_page(const std::vector<std::string>& contents) {
  testpdf::Builder b;
  std::string kids;
  int num = 10;
  for (const auto& c : contents) {
    b.object(num, "<< /Type /Page /Parent 2 0 R /Resources " + std::string(kResources) + " /Contents " +
                      std::to_string(num + 1) + " 0 R >>");
    b.object(num + 1, testpdf::Builder::stream_body("", c));
    kids += std::to_string(num) + " 0 R ";
    num += 2;
  }
  b.object(1, "<< /Type /Catalog /Pages 2 0 R >>");
  b.object(2, "<< /Type /Pages /Kids [" + kids + "] /Count " + std::to_string(contents.size()) +
                  " /MediaBox [0 0 612 792] >>");
  b.object(5, kHelvetica);
  return b.build();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

DocumentIR translated(const std::string& pdf, std::string_view mode, const Detections* detections = nullptr) {
  DocumentIR doc = read_pdf(pdf).ir;
  analyze_document(doc, {}, detections);
  mask_document(doc);
  MockBackend backend(mode);
  TranslateConfig cfg;
  cfg.parallelism = 1;
  translate_document(doc, backend, cfg);
  return doc;
}

std::vector<TypesetPage> typeset_all(DocumentIR& doc, const FontMetrics& metrics = FontMetrics::bundled()) {
  std::vector<TypesetPage> out;
  for (auto& page : doc.pages) out.push_back(typeset_page(page, metrics));
  return out;
}

// Every q has a matching Q and every BT a matching ET, properly nested.
bool balanced(const std::string& content) {
  std::istringstream in(content);
  std::string tok;
  int q = 0;
  int bt = 0;
  while (in >> tok) {
    if (tok == "q") ++q;
    if (tok == "Q" && --q < 0) return false;
    if (tok == "BT") ++bt;
    if (tok == "ET" && --bt < 0) return false;
  }
  return q == 0 && bt == 0;
}

std::string page_text(const PageIR& page) {
  std::string s;
  for (const auto& c : page.pdf_character) s += c.char_unicode;
  return s;
}

void check_box(const Box& a, const Box& b, double tol) {
  CHECK(std::abs(a.x - b.x) <= tol);
  CHECK(std::abs(a.y - b.y) <= tol);
  CHECK(std::abs(a.x2 - b.x2) <= tol);
  CHECK(std::abs(a.y2 - b.y2) <= tol);
}

}  // namespace

TEST_CASE("embed_font: widths from the metrics table") {
  const std::string ttf = read_file(RELAYOUT_TEST_DATA "/mini1024.ttf");
  REQUIRE(!ttf.empty());
  const TrueTypeFont info = parse_truetype(ttf);
  CHECK(info.units_per_em == 1024);
  CHECK(info.postscript_name == "RelayoutTest-Regular");
  CHECK(info.ascent == 781);

  // Advances read back with fontTools: A 512, B 1024, U+4E2D 1024 units.
  const FontResource res = embed_font(ttf, {U'A', U'B', U'中'});
  CHECK(res.codes.at(U'A') == 2);
  CHECK(res.widths.at(2) == 500);
  CHECK(res.widths.at(3) == 1000);
  CHECK(res.widths.at(4) == 1000);
  CHECK(res.warnings.empty());
  CHECK(res.program == ttf);

  const FontResource missing = embed_font(ttf, {U'A', U'Z'});
  CHECK(missing.codes.at(U'Z') == 0);
  REQUIRE(missing.warnings.size() == 1);
  CHECK(missing.warnings[0].code == "MissingGlyph");

  const FontResource empty = embed_font(ttf, {});
  CHECK(empty.widths.empty());
  CHECK(empty.program.size() == ttf.size());

  CHECK_THROWS_AS(parse_truetype("not a font"), FontError);
  CHECK_THROWS_AS(parse_truetype(ttf.substr(0, 200)), FontError);

  const FontMetrics m = truetype_metrics(ttf);
  CHECK(m.advance(U'A') == 500);
  CHECK(m.advance(U' ') == 250);
}

TEST_CASE("render_page: lone rectangle is redrawn under its state") {
  const std::string pdf = one_page("q 0 0 1 rg 2 0 0 2 10 20 cm 100 100 50 20 re f Q");
  DocumentIR doc = translated(pdf, "identity");
  const auto typeset = typeset_all(doc);
  PageResources res(doc, TargetFont{});
  const std::string content = render_page(doc, doc.pages[0], typeset[0], res);
  CHECK(balanced(content));
  CHECK(content.find(" re\nf\n") != std::string::npos);

  const DocumentIR back = read_pdf(write_pdf(doc, typeset, TargetFont{})).ir;
  REQUIRE(back.pages.size() == 1);
  REQUIRE(back.pages[0].passthrough_ops.size() == 1);
  const PassthroughOp& op = back.pages[0].passthrough_ops[0];
  check_box(op.box, doc.pages[0].passthrough_ops[0].box, 0.05);
  CHECK(op.box.x == Approx(210));
  CHECK(back.states[static_cast<std::size_t>(op.state_id)].fill_color.components == std::vector<double>{0, 0, 1});
  CHECK(back.pages[0].pdf_character.empty());
}

TEST_CASE("render_page: clip chains and images survive re-rendering") {
  const std::string pdf = testpdf::Builder::single_page(
      "q 50 50 300 300 re W n q 0.5 0 0 0.5 100 100 cm 0 0 200 200 re W* n "
      "q 40 0 0 30 10 10 cm /Im1 Do Q 1 0 0 RG 0 0 m 100 100 l S Q Q",
      "<< /XObject << /Im1 6 0 R >> >>",
      {{6, testpdf::Builder::stream_body("/Type /XObject /Subtype /Image /Width 2 /Height 1 /BitsPerComponent 8 "
                                         "/ColorSpace /DeviceGray",
                                         std::string("\x00\xff", 2))}});
  DocumentIR doc = translated(pdf, "identity");
  const auto typeset = typeset_all(doc);
  const DocumentIR back = read_pdf(write_pdf(doc, typeset, TargetFont{})).ir;
  const auto& src = doc.pages[0].passthrough_ops;
  const auto& out = back.pages[0].passthrough_ops;
  std::vector<const PassthroughOp*> src_drawn, out_drawn;
  for (const auto& op : src) {
    if (op.kind != PassthroughKind::kClip) src_drawn.push_back(&op);
  }
  for (const auto& op : out) {
    if (op.kind != PassthroughKind::kClip) out_drawn.push_back(&op);
  }
  REQUIRE(src_drawn.size() == 2);
  REQUIRE(out_drawn.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(out_drawn[i]->kind == src_drawn[i]->kind);
    check_box(out_drawn[i]->box, src_drawn[i]->box, 0.05);
    // Same number of nested clips above each op.
    auto depth = [](const PageIR& page, int clip) {
      int n = 0;
      for (; clip; ++n) clip = page.find_op(clip)->parent_clip;
      return n;
    };
    CHECK(depth(back.pages[0], out_drawn[i]->parent_clip) == depth(doc.pages[0], src_drawn[i]->parent_clip));
  }
  REQUIRE(out_drawn[0]->image.has_value());
  CHECK(out_drawn[0]->image->data == std::string("\x00\xff", 2));
  const PassthroughOp* inner = back.pages[0].find_op(out_drawn[0]->parent_clip);
  REQUIRE(inner != nullptr);
  CHECK(inner->clip_rule == "W*");
  check_box(inner->box, Box{100, 100, 200, 200}, 0.05);
}

TEST_CASE("render_page: scaled paragraphs use the effective size") {
  DocumentIR doc = translated(one_page("BT /F1 10 Tf 72 700 Td (Scaled text) Tj ET"), "identity");
  TypesetPage tp;
  TypesetParagraph para;
  para.index = 0;
  para.fit.gamma = 0.85;
  para.placed.font_id = "T1";
  const double size = 10 * 0.85;
  para.placed.glyphs.push_back({U'S', 72, 700, size, {72, 700 - 0.207 * size, 72 + 0.667 * size, 700 + 0.718 * size}});
  tp.paragraphs.push_back(para);
  doc.pages[0].paragraph[0].scale = ScaleRecord{0.85, 4, FitStatus::kFit};
  PageResources res(doc, TargetFont{});
  const std::string content = render_page(doc, doc.pages[0], tp, res);
  CHECK(content.find("/T1 8.5 Tf") != std::string::npos);
  const DocumentIR back = read_pdf(assemble_document({{doc.pages[0].media_box, content}}, res)).ir;
  REQUIRE(back.pages[0].pdf_character.size() == 1);
  CHECK(back.pages[0].pdf_character[0].font_size == Approx(8.5));
  CHECK(back.pages[0].pdf_character[0].char_unicode == "S");

  doc.pages[0].paragraph[0].scale.reset();
  try {
    render_page(doc, doc.pages[0], tp, res);
    FAIL("expected an untypeset paragraph error");
  } catch (const RenderError& e) {
    CHECK(e.code() == RenderError::Code::kUntypesetParagraph);
  }
}

TEST_CASE("render_page: restored formula keeps its internal offsets") {
  const std::string pdf = one_page(
      "BT /F1 10 Tf 72 700 Td (where the value) Tj ET "
      "BT /F1 10 Tf 150 706 Td (a) Tj ET BT /F1 10 Tf 150 694 Td (b) Tj ET 0.5 w 149 703 m 158 703 l S "
      "BT /F1 10 Tf 165 700 Td (holds for every case) Tj ET "
      "BT /F1 10 Tf 72 688 Td (and the text goes on for a while) Tj ET");
  Detections det;
  det[0] = {{1, "body_text", {70, 684, 330, 716}, 0.9}, {2, "formula_region", {147, 692, 160, 716}, 0.9}};
  DocumentIR doc = translated(pdf, "bracket", &det);
  const Paragraph& p = doc.pages[0].paragraph[0];
  CHECK(p.input == "where the value {v1} holds for every case and the text goes on for a while");
  REQUIRE(p.placeholders.size() == 1);
  CHECK(p.placeholders[0].type == PlaceholderType::kFormula);
  CHECK(p.placeholders[0].source_ops.size() == 1);
  CHECK(p.output.find("{v1}") != std::string::npos);

  auto typeset = typeset_all(doc);
  const TypesetParagraph& tp = typeset[0].paragraphs[0];
  REQUIRE(tp.placed.objects.size() == 1);
  const PlacedObject& obj = tp.placed.objects[0];
  const FormulaRecord& rec = tp.records.at(1);
  const auto expected = reconstruct(doc.pages[0], rec, obj.x, obj.baseline, obj.gamma);
  REQUIRE(expected.size() == 2);
  CHECK(std::abs(obj.x - rec.anchor.x) > 1.0);  // the run actually moved

  const DocumentIR back = read_pdf(write_pdf(doc, typeset, TargetFont{})).ir;
  const auto& chars = back.pages[0].pdf_character;
  REQUIRE(chars.size() >= 2);
  // Restored units are drawn after the paragraph text.
  for (std::size_t k = 0; k < 2; ++k) {
    const CharRecord& c = chars[chars.size() - 2 + k];
    CHECK(c.char_unicode == doc.pages[0].find_char(expected[k].unit)->char_unicode);
    check_box(c.box, expected[k].box, 0.05);
    CHECK(c.baseline_y == Approx(expected[k].baseline).epsilon(1e-4));
  }
  const PassthroughOp* bar = nullptr;
  for (const auto& op : back.pages[0].passthrough_ops) {
    if (op.kind == PassthroughKind::kPath) bar = &op;
  }
  REQUIRE(bar != nullptr);
  const Matrix m = relocation(rec, obj.x, obj.baseline, obj.gamma);
  check_box(bar->box, transform_box(m, doc.pages[0].find_op(p.placeholders[0].source_ops[0])->box), 0.05);
}

TEST_CASE("write_pdf: mono and dual page order, strict re-read") {
  const std::string pdf = multi_page({"BT /F1 10 Tf 72 700 Td (Page one text) Tj ET",
                                      "BT /F1 10 Tf 72 700 Td (Page two text) Tj ET",
                                      "BT /F1 10 Tf 72 700 Td (Page three text) Tj ET"});
  DocumentIR doc = translated(pdf, "bracket");
  const auto typeset = typeset_all(doc);
  Warnings warnings;
  const std::string mono = write_pdf(doc, typeset, TargetFont{}, {}, &warnings);
  const ReadResult mono_back = read_pdf(mono);
  REQUIRE(mono_back.ir.pages.size() == 3);
  CHECK(validate_ir(mono_back.ir).ok());
  CHECK(page_text(mono_back.ir.pages[1]) == "⟦Page⟧⟦two⟧⟦text⟧");
  CHECK(mono.rfind("%PDF-1.7", 0) == 0);
  CHECK(write_pdf(doc, typeset, TargetFont{}) == mono);

  WriteOptions dual;
  dual.mode = OutputMode::kDualAlternating;
  dual.compress = true;
  const DocumentIR dual_back = read_pdf(write_pdf(doc, typeset, TargetFont{}, dual)).ir;
  REQUIRE(dual_back.pages.size() == 6);
  const char* words[] = {"one", "two", "three"};
  for (int i = 0; i < 3; ++i) {
    const std::string source = page_text(dual_back.pages[static_cast<std::size_t>(2 * i)]);
    const std::string target = page_text(dual_back.pages[static_cast<std::size_t>(2 * i + 1)]);
    CHECK(source.find(words[i]) != std::string::npos);
    CHECK(source.find("⟦") == std::string::npos);
    CHECK(target.find(std::string("⟦") + words[i] + "⟧") != std::string::npos);
  }
  // Source pages reproduce every glyph box.
  for (std::size_t k = 0; k < doc.pages[0].pdf_character.size(); ++k) {
    check_box(dual_back.pages[0].pdf_character[k].box, doc.pages[0].pdf_character[k].box, 0.01);
  }

  for (std::size_t i = 0; i < doc.pages.size(); ++i) {
    PageResources res(doc, TargetFont{});
    CHECK(balanced(render_page(doc, doc.pages[i], typeset[i], res)));
    CHECK(balanced(render_source_page(doc, doc.pages[i], res)));
  }

  PageResources res(doc, TargetFont{});
  const std::string empty = assemble_document({}, res);
  CHECK(read_pdf(empty).ir.pages.empty());
}

TEST_CASE("write_pdf: embedded target font round-trips text") {
  const std::string ttf = read_file(RELAYOUT_TEST_DATA "/mini1024.ttf");
  TargetFont font;
  font.program = ttf;
  font.metrics = truetype_metrics(ttf);
  DocumentIR doc = translated(one_page("BT /F1 10 Tf 72 700 Td (AB BA) Tj ET"), "identity");
  const auto typeset = typeset_all(doc, font.metrics);
  Warnings warnings;
  const std::string out = write_pdf(doc, typeset, font, {}, &warnings);
  CHECK(warnings.empty());
  CHECK(out.find("/FontFile2") != std::string::npos);
  const DocumentIR back = read_pdf(out).ir;
  CHECK(page_text(back.pages[0]) == "ABBA");
  const auto& c = back.pages[0].pdf_character;
  REQUIRE(c.size() == 4);
  // The test font is taller than the source font, so the paragraph shrinks.
  const double size = c[0].font_size;
  CHECK(size < 10.0);
  CHECK(size == Approx(10.0 * doc.pages[0].paragraph[0].scale->gamma));
  CHECK(c[0].box.width() == Approx(0.5 * size));
  CHECK(c[1].box.width() == Approx(1.0 * size));
  CHECK(c[0].box.y2 - c[0].baseline_y == Approx(0.781 * size));
}
