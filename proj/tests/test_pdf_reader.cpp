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

#include <cmath>
#include <random>

#include "doctest.h"
#include "pdf_builder.hpp"
#include "relayout/codec.hpp"
#include "relayout/pdf/document.hpp"
#include "relayout/pdf/font.hpp"
#include "relayout/pdf_reader.hpp"

using namespace relayout;
using doctest::Approx;

namespace {

const char* kHelvetica = "<< /Font << /F1 << /Type /Font /Subtype /Type1 /BaseFont /Helvetica >> >> >>";

void check_box(const Box& actual, const Box& expected, double eps = 1e-9) {
  CHECK(actual.x == Approx(expected.x).epsilon(eps));
  CHECK(actual.y == Approx(expected.y).epsilon(eps));
  CHECK(actual.x2 == Approx(expected.x2).epsilon(eps));
  CHECK(actual.y2 == Approx(expected.y2).epsilon(eps));
}

// Independent oracle: row-vector product written out by hand.
std::array<double, 2> hand_apply(const std::array<double, 6>& m, double x, double y) {
  return {m[0] * x + m[2] * y + m[4], m[1] * x + m[3] * y + m[5]};
}

std::array<double, 6> hand_multiply(const std::array<double, 6>& l, const std::array<double, 6>& r) {
  return {l[0] * r[0] + l[1] * r[2],        l[0] * r[1] + l[1] * r[3],
          l[2] * r[0] + l[3] * r[2],        l[2] * r[1] + l[3] * r[3],
          l[4] * r[0] + l[5] * r[2] + r[4], l[4] * r[1] + l[5] * r[3] + r[5]};
}

PageIR interpret(const std::string& content, const std::string& resources = kHelvetica, bool lenient = false) {
  DocumentIR doc;
  Warnings warnings;
  return interpret_content(content, resources, doc, {.lenient = lenient}, warnings);
}

}  // namespace

TEST_CASE("compose_matrix") {
  const Matrix ctm(2, 0.5, -0.25, 3, 7, -4);
  CHECK(compose_matrix(Matrix::identity(), ctm) == ctm);

  const auto p = apply(compose_matrix(Matrix::translation(10, 20), Matrix::identity()), 5.0, 5.0);
  CHECK(p.x() == 15);
  CHECK(p.y() == 25);

  const auto q = apply(compose_matrix(Matrix::translation(10, 20), Matrix::scaling(2, 2)), 5.0, 5.0);
  CHECK(q.x() == 30);
  CHECK(q.y() == 50);

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int i = 0; i < 100; ++i) {
    const std::array<double, 6> a{u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
    const std::array<double, 6> b{u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
    const Matrix m(a[0], a[1], a[2], a[3], a[4], a[5]);
    const Matrix c(b[0], b[1], b[2], b[3], b[4], b[5]);
    const double x = u(rng), y = u(rng);
    const auto inner = hand_apply(a, x, y);
    const auto expected = hand_apply(b, inner[0], inner[1]);
    const auto got = apply(compose_matrix(m, c), x, y);
    CHECK(got.x() == Approx(expected[0]));
    CHECK(got.y() == Approx(expected[1]));
  }
}

TEST_CASE("char_box") {
  FontRecord helvetica{"F1", "Helvetica", 718, -207, {{'H', 722.0}}, 0, false};
  GraphicsState gs;
  gs.font_size = 12;

  const auto g = char_box('H', helvetica, gs, Matrix::translation(72, 700));
  check_box(g.box, {72, 697.516, 80.664, 708.616});
  CHECK(g.baseline_y == Approx(700));
  CHECK(g.effective_size == Approx(12));

  GraphicsState zero = gs;
  zero.font_size = 0;
  const auto z = char_box('H', helvetica, zero, Matrix::translation(72, 700));
  check_box(z.box, {72, 700, 72, 700});

  GraphicsState doubled = gs;
  doubled.ctm = Matrix(2, 0, 0, 2, 0, 0);
  const auto d = char_box('H', helvetica, doubled, Matrix::translation(72, 700));
  check_box(d.box, {144, 1395.032, 161.328, 1417.232});
  CHECK(d.effective_size == Approx(24));

  Warnings warnings;
  helvetica.default_width = 500;
  const auto m = char_box('Q', helvetica, gs, Matrix(), &warnings);
  CHECK(m.advance == Approx(6));
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].code == "MissingWidth");
}

TEST_CASE("interpret_content: text") {
  SUBCASE("empty stream") {
    const auto page = interpret("");
    CHECK(page.pdf_character.empty());
    CHECK(page.passthrough_ops.empty());
  }
  SUBCASE("two glyphs with standard metrics") {
    const auto page = interpret("BT /F1 12 Tf 72 700 Td (Hi) Tj ET");
    REQUIRE(page.pdf_character.size() == 2);
    const auto& h = page.pdf_character[0];
    const auto& i = page.pdf_character[1];
    CHECK(h.char_unicode == "H");
    CHECK(i.char_unicode == "i");
    CHECK(h.render_order == 1);
    CHECK(i.render_order == 2);
    CHECK(h.box.width() == Approx(8.664));
    CHECK(i.box.width() == Approx(2.664));
    CHECK(i.box.x == Approx(80.664));
    check_box(h.box, {72, 697.516, 80.664, 708.616});
  }
  SUBCASE("TJ adjustments, spacing and leading") {
    const auto page = interpret("BT /F1 10 Tf 14 TL 2 Tc 5 Tw 0 0 Td [(a) -1000 (b)] TJ ( c) ' ET");
    REQUIRE(page.pdf_character.size() == 4);
    // a: 556 -> 5.56 + Tc 2, then -(-1000)/1000*10 = +10
    CHECK(page.pdf_character[1].box.x == Approx(5.56 + 2 + 10));
    // ' moves to the next line.
    CHECK(page.pdf_character[2].baseline_y == Approx(-14));
    // word spacing applies after the space glyph
    CHECK(page.pdf_character[3].box.x == Approx(2.78 + 2 + 5));
  }
  SUBCASE("Tm with scale gives effective size") {
    const auto page = interpret("BT /F1 1 Tf 12 0 0 12 72 700 Tm (H) Tj ET");
    REQUIRE(page.pdf_character.size() == 1);
    CHECK(page.pdf_character[0].font_size == Approx(12));
    check_box(page.pdf_character[0].box, {72, 697.516, 80.664, 708.616});
  }
}

TEST_CASE("interpret_content: q/Q restore state exactly") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-3, 3);
  const std::vector<std::string> ops = {"cm", "Tc", "Tw", "Tz", "TL", "Ts", "w", "rg", "G", "Tf"};
  for (int trial = 0; trial < 50; ++trial) {
    std::string inner;
    for (int k = 0; k < 6; ++k) {
      const auto& op = ops[rng() % ops.size()];
      char buf[160];
      if (op == "cm") {
        std::snprintf(buf, sizeof buf, "%.3f 0 0 %.3f %.3f %.3f cm ", 1 + std::abs(u(rng)), 1 + std::abs(u(rng)),
                      u(rng), u(rng));
      } else if (op == "rg") {
        std::snprintf(buf, sizeof buf, "0.1 0.2 0.3 rg ");
      } else if (op == "G") {
        std::snprintf(buf, sizeof buf, "0.5 G ");
      } else if (op == "Tf") {
        std::snprintf(buf, sizeof buf, "/F1 %.2f Tf ", 5 + std::abs(u(rng)));
      } else {
        std::snprintf(buf, sizeof buf, "%.3f %s ", u(rng), op.c_str());
      }
      inner += buf;
    }
    const std::string content = "2 0 0 2 5 5 cm 0.7 g BT /F1 9 Tf 1 1 Td (a) Tj ET q " + inner +
                                " BT /F1 7 Tf (b) Tj ET Q BT /F1 9 Tf (c) Tj ET";
    DocumentIR doc;
    Warnings warnings;
    const auto page = interpret_content(content, kHelvetica, doc, {}, warnings);
    REQUIRE(page.pdf_character.size() == 3);
    const auto& before = doc.states[static_cast<std::size_t>(page.pdf_character[0].state_id)];
    const auto& after = doc.states[static_cast<std::size_t>(page.pdf_character[2].state_id)];
    CHECK(before == after);
  }
}

TEST_CASE("interpret_content: paths and clips") {
  const auto page = interpret("0 0 1 rg 10 10 100 50 re f 0 0 200 200 re W n BT /F1 12 Tf 20 20 Td (x) Tj ET "
                              "q 1 0 0 1 5 5 cm 0 0 m 10 0 l 10 10 20 20 30 30 c h S Q");
  REQUIRE(page.passthrough_ops.size() == 3);
  const auto& fill = page.passthrough_ops[0];
  CHECK(fill.kind == PassthroughKind::kPath);
  CHECK(fill.paint == "f");
  check_box(fill.box, {10, 10, 110, 60});
  const auto& clip = page.passthrough_ops[1];
  CHECK(clip.kind == PassthroughKind::kClip);
  CHECK(clip.clip_rule == "W");
  REQUIRE(page.pdf_character.size() == 1);
  DocumentIR doc;
  Warnings w;
  const auto again = interpret_content("0 0 200 200 re W n BT /F1 12 Tf (x) Tj ET", kHelvetica, doc, {}, w);
  CHECK(doc.states[static_cast<std::size_t>(again.pdf_character[0].state_id)].clip_id == again.passthrough_ops[0].id);
  const auto& stroke = page.passthrough_ops[2];
  CHECK(stroke.paint == "S");
  CHECK(stroke.after_render_order == 1);
  check_box(stroke.box, {5, 5, 35, 35});
  CHECK(stroke.parent_clip == clip.id);
}

TEST_CASE("interpret_content: unsupported operators") {
  const std::string content = "BT /F1 12 Tf (a) Tj ET /Sh0 sh BT /F1 12 Tf (b) Tj ET";
  try {
    interpret(content);
    FAIL("expected PdfError");
  } catch (const PdfError& e) {
    CHECK(e.code() == PdfError::Code::kUnsupportedOperator);
    CHECK(e.offset() == static_cast<std::int64_t>(content.find("sh")));
  }
  DocumentIR doc;
  Warnings warnings;
  const auto page = interpret_content(content, kHelvetica, doc, {.lenient = true}, warnings);
  CHECK(page.pdf_character.size() == 2);
  bool warned = false;
  for (const auto& w : warnings) warned |= w.code == "UnsupportedOperator";
  CHECK(warned);
}

TEST_CASE("read_pdf: form XObjects") {
  const std::string font = "<< /Type /Font /Subtype /Type1 /BaseFont /Helvetica >>";
  SUBCASE("scaled form matches the plain page box") {
    const auto pdf = testpdf::Builder::single_page(
        "q 0.5 0 0 0.5 100 100 cm /X1 Do Q", "<< /XObject << /X1 5 0 R >> /Font << /F1 6 0 R >> >>",
        {{5, testpdf::Builder::stream_body("/Type /XObject /Subtype /Form /BBox [0 0 612 792]",
                                           "BT /F1 12 Tf 72 700 Td (H) Tj ET")},
         {6, font}});
    const auto result = read_pdf(pdf);
    REQUIRE(result.ir.pages.size() == 1);
    REQUIRE(result.ir.pages[0].pdf_character.size() == 1);
    const Box plain{72, 697.516, 80.664, 708.616};
    check_box(result.ir.pages[0].pdf_character[0].box,
              {plain.x * 0.5 + 100, plain.y * 0.5 + 100, plain.x2 * 0.5 + 100, plain.y2 * 0.5 + 100});
    CHECK(result.ir.pages[0].pdf_character[0].font_size == Approx(6));
  }
  SUBCASE("nested forms flatten to the composed matrix") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.3, 2.0);
    std::uniform_real_distribution<double> t(-50, 50);
    for (int trial = 0; trial < 10; ++trial) {
      const std::array<double, 6> m1{u(rng), 0.1, -0.2, u(rng), t(rng), t(rng)};
      const std::array<double, 6> m2{u(rng), 0, 0.3, u(rng), t(rng), t(rng)};
      auto fmt = [](const std::array<double, 6>& m) {
        char buf[200];
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g %.17g %.17g", m[0], m[1], m[2], m[3], m[4], m[5]);
        return std::string(buf);
      };
      const std::string glyph = "BT /F1 10 Tf 30 40 Td (W) Tj ET";
      const auto nested = testpdf::Builder::single_page(
          "/X1 Do", "<< /XObject << /X1 5 0 R >> /Font << /F1 6 0 R >> >>",
          {{5, testpdf::Builder::stream_body("/Subtype /Form /Matrix [" + fmt(m1) +
                                                 "] /Resources << /XObject << /X2 7 0 R >> >>",
                                             "/X2 Do")},
           {6, font},
           {7, testpdf::Builder::stream_body("/Subtype /Form /Matrix [" + fmt(m2) +
                                                 "] /Resources << /Font << /F1 6 0 R >> >>",
                                             glyph)}});
      const auto flat = testpdf::Builder::single_page(fmt(hand_multiply(m2, m1)) + " cm " + glyph,
                                                      "<< /Font << /F1 6 0 R >> >>", {{6, font}});
      const auto a = read_pdf(nested).ir.pages.at(0).pdf_character.at(0);
      const auto b = read_pdf(flat).ir.pages.at(0).pdf_character.at(0);
      check_box(a.box, b.box, 1e-6);
      CHECK(a.font_size == Approx(b.font_size));
    }
  }
  SUBCASE("cycles are rejected") {
    const auto pdf = testpdf::Builder::single_page(
        "/X1 Do", "<< /XObject << /X1 5 0 R >> >>",
        {{5, testpdf::Builder::stream_body("/Subtype /Form /Resources << /XObject << /X2 6 0 R >> >>", "/X2 Do")},
         {6, testpdf::Builder::stream_body("/Subtype /Form /Resources << /XObject << /X1 5 0 R >> >>", "/X1 Do")}});
    try {
      read_pdf(pdf);
      FAIL("expected CyclicXObject");
    } catch (const PdfError& e) {
      CHECK(e.code() == PdfError::Code::kCyclicXObject);
    }
  }
  SUBCASE("depth limit") {
    std::map<int, std::string> extra;
    const int levels = 20;
    for (int i = 0; i < levels; ++i) {
      const int num = 10 + i;
      const std::string body = i + 1 < levels ? "/Y Do" : "";
      extra[num] = testpdf::Builder::stream_body(
          "/Subtype /Form /Resources << /XObject << /Y " + std::to_string(num + 1) + " 0 R >> >>", body);
    }
    const auto pdf = testpdf::Builder::single_page("/Y Do", "<< /XObject << /Y 10 0 R >> >>", extra);
    try {
      read_pdf(pdf);
      FAIL("expected DepthExceeded");
    } catch (const PdfError& e) {
      CHECK(e.code() == PdfError::Code::kDepthExceeded);
    }
    CHECK_NOTHROW(read_pdf(pdf, {.depth_limit = 32}));
  }
}

TEST_CASE("read_pdf: composite font with ToUnicode") {
  const std::string cmap =
      "/CIDInit /ProcSet findresource begin 12 dict begin begincmap\n"
      "1 begincodespacerange <0000> <FFFF> endcodespacerange\n"
      "1 beginbfchar <0001> <4E2D> endbfchar\n"
      "1 beginbfrange <0002> <0003> <0041> endbfrange\n"
      "endcmap CMapName currentdict /CMap defineresource pop end end";
  const auto pdf = testpdf::Builder::single_page(
      "BT /F1 12 Tf 100 100 Td <000100020003> Tj ET", "<< /Font << /F1 5 0 R >> >>",
      {{5, "<< /Type /Font /Subtype /Type0 /BaseFont /Test-CJK /Encoding /Identity-H /DescendantFonts [6 0 R] "
           "/ToUnicode 8 0 R >>"},
       {6, "<< /Type /Font /Subtype /CIDFontType2 /BaseFont /Test-CJK /DW 1000 /W [1 [1000] 2 3 500] "
           "/FontDescriptor 7 0 R >>"},
       {7, "<< /Type /FontDescriptor /FontName /Test-CJK /Ascent 880 /Descent -120 /Flags 4 >>"},
       {8, testpdf::Builder::stream_body("", cmap)}});
  const auto result = read_pdf(pdf);
  const auto& chars = result.ir.pages.at(0).pdf_character;
  REQUIRE(chars.size() == 3);
  CHECK(chars[0].char_unicode == "\xe4\xb8\xad");
  CHECK(chars[1].char_unicode == "A");
  CHECK(chars[2].char_unicode == "B");
  CHECK(chars[0].box.width() == Approx(12));
  CHECK(chars[1].box.width() == Approx(6));
  CHECK(chars[0].box.y2 == Approx(100 + 0.880 * 12));
  const auto* font = result.ir.find_font("F5");
  REQUIRE(font);
  CHECK(font->ascent == 880);
  CHECK(font->descent == -120);
  CHECK(font->widths.at(1) == 1000);
}

TEST_CASE("read_pdf: missing unicode mapping yields replacement and a warning") {
  const auto pdf = testpdf::Builder::single_page(
      "BT /F1 12 Tf <0005> Tj ET", "<< /Font << /F1 5 0 R >> >>",
      {{5, "<< /Type /Font /Subtype /Type0 /BaseFont /NoMap /Encoding /Identity-H /DescendantFonts [6 0 R] >>"},
       {6, "<< /Type /Font /Subtype /CIDFontType2 /BaseFont /NoMap >>"}});
  const auto result = read_pdf(pdf);
  REQUIRE(result.ir.pages.at(0).pdf_character.size() == 1);
  CHECK(result.ir.pages[0].pdf_character[0].char_unicode == "\xef\xbf\xbd");
  bool warned = false;
  for (const auto& w : result.warnings) warned |= w.code == "MissingUnicode";
  CHECK(warned);
}

TEST_CASE("read_pdf: simple font encodings") {
  const auto pdf = testpdf::Builder::single_page(
      "BT /F1 10 Tf (\\001\\002A) Tj ET", "<< /Font << /F1 5 0 R >> >>",
      {{5, "<< /Type /Font /Subtype /Type1 /BaseFont /ABCDEF+Times-Roman /FirstChar 1 /LastChar 2 "
           "/Widths [500 600] /Encoding << /BaseEncoding /WinAnsiEncoding /Differences [1 /fi /uni00E9] >> >>"}});
  const auto result = read_pdf(pdf);
  const auto& chars = result.ir.pages.at(0).pdf_character;
  REQUIRE(chars.size() == 3);
  CHECK(chars[0].char_unicode == "\xef\xac\x81");
  CHECK(chars[1].char_unicode == "\xc3\xa9");
  CHECK(chars[0].box.width() == Approx(5));
  CHECK(chars[1].box.width() == Approx(6));
  // Times-Roman A = 722 from the standard metrics.
  CHECK(chars[2].box.width() == Approx(7.22));
}

TEST_CASE("read_pdf: xref streams and object streams") {
  // Uncompressed cross-reference stream with an object stream holding the font.
  std::string out = "%PDF-1.7\n";
  std::vector<std::size_t> off(8, 0);
  auto add = [&](int num, const std::string& body) {
    off[static_cast<std::size_t>(num)] = out.size();
    out += std::to_string(num) + " 0 obj\n" + body + "\nendobj\n";
  };
  add(1, "<< /Type /Catalog /Pages 2 0 R >>");
  add(2, "<< /Type /Pages /Kids [3 0 R] /Count 1 /MediaBox [0 0 300 400] >>");
  add(3, "<< /Type /Page /Parent 2 0 R /Resources << /Font << /F1 6 0 R >> >> /Contents 4 0 R >>");
  add(4, testpdf::Builder::stream_body("", "BT /F1 12 Tf 10 10 Td (Hi) Tj ET"));
  const std::string objstm_header = "6 0 ";
  const std::string objstm_body = "<< /Type /Font /Subtype /Type1 /BaseFont /Helvetica >>";
  const std::string compressed = deflate(objstm_header + objstm_body);
  add(5, "<< /Type /ObjStm /N 1 /First " + std::to_string(objstm_header.size()) + " /Length " +
             std::to_string(compressed.size()) + " /Filter /FlateDecode >>\nstream\n" + compressed + "\nendstream");
  const std::size_t xref_at = out.size();
  std::string rows;
  auto row = [&](int type, std::uint32_t f2, int f3) {
    rows.push_back(static_cast<char>(type));
    for (int k = 3; k >= 0; --k) rows.push_back(static_cast<char>((f2 >> (8 * k)) & 0xFF));
    rows.push_back(static_cast<char>(f3));
  };
  row(0, 0, 255);
  for (int i = 1; i <= 5; ++i) row(1, static_cast<std::uint32_t>(off[static_cast<std::size_t>(i)]), 0);
  row(2, 5, 0);
  row(1, static_cast<std::uint32_t>(xref_at), 0);
  out += "7 0 obj\n<< /Type /XRef /Size 8 /W [1 4 1] /Root 1 0 R /Length " + std::to_string(rows.size()) +
         " >>\nstream\n" + rows + "\nendstream\nendobj\n";
  out += "startxref\n" + std::to_string(xref_at) + "\n%%EOF\n";

  const auto result = read_pdf(out);
  REQUIRE(result.ir.pages.size() == 1);
  CHECK(result.ir.pages[0].media_box == Box{0, 0, 300, 400});
  REQUIRE(result.ir.pages[0].pdf_character.size() == 2);
  CHECK(result.ir.pages[0].pdf_character[0].box.width() == Approx(8.664));
}

TEST_CASE("read_pdf: damaged xref is rebuilt") {
  auto pdf = testpdf::Builder::single_page("BT /F1 12 Tf (A) Tj ET", kHelvetica);
  const auto pos = pdf.rfind("startxref\n");
  pdf.replace(pos + 10, pdf.find('\n', pos + 10) - (pos + 10), "99999");
  const auto result = read_pdf(pdf);
  CHECK(result.ir.pages.at(0).pdf_character.size() == 1);
  bool warned = false;
  for (const auto& w : result.warnings) warned |= w.code == "XrefRebuilt";
  CHECK(warned);
}

TEST_CASE("read_pdf: encrypted files are rejected") {
  testpdf::Builder b;
  b.object(1, "<< /Type /Catalog /Pages 2 0 R >>");
  b.object(2, "<< /Type /Pages /Kids [] /Count 0 >>");
  b.object(3, "<< /Filter /Standard /V 2 /R 3 /O <00> /U <00> /P -4 >>");
  try {
    read_pdf(b.build("/Encrypt 3 0 R"));
    FAIL("expected kEncrypted");
  } catch (const PdfError& e) {
    CHECK(e.code() == PdfError::Code::kEncrypted);
  }
}

TEST_CASE("read_pdf: images") {
  const std::string pixels("\x00\x80\xff\x40", 4);
  const auto pdf = testpdf::Builder::single_page(
      "q 20 0 0 10 50 60 cm /Im1 Do Q BI /W 2 /H 2 /BPC 8 /CS /G ID\n" + pixels + "\nEI",
      "<< /XObject << /Im1 5 0 R >> >>",
      {{5, testpdf::Builder::stream_body("/Subtype /Image /Width 2 /Height 2 /BitsPerComponent 8 "
                                         "/ColorSpace /DeviceGray /Filter /ASCIIHexDecode",
                                         "0080ff40>")}});
  const auto result = read_pdf(pdf);
  const auto& ops = result.ir.pages.at(0).passthrough_ops;
  REQUIRE(ops.size() == 2);
  CHECK(ops[0].kind == PassthroughKind::kImage);
  check_box(ops[0].box, {50, 60, 70, 70});
  REQUIRE(ops[0].image);
  CHECK(ops[0].image->data == pixels);
  CHECK(ops[0].image->filter.empty());
  REQUIRE(ops[1].image);
  CHECK(ops[1].image->data == pixels);
  CHECK(ops[1].image->color_space == "DeviceGray");
}

TEST_CASE("apply_filter") {
  SUBCASE("PNG Up predictor") {
    // Two rows of three bytes; second row encoded as differences from the first.
    const std::string encoded("\x02\x01\x02\x03\x02\x01\x01\x01", 8);
    pdf::Dict params;
    params["Predictor"] = pdf::Object(12);
    params["Columns"] = pdf::Object(3);
    const auto out = pdf::apply_filter("FlateDecode", deflate(encoded), params);
    CHECK(out == std::string("\x01\x02\x03\x02\x03\x04", 6));
  }
  SUBCASE("ASCII85") {
    CHECK(pdf::apply_filter("ASCII85Decode", "87cURD]i,\"Ebo7~>", {}) == "Hello World");
    CHECK(pdf::apply_filter("ASCII85Decode", "z~>", {}) == std::string(4, '\0'));
  }
  SUBCASE("ASCIIHex odd length") { CHECK(pdf::apply_filter("ASCIIHexDecode", "4 14>", {}) == "A@"); }
}

TEST_CASE("standard fonts and glyph names") {
  CHECK(pdf::find_std14("Arial,Bold")->name == "Helvetica-Bold");
  CHECK(pdf::find_std14("TimesNewRomanPS-BoldItalicMT")->name == "Times-BoldItalic");
  CHECK(pdf::find_std14("ABCDEF+Courier")->name == "Courier");
  CHECK_FALSE(pdf::find_std14("LinBiolinumTB"));
  CHECK(*pdf::std14_width("Helvetica", "H") == 722);
  CHECK(*pdf::glyph_unicode("uni4E2D") == U"中");
  CHECK(*pdf::glyph_unicode("f_i") == U"fi");
  CHECK(*pdf::glyph_unicode("A.sc") == U"A");
  CHECK_FALSE(pdf::glyph_unicode("g123"));
}
