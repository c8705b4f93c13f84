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


#include "relayout/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <string_view>

#include "relayout/text.hpp"

namespace relayout::corpus {

double helvetica_width(char c) {
  static constexpr short kWidths[95] = {
      278, 278, 355, 556, 556, 889, 667, 191, 333, 333, 389, 584, 278, 333, 278, 278,   // ' ' .. '/'
      556, 556, 556, 556, 556, 556, 556, 556, 556, 556, 278, 278, 584, 584, 584, 556,   // '0' .. '?'
      1015, 667, 667, 722, 722, 667, 611, 778, 722, 278, 500, 667, 556, 833, 722, 778,  // '@' .. 'O'
      667, 778, 722, 667, 611, 722, 667, 944, 667, 667, 611, 278, 278, 278, 469, 556,   // 'P' .. '_'
      333, 556, 556, 500, 556, 556, 278, 556, 556, 222, 222, 500, 222, 833, 556, 556,   // '`' .. 'o'
      556, 556, 333, 500, 278, 556, 500, 722, 500, 500, 500, 334, 260, 334, 584,        // 'p' .. '~'
  };
  const int i = static_cast<unsigned char>(c) - 32;
  return i >= 0 && i < 95 ? kWidths[i] : 556;
}

namespace {

constexpr double kAscent = 718;
constexpr double kDescent = -207;
constexpr double kLeading = 1.2;
constexpr double kScriptScale = 0.7;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  std::string s = buf;
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s == "-0" ? "0" : s;
}

// A code point with its script position: 0 normal, -1 subscript, 1 superscript.
struct Unit {
  char32_t cp = 0;
  int script = 0;
};

bool space(const Unit& u) { return u.cp == U' '; }
bool wide(const Unit& u) { return text::is_spaceless(u.cp); }

double advance(const Unit& u, double size) {
  const double w = u.cp < 128 ? helvetica_width(static_cast<char>(u.cp)) : (wide(u) ? 1000 : 556);
  return w * size * (u.script ? kScriptScale : 1.0) / 1000;
}

// "x_{i}" and "e^{2}" mark script runs.
std::vector<Unit> units_of(std::string_view markup) {
  std::vector<Unit> out;
  const std::u32string s = text::decode(markup);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if ((s[i] == U'_' || s[i] == U'^') && i + 1 < s.size() && s[i + 1] == U'{') {
      const int script = s[i] == U'_' ? -1 : 1;
      for (i += 2; i < s.size() && s[i] != U'}'; ++i) out.push_back({s[i], script});
      continue;
    }
    out.push_back({s[i], 0});
  }
  return out;
}

bool letter(const Unit& u) { return text::is_letter(u.cp); }

// Same opportunities as the target typesetter: spaces, either side of a
// spaceless character, and a hyphen between letters.
bool can_break_after(const std::vector<Unit>& u, std::size_t i) {
  const Unit& a = u[i];
  const Unit& b = u[i + 1];
  if (wide(a) || wide(b)) return true;
  if (a.script || b.script) return false;
  return a.cp == U'-' && i > 0 && letter(u[i - 1]) && letter(b);
}

struct SetLine {
  std::vector<Unit> units;
  double width = 0;
  bool justify = false;
};

std::vector<SetLine> break_lines(const std::vector<Unit>& u, double width, double size) {
  struct Piece {
    std::size_t begin, end;
    double width, glue;
  };
  std::vector<Piece> pieces;
  std::size_t i = 0;
  while (i < u.size() && space(u[i])) ++i;
  while (i < u.size()) {
    Piece p{i, i, 0, 0};
    while (i < u.size() && !space(u[i])) {
      p.width += advance(u[i], size);
      ++i;
      if (i < u.size() && !space(u[i]) && can_break_after(u, i - 1)) break;
    }
    p.end = i;
    while (i < u.size() && space(u[i])) p.glue += advance(u[i++], size);
    pieces.push_back(p);
  }
  struct Span {
    std::size_t begin, end;
    double width;
  };
  std::vector<Span> spans;
  double glue = 0;
  for (const Piece& p : pieces) {
    if (!spans.empty() && spans.back().width + glue + p.width <= width) {
      spans.back().end = p.end;
      spans.back().width += glue + p.width;
    } else {
      spans.push_back({p.begin, p.end, p.width});
    }
    glue = p.glue;
  }
  std::vector<SetLine> lines;
  for (std::size_t k = 0; k < spans.size(); ++k) {
    SetLine line;
    line.units.assign(u.begin() + static_cast<long>(spans[k].begin), u.begin() + static_cast<long>(spans[k].end));
    line.width = spans[k].width;
    if (k + 1 < spans.size() && spans[k + 1].begin == spans[k].end) {
      line.justify = wide(u[spans[k].end - 1]) || wide(u[spans[k].end]);
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

std::string literal(const std::u32string& s) {
  std::string out = "(";
  for (char32_t c : s) {
    if (c == U'(' || c == U')' || c == U'\\') out += '\\';
    out += static_cast<char>(c);
  }
  return out + ")";
}

std::string hex(const std::u32string& s) {
  std::string out = "<";
  char buf[8];
  for (char32_t c : s) {
    std::snprintf(buf, sizeof buf, "%04X", static_cast<unsigned>(c));
    out += buf;
  }
  return out + ">";
}

class Page {
 public:
  explicit Page(std::set<char32_t>& wide_chars) : wide_chars_(wide_chars) {}

  std::string content;

  // Draws `units` from (x, baseline); a positive `justify_to` spreads the
  // line to that width.
  void line(const std::vector<Unit>& units, double x, double baseline, double size, double natural = 0,
            double justify_to = 0) {
    double gap = 0;
    if (justify_to > 0 && units.size() > 1) gap = (justify_to - natural) / static_cast<double>(units.size() - 1);
    content += "BT\n";
    std::string font;
    int script = 0;
    bool positioned = false;
    std::u32string run;
    auto flush = [&] {
      if (run.empty()) return;
      content += (font == "F2" ? hex(run) : literal(run)) + " Tj\n";
      run.clear();
    };
    double pen = x;
    for (const Unit& u : units) {
      const std::string f = wide(u) ? "F2" : "F1";
      if (wide(u)) wide_chars_.insert(u.cp);
      const bool restyle = f != font || u.script != script;
      if (justify_to > 0 || restyle || !positioned) flush();
      if (restyle || !positioned) {
        const double s = u.script ? size * kScriptScale : size;
        content += "/" + f + " " + num(s) + " Tf ";
        const double rise = u.script < 0 ? -0.25 * size : (u.script > 0 ? 0.35 * size : 0.0);
        content += num(rise) + " Ts\n";
        font = f;
        script = u.script;
      }
      if (!positioned || justify_to > 0) {
        if (justify_to > 0 && space(u)) {
          pen += advance(u, size) + gap;
          continue;
        }
        content += "1 0 0 1 " + num(pen) + " " + num(baseline) + " Tm\n";
        positioned = true;
      }
      run += u.cp;
      pen += advance(u, size) + gap;
    }
    flush();
    content += "0 Ts\nET\n";
  }

  // Sets a paragraph with its box top at `top`; returns the bottom of the
  // last line box.
  double paragraph(std::string_view markup, double x, double top, double width, double size) {
    const auto lines = break_lines(units_of(markup), width, size);
    double baseline = top - kAscent * size / 1000;
    for (const auto& l : lines) {
      line(l.units, x, baseline, size, l.width, l.justify ? width : 0);
      baseline -= kLeading * size;
    }
    return baseline + kLeading * size + kDescent * size / 1000;
  }

  double text_width(std::string_view markup, double size) const {
    double w = 0;
    for (const Unit& u : units_of(markup)) w += advance(u, size);
    return w;
  }

  void single(std::string_view markup, double x, double baseline, double size) {
    line(units_of(markup), x, baseline, size);
  }

 private:
  std::set<char32_t>& wide_chars_;
};

// Minimal PDF assembly: one shared resource dictionary, optional forms.
class Builder {
 public:
  void set(int num, std::string body) { objects_[static_cast<std::size_t>(num - 1)] = std::move(body); }
  int add(std::string body) {
    objects_.push_back(std::move(body));
    return static_cast<int>(objects_.size());
  }
  static std::string stream(const std::string& dict, const std::string& data) {
    return "<< " + dict + (dict.empty() ? "" : " ") + "/Length " + std::to_string(data.size()) + " >>\nstream\n" +
           data + "\nendstream";
  }

  std::string build(int root) const {
    std::string out = "%PDF-1.7\n%\xE2\xE3\xCF\xD3\n";
    std::vector<std::size_t> offsets;
    for (std::size_t i = 0; i < objects_.size(); ++i) {
      offsets.push_back(out.size());
      out += std::to_string(i + 1) + " 0 obj\n" + objects_[i] + "\nendobj\n";
    }
    const std::size_t xref = out.size();
    out += "xref\n0 " + std::to_string(objects_.size() + 1) + "\n0000000000 65535 f \n";
    char buf[32];
    for (std::size_t off : offsets) {
      std::snprintf(buf, sizeof buf, "%010zu 00000 n \n", off);
      out += buf;
    }
    out += "trailer\n<< /Size " + std::to_string(objects_.size() + 1) + " /Root " + std::to_string(root) +
           " 0 R >>\nstartxref\n" + std::to_string(xref) + "\n%%EOF\n";
    return out;
  }

 private:
  std::vector<std::string> objects_;
};

// Writes the pages with Helvetica as /F1 and, when used, a CID font as /F2.
std::string assemble(const std::vector<std::string>& contents, const std::set<char32_t>& wide_chars,
                     const std::vector<std::pair<std::string, std::string>>& forms = {}) {
  Builder b;
  const int catalog = b.add("");
  const int pages = b.add("");
  const int helv = b.add("<< /Type /Font /Subtype /Type1 /BaseFont /Helvetica /Encoding /WinAnsiEncoding >>");
  std::string fonts = "/F1 " + std::to_string(helv) + " 0 R";
  if (!wide_chars.empty()) {
    std::string cmap =
        "/CIDInit /ProcSet findresource begin\n12 dict begin\nbegincmap\n/CIDSystemInfo << /Registry (Adobe) "
        "/Ordering (UCS) /Supplement 0 >> def\n/CMapName /Adobe-Identity-UCS def\n/CMapType 2 def\n"
        "1 begincodespacerange\n<0000> <FFFF>\nendcodespacerange\n" +
        std::to_string(wide_chars.size()) + " beginbfchar\n";
    for (char32_t c : wide_chars) cmap += hex(std::u32string(1, c)) + " " + hex(std::u32string(1, c)) + "\n";
    cmap += "endbfchar\nendcmap\nCMapName currentdict /CMap defineresource pop\nend\nend";
    const int to_unicode = b.add(Builder::stream("", cmap));
    const int descriptor = b.add(
        "<< /Type /FontDescriptor /FontName /RelayoutSansCJK /Flags 4 /FontBBox [0 -207 1000 718] /ItalicAngle 0 "
        "/Ascent 718 /Descent -207 /CapHeight 700 /StemV 80 >>");
    const int cid = b.add("<< /Type /Font /Subtype /CIDFontType2 /BaseFont /RelayoutSansCJK /CIDSystemInfo << "
                          "/Registry (Adobe) /Ordering (Identity) /Supplement 0 >> /FontDescriptor " +
                          std::to_string(descriptor) + " 0 R /DW 1000 /CIDToGIDMap /Identity >>");
    const int type0 = b.add("<< /Type /Font /Subtype /Type0 /BaseFont /RelayoutSansCJK /Encoding /Identity-H "
                            "/DescendantFonts [" +
                            std::to_string(cid) + " 0 R] /ToUnicode " + std::to_string(to_unicode) + " 0 R >>");
    fonts += " /F2 " + std::to_string(type0) + " 0 R";
  }
  const std::string font_dict = "<< " + fonts + " >>";
  std::string xobjects;
  for (const auto& [name, body] : forms) {
    // Forms share the page fonts; a form may invoke forms added before it.
    std::string body_with_res = body;
    const std::string marker = "/Resources <<>>";
    const auto at = body_with_res.find(marker);
    if (at != std::string::npos) {
      body_with_res.replace(at, marker.size(),
                            "/Resources << /Font " + font_dict + (xobjects.empty() ? "" : " /XObject << " + xobjects + ">>") +
                                " >>");
    }
    xobjects += "/" + name + " " + std::to_string(b.add(body_with_res)) + " 0 R ";
  }
  const std::string resources =
      "<< /Font " + font_dict + (xobjects.empty() ? "" : " /XObject << " + xobjects + ">>") + " >>";
  std::string kids;
  for (const auto& c : contents) {
    const int content = b.add(Builder::stream("", c));
    const int page = b.add("<< /Type /Page /Parent " + std::to_string(pages) + " 0 R /MediaBox [0 0 612 792] /Resources " +
                           resources + " /Contents " + std::to_string(content) + " 0 R >>");
    kids += std::to_string(page) + " 0 R ";
  }
  b.set(catalog, "<< /Type /Catalog /Pages " + std::to_string(pages) + " 0 R >>");
  b.set(pages, "<< /Type /Pages /Kids [" + kids + "] /Count " + std::to_string(contents.size()) + " >>");
  return b.build(catalog);
}

const std::vector<std::string>& sentences() {
  static const std::vector<std::string> s = {
      "Scanned reports, slide decks and journal articles reach readers as fixed pages, and a translation that "
      "breaks their layout forces the reader to rebuild the structure in their head.",
      "The renderer keeps every drawing operation that is not text, so rules, figures and table borders stay "
      "where the author placed them.",
      "Each paragraph is translated as a unit, which gives the model enough context to choose consistent wording "
      "across sentence boundaries.",
      "When the translated text is longer than the source, the typesetter reduces the font size in small steps "
      "until the paragraph fits inside its original box.",
      "Inline elements that must survive translation unchanged are replaced by short tokens before the text is "
      "sent to the model.",
      "After translation the tokens are expanded again, and the original glyphs are drawn at their new positions "
      "with the same relative offsets.",
      "Headers, footers and page numbers are found from their position near the page edges and are kept as "
      "separate blocks.",
      "Reading order follows the columns of the page from top to bottom, and a paragraph that continues in the "
      "next column is joined with its first part.",
      "A list of recurring technical terms is collected before translation so that every occurrence of a term "
      "receives the same rendering.",
      "Fonts from the source document are reused for restored fragments, while translated text is set in a "
      "single target font.",
      "Blocks that remain in the source language after translation are counted separately, because overlap "
      "scores cannot show them.",
      "Batches of paragraphs are sent together to reduce the number of requests while each prompt stays within "
      "a modest length.",
      "If the model drops or repeats a token, the paragraph is retried and finally kept in its original language "
      "with a warning.",
      "Vector graphics are copied with their clipping paths, and images are written back without decoding "
      "compressed data.",
      "Characters, paragraphs and drawing operations are recorded in a form that can be saved and loaded again.",
      "Small changes in line spacing are easier to accept than text that runs outside its column or over a "
      "figure.",
  };
  return s;
}

// `count` sentences starting at `first`, wrapping around the pool.
std::string prose(std::size_t first, std::size_t count) {
  const auto& s = sentences();
  std::string out;
  for (std::size_t i = 0; i < count; ++i) out += (i ? " " : "") + s[(first + i) % s.size()];
  return out;
}

// Drops the final period so the paragraph reads as continued elsewhere.
std::string open_ended(std::string text, std::string_view tail) {
  if (!text.empty() && text.back() == '.') text.pop_back();
  return text + " " + std::string(tail);
}

constexpr double kLeft = 72;
constexpr double kBodyWidth = 468;
constexpr double kBody = 10;
constexpr double kParaSkip = 10;

Fixture single_column() {
  std::set<char32_t> wide;
  Page p(wide);
  p.single("Layout Preserving Translation of Fixed Pages", kLeft, 720, 16);
  double top = 700;
  for (std::size_t i = 0; i < 5; ++i) top = p.paragraph(prose(i * 3, 3), kLeft, top, kBodyWidth, kBody) - kParaSkip;
  return {"single_column", assemble({p.content}, wide), "", "zh"};
}

Fixture two_column() {
  std::set<char32_t> wide;
  Page p(wide);
  const double col = 222;
  const double right = kLeft + col + 24;
  p.single("Columns, Continuations and Reading Order", kLeft, 720, 16);
  double top = 700;
  top = p.paragraph(prose(0, 3), kLeft, top, col, kBody) - kParaSkip;
  top = p.paragraph(prose(3, 2), kLeft, top, col, kBody) - kParaSkip;
  top = p.paragraph(prose(5, 3), kLeft, top, col, kBody) - kParaSkip;
  p.paragraph(open_ended(prose(8, 2), "and the reader"), kLeft, top, col, kBody);
  top = 700;
  top = p.paragraph("sees the same sentence across both columns. " + prose(10, 2), right, top, col, kBody) - kParaSkip;
  top = p.paragraph(prose(12, 3), right, top, col, kBody) - kParaSkip;
  top = p.paragraph(prose(15, 3), right, top, col, kBody) - kParaSkip;
  p.paragraph(prose(2, 2), right, top, col, kBody);
  return {"two_column", assemble({p.content}, wide), "", "zh"};
}

Fixture header_footer() {
  std::set<char32_t> wide;
  std::vector<std::string> pages;
  for (int n = 0; n < 2; ++n) {
    Page p(wide);
    p.single("Relayout Test Journal", kLeft, 752, 8);
    const std::string issue = "Vol. 3, No. 2";
    p.single(issue, kLeft + kBodyWidth - p.text_width(issue, 8), 752, 8);
    const std::string number = std::to_string(n + 1);
    p.single(number, 306 - p.text_width(number, 9) / 2, 40, 9);
    double top = 710;
    if (n == 0) {
      for (std::size_t i = 0; i < 4; ++i) {
        top = p.paragraph(prose(i * 2 + 1, 3), kLeft, top, kBodyWidth, kBody) - kParaSkip;
      }
      p.paragraph(open_ended(prose(9, 3), "so the text of this"), kLeft, top, kBodyWidth, kBody);
    } else {
      top = p.paragraph("paragraph continues at the top of the next page. " + prose(12, 2), kLeft, top, kBodyWidth,
                        kBody) -
            kParaSkip;
      for (std::size_t i = 0; i < 3; ++i) {
        top = p.paragraph(prose(i * 3 + 4, 3), kLeft, top, kBodyWidth, kBody) - kParaSkip;
      }
    }
    pages.push_back(p.content);
  }
  return {"header_footer", assemble(pages, wide), "", "zh"};
}

Fixture formula_region() {
  std::set<char32_t> wide;
  Page p(wide);
  std::string detections = "{\"pages\": [[";
  auto region = [&detections](double x, double y, double x2, double y2) {
    if (detections.back() != '[') detections += ", ";
    detections += "{\"class_name\": \"formula_region\", \"box\": [" + num(x) + ", " + num(y) + ", " + num(x2) + ", " +
                  num(y2) + "], \"conf\": 0.93}";
  };
  // A display formula: "s = " followed by a fraction with a rule between
  // numerator and denominator.
  auto display = [&](double baseline) {
    const std::string lhs = "s = ";
    const std::string numer = "w_{i} + w_{j}";
    const std::string denom = "2 n";
    const double size = kBody;
    const double lw = p.text_width(lhs, size);
    const double nw = p.text_width(numer, size);
    const double dw = p.text_width(denom, size);
    const double x = 306 - (lw + nw) / 2;
    p.single(lhs, x, baseline, size);
    p.single(numer, x + lw, baseline + 6, size);
    p.single(denom, x + lw + (nw - dw) / 2, baseline - 7, size);
    p.content += "0.6 w\n" + num(x + lw) + " " + num(baseline + 3) + " m\n" + num(x + lw + nw) + " " +
                 num(baseline + 3) + " l\nS\n";
    region(x - 4, baseline - 7 + kDescent * size / 1000 - 2, x + lw + nw + 4, baseline + 6 + kAscent * size / 1000 + 2);
  };
  p.single("Scripts, Fractions and Display Formulas", kLeft, 720, 16);
  double top = 700;
  top = p.paragraph("Each weight w_{i} belongs to one token, and the pair score e^{2} grows with the distance d_{ij} "
                    "between tokens. " +
                        prose(1, 2),
                    kLeft, top, kBodyWidth, kBody) -
        kParaSkip;
  display(top - 22);
  top -= 44;
  top = p.paragraph(prose(3, 2) + " The sum over x_{k} runs over all positions, and the bound holds for n^{2} "
                    "pairs at most.",
                    kLeft, top, kBodyWidth, kBody) -
        kParaSkip;
  top = p.paragraph(prose(6, 3), kLeft, top, kBodyWidth, kBody) - kParaSkip;
  display(top - 22);
  top -= 44;
  top = p.paragraph("With the normalized score s the ranking uses r_{i} = s_{i} for every block, so t^{2} terms "
                    "vanish. " +
                        prose(9, 2),
                    kLeft, top, kBodyWidth, kBody) -
        kParaSkip;
  p.paragraph(prose(11, 2), kLeft, top, kBodyWidth, kBody);
  detections += "]]}";
  return {"formula_region", assemble({p.content}, wide), detections, "zh"};
}

Fixture citation_dense() {
  std::set<char32_t> wide;
  Page p(wide);
  p.single("Related Work on Document Translation", kLeft, 720, 16);
  const std::vector<std::string> paragraphs = {
      "Early systems translated the extracted text and discarded the page structure [3, 7], while later tools "
      "kept the layout but replaced every font [12]. Several pipelines [4-6] rely on optical recognition even "
      "for born digital files [9], which loses vector graphics [21].",
      "Layout analysis models [15, 16] detect titles, paragraphs and tables [2], and reading order can be "
      "recovered with recursive cuts [8] or learned rankers [18, 19, 20]. Benchmarks for this task [11] cover "
      "scientific articles [13] and business reports [14].",
      "Large language models [1] translate whole paragraphs with good fluency [5], and glossaries [10] keep "
      "terms consistent [17]. Placeholder tokens [22] protect formulas and citations [23, 24] during "
      "translation, as in earlier markup aware systems [25].",
      "Evaluation usually relies on text metrics [26] and rarely on layout [27]. Box overlap measures [28, 29] "
      "complement human ratings [30], and judge models [31] are a recent addition [32, 33].",
  };
  double top = 700;
  for (const auto& text : paragraphs) top = p.paragraph(text, kLeft, top, kBodyWidth, kBody) - kParaSkip;
  p.paragraph(prose(4, 3), kLeft, top, kBodyWidth, kBody);
  return {"citation_dense", assemble({p.content}, wide), "", "zh"};
}

Fixture cjk_target() {
  std::set<char32_t> wide;
  Page p(wide);
  p.single("Mixed Script Pages", kLeft, 720, 16);
  double top = 700;
  top = p.paragraph("The term 排版 names the typesetting step, and 版面 names the page layout that it must keep. " +
                        prose(0, 2),
                    kLeft, top, kBodyWidth, kBody) -
        kParaSkip;
  top = p.paragraph("版面保持的文档翻译需要同时处理文字、公式和图形。每个段落在翻译之后重新排版，并在原来的区域内缩放"
                    "到合适的字号。页眉、页脚和页码保持在原来的位置，图表和表格的边框也不会移动。",
                    kLeft, top, kBodyWidth, kBody) -
        kParaSkip;
  top = p.paragraph(prose(3, 3) + " Terms such as 术语表 and 公式 stay consistent across the document.", kLeft, top,
                    kBodyWidth, kBody) -
        kParaSkip;
  p.paragraph(prose(7, 3), kLeft, top, kBodyWidth, kBody);
  return {"cjk_target", assemble({p.content}, wide), "", "zh"};
}

}  // namespace

const NestedFormLayout& nested_form_layout() {
  static const NestedFormLayout layout = {
      {1, 0, 0, 1, 30, 40},
      {0.9, 0, 0, 0.9, 15, 20},
      {1.25, 0, 0, 1.25, -8, -60},
      {0.8, 0, 0, 0.8, 10, 25},
      {20, 300, 540, 720},
      12,
      {{"Text drawn inside two nested forms", 60, 500},
       {"keeps its device position after", 60, 440},
       {"the page is written again.", 60, 380}},
  };
  return layout;
}

Fixture nested_forms() {
  const NestedFormLayout& g = nested_form_layout();
  auto matrix = [](const NestedFormLayout::Affine& m) {
    std::string s;
    for (double v : m) s += (s.empty() ? "" : " ") + num(v);
    return s;
  };
  std::set<char32_t> wide;
  Page inner(wide);
  for (const auto& l : g.lines) inner.single(l.text, l.x, l.y, g.font_size);
  const std::string form2 = Builder::stream(
      "/Type /XObject /Subtype /Form /BBox [0 0 600 800] /Matrix [" + matrix(g.form2_matrix) + "] /Resources <<>>",
      inner.content);
  const std::string form1_content = "q\n" + num(g.clip[0]) + " " + num(g.clip[1]) + " " + num(g.clip[2] - g.clip[0]) +
                                    " " + num(g.clip[3] - g.clip[1]) + " re\nW n\n" + matrix(g.inner_cm) +
                                    " cm\n/Fm2 Do\nQ\n0.6 g\n20 280 520 2 re\nf\n";
  const std::string form1 = Builder::stream(
      "/Type /XObject /Subtype /Form /BBox [0 0 640 800] /Matrix [" + matrix(g.form1_matrix) + "] /Resources <<>>",
      form1_content);
  Page page(wide);
  page.single("A Page With Nested Forms", kLeft, 740, 16);
  page.content += "q\n" + matrix(g.outer_cm) + " cm\n/Fm1 Do\nQ\n";
  page.paragraph(prose(13, 2), kLeft, 160, kBodyWidth, kBody);
  return {"nested_forms", assemble({page.content}, wide, {{"Fm2", form2}, {"Fm1", form1}}), "", "zh"};
}

Fixture glossary_terms() {
  std::set<char32_t> wide;
  std::vector<std::string> pages;
  const std::vector<std::vector<std::string>> text = {
      {"Every drawing operation is placed through the Current Transformation Matrix (CTM), which maps user "
       "space onto the device. " + prose(1, 1),
       "A form can change the Current Transformation Matrix for its own content, and the change ends when the "
       "form is finished. " + prose(4, 1)},
      {"Restored fragments are placed by composing their offsets with the Current Transformation Matrix of the "
       "page. " + prose(6, 1),
       "Clipping paths are stored together with the Current Transformation Matrix that was active when they "
       "were set. " + prose(9, 1)},
  };
  for (const auto& page_text : text) {
    Page p(wide);
    double top = 720;
    for (const auto& t : page_text) top = p.paragraph(t, kLeft, top, kBodyWidth, kBody) - kParaSkip;
    pages.push_back(p.content);
  }
  return {"glossary_terms", assemble(pages, wide), "", "zh"};
}

std::vector<Fixture> standard() {
  return {single_column(), two_column(), header_footer(), formula_region(), citation_dense(), cjk_target()};
}

std::vector<Fixture> all() {
  auto out = standard();
  out.push_back(nested_forms());
  out.push_back(glossary_terms());
  return out;
}

}  // namespace relayout::corpus
