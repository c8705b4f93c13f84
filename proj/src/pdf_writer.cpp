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


#include "relayout/pdf_writer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "relayout/codec.hpp"
#include "relayout/formula_mask.hpp"
#include "relayout/text.hpp"

namespace relayout {
namespace {

std::string fmt(double v) {
  if (std::abs(v) < 5e-7) return "0";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.5f", v);
  std::string s = buf;
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

std::string hex4(std::uint32_t code) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%04X", code & 0xFFFF);
  return buf;
}

std::string pdf_name(std::string_view s) {
  std::string out;
  for (char ch : s) {
    if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_' || ch == '+') out += ch;
  }
  return out.empty() ? "Unnamed" : out;
}

std::string matrix_operands(const Matrix& m) {
  return fmt(m.a()) + " " + fmt(m.b()) + " " + fmt(m.c()) + " " + fmt(m.d()) + " " + fmt(m.e()) + " " + fmt(m.f());
}

bool is_identity(const Matrix& m) { return m == Matrix(); }

void emit_color(std::string& out, const Color& color, bool stroke) {
  std::string op;
  if (color.space == "gray" && color.components.size() == 1) op = stroke ? "G" : "g";
  else if (color.space == "rgb" && color.components.size() == 3) op = stroke ? "RG" : "rg";
  else if (color.space == "cmyk" && color.components.size() == 4) op = stroke ? "K" : "k";
  else return;
  for (double v : color.components) out += fmt(v) + " ";
  out += op + "\n";
}

// Path construction in the current user space, or mapped through `device`
// into device space when given.
void emit_path(std::string& out, const std::vector<PathCommand>& path, const Matrix* device) {
  auto pt = [&](double x, double y) {
    if (!device) return fmt(x) + " " + fmt(y);
    const auto p = apply(*device, x, y);
    return fmt(p.x()) + " " + fmt(p.y());
  };
  const bool axis_aligned = !device || (device->b() == 0 && device->c() == 0);
  for (const auto& cmd : path) {
    const auto& v = cmd.operands;
    if (cmd.op == "re" && v.size() == 4) {
      if (axis_aligned) {
        if (!device) {
          out += fmt(v[0]) + " " + fmt(v[1]) + " " + fmt(v[2]) + " " + fmt(v[3]) + " re\n";
        } else {
          const auto p = apply(*device, v[0], v[1]);
          out += fmt(p.x()) + " " + fmt(p.y()) + " " + fmt(v[2] * device->a()) + " " + fmt(v[3] * device->d()) +
                 " re\n";
        }
      } else {
        out += pt(v[0], v[1]) + " m " + pt(v[0] + v[2], v[1]) + " l " + pt(v[0] + v[2], v[1] + v[3]) + " l " +
               pt(v[0], v[1] + v[3]) + " l h\n";
      }
      continue;
    }
    std::string line;
    for (std::size_t i = 0; i + 1 < v.size(); i += 2) line += pt(v[i], v[i + 1]) + " ";
    out += line + cmd.op + "\n";
  }
}

std::vector<const PassthroughOp*> clip_chain(const PageIR& page, int clip_id) {
  std::vector<const PassthroughOp*> chain;
  while (clip_id != 0 && chain.size() < 64) {
    const PassthroughOp* clip = page.find_op(clip_id);
    if (!clip) break;
    chain.push_back(clip);
    clip_id = clip->parent_clip;
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

// Clips are re-established in device space so the CTM stays the identity.
void emit_clips(std::string& out, const DocumentIR& doc, const PageIR& page, int clip_id) {
  for (const PassthroughOp* clip : clip_chain(page, clip_id)) {
    const Matrix& ctm = doc.states.at(static_cast<std::size_t>(clip->state_id)).ctm;
    emit_path(out, clip->path, &ctm);
    out += (clip->clip_rule.empty() ? std::string("W") : clip->clip_rule) + " n\n";
  }
}

const GraphicsState& state_of(const DocumentIR& doc, int state_id) {
  static const GraphicsState kDefault;
  if (state_id < 0 || static_cast<std::size_t>(state_id) >= doc.states.size()) return kDefault;
  return doc.states[static_cast<std::size_t>(state_id)];
}

void emit_op(std::string& out, const DocumentIR& doc, const PageIR& page, const PassthroughOp& op,
             PageResources& resources, const Matrix& extra, bool with_clip) {
  if (op.kind == PassthroughKind::kClip) return;
  const GraphicsState& gs = state_of(doc, op.state_id);
  out += "q\n";
  if (with_clip) emit_clips(out, doc, page, op.parent_clip);
  emit_color(out, gs.fill_color, false);
  emit_color(out, gs.stroke_color, true);
  out += matrix_operands(compose(gs.ctm, extra)) + " cm\n";
  if (op.kind == PassthroughKind::kImage) {
    if (op.image) out += "/" + resources.image_name(op) + " Do\n";
  } else {
    out += fmt(gs.line_width) + " w\n";
    emit_path(out, op.path, nullptr);
    out += (op.paint.empty() ? std::string("n") : op.paint) + "\n";
  }
  out += "Q\n";
}

// Source characters at their recorded positions, optionally relocated by
// `extra`; consecutive characters sharing a clip and color share one group.
void emit_chars(std::string& out, const DocumentIR& doc, const PageIR& page,
                const std::vector<const CharRecord*>& chars, PageResources& resources, const Matrix& extra,
                bool with_clip) {
  std::size_t i = 0;
  while (i < chars.size()) {
    const GraphicsState& gs = state_of(doc, chars[i]->state_id);
    const int clip = with_clip ? gs.clip_id : 0;
    std::size_t j = i;
    while (j < chars.size()) {
      const GraphicsState& other = state_of(doc, chars[j]->state_id);
      if ((with_clip ? other.clip_id : 0) != clip || !(other.fill_color == gs.fill_color)) break;
      ++j;
    }
    out += "q\n";
    emit_clips(out, doc, page, clip);
    if (!is_identity(extra)) out += matrix_operands(extra) + " cm\n";
    emit_color(out, gs.fill_color, false);
    out += "BT\n";
    std::string font;
    double size = -1;
    for (std::size_t k = i; k < j; ++k) {
      const CharRecord& c = *chars[k];
      const auto [name, code] = resources.mirror_code(c);
      if (name != font || c.font_size != size) {
        out += "/" + name + " " + fmt(c.font_size) + " Tf\n";
        font = name;
        size = c.font_size;
      }
      out += "1 0 0 1 " + fmt(c.box.x) + " " + fmt(c.baseline_y) + " Tm <" + code + "> Tj\n";
    }
    out += "ET\nQ\n";
    i = j;
  }
}

const Placeholder* find_placeholder(const Paragraph& p, int id) {
  for (const auto& ph : p.placeholders) {
    if (ph.id == id) return &ph;
  }
  return nullptr;
}

std::vector<std::uint8_t> utf16be(std::u32string_view s) {
  std::vector<std::uint8_t> out;
  for (char32_t cp : s) {
    auto push = [&](std::uint32_t u) {
      out.push_back(static_cast<std::uint8_t>(u >> 8));
      out.push_back(static_cast<std::uint8_t>(u & 0xFF));
    };
    if (cp >= 0x10000) {
      const std::uint32_t v = cp - 0x10000;
      push(0xD800 + (v >> 10));
      push(0xDC00 + (v & 0x3FF));
    } else {
      push(cp);
    }
  }
  return out;
}

std::string to_unicode_cmap(const std::map<std::uint32_t, std::u32string>& map) {
  std::string out =
      "/CIDInit /ProcSet findresource begin\n12 dict begin\nbegincmap\n"
      "/CIDSystemInfo << /Registry (Adobe) /Ordering (UCS) /Supplement 0 >> def\n"
      "/CMapName /Adobe-Identity-UCS def\n/CMapType 2 def\n"
      "1 begincodespacerange\n<0000> <FFFF>\nendcodespacerange\n";
  std::vector<std::pair<std::uint32_t, std::u32string>> entries(map.begin(), map.end());
  for (std::size_t b = 0; b < entries.size(); b += 100) {
    const std::size_t e = std::min(entries.size(), b + 100);
    out += std::to_string(e - b) + " beginbfchar\n";
    for (std::size_t k = b; k < e; ++k) {
      std::string hex;
      for (std::uint8_t byte : utf16be(entries[k].second)) {
        char buf[4];
        std::snprintf(buf, sizeof buf, "%02X", byte);
        hex += buf;
      }
      out += "<" + hex4(entries[k].first) + "> <" + hex + ">\n";
    }
    out += "endbfchar\n";
  }
  out += "endcmap\nCMapName currentdict /CMap defineresource pop\nend\nend\n";
  return out;
}

class ObjectWriter {
 public:
  int add(std::string body) {
    bodies_.push_back(std::move(body));
    return static_cast<int>(bodies_.size());
  }
  void set(int num, std::string body) { bodies_.at(static_cast<std::size_t>(num - 1)) = std::move(body); }

  int stream(const std::string& dict_entries, std::string data, bool compress) {
    std::string entries = dict_entries;
    if (compress) {
      data = deflate(data);
      entries += " /Filter /FlateDecode";
    }
    return add("<< " + entries + " /Length " + std::to_string(data.size()) + " >>\nstream\n" + data + "\nendstream");
  }

  std::string finish(int root) const {
    std::string out = "%PDF-1.7\n%\xe2\xe3\xcf\xd3\n";
    std::vector<std::size_t> offsets;
    for (std::size_t i = 0; i < bodies_.size(); ++i) {
      offsets.push_back(out.size());
      out += std::to_string(i + 1) + " 0 obj\n" + bodies_[i] + "\nendobj\n";
    }
    // Deterministic file identifier from the body bytes.
    std::uint64_t h1 = 1469598103934665603ull;
    std::uint64_t h2 = 1099511628211ull * 31;
    for (unsigned char ch : out) {
      h1 = (h1 ^ ch) * 1099511628211ull;
      h2 = (h2 ^ ch) * 0x100000001b3ull + 0x9E3779B97F4A7C15ull;
    }
    char id[40];
    std::snprintf(id, sizeof id, "%016llX%016llX", static_cast<unsigned long long>(h1),
                  static_cast<unsigned long long>(h2));
    const std::size_t xref = out.size();
    out += "xref\n0 " + std::to_string(bodies_.size() + 1) + "\n0000000000 65535 f \n";
    for (std::size_t off : offsets) {
      char line[24];
      std::snprintf(line, sizeof line, "%010zu 00000 n \n", off);
      out += line;
    }
    out += "trailer\n<< /Size " + std::to_string(bodies_.size() + 1) + " /Root " + std::to_string(root) +
           " 0 R /ID [<" + id + "> <" + id + ">] >>\nstartxref\n" + std::to_string(xref) + "\n%%EOF\n";
    return out;
  }

 private:
  std::vector<std::string> bodies_;
};

int write_font(ObjectWriter& w, const FontResource& font, bool compress) {
  std::string widths;
  for (const auto& [code, width] : font.widths) widths += std::to_string(code) + " [" + fmt(width) + "] ";
  const std::string name = pdf_name(font.base_font);
  std::string descriptor = "<< /Type /FontDescriptor /FontName /" + name + " /Flags 32 /FontBBox [" +
                           fmt(font.bbox.x) + " " + fmt(font.bbox.y) + " " + fmt(font.bbox.x2) + " " +
                           fmt(font.bbox.y2) + "] /ItalicAngle 0 /Ascent " + std::to_string(font.ascent) +
                           " /Descent " + std::to_string(font.descent) + " /CapHeight " +
                           std::to_string(font.ascent) + " /StemV 80";
  if (!font.program.empty()) {
    const int file = w.stream("/Length1 " + std::to_string(font.program.size()), font.program, compress);
    descriptor += " /FontFile2 " + std::to_string(file) + " 0 R";
  }
  const int fd = w.add(descriptor + " >>");
  const int cid = w.add("<< /Type /Font /Subtype /CIDFontType2 /BaseFont /" + name +
                        " /CIDSystemInfo << /Registry (Adobe) /Ordering (Identity) /Supplement 0 >> /FontDescriptor " +
                        std::to_string(fd) + " 0 R /DW 1000 /W [" + widths + "] /CIDToGIDMap /Identity >>");
  const int cmap = w.stream("", to_unicode_cmap(font.to_unicode), compress);
  return w.add("<< /Type /Font /Subtype /Type0 /BaseFont /" + name + " /Encoding /Identity-H /DescendantFonts [" +
               std::to_string(cid) + " 0 R] /ToUnicode " + std::to_string(cmap) + " 0 R >>");
}

int write_image(ObjectWriter& w, const ImageData& img, bool compress) {
  std::string entries = "/Type /XObject /Subtype /Image /Width " + std::to_string(img.width) + " /Height " +
                        std::to_string(img.height) + " /BitsPerComponent " + std::to_string(img.bits_per_component);
  if (img.image_mask) entries += " /ImageMask true";
  else entries += " /ColorSpace /" + pdf_name(img.color_space);
  if (!img.filter.empty()) {
    entries += " /Filter [";
    std::string name;
    for (char ch : img.filter + " ") {
      if (ch == ' ') {
        if (!name.empty()) entries += " /" + name;
        name.clear();
      } else {
        name += ch;
      }
    }
    entries += " ]";
    return w.stream(entries, img.data, false);
  }
  return w.stream(entries, img.data, compress);
}

}  // namespace

PageResources::PageResources(const DocumentIR& doc, TargetFont target) : doc_(doc), target_(std::move(target)) {
  if (!target_.program.empty()) parsed_ = parse_truetype(target_.program);
}

std::string PageResources::target_codes(std::u32string_view s) {
  std::string out;
  for (char32_t cp : s) {
    target_chars_.insert(cp);
    std::uint32_t code = 0;
    if (parsed_) {
      auto it = parsed_->cmap.find(cp);
      code = it == parsed_->cmap.end() ? 0 : it->second;
    } else {
      code = cp <= 0xFFFF ? cp : 0xFFFD;
    }
    out += hex4(code);
  }
  return out;
}

std::pair<std::string, std::string> PageResources::mirror_code(const CharRecord& c) {
  auto it = mirrors_.find(c.font_id);
  if (it == mirrors_.end()) {
    const FontRecord* record = doc_.find_font(c.font_id);
    if (!record) throw RenderError(RenderError::Code::kMissingFontResource, "no font record for " + c.font_id);
    Mirror m;
    m.name = "M" + std::to_string(mirrors_.size() + 1);
    m.record = record;
    it = mirrors_.emplace(c.font_id, std::move(m)).first;
  }
  Mirror& m = it->second;
  const double width = c.font_size > 0 ? c.box.width() / c.font_size * 1000 : 0;
  const auto key = std::make_pair(c.char_unicode, std::llround(width * 1000));
  auto code = m.codes.find(key);
  if (code == m.codes.end()) {
    const auto next = static_cast<std::uint32_t>(m.codes.size() + 1);
    if (next > 0xFFFF) throw RenderError(RenderError::Code::kMissingFontResource, "too many glyphs for " + c.font_id);
    code = m.codes.emplace(key, next).first;
  }
  return {m.name, hex4(code->second)};
}

std::string PageResources::image_name(const PassthroughOp& op) {
  const ImageData* img = &*op.image;
  auto it = image_names_.find(img);
  if (it == image_names_.end()) {
    images_.push_back(img);
    it = image_names_.emplace(img, "Im" + std::to_string(images_.size())).first;
  }
  return it->second;
}

std::string render_page(const DocumentIR& doc, const PageIR& page, const TypesetPage& typeset,
                        PageResources& resources) {
  std::map<int, const TypesetParagraph*> by_index;
  for (const auto& tp : typeset.paragraphs) by_index[tp.index] = &tp;
  std::set<int> owned_chars;
  std::set<int> claimed_ops;
  for (std::size_t i = 0; i < page.paragraph.size(); ++i) {
    const Paragraph& p = page.paragraph[i];
    if (!p.scale || !by_index.count(static_cast<int>(i))) {
      throw RenderError(RenderError::Code::kUntypesetParagraph,
                        "page " + std::to_string(page.page_number) + " paragraph " + std::to_string(i) +
                            " has not been typeset");
    }
    for (int u : p.unit_ids) {
      if (u > 0) owned_chars.insert(u);
    }
    for (const auto& ph : p.placeholders) claimed_ops.insert(ph.source_ops.begin(), ph.source_ops.end());
  }

  std::string out;
  for (const auto& op : page.passthrough_ops) {
    if (!claimed_ops.count(op.id)) emit_op(out, doc, page, op, resources, Matrix(), true);
  }
  std::vector<const CharRecord*> loose;
  for (const auto& c : page.pdf_character) {
    if (!owned_chars.count(c.render_order)) loose.push_back(&c);
  }
  emit_chars(out, doc, page, loose, resources, Matrix(), true);

  for (const auto& [index, tp] : by_index) {
    const Paragraph& p = page.paragraph[static_cast<std::size_t>(index)];
    if (!tp->placed.glyphs.empty()) {
      const CharRecord* first = nullptr;
      for (int u : p.unit_ids) {
        if (u > 0 && (first = page.find_char(u))) break;
      }
      out += "q\n";
      if (tp->fit.status == FitStatus::kOverflowAtMin) {
        out += fmt(p.box.x) + " " + fmt(p.box.y) + " " + fmt(p.box.width()) + " " + fmt(p.box.height()) + " re W n\n";
      }
      if (first) emit_color(out, state_of(doc, first->state_id).fill_color, false);
      out += "BT\n/" + resources.target().metrics.font_id + " " + fmt(tp->placed.glyphs.front().size) + " Tf\n";
      const auto& glyphs = tp->placed.glyphs;
      std::size_t i = 0;
      while (i < glyphs.size()) {
        std::size_t j = i + 1;
        while (j < glyphs.size() && glyphs[j].baseline == glyphs[i].baseline &&
               std::abs(glyphs[j].x - glyphs[j - 1].box.x2) < 1e-9) {
          ++j;
        }
        std::u32string run;
        for (std::size_t k = i; k < j; ++k) run += glyphs[k].cp;
        out += "1 0 0 1 " + fmt(glyphs[i].x) + " " + fmt(glyphs[i].baseline) + " Tm <" +
               resources.target_codes(run) + "> Tj\n";
        i = j;
      }
      out += "ET\nQ\n";
    }
    for (const PlacedObject& obj : tp->placed.objects) {
      const Placeholder* ph = find_placeholder(p, obj.placeholder_id);
      const auto rec = tp->records.find(obj.placeholder_id);
      if (!ph || rec == tp->records.end()) continue;
      const Matrix m = relocation(rec->second, obj.x, obj.baseline, obj.gamma);
      std::vector<const CharRecord*> chars;
      for (int u : ph->source_units) {
        if (const CharRecord* c = page.find_char(u)) chars.push_back(c);
      }
      emit_chars(out, doc, page, chars, resources, m, false);
      for (int id : ph->source_ops) {
        if (const PassthroughOp* op = page.find_op(id)) emit_op(out, doc, page, *op, resources, m, false);
      }
    }
  }
  return out;
}

std::string render_source_page(const DocumentIR& doc, const PageIR& page, PageResources& resources) {
  std::string out;
  for (const auto& op : page.passthrough_ops) emit_op(out, doc, page, op, resources, Matrix(), true);
  std::vector<const CharRecord*> chars;
  for (const auto& c : page.pdf_character) chars.push_back(&c);
  emit_chars(out, doc, page, chars, resources, Matrix(), true);
  return out;
}

std::string assemble_document(const std::vector<RenderedPage>& pages, const PageResources& resources,
                              const WriteOptions& options, Warnings* warnings) {
  ObjectWriter w;
  const int catalog = w.add("");
  const int tree = w.add("");

  std::string fonts;
  {
    const TargetFont& target = resources.target();
    FontResource res;
    if (!target.program.empty()) {
      res = embed_font(target.program, resources.target_chars());
    } else {
      res.base_font = target.metrics.name;
      res.ascent = target.metrics.ascent;
      res.descent = target.metrics.descent;
      res.bbox = {-166, -225, 1000, 931};
      for (char32_t cp : resources.target_chars()) {
        const std::uint32_t code = cp <= 0xFFFF ? cp : 0xFFFD;
        res.codes[cp] = code;
        res.widths[code] = target.metrics.advance(cp);
        res.to_unicode[code] = std::u32string(1, cp);
      }
    }
    if (warnings) warnings->insert(warnings->end(), res.warnings.begin(), res.warnings.end());
    fonts += "/" + target.metrics.font_id + " " + std::to_string(write_font(w, res, options.compress)) + " 0 R ";
  }
  for (const auto& [font_id, mirror] : resources.mirrors()) {
    FontResource res;
    res.base_font = mirror.record->name.empty() ? font_id : mirror.record->name;
    res.ascent = mirror.record->ascent;
    res.descent = mirror.record->descent;
    res.bbox = {0, static_cast<double>(res.descent), 1000, static_cast<double>(res.ascent)};
    for (const auto& [key, code] : mirror.codes) {
      res.widths[code] = static_cast<double>(key.second) / 1000.0;
      res.to_unicode[code] = text::decode(key.first);
    }
    fonts += "/" + mirror.name + " " + std::to_string(write_font(w, res, options.compress)) + " 0 R ";
  }
  std::string xobjects;
  for (std::size_t i = 0; i < resources.images().size(); ++i) {
    xobjects += "/Im" + std::to_string(i + 1) + " " +
                std::to_string(write_image(w, *resources.images()[i], options.compress)) + " 0 R ";
  }
  std::string dict = "<< /Font << " + fonts + ">>";
  if (!xobjects.empty()) dict += " /XObject << " + xobjects + ">>";
  const int resource_dict = w.add(dict + " >>");

  std::string kids;
  for (const auto& page : pages) {
    const int content = w.stream("", page.content, options.compress);
    const Box& mb = page.media_box;
    const int obj = w.add("<< /Type /Page /Parent " + std::to_string(tree) + " 0 R /MediaBox [" + fmt(mb.x) + " " +
                          fmt(mb.y) + " " + fmt(mb.x2) + " " + fmt(mb.y2) + "] /Resources " +
                          std::to_string(resource_dict) + " 0 R /Contents " + std::to_string(content) + " 0 R >>");
    kids += std::to_string(obj) + " 0 R ";
  }
  w.set(tree, "<< /Type /Pages /Kids [" + kids + "] /Count " + std::to_string(pages.size()) + " >>");
  w.set(catalog, "<< /Type /Catalog /Pages " + std::to_string(tree) + " 0 R >>");
  return w.finish(catalog);
}

std::string write_pdf(const DocumentIR& doc, const std::vector<TypesetPage>& typeset, const TargetFont& font,
                      const WriteOptions& options, Warnings* warnings) {
  if (typeset.size() != doc.pages.size()) {
    throw RenderError(RenderError::Code::kUntypesetParagraph, "typeset results do not cover every page");
  }
  PageResources resources(doc, font);
  std::vector<RenderedPage> pages;
  for (std::size_t i = 0; i < doc.pages.size(); ++i) {
    const PageIR& page = doc.pages[i];
    if (options.mode == OutputMode::kDualAlternating) {
      pages.push_back({page.media_box, render_source_page(doc, page, resources)});
    }
    pages.push_back({page.media_box, render_page(doc, page, typeset[i], resources)});
  }
  return assemble_document(pages, resources, options, warnings);
}

}  // namespace relayout
