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

#include "relayout/pdf_reader.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <unordered_set>

#include "relayout/pdf/document.hpp"
#include "relayout/pdf/font.hpp"
#include "relayout/text.hpp"

namespace relayout {

Matrix compose_matrix(const Matrix& m, const Matrix& ctm) { return compose(m, ctm); }

CharGeometry char_box(std::uint32_t code, const FontRecord& font, const GraphicsState& state,
                      const Matrix& text_matrix, Warnings* warnings) {
  double width = font.default_width;
  if (auto it = font.widths.find(code); it != font.widths.end()) {
    width = it->second;
  } else if (warnings) {
    warnings->push_back({"MissingWidth", font.font_id + ": no width for code " + std::to_string(code)});
  }
  const double size = state.font_size;
  const double th = state.horizontal_scale / 100.0;
  CharGeometry g;
  g.advance = width / 1000.0 * size;
  const Box local{0, state.text_rise + font.descent * size / 1000.0, g.advance * th,
                  state.text_rise + font.ascent * size / 1000.0};
  const Matrix trm = compose(text_matrix, state.ctm);
  g.box = transform_box(trm, local);
  g.baseline_y = apply(trm, 0.0, state.text_rise).y();
  g.effective_size = size * vertical_scale(trm);
  return g;
}

namespace {

using pdf::Array;
using pdf::Dict;
using pdf::Object;
using pdf::Token;
using pdf::TokenKind;

const std::unordered_set<std::string_view> kIgnoredOperators = {
    "w", "J", "j", "M", "d", "ri", "i", "Tr", "BMC", "BDC", "EMC", "BX", "EX", "MP", "DP", "d0", "d1"};

struct TextObject {
  Matrix tm;
  Matrix tlm;
};

struct State {
  GraphicsState gs;
  const pdf::Font* font = nullptr;
  std::string fill_space = "gray";
  std::string stroke_space = "gray";
};

std::string color_space_of(const pdf::Document& doc, const Object& cs_obj, std::size_t* ncomp = nullptr) {
  const Object cs = doc.resolve(cs_obj);
  std::string name;
  if (cs.is_name()) {
    name = cs.name_value();
  } else if (cs.is_array() && !cs.as_array().empty()) {
    const Object head = doc.resolve(cs.as_array()[0]);
    if (head.is_name()) name = head.name_value();
    if (name == "ICCBased" && cs.as_array().size() > 1) {
      const Object stream = doc.resolve(cs.as_array()[1]);
      if (stream.is_stream()) {
        const Object n = doc.get(stream.as_stream().dict, "N");
        if (n.is_number()) {
          if (ncomp) *ncomp = static_cast<std::size_t>(n.as_int());
          return n.as_int() == 1 ? "gray" : (n.as_int() == 4 ? "cmyk" : "rgb");
        }
      }
    }
    if (name == "CalRGB") name = "DeviceRGB";
    if (name == "CalGray") name = "DeviceGray";
  }
  if (name == "DeviceGray" || name == "G") return "gray";
  if (name == "DeviceRGB" || name == "RGB") return "rgb";
  if (name == "DeviceCMYK" || name == "CMYK") return "cmyk";
  return "other:" + name;
}

class Interpreter {
 public:
  Interpreter(const pdf::Document& source, DocumentIR& doc, const ReadOptions& options, Warnings& warnings,
              std::map<std::string, pdf::Font>& fonts, std::map<std::string, std::string>& font_ids)
      : source_(source), doc_(doc), options_(options), warnings_(warnings), fonts_(fonts), font_ids_(font_ids) {}

  PageIR run(const std::string& content, const Dict& resources, Box media_box, int page_number) {
    page_.page_number = page_number;
    page_.media_box = media_box;
    states_.push_back(State{});
    execute(content, resources);
    return std::move(page_);
  }

 private:
  [[noreturn]] void fail(PdfError::Code code, const std::string& what, std::int64_t offset) {
    throw PdfError(code, what, offset);
  }

  void warn(const std::string& code, const std::string& message) {
    if (warned_.insert(code + message).second) warnings_.push_back({code, message});
  }

  State& st() { return states_.back(); }

  std::vector<double> numbers(const std::vector<Object>& ops, std::size_t want, const std::string& op,
                              std::size_t offset) {
    std::vector<double> out;
    for (const auto& o : ops) {
      if (o.is_number()) out.push_back(o.as_number());
    }
    if (out.size() < want) {
      if (options_.lenient) {
        warn("BadOperands", op + " at offset " + std::to_string(offset));
        return {};
      }
      fail(PdfError::Code::kMalformedStream, "too few operands for " + op, static_cast<std::int64_t>(offset));
    }
    // The last `want` operands count when extras are present.
    if (out.size() > want) out.erase(out.begin(), out.end() - static_cast<std::ptrdiff_t>(want));
    return out;
  }

  int current_state_id() {
    const GraphicsState& gs = st().gs;
    if (last_state_ >= 0 && doc_.states[static_cast<std::size_t>(last_state_)] == gs) return last_state_;
    last_state_ = doc_.intern_state(gs);
    return last_state_;
  }

  const pdf::Font* font_for(const Dict& resources, const std::string& name) {
    const Object fonts = source_.get(resources, "Font");
    if (!fonts.is_dict()) return nullptr;
    const Object& entry = pdf::lookup(fonts.as_dict(), name);
    std::string id;
    if (entry.is_ref()) {
      id = "F" + std::to_string(entry.as_ref().num);
    } else if (entry.is_dict()) {
      // Direct font dictionaries are keyed by their serialized form.
      const std::string key = pdf::to_pdf_syntax(entry);
      auto it = font_ids_.find(key);
      if (it == font_ids_.end()) {
        it = font_ids_.emplace(key, "FD" + std::to_string(font_ids_.size() + 1)).first;
      }
      id = it->second;
    } else {
      return nullptr;
    }
    auto it = fonts_.find(id);
    if (it == fonts_.end()) {
      const Object dict = source_.resolve(entry);
      if (!dict.is_dict()) return nullptr;
      pdf::Font font = pdf::load_font(source_, dict.as_dict(), id, &warnings_);
      it = fonts_.emplace(id, std::move(font)).first;
    }
    if (!doc_.find_font(id)) doc_.fonts.push_back(it->second.record());
    if (std::find(page_.pdf_font.begin(), page_.pdf_font.end(), id) == page_.pdf_font.end()) {
      page_.pdf_font.push_back(id);
    }
    return &it->second;
  }

  const pdf::Font& fallback_font() {
    const std::string id = "F0";
    auto it = fonts_.find(id);
    if (it == fonts_.end()) {
      pdf::Dict dict;
      dict["Type"] = Object::name("Font");
      dict["Subtype"] = Object::name("Type1");
      dict["BaseFont"] = Object::name("Helvetica");
      dict["Encoding"] = Object::name("WinAnsiEncoding");
      it = fonts_.emplace(id, pdf::load_font(source_, dict, id, nullptr)).first;
    }
    if (!doc_.find_font(id)) doc_.fonts.push_back(it->second.record());
    if (std::find(page_.pdf_font.begin(), page_.pdf_font.end(), id) == page_.pdf_font.end()) {
      page_.pdf_font.push_back(id);
    }
    return it->second;
  }

  void show_text(const std::string& bytes) {
    if (!st().font) {
      warn("NoFont", "text shown without a font; using Helvetica metrics");
      st().font = &fallback_font();
      st().gs.font_id = st().font->font_id;
    }
    const pdf::Font& font = *st().font;
    GraphicsState& gs = st().gs;
    const double th = gs.horizontal_scale / 100.0;
    for (const auto& glyph : font.decode(bytes, &warnings_)) {
      const double size = gs.font_size;
      const Matrix trm = compose(text_.tm, gs.ctm);
      const double advance = glyph.width / 1000.0 * size;
      const Box local{0, gs.text_rise + font.descent * size / 1000.0, advance * th,
                      gs.text_rise + font.ascent * size / 1000.0};
      CharRecord c;
      c.char_unicode = text::encode(glyph.text);
      c.font_id = font.font_id;
      c.font_size = size * vertical_scale(trm);
      c.box = transform_box(trm, local);
      c.baseline_y = apply(trm, 0.0, gs.text_rise).y();
      c.render_order = static_cast<int>(page_.pdf_character.size()) + 1;
      c.state_id = current_state_id();
      page_.pdf_character.push_back(std::move(c));

      double tx = advance + gs.char_spacing;
      if (glyph.word_space) tx += gs.word_spacing;
      text_.tm = compose(Matrix::translation(tx * th, 0), text_.tm);
    }
  }

  void adjust_text(double amount) {
    const double tx = -amount / 1000.0 * st().gs.font_size * st().gs.horizontal_scale / 100.0;
    text_.tm = compose(Matrix::translation(tx, 0), text_.tm);
  }

  void next_line(double tx, double ty) {
    text_.tlm = compose(Matrix::translation(tx, ty), text_.tlm);
    text_.tm = text_.tlm;
  }

  Box path_box(const std::vector<PathCommand>& path, const Matrix& ctm) const {
    double x0 = std::numeric_limits<double>::infinity(), y0 = x0;
    double x1 = -x0, y1 = -x0;
    auto add = [&](double x, double y) {
      const auto p = apply(ctm, x, y);
      x0 = std::min(x0, p.x());
      y0 = std::min(y0, p.y());
      x1 = std::max(x1, p.x());
      y1 = std::max(y1, p.y());
    };
    for (const auto& cmd : path) {
      const auto& v = cmd.operands;
      if (cmd.op == "re" && v.size() == 4) {
        add(v[0], v[1]);
        add(v[0] + v[2], v[1]);
        add(v[0], v[1] + v[3]);
        add(v[0] + v[2], v[1] + v[3]);
      } else {
        for (std::size_t i = 0; i + 1 < v.size(); i += 2) add(v[i], v[i + 1]);
      }
    }
    if (x0 > x1) return Box{};
    return Box{x0, y0, x1, y1};
  }

  void paint(const std::string& op) {
    const std::vector<PathCommand> path = std::move(path_);
    path_.clear();
    const std::string clip = std::move(pending_clip_);
    pending_clip_.clear();
    if (path.empty()) return;
    const int state_id = current_state_id();
    const Box box = path_box(path, st().gs.ctm);
    if (op != "n") {
      PassthroughOp p;
      p.id = next_op_id_++;
      p.kind = PassthroughKind::kPath;
      p.state_id = state_id;
      p.after_render_order = static_cast<int>(page_.pdf_character.size());
      p.path = path;
      p.paint = op;
      p.parent_clip = st().gs.clip_id;
      p.box = box;
      page_.passthrough_ops.push_back(std::move(p));
    }
    if (!clip.empty()) {
      PassthroughOp c;
      c.id = next_op_id_++;
      c.kind = PassthroughKind::kClip;
      c.state_id = state_id;
      c.after_render_order = static_cast<int>(page_.pdf_character.size());
      c.path = path;
      c.paint = "n";
      c.clip_rule = clip;
      c.parent_clip = st().gs.clip_id;
      c.box = box;
      page_.passthrough_ops.push_back(std::move(c));
      st().gs.clip_id = c.id;
    }
  }

  void add_image(ImageData image) {
    PassthroughOp p;
    p.id = next_op_id_++;
    p.kind = PassthroughKind::kImage;
    p.state_id = current_state_id();
    p.after_render_order = static_cast<int>(page_.pdf_character.size());
    p.parent_clip = st().gs.clip_id;
    p.box = transform_box(st().gs.ctm, Box{0, 0, 1, 1});
    p.image = std::move(image);
    page_.passthrough_ops.push_back(std::move(p));
  }

  ImageData image_from(const Dict& dict, std::string data, std::vector<std::string> remaining) {
    ImageData img;
    auto num = [&](std::initializer_list<const char*> keys, int fallback) {
      for (const char* k : keys) {
        const Object o = source_.get(dict, k);
        if (o.is_number()) return static_cast<int>(o.as_int());
      }
      return fallback;
    };
    auto get_any = [&](std::initializer_list<const char*> keys) {
      for (const char* k : keys) {
        const Object o = source_.get(dict, k);
        if (!o.is_null()) return o;
      }
      return Object();
    };
    img.width = num({"Width", "W"}, 0);
    img.height = num({"Height", "H"}, 0);
    const Object mask = get_any({"ImageMask", "IM"});
    img.image_mask = mask.is_bool() && mask.as_bool();
    img.bits_per_component = img.image_mask ? 1 : num({"BitsPerComponent", "BPC"}, 8);
    for (std::size_t i = 0; i < remaining.size(); ++i) img.filter += (i ? " " : "") + remaining[i];
    if (img.filter == "DCT") img.filter = "DCTDecode";
    if (img.image_mask) {
      img.color_space.clear();
      img.data = std::move(data);
      return img;
    }
    Object cs = get_any({"ColorSpace", "CS"});
    if (cs.is_name() && page_resources_) {
      // Named color spaces live in the resource dictionary.
      const Object spaces = source_.get(*page_resources_, "ColorSpace");
      if (spaces.is_dict()) {
        const Object named = source_.get(spaces.as_dict(), cs.name_value());
        if (!named.is_null()) cs = named;
      }
    }
    std::string space = color_space_of(source_, cs);
    if (space.rfind("other:Indexed", 0) == 0 || space == "other:I") {
      const Array& arr = cs.as_array();
      if (arr.size() == 4 && img.filter.empty() && img.bits_per_component == 8) {
        const std::string base = color_space_of(source_, arr[1]);
        const Object table_obj = source_.resolve(arr[3]);
        std::string table;
        if (table_obj.is_string()) table = table_obj.as_string().bytes;
        else if (table_obj.is_stream()) table = source_.decode_stream(table_obj.as_stream());
        const std::size_t n = base == "gray" ? 1 : (base == "cmyk" ? 4 : 3);
        std::string expanded;
        expanded.reserve(data.size() * n);
        for (unsigned char idx : data) {
          for (std::size_t k = 0; k < n; ++k) {
            const std::size_t at = idx * n + k;
            expanded.push_back(at < table.size() ? table[at] : '\0');
          }
        }
        data = std::move(expanded);
        space = base;
      } else {
        warn("UnsupportedImage", "indexed image kept with gray interpretation");
        space = "gray";
      }
    }
    if (space == "gray") img.color_space = "DeviceGray";
    else if (space == "rgb") img.color_space = "DeviceRGB";
    else if (space == "cmyk") img.color_space = "DeviceCMYK";
    else {
      warn("UnsupportedColorSpace", "image color space " + space.substr(6) + " approximated as DeviceRGB");
      img.color_space = "DeviceRGB";
    }
    if (!source_.get(dict, "SMask").is_null()) warn("SoftMaskDropped", "image soft masks are not carried");
    img.data = std::move(data);
    return img;
  }

  void inline_image(pdf::Lexer& lex, const Dict& resources) {
    Dict dict;
    for (;;) {
      const Token key = lex.next();
      if (key.kind == TokenKind::kKeyword && key.text == "ID") break;
      if (key.kind == TokenKind::kEnd) fail(PdfError::Code::kMalformedStream, "unterminated inline image", static_cast<std::int64_t>(key.offset));
      if (key.kind != TokenKind::kName) continue;
      dict[key.text] = pdf::parse_object(lex);
    }
    std::size_t pos = lex.position();
    const std::string_view data = lex.data();
    if (pos < data.size() && pdf::is_pdf_whitespace(data[pos])) ++pos;
    // Find "EI" delimited by whitespace.
    std::size_t end = pos;
    for (;;) {
      end = data.find("EI", end);
      if (end == std::string_view::npos) fail(PdfError::Code::kMalformedStream, "inline image without EI", static_cast<std::int64_t>(pos));
      const bool before = end == pos || pdf::is_pdf_whitespace(data[end - 1]);
      const bool after = end + 2 >= data.size() || pdf::is_pdf_whitespace(data[end + 2]) || pdf::is_pdf_delimiter(data[end + 2]);
      if (before && after) break;
      end += 2;
    }
    std::size_t data_end = end;
    if (data_end > pos && pdf::is_pdf_whitespace(data[data_end - 1])) --data_end;
    std::string raw(data.substr(pos, data_end - pos));
    lex.seek(end + 2);

    std::vector<std::string> filters;
    const Object f = pdf::lookup(dict, "F").is_null() ? pdf::lookup(dict, "Filter") : pdf::lookup(dict, "F");
    if (f.is_name()) filters.push_back(f.name_value());
    else if (f.is_array()) {
      for (const auto& x : f.as_array()) {
        if (x.is_name()) filters.push_back(x.name_value());
      }
    }
    static const std::map<std::string, std::string> kAbbrev = {
        {"AHx", "ASCIIHexDecode"}, {"A85", "ASCII85Decode"}, {"Fl", "FlateDecode"}, {"DCT", "DCTDecode"},
        {"CCF", "CCITTFaxDecode"}, {"LZW", "LZWDecode"}, {"RL", "RunLengthDecode"}};
    std::vector<std::string> remaining;
    for (std::size_t i = 0; i < filters.size(); ++i) {
      std::string name = filters[i];
      if (auto it = kAbbrev.find(name); it != kAbbrev.end()) name = it->second;
      if (!remaining.empty() || name == "DCTDecode" || name == "CCITTFaxDecode" || name == "JPXDecode" ||
          name == "JBIG2Decode" || name == "LZWDecode" || name == "RunLengthDecode") {
        remaining.push_back(name);
        continue;
      }
      const Object params = pdf::lookup(dict, "DP").is_null() ? pdf::lookup(dict, "DecodeParms") : pdf::lookup(dict, "DP");
      raw = pdf::apply_filter(name, raw, params.is_dict() ? params.as_dict() : Dict{});
    }
    const Dict* saved = page_resources_;
    page_resources_ = &resources;
    add_image(image_from(dict, std::move(raw), std::move(remaining)));
    page_resources_ = saved;
  }

  void do_xobject(const std::string& name, const Dict& resources, std::size_t offset) {
    const Object xobjects = source_.get(resources, "XObject");
    if (!xobjects.is_dict()) {
      warn("MissingXObject", "no XObject resources for /" + name);
      return;
    }
    const Object& entry = pdf::lookup(xobjects.as_dict(), name);
    const Object x = source_.resolve(entry);
    if (!x.is_stream()) {
      warn("MissingXObject", "XObject /" + name + " not found");
      return;
    }
    const pdf::Stream& stream = x.as_stream();
    const Object subtype = source_.get(stream.dict, "Subtype");
    if (subtype.is_name("Image")) {
      std::vector<std::string> remaining;
      std::string data = source_.decode_stream(stream, &remaining);
      const Dict* saved = page_resources_;
      page_resources_ = &resources;
      add_image(image_from(stream.dict, std::move(data), std::move(remaining)));
      page_resources_ = saved;
      return;
    }
    if (!subtype.is_name("Form")) {
      warn("UnsupportedXObject", "XObject /" + name + " skipped");
      return;
    }
    const std::string key = entry.is_ref() ? "X" + std::to_string(entry.as_ref().num) : "/" + name;
    if (std::find(xobject_stack_.begin(), xobject_stack_.end(), key) != xobject_stack_.end()) {
      fail(PdfError::Code::kCyclicXObject, "cyclic form XObject /" + name, static_cast<std::int64_t>(offset));
    }
    if (static_cast<int>(xobject_stack_.size()) >= options_.depth_limit) {
      fail(PdfError::Code::kDepthExceeded, "form XObject nesting exceeds " + std::to_string(options_.depth_limit),
           static_cast<std::int64_t>(offset));
    }
    Matrix form_matrix;
    const Object m = source_.get(stream.dict, "Matrix");
    if (m.is_array() && m.as_array().size() == 6) {
      double v[6];
      for (int i = 0; i < 6; ++i) {
        const Object n = source_.resolve(m.as_array()[static_cast<std::size_t>(i)]);
        v[i] = n.is_number() ? n.as_number() : 0;
      }
      form_matrix = Matrix(v[0], v[1], v[2], v[3], v[4], v[5]);
    }
    const Object form_res = source_.get(stream.dict, "Resources");
    const Dict& inner = form_res.is_dict() ? form_res.as_dict() : resources;
    std::string content;
    try {
      content = source_.decode_stream(stream);
    } catch (const Error& e) {
      fail(PdfError::Code::kMalformedStream, std::string("form content: ") + e.what(), static_cast<std::int64_t>(offset));
    }
    xobject_stack_.push_back(key);
    const std::size_t depth = states_.size();
    states_.push_back(states_.back());
    st().gs.ctm = compose(form_matrix, st().gs.ctm);
    const TextObject saved_text = text_;
    // Keep the resources alive for the recursive call.
    const Dict inner_copy = inner;
    base_depths_.push_back(states_.size());
    execute(content, inner_copy);
    base_depths_.pop_back();
    states_.resize(depth);
    text_ = saved_text;
    xobject_stack_.pop_back();
  }

  void set_color(Color& color, const std::string& space, const std::vector<Object>& ops) {
    std::vector<double> v;
    for (const auto& o : ops) {
      if (o.is_number()) v.push_back(o.as_number());
    }
    if (space == "gray" && v.size() == 1) color = {"gray", v};
    else if (space == "rgb" && v.size() == 3) color = {"rgb", v};
    else if (space == "cmyk" && v.size() == 4) color = {"cmyk", v};
    else if (v.size() == 1) color = {"gray", v};
    else if (v.size() == 3) color = {"rgb", v};
    else if (v.size() == 4) color = {"cmyk", v};
    else warn("ApproximatedColor", "color in space " + space + " left unchanged");
  }

  void unsupported(const std::string& op, std::size_t offset) {
    if (!options_.lenient) {
      fail(PdfError::Code::kUnsupportedOperator, "unsupported operator " + op, static_cast<std::int64_t>(offset));
    }
    warn("UnsupportedOperator", op);
  }

  void execute(const std::string& content, const Dict& resources) {
    pdf::Lexer lex(content);
    std::vector<Object> ops;
    for (;;) {
      Token t;
      try {
        t = lex.next();
      } catch (const PdfError& e) {
        fail(PdfError::Code::kMalformedStream, e.what(), e.offset());
      }
      if (t.kind == TokenKind::kEnd) break;
      if (t.kind != TokenKind::kKeyword || t.text == "true" || t.text == "false" || t.text == "null") {
        try {
          if (t.kind == TokenKind::kInteger) ops.emplace_back(t.integer);
          else if (t.kind == TokenKind::kReal) ops.emplace_back(t.number);
          else if (t.kind == TokenKind::kKeyword) ops.push_back(t.text == "null" ? Object() : Object(t.text == "true"));
          else ops.push_back(pdf::parse_object(lex, t));
        } catch (const PdfError& e) {
          fail(PdfError::Code::kMalformedStream, e.what(), e.offset());
        }
        if (ops.size() > 256) fail(PdfError::Code::kMalformedStream, "operand stack overflow", static_cast<std::int64_t>(t.offset));
        continue;
      }
      operate(t.text, ops, resources, lex, t.offset);
      ops.clear();
    }
  }

  void operate(const std::string& op, const std::vector<Object>& ops, const Dict& resources, pdf::Lexer& lex,
               std::size_t offset) {
    GraphicsState& gs = st().gs;
    auto nums = [&](std::size_t n) { return numbers(ops, n, op, offset); };
    auto last_string = [&]() -> const std::string* {
      for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        if (it->is_string()) return &it->as_string().bytes;
      }
      return nullptr;
    };

    if (op == "q") {
      states_.push_back(states_.back());
    } else if (op == "Q") {
      if (states_.size() > base_depth()) {
        states_.pop_back();
      } else {
        warn("UnbalancedRestore", "Q without matching q");
      }
    } else if (op == "cm") {
      const auto v = nums(6);
      if (v.size() == 6) gs.ctm = compose(Matrix(v[0], v[1], v[2], v[3], v[4], v[5]), gs.ctm);
    } else if (op == "BT") {
      text_ = TextObject{};
    } else if (op == "ET") {
    } else if (op == "Tf") {
      const auto v = nums(1);
      std::string name;
      for (const auto& o : ops) {
        if (o.is_name()) name = o.name_value();
      }
      if (!v.empty()) gs.font_size = std::abs(v[0]);
      const pdf::Font* font = font_for(resources, name);
      if (!font) {
        warn("MissingFontResource", "font /" + name + " not in resources; using Helvetica metrics");
        font = &fallback_font();
      }
      st().font = font;
      gs.font_id = font->font_id;
    } else if (op == "Td") {
      const auto v = nums(2);
      if (v.size() == 2) next_line(v[0], v[1]);
    } else if (op == "TD") {
      const auto v = nums(2);
      if (v.size() == 2) {
        gs.leading = -v[1];
        next_line(v[0], v[1]);
      }
    } else if (op == "Tm") {
      const auto v = nums(6);
      if (v.size() == 6) {
        text_.tlm = Matrix(v[0], v[1], v[2], v[3], v[4], v[5]);
        text_.tm = text_.tlm;
      }
    } else if (op == "T*") {
      next_line(0, -gs.leading);
    } else if (op == "TL") {
      const auto v = nums(1);
      if (!v.empty()) gs.leading = v[0];
    } else if (op == "Tc") {
      const auto v = nums(1);
      if (!v.empty()) gs.char_spacing = v[0];
    } else if (op == "Tw") {
      const auto v = nums(1);
      if (!v.empty()) gs.word_spacing = v[0];
    } else if (op == "Tz") {
      const auto v = nums(1);
      if (!v.empty()) gs.horizontal_scale = v[0];
    } else if (op == "Ts") {
      const auto v = nums(1);
      if (!v.empty()) gs.text_rise = v[0];
    } else if (op == "Tj") {
      if (const auto* s = last_string()) show_text(*s);
    } else if (op == "'") {
      next_line(0, -gs.leading);
      if (const auto* s = last_string()) show_text(*s);
    } else if (op == "\"") {
      const auto v = numbers(ops, 2, op, offset);
      if (v.size() == 2) {
        gs.word_spacing = v[0];
        gs.char_spacing = v[1];
      }
      next_line(0, -gs.leading);
      if (const auto* s = last_string()) show_text(*s);
    } else if (op == "TJ") {
      for (const auto& o : ops) {
        if (!o.is_array()) continue;
        for (const auto& item : o.as_array()) {
          if (item.is_string()) show_text(item.as_string().bytes);
          else if (item.is_number()) adjust_text(item.as_number());
        }
      }
    } else if (op == "m" || op == "l") {
      const auto v = nums(2);
      if (v.size() == 2) path_.push_back({op, v});
    } else if (op == "c") {
      const auto v = nums(6);
      if (v.size() == 6) path_.push_back({op, v});
    } else if (op == "v" || op == "y") {
      const auto v = nums(4);
      if (v.size() == 4) path_.push_back({op, v});
    } else if (op == "re") {
      const auto v = nums(4);
      if (v.size() == 4) path_.push_back({op, v});
    } else if (op == "h") {
      path_.push_back({"h", {}});
    } else if (op == "W" || op == "W*") {
      pending_clip_ = op;
    } else if (op == "n" || op == "f" || op == "F" || op == "f*" || op == "S" || op == "s" || op == "B" ||
               op == "B*" || op == "b" || op == "b*") {
      paint(op == "F" ? "f" : op);
    } else if (op == "Do") {
      for (const auto& o : ops) {
        if (o.is_name()) do_xobject(o.name_value(), resources, offset);
      }
    } else if (op == "BI") {
      inline_image(lex, resources);
    } else if (op == "gs") {
      std::string name;
      for (const auto& o : ops) {
        if (o.is_name()) name = o.name_value();
      }
      warn("ExtGStateIgnored", "graphics state parameter dictionary /" + name + " ignored");
    } else if (op == "g" || op == "G" || op == "rg" || op == "RG" || op == "k" || op == "K") {
      const bool stroke = std::isupper(static_cast<unsigned char>(op[0])) != 0;
      const std::string space = op == "g" || op == "G" ? "gray" : (op == "rg" || op == "RG" ? "rgb" : "cmyk");
      (stroke ? st().stroke_space : st().fill_space) = space;
      set_color(stroke ? gs.stroke_color : gs.fill_color, space, ops);
    } else if (op == "cs" || op == "CS") {
      Object cs;
      for (const auto& o : ops) {
        if (o.is_name()) cs = o;
      }
      if (cs.is_name()) {
        const Object spaces = source_.get(resources, "ColorSpace");
        if (spaces.is_dict()) {
          const Object named = source_.get(spaces.as_dict(), cs.name_value());
          if (!named.is_null()) cs = named;
        }
      }
      const std::string space = color_space_of(source_, cs);
      const bool stroke = op == "CS";
      (stroke ? st().stroke_space : st().fill_space) = space;
      // Initial colour of the new space is black.
      Color& color = stroke ? gs.stroke_color : gs.fill_color;
      if (space == "gray") color = {"gray", {0}};
      else if (space == "rgb") color = {"rgb", {0, 0, 0}};
      else if (space == "cmyk") color = {"cmyk", {0, 0, 0, 1}};
    } else if (op == "sc" || op == "scn" || op == "SC" || op == "SCN") {
      const bool stroke = op[0] == 'S';
      set_color(stroke ? gs.stroke_color : gs.fill_color, stroke ? st().stroke_space : st().fill_space, ops);
    } else if (op == "EI" || op == "ID") {
      warn("StrayImageOperator", op);
    } else if (kIgnoredOperators.count(op)) {
      if (op == "w") {
        const auto v = numbers(ops, 1, op, offset);
        if (!v.empty()) gs.line_width = v[0];
      }
    } else {
      unsupported(op, offset);
    }
  }

  std::size_t base_depth() const { return base_depths_.empty() ? 1 : base_depths_.back(); }

  const pdf::Document& source_;
  DocumentIR& doc_;
  const ReadOptions& options_;
  Warnings& warnings_;
  std::map<std::string, pdf::Font>& fonts_;
  std::map<std::string, std::string>& font_ids_;
  PageIR page_;
  std::vector<State> states_;
  std::vector<std::string> xobject_stack_;
  TextObject text_;
  std::vector<PathCommand> path_;
  std::string pending_clip_;
  int next_op_id_ = 1;
  int last_state_ = -1;
  std::set<std::string> warned_;
  const Dict* page_resources_ = nullptr;
  std::vector<std::size_t> base_depths_;
};

struct ReaderCache {
  std::map<std::string, pdf::Font> fonts;
  std::map<std::string, std::string> font_ids;
};

std::string page_content(const pdf::Document& source, const pdf::PageEntry& page) {
  const Object contents = source.get(page.dict, "Contents");
  std::string out;
  auto append = [&](const Object& o) {
    const Object s = source.resolve(o);
    if (!s.is_stream()) return;
    try {
      out += source.decode_stream(s.as_stream());
    } catch (const Error& e) {
      throw PdfError(PdfError::Code::kMalformedStream, std::string("page content: ") + e.what());
    }
    out += '\n';
  };
  if (contents.is_array()) {
    for (const auto& c : contents.as_array()) append(c);
  } else {
    append(contents);
  }
  return out;
}

PageIR interpret_with_cache(const pdf::Document& source, const pdf::PageEntry& page, int page_number,
                            DocumentIR& doc, const ReadOptions& options, Warnings& warnings, ReaderCache& cache) {
  const Object rotate = source.get(page.dict, "Rotate");
  if (rotate.is_number() && rotate.as_int() % 360 != 0) {
    warnings.push_back({"RotationIgnored", "page " + std::to_string(page_number) + " /Rotate ignored"});
  }
  Interpreter interp(source, doc, options, warnings, cache.fonts, cache.font_ids);
  return interp.run(page_content(source, page), page.resources, page.media_box, page_number);
}

}  // namespace

PageIR interpret_page(const pdf::Document& source, const pdf::PageEntry& page, int page_number, DocumentIR& doc,
                      const ReadOptions& options, Warnings& warnings) {
  ReaderCache cache;
  return interpret_with_cache(source, page, page_number, doc, options, warnings, cache);
}

PageIR interpret_content(std::string_view content, std::string_view resources, DocumentIR& doc,
                         const ReadOptions& options, Warnings& warnings, Box media_box) {
  const pdf::Document source = pdf::Document::empty();
  pdf::Lexer lex(resources);
  const Object res = pdf::parse_object(lex);
  ReaderCache cache;
  Interpreter interp(source, doc, options, warnings, cache.fonts, cache.font_ids);
  return interp.run(std::string(content), res.is_dict() ? res.as_dict() : Dict{}, media_box, 0);
}

ReadResult read_pdf(std::string bytes, const ReadOptions& options) {
  ReadResult result;
  const pdf::Document source = pdf::Document::load(std::move(bytes), &result.warnings);
  ReaderCache cache;
  const auto pages = source.pages();
  for (std::size_t i = 0; i < pages.size(); ++i) {
    result.ir.pages.push_back(interpret_with_cache(source, pages[i], static_cast<int>(i), result.ir, options,
                                                   result.warnings, cache));
  }
  return result;
}

ReadResult read_pdf_file(const std::filesystem::path& path, const ReadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PdfError(PdfError::Code::kMalformedFile, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return read_pdf(ss.str(), options);
}

}  // namespace relayout
