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

#include "relayout/ir_json.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <set>

#include "json.hpp"
#include "relayout/codec.hpp"
#include "relayout/errors.hpp"
#include "relayout/placeholders.hpp"
#include "relayout/text.hpp"

namespace relayout {
namespace {

using Json = nlohmann::ordered_json;

Json box_json(const Box& b) {
  Json j;
  j["x"] = b.x;
  j["y"] = b.y;
  j["x2"] = b.x2;
  j["y2"] = b.y2;
  return j;
}

Json color_json(const Color& c) {
  Json j;
  j["space"] = c.space;
  j["components"] = c.components;
  return j;
}

Json font_json(const FontRecord& f) {
  Json j;
  j["font_id"] = f.font_id;
  j["name"] = f.name;
  j["ascent"] = f.ascent;
  j["descent"] = f.descent;
  j["default_width"] = f.default_width;
  j["embedded"] = f.embedded;
  Json widths = Json::object();
  for (const auto& [code, w] : f.widths) widths[std::to_string(code)] = w;
  j["widths"] = std::move(widths);
  return j;
}

Json state_json(const GraphicsState& s) {
  Json j;
  const auto m = s.ctm.coefficients();
  j["ctm"] = Json::array({m[0], m[1], m[2], m[3], m[4], m[5]});
  j["clip_id"] = s.clip_id;
  j["font_id"] = s.font_id;
  j["font_size"] = s.font_size;
  j["char_spacing"] = s.char_spacing;
  j["word_spacing"] = s.word_spacing;
  j["horizontal_scale"] = s.horizontal_scale;
  j["leading"] = s.leading;
  j["text_rise"] = s.text_rise;
  j["line_width"] = s.line_width;
  j["fill_color"] = color_json(s.fill_color);
  j["stroke_color"] = color_json(s.stroke_color);
  return j;
}

Json placeholder_json(const Placeholder& p) {
  Json j;
  j["type"] = std::string(to_string(p.type));
  j["id"] = p.id;
  j["placeholder"] = p.placeholder;
  j["source_chars"] = p.source_chars;
  if (!p.lead_ws.empty()) j["lead_ws"] = p.lead_ws;
  if (!p.trail_ws.empty()) j["trail_ws"] = p.trail_ws;
  j["source_units"] = p.source_units;
  j["source_ops"] = p.source_ops;
  return j;
}

Json paragraph_json(const Paragraph& p) {
  Json j;
  j["input"] = p.input;
  j["output"] = p.output;
  j["pdf_unicode"] = p.pdf_unicode;
  j["layout_label"] = p.layout_label;
  Json phs = Json::array();
  for (const auto& ph : p.placeholders) phs.push_back(placeholder_json(ph));
  j["placeholders"] = std::move(phs);
  j["box"] = box_json(p.box);
  j["unit_ids"] = p.unit_ids;
  if (p.continuation_of) {
    j["continuation_of"] = Json{{"page", p.continuation_of->page},
                                {"index", p.continuation_of->index}};
  } else {
    j["continuation_of"] = nullptr;
  }
  j["element_id"] = p.element_id;
  j["font_id"] = p.font_id;
  j["base_size"] = p.base_size;
  j["status"] = std::string(to_string(p.status));
  j["failure"] = p.failure;
  if (p.scale) {
    j["scale"] = Json{{"gamma", p.scale->gamma},
                      {"iterations", p.scale->iterations},
                      {"status", std::string(to_string(p.scale->status))}};
  } else {
    j["scale"] = nullptr;
  }
  return j;
}

Json op_json(const PassthroughOp& op) {
  Json j;
  j["id"] = op.id;
  j["kind"] = std::string(to_string(op.kind));
  j["state_id"] = op.state_id;
  j["after_render_order"] = op.after_render_order;
  Json path = Json::array();
  for (const auto& cmd : op.path) path.push_back(Json{{"op", cmd.op}, {"operands", cmd.operands}});
  j["path"] = std::move(path);
  j["paint"] = op.paint;
  j["clip_rule"] = op.clip_rule;
  j["parent_clip"] = op.parent_clip;
  j["box"] = box_json(op.box);
  if (op.image) {
    const auto& im = *op.image;
    j["image"] = Json{{"width", im.width},
                      {"height", im.height},
                      {"bits_per_component", im.bits_per_component},
                      {"color_space", im.color_space},
                      {"filter", im.filter},
                      {"image_mask", im.image_mask},
                      {"data", base64_encode(im.data)}};
  } else {
    j["image"] = nullptr;
  }
  return j;
}

Json page_json(const PageIR& page) {
  Json j;
  j["page_number"] = page.page_number;
  j["unit"] = page.unit;
  j["media_box"] = box_json(page.media_box);
  Json layout = Json::array();
  for (const auto& e : page.page_layout) {
    Json ej;
    ej["id"] = e.id;
    ej["class_name"] = e.class_name;
    ej["box"] = box_json(e.box);
    ej["conf"] = e.conf;
    layout.push_back(std::move(ej));
  }
  j["page_layout"] = std::move(layout);
  j["pdf_font"] = page.pdf_font;
  Json chars = Json::array();
  for (const auto& c : page.pdf_character) {
    Json cj;
    cj["char_unicode"] = c.char_unicode;
    cj["font_id"] = c.font_id;
    cj["font_size"] = c.font_size;
    cj["box"] = box_json(c.box);
    cj["render_order"] = c.render_order;
    cj["baseline_y"] = c.baseline_y;
    cj["state_id"] = c.state_id;
    chars.push_back(std::move(cj));
  }
  j["pdf_character"] = std::move(chars);
  Json paras = Json::array();
  for (const auto& p : page.paragraph) paras.push_back(paragraph_json(p));
  j["paragraph"] = std::move(paras);
  Json ops = Json::array();
  for (const auto& op : page.passthrough_ops) ops.push_back(op_json(op));
  j["passthrough_ops"] = std::move(ops);
  return j;
}

// Strict reader over a JSON value that tracks the pointer path for errors.
class Node {
 public:
  Node(const Json& value, std::string path, const DeserializeOptions& options)
      : value_(value), path_(std::move(path)), options_(options) {}

  const std::string& path() const { return path_; }
  const Json& value() const { return value_; }

  [[noreturn]] void fail(const std::string& what) const { throw SchemaError(path_, what); }

  void expect_object(std::initializer_list<std::string_view> allowed) const {
    if (!value_.is_object()) fail("expected object");
    if (options_.lenient) return;
    for (const auto& item : value_.items()) {
      if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
        throw SchemaError(path_ + "/" + item.key(), "unknown field");
      }
    }
  }

  bool has(std::string_view key) const {
    return value_.is_object() && value_.contains(std::string(key)) &&
           !value_.at(std::string(key)).is_null();
  }

  Node at(std::string_view key) const {
    const std::string k(key);
    if (!value_.is_object() || !value_.contains(k)) {
      throw SchemaError(path_ + "/" + k, "missing required field");
    }
    return Node(value_.at(k), path_ + "/" + k, options_);
  }

  Node element(std::size_t i) const {
    return Node(value_.at(i), path_ + "/" + std::to_string(i), options_);
  }

  std::size_t array_size() const {
    if (!value_.is_array()) fail("expected array");
    return value_.size();
  }

  double number() const {
    if (!value_.is_number()) fail("expected number");
    const double v = value_.get<double>();
    if (!std::isfinite(v)) fail("non-finite number");
    return v;
  }

  int integer() const {
    if (!value_.is_number_integer()) {
      if (value_.is_number_float()) {
        const double v = value_.get<double>();
        if (std::floor(v) == v && std::abs(v) < 2e9) return static_cast<int>(v);
      }
      fail("expected integer");
    }
    return value_.get<int>();
  }

  bool boolean() const {
    if (!value_.is_boolean()) fail("expected boolean");
    return value_.get<bool>();
  }

  std::string string() const {
    if (!value_.is_string()) fail("expected string");
    return value_.get<std::string>();
  }

  std::vector<int> int_array() const {
    std::vector<int> out;
    for (std::size_t i = 0, n = array_size(); i < n; ++i) out.push_back(element(i).integer());
    return out;
  }

  std::vector<double> number_array() const {
    std::vector<double> out;
    for (std::size_t i = 0, n = array_size(); i < n; ++i) out.push_back(element(i).number());
    return out;
  }

  double number_or(std::string_view key, double fallback) const {
    return has(key) ? at(key).number() : fallback;
  }
  int integer_or(std::string_view key, int fallback) const {
    return has(key) ? at(key).integer() : fallback;
  }
  std::string string_or(std::string_view key, std::string fallback) const {
    return has(key) ? at(key).string() : fallback;
  }

 private:
  const Json& value_;
  std::string path_;
  const DeserializeOptions& options_;
};

Box read_box(const Node& n) {
  n.expect_object({"x", "y", "x2", "y2"});
  Box b{n.at("x").number(), n.at("y").number(), n.at("x2").number(), n.at("y2").number()};
  if (!(b.x2 >= b.x) || !(b.y2 >= b.y)) n.fail("malformed box (x2 < x or y2 < y)");
  return b;
}

Color read_color(const Node& n) {
  n.expect_object({"space", "components"});
  Color c;
  c.space = n.at("space").string();
  c.components = n.at("components").number_array();
  return c;
}

FontRecord read_font(const Node& n) {
  n.expect_object({"font_id", "name", "ascent", "descent", "default_width", "embedded", "widths"});
  FontRecord f;
  f.font_id = n.at("font_id").string();
  f.name = n.at("name").string();
  f.ascent = n.at("ascent").integer();
  f.descent = n.at("descent").integer();
  f.default_width = n.number_or("default_width", 0);
  if (n.has("embedded")) f.embedded = n.at("embedded").boolean();
  if (n.has("widths")) {
    const Node w = n.at("widths");
    if (!w.value().is_object()) w.fail("expected object");
    for (const auto& item : w.value().items()) {
      const Node entry(item.value(), w.path() + "/" + item.key(), DeserializeOptions{});
      std::uint32_t code = 0;
      try {
        code = static_cast<std::uint32_t>(std::stoul(item.key()));
      } catch (const std::exception&) {
        entry.fail("width key is not a character code");
      }
      f.widths[code] = entry.number();
    }
  }
  return f;
}

GraphicsState read_state(const Node& n) {
  n.expect_object({"ctm", "clip_id", "font_id", "font_size", "char_spacing", "word_spacing",
                   "horizontal_scale", "leading", "text_rise", "line_width", "fill_color",
                   "stroke_color"});
  GraphicsState s;
  const auto m = n.at("ctm").number_array();
  if (m.size() != 6) n.at("ctm").fail("expected six coefficients");
  s.ctm = Matrix(m[0], m[1], m[2], m[3], m[4], m[5]);
  s.clip_id = n.integer_or("clip_id", 0);
  s.font_id = n.string_or("font_id", "");
  s.font_size = n.number_or("font_size", 0);
  if (s.font_size < 0) n.at("font_size").fail("negative font size");
  s.char_spacing = n.number_or("char_spacing", 0);
  s.word_spacing = n.number_or("word_spacing", 0);
  s.horizontal_scale = n.number_or("horizontal_scale", 100);
  s.leading = n.number_or("leading", 0);
  s.text_rise = n.number_or("text_rise", 0);
  s.line_width = n.number_or("line_width", 1);
  if (n.has("fill_color")) s.fill_color = read_color(n.at("fill_color"));
  if (n.has("stroke_color")) s.stroke_color = read_color(n.at("stroke_color"));
  return s;
}

Placeholder read_placeholder(const Node& n) {
  n.expect_object({"type", "id", "placeholder", "source_chars", "lead_ws", "trail_ws",
                   "source_units", "source_ops"});
  Placeholder p;
  const auto type_name = n.at("type").string();
  const auto type = placeholder_type_from(type_name);
  if (!type) n.at("type").fail("unknown placeholder type '" + type_name + "'");
  p.type = *type;
  p.id = n.at("id").integer();
  if (p.id < 1) n.at("id").fail("placeholder id must be positive");
  p.placeholder = n.at("placeholder").string();
  p.source_chars = n.at("source_chars").string();
  p.lead_ws = n.string_or("lead_ws", "");
  p.trail_ws = n.string_or("trail_ws", "");
  if (n.has("source_units")) p.source_units = n.at("source_units").int_array();
  if (n.has("source_ops")) p.source_ops = n.at("source_ops").int_array();
  return p;
}

Paragraph read_paragraph(const Node& n) {
  n.expect_object({"input", "output", "pdf_unicode", "layout_label", "placeholders", "box",
                   "unit_ids", "continuation_of", "element_id", "font_id", "base_size", "status",
                   "failure", "scale"});
  Paragraph p;
  p.input = n.at("input").string();
  p.output = n.at("output").string();
  p.pdf_unicode = n.at("pdf_unicode").string();
  p.layout_label = n.at("layout_label").string();
  const Node phs = n.at("placeholders");
  for (std::size_t i = 0, k = phs.array_size(); i < k; ++i) {
    p.placeholders.push_back(read_placeholder(phs.element(i)));
  }
  if (n.has("box")) p.box = read_box(n.at("box"));
  if (n.has("unit_ids")) p.unit_ids = n.at("unit_ids").int_array();
  if (n.has("continuation_of")) {
    const Node c = n.at("continuation_of");
    c.expect_object({"page", "index"});
    p.continuation_of = ParagraphRef{c.at("page").integer(), c.at("index").integer()};
  }
  p.element_id = n.integer_or("element_id", 0);
  p.font_id = n.string_or("font_id", "");
  p.base_size = n.number_or("base_size", 0);
  if (n.has("status")) {
    const auto s = n.at("status").string();
    bool found = false;
    for (auto st : {TranslationStatus::kPending, TranslationStatus::kTranslated,
                    TranslationStatus::kFailed, TranslationStatus::kSkipped}) {
      if (to_string(st) == s) {
        p.status = st;
        found = true;
      }
    }
    if (!found) n.at("status").fail("unknown translation status '" + s + "'");
  }
  p.failure = n.string_or("failure", "");
  if (n.has("scale")) {
    const Node s = n.at("scale");
    s.expect_object({"gamma", "iterations", "status"});
    ScaleRecord rec;
    rec.gamma = s.at("gamma").number();
    rec.iterations = s.at("iterations").integer();
    const auto st = s.at("status").string();
    if (st == "Fit") {
      rec.status = FitStatus::kFit;
    } else if (st == "OverflowAtMin") {
      rec.status = FitStatus::kOverflowAtMin;
    } else {
      s.at("status").fail("unknown fit status '" + st + "'");
    }
    p.scale = rec;
  }
  return p;
}

PassthroughOp read_op(const Node& n) {
  n.expect_object({"id", "kind", "state_id", "after_render_order", "path", "paint", "clip_rule",
                   "parent_clip", "box", "image"});
  PassthroughOp op;
  op.id = n.at("id").integer();
  const auto kind = n.at("kind").string();
  if (kind == "path") {
    op.kind = PassthroughKind::kPath;
  } else if (kind == "clip") {
    op.kind = PassthroughKind::kClip;
  } else if (kind == "image") {
    op.kind = PassthroughKind::kImage;
  } else {
    n.at("kind").fail("unknown pass-through kind '" + kind + "'");
  }
  op.state_id = n.integer_or("state_id", 0);
  op.after_render_order = n.integer_or("after_render_order", 0);
  if (n.has("path")) {
    const Node path = n.at("path");
    for (std::size_t i = 0, k = path.array_size(); i < k; ++i) {
      const Node cmd = path.element(i);
      cmd.expect_object({"op", "operands"});
      op.path.push_back(PathCommand{cmd.at("op").string(), cmd.at("operands").number_array()});
    }
  }
  op.paint = n.string_or("paint", "");
  op.clip_rule = n.string_or("clip_rule", "");
  op.parent_clip = n.integer_or("parent_clip", 0);
  if (n.has("box")) op.box = read_box(n.at("box"));
  if (n.has("image")) {
    const Node im = n.at("image");
    im.expect_object({"width", "height", "bits_per_component", "color_space", "filter",
                      "image_mask", "data"});
    ImageData data;
    data.width = im.at("width").integer();
    data.height = im.at("height").integer();
    data.bits_per_component = im.integer_or("bits_per_component", 8);
    data.color_space = im.string_or("color_space", "DeviceGray");
    data.filter = im.string_or("filter", "");
    if (im.has("image_mask")) data.image_mask = im.at("image_mask").boolean();
    const auto encoded = im.at("data").string();
    auto decoded = base64_decode(encoded);
    if (!decoded) im.at("data").fail("invalid base64");
    data.data = std::move(*decoded);
    op.image = std::move(data);
  }
  return op;
}

void hoist_font(DocumentIR& doc, FontRecord font) {
  if (!doc.find_font(font.font_id)) doc.fonts.push_back(std::move(font));
}

PageIR read_page(const Node& n, DocumentIR& doc) {
  n.expect_object({"page_number", "unit", "media_box", "page_layout", "pdf_font", "pdf_character",
                   "paragraph", "passthrough_ops"});
  PageIR page;
  page.page_number = n.at("page_number").integer();
  page.unit = n.at("unit").string();
  if (page.unit != "point") n.at("unit").fail("unit must be \"point\"");
  if (n.has("media_box")) page.media_box = read_box(n.at("media_box"));
  if (n.has("page_layout")) {
    const Node layout = n.at("page_layout");
    for (std::size_t i = 0, k = layout.array_size(); i < k; ++i) {
      const Node e = layout.element(i);
      e.expect_object({"id", "class_name", "box", "conf"});
      LayoutElement el;
      el.id = e.at("id").integer();
      el.class_name = e.at("class_name").string();
      el.box = read_box(e.at("box"));
      el.conf = e.at("conf").number();
      if (el.conf < 0.0 || el.conf > 1.0) e.at("conf").fail("conf outside [0,1]");
      page.page_layout.push_back(std::move(el));
    }
  }
  if (n.has("pdf_font")) {
    const Node fonts = n.at("pdf_font");
    for (std::size_t i = 0, k = fonts.array_size(); i < k; ++i) {
      const Node f = fonts.element(i);
      if (f.value().is_string()) {
        page.pdf_font.push_back(f.string());
      } else {
        // Inline font records are hoisted into the document table.
        FontRecord rec = read_font(f);
        page.pdf_font.push_back(rec.font_id);
        hoist_font(doc, std::move(rec));
      }
    }
  }
  if (n.has("pdf_character")) {
    const Node chars = n.at("pdf_character");
    for (std::size_t i = 0, k = chars.array_size(); i < k; ++i) {
      const Node c = chars.element(i);
      c.expect_object({"char_unicode", "font_id", "font_size", "box", "render_order",
                       "baseline_y", "state_id"});
      CharRecord rec;
      rec.char_unicode = c.at("char_unicode").string();
      rec.font_id = c.string_or("font_id", "");
      rec.font_size = c.at("font_size").number();
      if (rec.font_size < 0) c.at("font_size").fail("negative font size");
      rec.box = read_box(c.at("box"));
      rec.render_order = c.at("render_order").integer();
      rec.baseline_y = c.number_or("baseline_y", rec.box.y);
      rec.state_id = c.integer_or("state_id", 0);
      page.pdf_character.push_back(std::move(rec));
    }
  }
  if (n.has("paragraph")) {
    const Node paras = n.at("paragraph");
    for (std::size_t i = 0, k = paras.array_size(); i < k; ++i) {
      page.paragraph.push_back(read_paragraph(paras.element(i)));
    }
  }
  if (n.has("passthrough_ops")) {
    const Node ops = n.at("passthrough_ops");
    for (std::size_t i = 0, k = ops.array_size(); i < k; ++i) {
      page.passthrough_ops.push_back(read_op(ops.element(i)));
    }
  }
  return page;
}

void add(ValidationReport& report, std::string code, std::string location, std::string message) {
  report.violations.push_back({std::move(code), std::move(location), std::move(message)});
}

void check_box(ValidationReport& report, const Box& box, const std::string& where) {
  if (!box.is_finite()) {
    add(report, "NonFiniteBox", where, "box has non-finite coordinates");
  } else if (!box.is_well_formed()) {
    add(report, "MalformedBox", where, "box has x2 < x or y2 < y");
  }
}

}  // namespace

std::string serialize_ir(const DocumentIR& doc) {
  Json j;
  j["ir_version"] = std::string(kIrVersion);
  j["source_lang"] = doc.source_lang;
  j["target_lang"] = doc.target_lang;
  Json fonts = Json::array();
  for (const auto& f : doc.fonts) fonts.push_back(font_json(f));
  j["fonts"] = std::move(fonts);
  Json states = Json::array();
  for (const auto& s : doc.states) states.push_back(state_json(s));
  j["states"] = std::move(states);
  Json pages = Json::array();
  for (const auto& p : doc.pages) pages.push_back(page_json(p));
  j["pages"] = std::move(pages);
  return j.dump(2) + "\n";
}

DocumentIR deserialize_ir(std::string_view text, DeserializeOptions options) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("", std::string("not valid JSON: ") + e.what());
  }
  const Node root(j, "", options);
  root.expect_object({"ir_version", "source_lang", "target_lang", "fonts", "states", "pages"});
  const auto version = root.at("ir_version").string();
  if (version != kIrVersion) root.at("ir_version").fail("unsupported ir_version '" + version + "'");
  DocumentIR doc;
  doc.source_lang = root.string_or("source_lang", "");
  doc.target_lang = root.string_or("target_lang", "");
  if (root.has("fonts")) {
    const Node fonts = root.at("fonts");
    for (std::size_t i = 0, k = fonts.array_size(); i < k; ++i) {
      doc.fonts.push_back(read_font(fonts.element(i)));
    }
  }
  if (root.has("states")) {
    const Node states = root.at("states");
    for (std::size_t i = 0, k = states.array_size(); i < k; ++i) {
      doc.states.push_back(read_state(states.element(i)));
    }
  }
  const Node pages = root.at("pages");
  for (std::size_t i = 0, k = pages.array_size(); i < k; ++i) {
    doc.pages.push_back(read_page(pages.element(i), doc));
  }
  return doc;
}

std::size_t ValidationReport::count(std::string_view code) const {
  return static_cast<std::size_t>(std::count_if(
      violations.begin(), violations.end(), [&](const Violation& v) { return v.code == code; }));
}

ValidationReport validate_ir(const DocumentIR& doc) {
  ValidationReport report;
  std::set<std::string> font_ids;
  for (std::size_t i = 0; i < doc.fonts.size(); ++i) {
    const auto& f = doc.fonts[i];
    const std::string where = "/fonts/" + std::to_string(i);
    if (!font_ids.insert(f.font_id).second) {
      add(report, "DuplicateFontId", where, "font id '" + f.font_id + "' repeated");
    }
    if (f.ascent <= f.descent) add(report, "AscentNotAboveDescent", where, "ascent <= descent");
    if (f.descent > 0) add(report, "PositiveDescent", where, "descent must be <= 0");
  }
  std::set<int> char_states;
  for (const auto& page : doc.pages) {
    for (const auto& c : page.pdf_character) char_states.insert(c.state_id);
  }
  for (std::size_t i = 0; i < doc.states.size(); ++i) {
    const auto& s = doc.states[i];
    const std::string where = "/states/" + std::to_string(i);
    if (!s.ctm.is_finite()) {
      add(report, "NonFiniteMatrix", where, "ctm has non-finite coefficients");
    } else if (s.ctm.is_degenerate() && char_states.count(static_cast<int>(i))) {
      add(report, "DegenerateMatrix", where, "text is shown under a singular ctm");
    }
    if (s.font_size < 0) add(report, "NegativeFontSize", where, "font_size < 0");
    if (!s.font_id.empty() && !font_ids.count(s.font_id)) {
      add(report, "DanglingFontRef", where, "state references unknown font '" + s.font_id + "'");
    }
  }
  for (std::size_t pi = 0; pi < doc.pages.size(); ++pi) {
    const auto& page = doc.pages[pi];
    const std::string pw = "/pages/" + std::to_string(pi);
    if (page.page_number != static_cast<int>(pi)) {
      add(report, "PageNumberMismatch", pw, "page_number does not match position");
    }
    if (page.unit != "point") add(report, "BadUnit", pw, "unit must be point");
    check_box(report, page.media_box, pw + "/media_box");
    std::set<int> element_ids;
    for (std::size_t i = 0; i < page.page_layout.size(); ++i) {
      const auto& e = page.page_layout[i];
      const std::string where = pw + "/page_layout/" + std::to_string(i);
      if (!element_ids.insert(e.id).second) {
        add(report, "DuplicateElementId", where, "element id repeated");
      }
      if (!(e.conf >= 0.0 && e.conf <= 1.0)) add(report, "ConfOutOfRange", where, "conf outside [0,1]");
      check_box(report, e.box, where + "/box");
    }
    for (std::size_t i = 0; i < page.pdf_font.size(); ++i) {
      if (!font_ids.count(page.pdf_font[i])) {
        add(report, "DanglingFontRef", pw + "/pdf_font/" + std::to_string(i),
            "unknown font '" + page.pdf_font[i] + "'");
      }
    }
    int last_order = 0;
    for (std::size_t i = 0; i < page.pdf_character.size(); ++i) {
      const auto& c = page.pdf_character[i];
      const std::string where = pw + "/pdf_character/" + std::to_string(i);
      if (!font_ids.count(c.font_id)) {
        add(report, "DanglingFontRef", where, "unknown font '" + c.font_id + "'");
      }
      if (c.render_order <= last_order) {
        add(report, "RenderOrderNotIncreasing", where, "render_order not strictly increasing");
      }
      last_order = c.render_order;
      if (c.font_size < 0) add(report, "NegativeFontSize", where, "font_size < 0");
      check_box(report, c.box, where + "/box");
      if (c.state_id < 0 || static_cast<std::size_t>(c.state_id) >= doc.states.size()) {
        add(report, "DanglingStateRef", where, "state_id does not resolve");
      }
    }
    std::set<int> op_ids;
    std::set<int> clip_ids;
    for (std::size_t i = 0; i < page.passthrough_ops.size(); ++i) {
      const auto& op = page.passthrough_ops[i];
      const std::string where = pw + "/passthrough_ops/" + std::to_string(i);
      if (!op_ids.insert(op.id).second) add(report, "DuplicateOpId", where, "op id repeated");
      if (op.kind == PassthroughKind::kClip) clip_ids.insert(op.id);
      if (op.state_id < 0 || static_cast<std::size_t>(op.state_id) >= doc.states.size()) {
        add(report, "DanglingStateRef", where, "state_id does not resolve");
      }
      if (op.parent_clip != 0 && !clip_ids.count(op.parent_clip)) {
        add(report, "DanglingClipRef", where, "parent_clip does not resolve");
      }
      check_box(report, op.box, where + "/box");
      if (op.kind == PassthroughKind::kImage && !op.image) {
        add(report, "MissingImageData", where, "image op without image data");
      }
    }
    for (std::size_t i = 0; i < page.paragraph.size(); ++i) {
      const auto& p = page.paragraph[i];
      const std::string where = pw + "/paragraph/" + std::to_string(i);
      check_box(report, p.box, where + "/box");
      std::set<int> ids;
      for (const auto& ph : p.placeholders) {
        if (!ids.insert(ph.id).second) {
          add(report, "DuplicatePlaceholderId", where, "placeholder id " + std::to_string(ph.id));
        }
        if (ph.placeholder != placeholder_token(ph.id)) {
          add(report, "PlaceholderTokenMismatch", where, "token '" + ph.placeholder + "'");
        }
        for (int u : ph.source_units) {
          if (!page.find_char(u)) add(report, "DanglingUnitRef", where, "unknown char unit");
        }
        for (int o : ph.source_ops) {
          if (!page.find_op(o)) add(report, "DanglingOpRef", where, "unknown op unit");
        }
      }
      std::multiset<int> token_ids;
      for (const auto& tok : scan_tokens(p.input)) {
        if (tok.id) token_ids.insert(*tok.id);
      }
      for (int id : token_ids) {
        if (!ids.count(id)) {
          add(report, "MissingPlaceholderRecord", where, "input token {v" + std::to_string(id) + "}");
        } else if (token_ids.count(id) > 1) {
          add(report, "DuplicatePlaceholderToken", where, "input token {v" + std::to_string(id) + "}");
        }
      }
      for (int id : ids) {
        if (!token_ids.count(id)) {
          add(report, "UnusedPlaceholderRecord", where, "record {v" + std::to_string(id) + "}");
        }
      }
      if (restore_text(p.input, p.placeholders) != p.pdf_unicode) {
        add(report, "UnmaskMismatch", where, "unmasked input differs from pdf_unicode");
      }
      if (!p.unit_ids.empty()) {
        if (p.unit_ids.size() != text::length(p.pdf_unicode)) {
          add(report, "UnitIdLengthMismatch", where, "unit_ids not parallel to pdf_unicode");
        }
        for (int u : p.unit_ids) {
          if (u > 0 && !page.find_char(u)) {
            add(report, "DanglingUnitRef", where, "unknown char unit");
            break;
          }
          if (u < 0 && !page.find_op(-u)) {
            add(report, "DanglingOpRef", where, "unknown op unit");
            break;
          }
        }
      }
      if (p.continuation_of) {
        const auto& ref = *p.continuation_of;
        const bool ok = ref.page >= 0 && static_cast<std::size_t>(ref.page) < doc.pages.size() &&
                        ref.index >= 0 &&
                        static_cast<std::size_t>(ref.index) < doc.pages[ref.page].paragraph.size() &&
                        (ref.page < static_cast<int>(pi) ||
                         (ref.page == static_cast<int>(pi) && ref.index < static_cast<int>(i)));
        if (!ok) add(report, "DanglingContinuation", where, "continuation_of does not resolve");
      }
    }
  }
  return report;
}

}  // namespace relayout
