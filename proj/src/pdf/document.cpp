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

#include "relayout/pdf/document.hpp"

#include <algorithm>
#include <cstdlib>
#include <cctype>
#include <cstring>
#include <functional>
#include <set>

#include "relayout/codec.hpp"

namespace relayout::pdf {
namespace {

[[noreturn]] void bad_file(const std::string& what, std::int64_t offset = -1) {
  throw PdfError(PdfError::Code::kMalformedFile, what, offset);
}

std::string png_unpredict(std::string_view data, int columns, int colors, int bpc, int predictor) {
  const int bpp = std::max(1, (colors * bpc + 7) / 8);
  const std::size_t row_len = static_cast<std::size_t>((columns * colors * bpc + 7) / 8);
  if (predictor < 10) {
    if (predictor == 2 && bpc == 8) {
      std::string out(data);
      for (std::size_t r = 0; r + row_len <= out.size(); r += row_len) {
        for (std::size_t i = bpp; i < row_len; ++i) {
          out[r + i] = static_cast<char>(out[r + i] + out[r + i - bpp]);
        }
      }
      return out;
    }
    return std::string(data);
  }
  std::string out;
  std::string prev(row_len, '\0');
  std::size_t pos = 0;
  while (pos + 1 + row_len <= data.size()) {
    const int type = static_cast<unsigned char>(data[pos]);
    std::string row(data.substr(pos + 1, row_len));
    for (std::size_t i = 0; i < row_len; ++i) {
      const int left = i >= static_cast<std::size_t>(bpp) ? static_cast<unsigned char>(row[i - bpp]) : 0;
      const int up = static_cast<unsigned char>(prev[i]);
      const int up_left =
          i >= static_cast<std::size_t>(bpp) ? static_cast<unsigned char>(prev[i - bpp]) : 0;
      int add = 0;
      switch (type) {
        case 0: add = 0; break;
        case 1: add = left; break;
        case 2: add = up; break;
        case 3: add = (left + up) / 2; break;
        case 4: {
          const int p = left + up - up_left;
          const int pa = std::abs(p - left);
          const int pb = std::abs(p - up);
          const int pc = std::abs(p - up_left);
          add = (pa <= pb && pa <= pc) ? left : (pb <= pc ? up : up_left);
          break;
        }
        default: bad_file("unknown PNG predictor row type");
      }
      row[i] = static_cast<char>(static_cast<unsigned char>(row[i]) + add);
    }
    out += row;
    prev = row;
    pos += 1 + row_len;
  }
  return out;
}

std::string ascii_hex_decode(std::string_view data) {
  std::string out;
  int hi = -1;
  for (char c : data) {
    if (c == '>') break;
    int v = -1;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
    if (v < 0) continue;
    if (hi < 0) {
      hi = v;
    } else {
      out.push_back(static_cast<char>(hi * 16 + v));
      hi = -1;
    }
  }
  if (hi >= 0) out.push_back(static_cast<char>(hi * 16));
  return out;
}

std::string ascii85_decode(std::string_view data) {
  std::string out;
  std::uint32_t tuple = 0;
  int count = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const char c = data[i];
    if (c == '~') break;
    if (is_pdf_whitespace(c)) continue;
    if (c == 'z' && count == 0) {
      out.append(4, '\0');
      continue;
    }
    if (c < '!' || c > 'u') bad_file("bad ASCII85 character");
    tuple = tuple * 85 + static_cast<std::uint32_t>(c - '!');
    if (++count == 5) {
      for (int k = 3; k >= 0; --k) out.push_back(static_cast<char>((tuple >> (8 * k)) & 0xFF));
      tuple = 0;
      count = 0;
    }
  }
  if (count > 0) {
    for (int k = count; k < 5; ++k) tuple = tuple * 85 + 84;
    for (int k = 0; k < count - 1; ++k) out.push_back(static_cast<char>((tuple >> (8 * (3 - k))) & 0xFF));
  }
  return out;
}

std::size_t find_last(std::string_view hay, std::string_view needle) {
  const auto pos = hay.rfind(needle);
  return pos;
}

}  // namespace

std::string apply_filter(std::string_view filter, std::string_view data, const Dict& params) {
  if (filter == "FlateDecode" || filter == "Fl") {
    std::string out = inflate(data);
    const Object& pred = lookup(params, "Predictor");
    if (pred.is_number() && pred.as_int() > 1) {
      const auto num = [&](const char* key, int fallback) {
        const Object& o = lookup(params, key);
        return o.is_number() ? static_cast<int>(o.as_int()) : fallback;
      };
      out = png_unpredict(out, num("Columns", 1), num("Colors", 1), num("BitsPerComponent", 8),
                          static_cast<int>(pred.as_int()));
    }
    return out;
  }
  if (filter == "ASCIIHexDecode" || filter == "AHx") return ascii_hex_decode(data);
  if (filter == "ASCII85Decode" || filter == "A85") return ascii85_decode(data);
  throw PdfError(PdfError::Code::kUnsupportedFeature, "unsupported filter " + std::string(filter));
}

Document Document::load(std::string bytes, Warnings* warnings) {
  Document doc;
  doc.bytes_ = std::move(bytes);
  const std::string_view data = doc.bytes_;
  if (data.substr(0, 1024).find("%PDF-") == std::string_view::npos) {
    bad_file("missing %PDF header", 0);
  }
  const auto sx = find_last(data, "startxref");
  bool ok = false;
  if (sx != std::string_view::npos) {
    try {
      Lexer lex(data, sx + 9);
      const Token t = lex.next();
      if (t.kind == TokenKind::kInteger && t.integer >= 0 &&
          static_cast<std::size_t>(t.integer) < data.size()) {
        doc.read_xref_chain(static_cast<std::size_t>(t.integer), warnings);
        ok = !doc.xref_.empty() && !doc.trailer_.empty();
      }
    } catch (const PdfError& e) {
      if (e.code() == PdfError::Code::kEncrypted) throw;
      ok = false;
    }
  }
  if (!ok) doc.rebuild_xref(warnings);
  if (!lookup(doc.trailer_, "Encrypt").is_null()) {
    throw PdfError(PdfError::Code::kEncrypted, "encrypted documents are not supported");
  }
  if (lookup(doc.trailer_, "Root").is_null()) bad_file("trailer has no /Root");
  return doc;
}

void Document::read_xref_chain(std::size_t start, Warnings* warnings) {
  std::set<std::size_t> seen;
  std::optional<std::size_t> pos = start;
  bool first = true;
  while (pos && seen.insert(*pos).second) {
    Lexer lex(bytes_, *pos);
    const Token t = lex.peek();
    Dict trailer;
    if (t.kind == TokenKind::kKeyword && t.text == "xref") {
      const std::size_t after = read_xref_table(*pos);
      Lexer tl(bytes_, after);
      const Token kw = tl.next();
      if (kw.kind != TokenKind::kKeyword || kw.text != "trailer") bad_file("missing trailer", after);
      const Object tr = parse_object(tl);
      if (!tr.is_dict()) bad_file("trailer is not a dictionary", after);
      trailer = tr.as_dict();
      // Hybrid files: the trailer may point at an additional xref stream.
      const Object& xs = lookup(trailer, "XRefStm");
      if (xs.is_number()) {
        try {
          read_xref_stream(static_cast<std::size_t>(xs.as_int()));
        } catch (const PdfError&) {
          if (warnings) warnings->push_back({"BadXRefStm", "ignored unreadable /XRefStm"});
        }
      }
    } else {
      read_xref_stream(*pos);
      const Object obj = parse_indirect_at(*pos, Ref{-1, -1});
      trailer = obj.as_stream().dict;
    }
    if (first) {
      trailer_ = trailer;
      first = false;
    } else {
      for (const auto& [k, v] : trailer) {
        if (!trailer_.count(k)) trailer_[k] = v;
      }
    }
    if (!lookup(trailer, "Encrypt").is_null()) {
      throw PdfError(PdfError::Code::kEncrypted, "encrypted documents are not supported");
    }
    const Object& prev = lookup(trailer, "Prev");
    pos = prev.is_number() ? std::optional<std::size_t>(static_cast<std::size_t>(prev.as_int()))
                           : std::nullopt;
  }
}

std::size_t Document::read_xref_table(std::size_t pos) {
  Lexer lex(bytes_, pos);
  lex.next();  // xref
  for (;;) {
    const Token t = lex.peek();
    if (t.kind != TokenKind::kInteger) break;
    lex.next();
    const Token count = lex.next();
    if (count.kind != TokenKind::kInteger) bad_file("bad xref subsection", t.offset);
    for (std::int64_t i = 0; i < count.integer; ++i) {
      const Token off = lex.next();
      const Token gen = lex.next();
      const Token kind = lex.next();
      if (off.kind != TokenKind::kInteger || gen.kind != TokenKind::kInteger ||
          kind.kind != TokenKind::kKeyword) {
        bad_file("bad xref entry", off.offset);
      }
      const int num = static_cast<int>(t.integer + i);
      if (xref_.count(num)) continue;  // newer sections win
      XrefEntry e;
      e.gen = static_cast<int>(gen.integer);
      if (kind.text == "n") {
        e.kind = XrefEntry::Kind::kOffset;
        e.offset = off.integer;
      }
      xref_[num] = e;
    }
  }
  return lex.position();
}

void Document::read_xref_stream(std::size_t pos) {
  const Object obj = parse_indirect_at(pos, Ref{-1, -1});
  if (!obj.is_stream()) bad_file("xref stream expected", static_cast<std::int64_t>(pos));
  const Stream& s = obj.as_stream();
  if (!lookup(s.dict, "Encrypt").is_null()) {
    throw PdfError(PdfError::Code::kEncrypted, "encrypted documents are not supported");
  }
  const std::string data = decode_stream(s);
  const Object& w = lookup(s.dict, "W");
  if (!w.is_array() || w.as_array().size() != 3) bad_file("xref stream without /W");
  int widths[3];
  for (int i = 0; i < 3; ++i) widths[i] = static_cast<int>(w.as_array()[i].as_int());
  std::vector<std::pair<int, int>> sections;
  const Object& index = lookup(s.dict, "Index");
  if (index.is_array()) {
    const auto& arr = index.as_array();
    for (std::size_t i = 0; i + 1 < arr.size(); i += 2) {
      sections.emplace_back(static_cast<int>(arr[i].as_int()), static_cast<int>(arr[i + 1].as_int()));
    }
  } else {
    sections.emplace_back(0, static_cast<int>(lookup(s.dict, "Size").as_int()));
  }
  const int row = widths[0] + widths[1] + widths[2];
  std::size_t p = 0;
  auto field = [&](int width, std::int64_t fallback) {
    if (width == 0) return fallback;
    std::int64_t v = 0;
    for (int k = 0; k < width; ++k) v = (v << 8) | static_cast<unsigned char>(data[p++]);
    return v;
  };
  for (const auto& [first, count] : sections) {
    for (int i = 0; i < count; ++i) {
      if (p + static_cast<std::size_t>(row) > data.size()) return;
      const auto type = field(widths[0], 1);
      const auto f2 = field(widths[1], 0);
      const auto f3 = field(widths[2], 0);
      const int num = first + i;
      if (xref_.count(num)) continue;
      XrefEntry e;
      if (type == 1) {
        e.kind = XrefEntry::Kind::kOffset;
        e.offset = f2;
        e.gen = static_cast<int>(f3);
      } else if (type == 2) {
        e.kind = XrefEntry::Kind::kCompressed;
        e.offset = f2;
        e.index = static_cast<int>(f3);
      }
      xref_[num] = e;
    }
  }
}

void Document::rebuild_xref(Warnings* warnings) {
  if (warnings) warnings->push_back({"XrefRebuilt", "cross-reference data unusable; scanned objects"});
  xref_.clear();
  cache_.clear();
  const std::string_view data = bytes_;
  std::size_t pos = 0;
  while ((pos = data.find(" obj", pos)) != std::string_view::npos) {
    // Walk back over "num gen".
    std::size_t b = pos;
    while (b > 0 && (std::isdigit(static_cast<unsigned char>(data[b - 1])) || data[b - 1] == ' ')) --b;
    Lexer lex(data, b);
    const Token num = lex.next();
    const Token gen = lex.next();
    if (num.kind == TokenKind::kInteger && gen.kind == TokenKind::kInteger) {
      XrefEntry e;
      e.kind = XrefEntry::Kind::kOffset;
      e.offset = static_cast<std::int64_t>(num.offset);
      e.gen = static_cast<int>(gen.integer);
      xref_[static_cast<int>(num.integer)] = e;
    }
    pos += 4;
  }
  std::size_t tpos = data.rfind("trailer");
  if (tpos != std::string_view::npos) {
    Lexer lex(data, tpos + 7);
    try {
      const Object tr = parse_object(lex);
      if (tr.is_dict()) trailer_ = tr.as_dict();
    } catch (const PdfError&) {
    }
  }
  if (lookup(trailer_, "Root").is_null()) {
    for (const auto& [num, e] : xref_) {
      try {
        const Object o = object(Ref{num, e.gen});
        if (o.is_dict() && lookup(o.as_dict(), "Type").is_name("Catalog")) {
          trailer_["Root"] = Object(Ref{num, e.gen});
          break;
        }
        if (o.is_stream() && lookup(o.as_stream().dict, "Type").is_name("XRef")) {
          for (const auto& [k, v] : o.as_stream().dict) {
            if (k == "Root" || k == "Info" || k == "Encrypt") trailer_[k] = v;
          }
        }
      } catch (const PdfError&) {
      }
    }
  }
  if (xref_.empty()) bad_file("no objects found");
}

Object Document::parse_indirect_at(std::size_t offset, Ref expected) const {
  Lexer lex(bytes_, offset);
  const Token num = lex.next();
  const Token gen = lex.next();
  const Token kw = lex.next();
  if (num.kind != TokenKind::kInteger || gen.kind != TokenKind::kInteger ||
      kw.kind != TokenKind::kKeyword || kw.text != "obj") {
    bad_file("expected indirect object", static_cast<std::int64_t>(offset));
  }
  if (expected.num >= 0 && num.integer != expected.num) {
    bad_file("xref offset points at the wrong object", static_cast<std::int64_t>(offset));
  }
  Object value = parse_object(lex);
  const auto after_value = lex.position();
  const Token next = lex.next();
  if (next.kind == TokenKind::kKeyword && next.text == "stream" && value.is_dict()) {
    std::size_t p = lex.position();
    if (p < bytes_.size() && bytes_[p] == '\r') ++p;
    if (p < bytes_.size() && bytes_[p] == '\n') ++p;
    auto stream = std::make_shared<Stream>();
    stream->dict = value.as_dict();
    const Object& len_obj = lookup(stream->dict, "Length");
    std::int64_t length = -1;
    if (len_obj.is_int()) {
      length = len_obj.as_int();
    } else if (len_obj.is_ref()) {
      const Object resolved = object(len_obj.as_ref());
      if (resolved.is_int()) length = resolved.as_int();
    }
    const std::string_view data = bytes_;
    bool length_ok = length >= 0 && p + static_cast<std::size_t>(length) <= data.size();
    if (length_ok) {
      const auto tail = data.substr(p + static_cast<std::size_t>(length), 32);
      length_ok = tail.find("endstream") != std::string_view::npos;
    }
    if (!length_ok) {
      const auto end = data.find("endstream", p);
      if (end == std::string_view::npos) bad_file("unterminated stream", static_cast<std::int64_t>(p));
      std::size_t e = end;
      if (e > p && data[e - 1] == '\n') --e;
      if (e > p && data[e - 1] == '\r') --e;
      length = static_cast<std::int64_t>(e - p);
    }
    stream->raw = std::string(data.substr(p, static_cast<std::size_t>(length)));
    return Object(std::shared_ptr<const Stream>(std::move(stream)));
  }
  (void)after_value;
  return value;
}

Object Document::load_compressed(const XrefEntry& entry, Ref ref) const {
  const int stm_num = static_cast<int>(entry.offset);
  auto& index = objstm_index_[stm_num];
  auto& data = objstm_data_[stm_num];
  if (index.empty()) {
    const Object stm = object(Ref{stm_num, 0});
    if (!stm.is_stream()) bad_file("object stream missing");
    const Stream& s = stm.as_stream();
    data = decode_stream(s);
    const auto n = lookup(s.dict, "N").as_int();
    const auto first = static_cast<std::size_t>(lookup(s.dict, "First").as_int());
    Lexer lex(data);
    for (std::int64_t i = 0; i < n; ++i) {
      const Token num = lex.next();
      const Token off = lex.next();
      if (num.kind != TokenKind::kInteger || off.kind != TokenKind::kInteger) {
        bad_file("bad object stream header");
      }
      index.emplace_back(static_cast<int>(num.integer), first + static_cast<std::size_t>(off.integer));
    }
  }
  for (const auto& [num, off] : index) {
    if (num == ref.num) {
      Lexer lex(data, off);
      return parse_object(lex);
    }
  }
  if (entry.index >= 0 && static_cast<std::size_t>(entry.index) < index.size()) {
    Lexer lex(data, index[entry.index].second);
    return parse_object(lex);
  }
  bad_file("object not found in object stream");
}

Object Document::object(Ref ref) const {
  if (auto it = cache_.find(ref.num); it != cache_.end()) return it->second;
  auto it = xref_.find(ref.num);
  if (it == xref_.end() || it->second.kind == XrefEntry::Kind::kFree) return Object();
  Object result;
  if (it->second.kind == XrefEntry::Kind::kOffset) {
    if (it->second.offset < 0 || static_cast<std::size_t>(it->second.offset) >= bytes_.size()) {
      bad_file("xref offset out of range");
    }
    result = parse_indirect_at(static_cast<std::size_t>(it->second.offset), ref);
  } else {
    result = load_compressed(it->second, ref);
  }
  cache_[ref.num] = result;
  return result;
}

Object Document::resolve(const Object& obj) const {
  Object cur = obj;
  for (int guard = 0; cur.is_ref() && guard < 32; ++guard) cur = object(cur.as_ref());
  return cur;
}

Object Document::get(const Dict& dict, std::string_view key) const { return resolve(lookup(dict, key)); }

std::string Document::decode_stream(const Stream& stream, std::vector<std::string>* remaining) const {
  const Object filter = get(stream.dict, "Filter");
  const Object params = get(stream.dict, "DecodeParms");
  std::vector<std::string> filters;
  std::vector<Dict> param_list;
  if (filter.is_name()) {
    filters.push_back(filter.name_value());
    param_list.push_back(params.is_dict() ? params.as_dict() : Dict{});
  } else if (filter.is_array()) {
    for (std::size_t i = 0; i < filter.as_array().size(); ++i) {
      const Object f = resolve(filter.as_array()[i]);
      if (f.is_name()) filters.push_back(f.name_value());
      Dict p;
      if (params.is_array() && i < params.as_array().size()) {
        const Object pi = resolve(params.as_array()[i]);
        if (pi.is_dict()) p = pi.as_dict();
      }
      param_list.push_back(p);
    }
  }
  std::string data = stream.raw;
  static const std::set<std::string, std::less<>> kImageCodecs = {
      "DCTDecode", "DCT", "JPXDecode", "CCITTFaxDecode", "CCF", "JBIG2Decode"};
  for (std::size_t i = 0; i < filters.size(); ++i) {
    if (kImageCodecs.count(filters[i])) {
      if (remaining) remaining->assign(filters.begin() + static_cast<std::ptrdiff_t>(i), filters.end());
      return data;
    }
    data = apply_filter(filters[i], data, param_list[i]);
  }
  if (remaining) remaining->clear();
  return data;
}

std::vector<PageEntry> Document::pages() const {
  std::vector<PageEntry> out;
  const Object root = get(trailer_, "Root");
  if (!root.is_dict()) bad_file("catalog missing");
  const Object pages_ref = lookup(root.as_dict(), "Pages");
  std::set<int> visited;

  struct Inherited {
    Dict resources;
    std::optional<Box> media_box;
  };
  auto read_box = [&](const Object& o) -> std::optional<Box> {
    const Object arr = resolve(o);
    if (!arr.is_array() || arr.as_array().size() != 4) return std::nullopt;
    double v[4];
    for (int i = 0; i < 4; ++i) {
      const Object n = resolve(arr.as_array()[i]);
      if (!n.is_number()) return std::nullopt;
      v[i] = n.as_number();
    }
    return Box{std::min(v[0], v[2]), std::min(v[1], v[3]), std::max(v[0], v[2]), std::max(v[1], v[3])};
  };

  std::function<void(const Object&, Inherited, int)> walk = [&](const Object& node_obj,
                                                                Inherited inh, int depth) {
    if (depth > 64) bad_file("page tree too deep");
    std::optional<Ref> ref;
    if (node_obj.is_ref()) {
      ref = node_obj.as_ref();
      if (!visited.insert(ref->num).second) bad_file("cycle in page tree");
    }
    const Object node = resolve(node_obj);
    if (!node.is_dict()) return;
    const Dict& d = node.as_dict();
    const Object res = get(d, "Resources");
    if (res.is_dict()) inh.resources = res.as_dict();
    if (auto mb = read_box(lookup(d, "MediaBox"))) inh.media_box = mb;
    const Object kids = get(d, "Kids");
    const Object type = get(d, "Type");
    if (kids.is_array() && !type.is_name("Page")) {
      for (const auto& kid : kids.as_array()) walk(kid, inh, depth + 1);
      return;
    }
    PageEntry entry;
    entry.ref = ref;
    entry.dict = d;
    entry.resources = inh.resources;
    entry.media_box = inh.media_box.value_or(Box{0, 0, 612, 792});
    out.push_back(std::move(entry));
  };
  walk(pages_ref, Inherited{}, 0);
  return out;
}

}  // namespace relayout::pdf
