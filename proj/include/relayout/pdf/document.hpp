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

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relayout/errors.hpp"
#include "relayout/geometry.hpp"
#include "relayout/pdf/object.hpp"

namespace relayout::pdf {

struct PageEntry {
  std::optional<Ref> ref;
  Dict dict;
  Dict resources;  // inherited resources resolved
  Box media_box;
};

/// Random-access view over a PDF file: cross-reference tables or streams,
/// object streams, and stream filters. Objects are parsed on demand.
class Document {
 public:
  /// Throws PdfError (kEncrypted for encrypted files, kMalformedFile when
  /// the structure cannot be recovered).
  static Document load(std::string bytes, Warnings* warnings = nullptr);
  /// A document without objects; references resolve to null.
  static Document empty() { return Document(); }

  Object resolve(const Object& object) const;
  Object object(Ref ref) const;
  /// Resolves `key` in `dict` through references.
  Object get(const Dict& dict, std::string_view key) const;

  /// Decoded stream bytes. Decoding stops at the first image codec filter
  /// (DCT, JPX, CCITT, JBIG2); `remaining` then receives the filter names
  /// still applied to the returned bytes.
  std::string decode_stream(const Stream& stream, std::vector<std::string>* remaining = nullptr) const;

  std::vector<PageEntry> pages() const;
  const Dict& trailer() const { return trailer_; }
  std::string_view bytes() const { return bytes_; }

 private:
  struct XrefEntry {
    enum class Kind { kFree, kOffset, kCompressed } kind = Kind::kFree;
    std::int64_t offset = 0;  // byte offset, or object stream number
    int index = 0;            // index within the object stream
    int gen = 0;
  };

  void read_xref_chain(std::size_t start, Warnings* warnings);
  std::size_t read_xref_table(std::size_t pos);
  void read_xref_stream(std::size_t pos);
  void rebuild_xref(Warnings* warnings);
  Object parse_indirect_at(std::size_t offset, Ref expected) const;
  Object load_compressed(const XrefEntry& entry, Ref ref) const;

  std::string bytes_;
  Dict trailer_;
  std::map<int, XrefEntry> xref_;
  mutable std::map<int, Object> cache_;
  mutable std::map<int, std::vector<std::pair<int, std::size_t>>> objstm_index_;
  mutable std::map<int, std::string> objstm_data_;
};

/// Applies one named filter; exposed for tests.
std::string apply_filter(std::string_view filter, std::string_view data, const Dict& params);

}  // namespace relayout::pdf
