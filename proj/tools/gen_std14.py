#!/usr/bin/env python3
# Copyright 2026 The relayout Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates src/pdf/std14_data.inc from the Adobe Core14 AFM files.

Usage: gen_std14.py <afm-dir> > src/pdf/std14_data.inc
"""

import os
import sys

from fontTools import agl
from fontTools.encodings.MacRoman import MacRoman
from fontTools.encodings.StandardEncoding import StandardEncoding

FONTS = [
    ("Helvetica", "phvr8a.afm"),
    ("Helvetica-Bold", "phvb8a.afm"),
    ("Helvetica-Oblique", "phvro8a.afm"),
    ("Helvetica-BoldOblique", "phvbo8a.afm"),
    ("Times-Roman", "ptmr8a.afm"),
    ("Times-Bold", "ptmb8a.afm"),
    ("Times-Italic", "ptmri8a.afm"),
    ("Times-BoldItalic", "ptmbi8a.afm"),
    ("Courier", "pcrr8a.afm"),
    ("Courier-Bold", "pcrb8a.afm"),
    ("Courier-Oblique", "pcrro8a.afm"),
    ("Courier-BoldOblique", "pcrbo8a.afm"),
    ("Symbol", "psyr.afm"),
    ("ZapfDingbats", "pzdr.afm"),
]


def parse_afm(path):
    info = {"glyphs": [], "ascent": 0, "descent": 0, "bbox": [0, 0, 0, 0]}
    with open(path, encoding="latin-1") as fh:
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            if parts[0] == "Ascender":
                info["ascent"] = int(parts[1])
            elif parts[0] == "Descender":
                info["descent"] = int(parts[1])
            elif parts[0] == "FontBBox":
                info["bbox"] = [int(v) for v in parts[1:5]]
            elif parts[0] == "C":
                fields = {}
                for item in line.split(";"):
                    kv = item.split()
                    if len(kv) >= 2:
                        fields[kv[0]] = kv[1]
                info["glyphs"].append((int(fields["C"]), fields["N"], int(float(fields["WX"]))))
    if info["ascent"] == 0:
        info["ascent"] = info["bbox"][3]
        info["descent"] = info["bbox"][1]
    return info


def winansi():
    names = [None] * 256
    for code in range(32, 256):
        try:
            ch = bytes([code]).decode("cp1252")
        except UnicodeDecodeError:
            continue
        name = agl.UV2AGL.get(ord(ch))
        if ch == " ":
            name = "space"
        elif ch == "­":
            name = "hyphen"
        names[code] = name
    return names


def c_str(value):
    return "nullptr" if value is None or value == ".notdef" else '"%s"' % value


def main():
    afm_dir = sys.argv[1]
    out = sys.stdout
    out.write("// Generated by tools/gen_std14.py. Do not edit.\n\n")
    all_names = set()
    for idx, (font, fname) in enumerate(FONTS):
        info = parse_afm(os.path.join(afm_dir, fname))
        out.write("constexpr Std14Glyph kGlyphs%d[] = {\n" % idx)
        for code, name, width in info["glyphs"]:
            all_names.add(name)
            out.write('    {%d, "%s", %d},\n' % (code, name, width))
        out.write("};\n\n")
    out.write("constexpr Std14FontData kStd14Fonts[] = {\n")
    for idx, (font, fname) in enumerate(FONTS):
        info = parse_afm(os.path.join(afm_dir, fname))
        b = info["bbox"]
        out.write('    {"%s", %d, %d, {%d, %d, %d, %d}, kGlyphs%d, %d},\n'
                  % (font, info["ascent"], info["descent"], b[0], b[1], b[2], b[3], idx,
                     len(info["glyphs"])))
    out.write("};\n\n")

    for label, table in (("kWinAnsiEncoding", winansi()),
                         ("kStandardEncoding", StandardEncoding),
                         ("kMacRomanEncoding", MacRoman)):
        out.write("constexpr const char* %s[256] = {\n" % label)
        for i in range(0, 256, 8):
            out.write("    " + ", ".join(c_str(table[j]) for j in range(i, i + 8)) + ",\n")
            for j in range(i, i + 8):
                if table[j] and table[j] != ".notdef":
                    all_names.add(table[j])
        out.write("};\n\n")

    entries = []
    for name in sorted(all_names | set(agl.AGL2UV.keys())):
        text = agl.toUnicode(name)
        if len(text) == 1:
            entries.append((name, ord(text)))
    entries.sort()
    out.write("constexpr GlyphNameEntry kGlyphNames[] = {\n")
    for name, cp in entries:
        out.write('    {"%s", 0x%04X},\n' % (name, cp))
    out.write("};\n")


if __name__ == "__main__":
    main()
