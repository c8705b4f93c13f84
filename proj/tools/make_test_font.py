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


"""Writes the small TrueType font used by the writer tests and prints the
advances fontTools reads back from it."""

import sys

from fontTools.fontBuilder import FontBuilder
from fontTools.pens.ttGlyphPen import TTGlyphPen
from fontTools.ttLib import TTFont


def box_glyph(width, height):
    pen = TTGlyphPen(None)
    pen.moveTo((50, 0))
    pen.lineTo((50, height))
    pen.lineTo((width - 50, height))
    pen.lineTo((width - 50, 0))
    pen.closePath()
    return pen.glyph()


def build(path):
    names = [".notdef", "space", "A", "B", "uni4E2D"]
    fb = FontBuilder(1024, isTTF=True)
    fb.setupGlyphOrder(names)
    fb.setupCharacterMap({0x20: "space", 0x41: "A", 0x42: "B", 0x4E2D: "uni4E2D"})
    fb.setupGlyf({
        ".notdef": box_glyph(512, 700),
        "space": TTGlyphPen(None).glyph(),
        "A": box_glyph(512, 700),
        "B": box_glyph(1024, 700),
        "uni4E2D": box_glyph(1024, 800),
    })
    fb.setupHorizontalMetrics({
        ".notdef": (512, 50), "space": (256, 0), "A": (512, 50), "B": (1024, 50), "uni4E2D": (1024, 50),
    })
    fb.setupHorizontalHeader(ascent=800, descent=-224)
    fb.setupNameTable({"familyName": "RelayoutTest", "styleName": "Regular", "psName": "RelayoutTest-Regular"})
    fb.setupOS2(sTypoAscender=800, sTypoDescender=-224, usWinAscent=800, usWinDescent=224)
    fb.setupPost()
    fb.save(path)


if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else "tests/data/mini1024.ttf"
    build(out)
    font = TTFont(out)
    upem = font["head"].unitsPerEm
    cmap = font.getBestCmap()
    for cp in (0x41, 0x42, 0x4E2D, 0x20):
        glyph = cmap[cp]
        advance = font["hmtx"][glyph][0]
        print(f"U+{cp:04X} {glyph} gid={font.getGlyphID(glyph)} advance={advance} "
              f"width={advance * 1000 / upem:g}")
