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


// Synthetic fixture documents: Helvetica text set with greedy line breaking,
// so that an identity translation can reproduce every line.

#pragma once

#include <array>
#include <string>
#include <vector>

namespace relayout::corpus {

struct Fixture {
  std::string name;
  std::string pdf;
  std::string detections;  // JSON, empty when the fixture has none
  std::string lang_out = "zh";
};

/// single_column, two_column, header_footer, formula_region,
/// citation_dense, cjk_target.
std::vector<Fixture> standard();

/// Text drawn two Form XObjects deep under scaling cm operators and a clip.
Fixture nested_forms();

/// "Current Transformation Matrix (CTM)" four times over two pages.
Fixture glossary_terms();

/// The standard fixtures followed by the two above.
std::vector<Fixture> all();

/// Geometry of the nested_forms fixture, for checking parsed boxes.
struct NestedFormLayout {
  using Affine = std::array<double, 6>;
  Affine outer_cm;      // page content, before the first Do
  Affine form1_matrix;  // /Matrix of the outer form
  Affine inner_cm;      // inside the outer form, before the second Do
  Affine form2_matrix;  // /Matrix of the inner form
  std::array<double, 4> clip;  // rectangle in outer form space
  double font_size;
  struct Line {
    std::string text;
    double x;
    double y;
  };
  std::vector<Line> lines;  // text matrix origins in inner form space
};

const NestedFormLayout& nested_form_layout();

/// Helvetica advance of an ASCII character in 1/1000 em.
double helvetica_width(char c);

}  // namespace relayout::corpus
