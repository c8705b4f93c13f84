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


#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "relayout/errors.hpp"
#include "relayout/evalkit.hpp"

using namespace relayout;
using doctest::Approx;

namespace {

LayoutElement element(int id, Box box, std::string cls = "body_text") { return {id, std::move(cls), box, 0.9}; }

DocumentIR doc_with(std::vector<std::vector<LayoutElement>> pages, Box media = {0, 0, 612, 792}) {
  DocumentIR doc;
  for (std::size_t i = 0; i < pages.size(); ++i) {
    PageIR p;
    p.page_number = static_cast<int>(i);
    p.media_box = media;
    p.page_layout = std::move(pages[i]);
    doc.pages.push_back(std::move(p));
  }
  return doc;
}

// Plain rectangle overlap, written out independently of iou().
double overlap_ratio(double ax, double ay, double ax2, double ay2, double bx, double by, double bx2, double by2) {
  const double iw = std::max(0.0, std::min(ax2, bx2) - std::max(ax, bx));
  const double ih = std::max(0.0, std::min(ay2, by2) - std::max(ay, by));
  const double u = (ax2 - ax) * (ay2 - ay) + (bx2 - bx) * (by2 - by) - iw * ih;
  return u > 0 ? iw * ih / u : 0.0;
}

std::vector<LayoutElement> two_column_page() {
  return {element(1, {72, 720, 540, 750}, "title"),   element(2, {72, 400, 300, 700}),
          element(3, {72, 100, 300, 380}),            element(4, {312, 400, 540, 700}),
          element(5, {312, 100, 540, 380}),           element(6, {280, 30, 332, 60}, "footer")};
}

}  // namespace

TEST_CASE("iou: analytic values") {
  CHECK(iou({0, 0, 1, 1}, {0, 0, 1, 1}) == 1.0);
  CHECK(iou({0, 0, 1, 1}, {0.5, 0, 1.5, 1}) == 1.0 / 3.0);
  CHECK(iou({0, 0, 1, 1}, {2, 2, 3, 3}) == 0.0);
  CHECK(iou({0, 0, 1, 1}, {1, 0, 2, 1}) == 0.0);
  CHECK(iou({0, 0, 0, 0}, {0, 0, 0, 0}) == 0.0);

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0, 10);
  for (int t = 0; t < 2000; ++t) {
    const double ax = u(rng), ay = u(rng), bx = u(rng), by = u(rng);
    const Box a{ax, ay, ax + u(rng) + 0.01, ay + u(rng) + 0.01};
    const Box b{bx, by, bx + u(rng) + 0.01, by + u(rng) + 0.01};
    const double v = iou(a, b);
    CHECK(v == iou(b, a));
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    CHECK(iou(a, a) == Approx(1.0));
    CHECK(v == Approx(overlap_ratio(a.x, a.y, a.x2, a.y2, b.x, b.y, b.x2, b.y2)));
  }
}

TEST_CASE("match_elements: identity, shift and missing element") {
  const auto src = normalize(two_column_page(), {0, 0, 612, 792});
  const std::vector<int> order = {1, 2, 3, 4, 5, 6};

  const ElementMatch same = match_elements(src, src, order, order);
  REQUIRE(same.pairs.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(same.pairs[i].src_id == order[i]);
    CHECK(same.pairs[i].dst_id == order[i]);
    CHECK(same.pairs[i].iou == 1.0);
  }
  CHECK(same.unmatched_src.empty());
  CHECK(same.unmatched_dst.empty());

  // Shift every box down by 2% of the page height.
  auto shifted = src;
  for (auto& e : shifted) {
    e.box.y -= 0.02;
    e.box.y2 -= 0.02;
  }
  const ElementMatch moved = match_elements(src, shifted, order, order);
  REQUIRE(moved.pairs.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    const Box& a = src[i].box;
    const Box& b = shifted[i].box;
    CHECK(moved.pairs[i].dst_id == order[i]);
    CHECK(moved.pairs[i].iou < 1.0);
    CHECK(moved.pairs[i].iou == Approx(overlap_ratio(a.x, a.y, a.x2, a.y2, b.x, b.y, b.x2, b.y2)));
  }
  // Title band is 30/792 high, so a 0.02 shift keeps (30/792 - 0.02)/(30/792 + 0.02) of it.
  const double h = 30.0 / 792.0;
  CHECK(moved.pairs[0].iou == Approx((h - 0.02) / (h + 0.02)));

  auto missing = src;
  missing.erase(missing.begin() + 2);
  const ElementMatch gap = match_elements(src, missing, order, {1, 2, 4, 5, 6});
  CHECK(gap.pairs.size() == 5);
  CHECK(gap.unmatched_src == std::vector<int>{3});
  CHECK(gap.unmatched_dst.empty());

  // Each dst element is used at most once.
  const ElementMatch dup = match_elements(src, {src[0]}, order, {1});
  CHECK(dup.pairs.size() == 1);
  CHECK(dup.unmatched_src.size() == 5);
}

TEST_CASE("compute_biou: self comparison, analytic pair and page counts") {
  const DocumentIR doc = doc_with({two_column_page(), two_column_page()});
  const BIoUReport self = compute_biou(doc, doc);
  CHECK(self.document_mean == 1.0);
  CHECK(self.coverage == 1.0);
  REQUIRE(self.per_page.size() == 2);
  CHECK(self.per_page[1].page_number == 1);

  const DocumentIR a = doc_with({{element(1, {0, 0, 1, 1})}}, {0, 0, 1, 1});
  const DocumentIR b = doc_with({{element(1, {0.5, 0, 1.5, 1})}}, {0, 0, 1, 1});
  CHECK(compute_biou(a, b).document_mean == 1.0 / 3.0);

  const DocumentIR empty_match = doc_with({{element(1, {0, 0, 0.2, 0.2})}}, {0, 0, 1, 1});
  const DocumentIR far = doc_with({{element(1, {0.5, 0.5, 0.9, 0.9})}}, {0, 0, 1, 1});
  const BIoUReport none = compute_biou(empty_match, far);
  CHECK(none.per_page[0].page_mean == 0.0);
  CHECK(none.per_page[0].coverage == 0.0);

  const DocumentIR three = doc_with({{}, {}, {}});
  try {
    compute_biou(doc, three);
    FAIL("expected PageCountMismatch");
  } catch (const EvalError& e) {
    CHECK(e.code() == EvalError::Code::kPageCountMismatch);
  }

  DocumentIR dual = doc_with({{}, two_column_page(), {}, two_column_page()});
  CHECK(compute_biou(doc, deinterleave(dual)).document_mean == 1.0);
}

TEST_CASE("compute_biou: invariant under uniform scaling") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> pos(0, 500);
  std::uniform_real_distribution<double> len(5, 150);
  std::uniform_real_distribution<double> jitter(-15, 15);
  std::uniform_real_distribution<double> scale(0.1, 10);
  for (int t = 0; t < 1000; ++t) {
    std::vector<LayoutElement> s, d;
    const int n = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) {
      const Box b{pos(rng), pos(rng), 0, 0};
      const Box box{b.x, b.y, b.x + len(rng), b.y + len(rng)};
      s.push_back(element(i + 1, box));
      if (rng() % 5) {
        d.push_back(element(i + 1, {box.x + jitter(rng), box.y + jitter(rng), box.x2 + jitter(rng) + 20,
                                    box.y2 + jitter(rng) + 20}));
      }
    }
    const Box media{0, 0, 612, 792};
    const BIoUReport base = compute_biou(doc_with({s}, media), doc_with({d}, media));
    const double k = scale(rng);
    auto scaled = [k](std::vector<LayoutElement> v) {
      for (auto& e : v) e.box = {e.box.x * k, e.box.y * k, e.box.x2 * k, e.box.y2 * k};
      return v;
    };
    const Box big{0, 0, 612 * k, 792 * k};
    const BIoUReport r = compute_biou(doc_with({scaled(s)}, big), doc_with({scaled(d)}, big));
    CHECK(r.document_mean == Approx(base.document_mean).epsilon(1e-9));
    CHECK(r.coverage == base.coverage);
    REQUIRE(r.per_page[0].match.pairs.size() == base.per_page[0].match.pairs.size());
    for (std::size_t i = 0; i < r.per_page[0].match.pairs.size(); ++i) {
      CHECK(r.per_page[0].match.pairs[i].src_id == base.per_page[0].match.pairs[i].src_id);
      CHECK(r.per_page[0].match.pairs[i].dst_id == base.per_page[0].match.pairs[i].dst_id);
    }
    CHECK(base.document_mean >= 0.0);
    CHECK(base.document_mean <= 1.0);
  }
}

TEST_CASE("count_utb: flags, equality and pure placeholder lines") {
  DocumentIR doc = doc_with({{}});
  auto add = [&doc](std::string in, std::string out, TranslationStatus st) {
    Paragraph p;
    p.input = std::move(in);
    p.output = std::move(out);
    p.status = st;
    doc.pages[0].paragraph.push_back(std::move(p));
  };
  add("Alpha beta", "⟦Alpha⟧ ⟦beta⟧", TranslationStatus::kTranslated);
  add("Gamma {v1} delta", "Gamma {v1} delta", TranslationStatus::kFailed);
  add("Epsilon", "⟦Epsilon⟧", TranslationStatus::kTranslated);
  add("Zeta eta", "Zeta eta", TranslationStatus::kFailed);
  add("Theta", "⟦Theta⟧", TranslationStatus::kTranslated);
  UTBReport r = count_utb(doc);
  CHECK(r.per_page == std::vector<int>{2});
  CHECK(r.mean == 2.0);

  add("{v1} {v2}", "{v2}  {v1}", TranslationStatus::kSkipped);
  add("Iota  {v3}", "Iota {v3}", TranslationStatus::kTranslated);  // only spacing changed
  r = count_utb(doc);
  CHECK(r.total == 3);
  CHECK(r.per_page[0] <= static_cast<int>(doc.pages[0].paragraph.size()));
}

TEST_CASE("emit_judge_prompt: rubrics, format line and manifest") {
  const auto dir = std::filesystem::temp_directory_path() / "relayout_judge";
  std::filesystem::create_directories(dir);
  std::vector<std::string> systems;
  const std::string original = (dir / "original.png").string();
  std::ofstream(original) << "x";
  for (int i = 1; i <= 3; ++i) {
    systems.push_back((dir / ("system" + std::to_string(i) + ".png")).string());
    std::ofstream(systems.back()) << "x";
  }
  const std::string text = emit_judge_prompt({original}, systems);
  for (const char* rubric : {"Layout Fidelity", "Translation Precision", "Visual Aesthetics", "Terminology Consistency"}) {
    CHECK(text.find(rubric) != std::string::npos);
  }
  CHECK(text.find("system|Layout Fidelity:<score>|Translation Precision:<score>|Visual Aesthetics:<score>|"
                  "Terminology Consistency:<score>|Untranslated Blocks:<count>") != std::string::npos);
  CHECK(text.find("You are a senior Academic Journal Editor") != std::string::npos);
  CHECK(text.find("System 3: " + systems[2]) != std::string::npos);
  CHECK(text == emit_judge_prompt({original}, systems));

  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const EvalError& e) {
      return e.code();
    }
    return EvalError::Code::kPageCountMismatch;
  };
  CHECK(code_of([&] { emit_judge_prompt({original}, {}); }) == EvalError::Code::kMissingPath);
  CHECK(code_of([&] { emit_judge_prompt({original}, {(dir / "nope.png").string()}); }) ==
        EvalError::Code::kMissingPath);
}

TEST_CASE("reports mirror the metric fields") {
  const DocumentIR doc = doc_with({two_column_page()});
  const BIoUReport r = compute_biou(doc, doc);
  const UTBReport u = count_utb(doc);
  const std::string json = report_json(r, &u);
  CHECK(json.find("\"document_mean\": 1.0") != std::string::npos);
  CHECK(json.find("\"matched_pairs\"") != std::string::npos);
  const std::string text = format_report(r, &u);
  CHECK(text.rfind("BIoU document_mean 1.0000  coverage 1.0000\n", 0) == 0);
  CHECK(text.find("footer") != std::string::npos);
}
