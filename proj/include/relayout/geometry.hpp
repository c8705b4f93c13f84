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

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>

namespace relayout {

/// Axis-aligned rectangle in PDF user space (points, origin bottom-left,
/// y increasing upward).
template <typename Scalar>
struct BasicBox {
  Scalar x{};
  Scalar y{};
  Scalar x2{};
  Scalar y2{};

  Scalar width() const { return x2 - x; }
  Scalar height() const { return y2 - y; }
  Scalar area() const { return width() * height(); }

  bool is_finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(x2) && std::isfinite(y2);
  }
  bool is_well_formed() const { return is_finite() && x2 >= x && y2 >= y; }

  friend bool operator==(const BasicBox&, const BasicBox&) = default;
};

using Box = BasicBox<double>;

/// Affine map (x, y) -> (a x + c y + e, b x + d y + f), stored as the 3x3
/// row-vector matrix used by PDF:
///
///     | a b 0 |
///     | c d 0 |
///     | e f 1 |
template <typename Scalar>
class BasicMatrix {
 public:
  using Storage = Eigen::Matrix<Scalar, 3, 3>;
  using Point = Eigen::Matrix<Scalar, 2, 1>;

  BasicMatrix() : m_(Storage::Identity()) {}
  BasicMatrix(Scalar a, Scalar b, Scalar c, Scalar d, Scalar e, Scalar f) {
    m_ << a, b, 0, c, d, 0, e, f, 1;
  }
  explicit BasicMatrix(const Storage& m) : m_(m) {}

  static BasicMatrix identity() { return BasicMatrix(); }
  static BasicMatrix translation(Scalar tx, Scalar ty) { return {1, 0, 0, 1, tx, ty}; }
  static BasicMatrix scaling(Scalar sx, Scalar sy) { return {sx, 0, 0, sy, 0, 0}; }

  Scalar a() const { return m_(0, 0); }
  Scalar b() const { return m_(0, 1); }
  Scalar c() const { return m_(1, 0); }
  Scalar d() const { return m_(1, 1); }
  Scalar e() const { return m_(2, 0); }
  Scalar f() const { return m_(2, 1); }

  std::array<Scalar, 6> coefficients() const { return {a(), b(), c(), d(), e(), f()}; }
  const Storage& storage() const { return m_; }

  Scalar determinant() const { return a() * d() - b() * c(); }
  bool is_finite() const { return m_.allFinite(); }
  bool is_degenerate() const { return determinant() == Scalar(0); }

  BasicMatrix inverse() const { return BasicMatrix(Storage(m_.inverse())); }

  /// Row-vector product: applying (*this * rhs) maps p through *this first.
  friend BasicMatrix operator*(const BasicMatrix& lhs, const BasicMatrix& rhs) {
    return BasicMatrix(Storage(lhs.m_ * rhs.m_));
  }
  friend bool operator==(const BasicMatrix& lhs, const BasicMatrix& rhs) {
    return lhs.m_ == rhs.m_;
  }

 private:
  Storage m_;
};

using Matrix = BasicMatrix<double>;

/// Concatenation used by `cm` and form invocation: the result applies `m`
/// inside the coordinate system established by `ctm`.
template <typename Scalar>
BasicMatrix<Scalar> compose(const BasicMatrix<Scalar>& m, const BasicMatrix<Scalar>& ctm) {
  return m * ctm;
}

template <typename Scalar>
typename BasicMatrix<Scalar>::Point apply(const BasicMatrix<Scalar>& m, Scalar x, Scalar y) {
  Eigen::Matrix<Scalar, 1, 3> row(x, y, Scalar(1));
  Eigen::Matrix<Scalar, 1, 3> out = row * m.storage();
  return {out(0), out(1)};
}

/// Length of the image of the unit y vector; the factor applied to font sizes.
template <typename Scalar>
Scalar vertical_scale(const BasicMatrix<Scalar>& m) {
  return std::hypot(m.c(), m.d());
}

/// Bounding box of the image of `box` under `m`.
template <typename Scalar>
BasicBox<Scalar> transform_box(const BasicMatrix<Scalar>& m, const BasicBox<Scalar>& box) {
  const std::array<typename BasicMatrix<Scalar>::Point, 4> corners = {
      apply(m, box.x, box.y), apply(m, box.x2, box.y), apply(m, box.x, box.y2),
      apply(m, box.x2, box.y2)};
  BasicBox<Scalar> out{corners[0].x(), corners[0].y(), corners[0].x(), corners[0].y()};
  for (const auto& p : corners) {
    out.x = std::min(out.x, p.x());
    out.y = std::min(out.y, p.y());
    out.x2 = std::max(out.x2, p.x());
    out.y2 = std::max(out.y2, p.y());
  }
  return out;
}

template <typename Scalar>
BasicBox<Scalar> unite(const BasicBox<Scalar>& lhs, const BasicBox<Scalar>& rhs) {
  return {std::min(lhs.x, rhs.x), std::min(lhs.y, rhs.y), std::max(lhs.x2, rhs.x2),
          std::max(lhs.y2, rhs.y2)};
}

template <typename Scalar>
Scalar intersection_area(const BasicBox<Scalar>& lhs, const BasicBox<Scalar>& rhs) {
  const Scalar w = std::min(lhs.x2, rhs.x2) - std::max(lhs.x, rhs.x);
  const Scalar h = std::min(lhs.y2, rhs.y2) - std::max(lhs.y, rhs.y);
  if (w <= 0 || h <= 0) return Scalar(0);
  return w * h;
}

/// Intersection over union; 0 when the union has no area.
template <typename Scalar>
Scalar iou(const BasicBox<Scalar>& lhs, const BasicBox<Scalar>& rhs) {
  const Scalar inter = intersection_area(lhs, rhs);
  const Scalar uni = lhs.area() + rhs.area() - inter;
  if (!(uni > 0)) return Scalar(0);
  return std::clamp(inter / uni, Scalar(0), Scalar(1));
}

template <typename Scalar>
bool contains(const BasicBox<Scalar>& outer, const BasicBox<Scalar>& inner, Scalar tolerance = 0) {
  return inner.x >= outer.x - tolerance && inner.y >= outer.y - tolerance &&
         inner.x2 <= outer.x2 + tolerance && inner.y2 <= outer.y2 + tolerance;
}

/// Divides coordinates by the page extent so that a page maps onto [0,1]^2.
template <typename Scalar>
BasicBox<Scalar> normalize_to(const BasicBox<Scalar>& box, const BasicBox<Scalar>& page) {
  const Scalar w = page.width() > 0 ? page.width() : Scalar(1);
  const Scalar h = page.height() > 0 ? page.height() : Scalar(1);
  return {(box.x - page.x) / w, (box.y - page.y) / h, (box.x2 - page.x) / w,
          (box.y2 - page.y) / h};
}

}  // namespace relayout
