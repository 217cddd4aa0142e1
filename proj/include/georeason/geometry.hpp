#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "georeason/errors.hpp"

namespace georeason {

// Continuous pixel coordinates: x grows rightward, y grows downward.
// Pixel (row i, col j) occupies the unit cell [j, j+1] x [i, i+1], so
// contour vertices live on cell corners and box geometry is continuous.
struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

// Axis-aligned box [x_min, y_min, x_max, y_max] with strictly positive area.
// Stored in pixel units; normalized coordinates are views, not a type.
struct BBox {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 1.0;
  double y_max = 1.0;

  BBox() = default;
  BBox(double x_min, double y_min, double x_max, double y_max);

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double area() const { return width() * height(); }

  // Coordinates divided by the image extent, in [0, 1].
  std::array<double, 4> normalized(double image_width, double image_height) const;
  // Normalized coordinates rescaled to a token grid (e.g. 1000).
  std::array<double, 4> normalized(double image_width, double image_height, double scale) const;

  bool operator==(const BBox&) const = default;
};

// Throws std::invalid_argument unless coordinates are finite, >= 0 and the
// box has positive width and height.
void validate_box(const BBox& b);

double iou(const BBox& a, const BBox& b);
Point bbox_centroid(const BBox& b);

// Row-major H x W binary grid. Cells are 0 or 1.
class BinaryMask {
 public:
  BinaryMask(int width, int height);
  BinaryMask(int width, int height, std::vector<std::uint8_t> data);

  int width() const { return width_; }
  int height() const { return height_; }
  bool at(int row, int col) const { return data_[static_cast<std::size_t>(row) * width_ + col] != 0; }
  void set(int row, int col, bool value) {
    data_[static_cast<std::size_t>(row) * width_ + col] = value ? 1 : 0;
  }
  std::int64_t foreground_count() const;
  bool empty_foreground() const { return foreground_count() == 0; }
  const std::vector<std::uint8_t>& data() const { return data_; }

  bool operator==(const BinaryMask&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

// Ordered closed polygon over pixel-corner coordinates; the last vertex
// connects back to the first. Construction enforces >= 3 vertices and
// distinct consecutive vertices (including the closing edge), throwing
// DegenerateContourError otherwise.
class Contour {
 public:
  explicit Contour(std::vector<Point> vertices);

  const std::vector<Point>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  // Signed shoelace area; positive for clockwise order in screen coordinates.
  double signed_area() const;

  bool operator==(const Contour&) const = default;

 private:
  std::vector<Point> vertices_;
};

// Tight boxes over the mask foreground, using pixel-cell extents.
// per_component=false: one box covering all foreground (EmptyMaskError when
// there is none). per_component=true: one box per 8-connected component,
// sorted by (y_min, x_min); empty list for an empty mask.
std::vector<BBox> mask_to_bbox(const BinaryMask& m, bool per_component);

// Each 8-connected component as a full-size mask, in mask_to_bbox order.
std::vector<BinaryMask> mask_components(const BinaryMask& m);

// Outer boundary of every 8-connected component as a closed polygon over
// cell corners, in mask_to_bbox component order. Holes are ignored. With
// simplify_eps > 0 the polygon is Douglas-Peucker simplified; eps = 0 keeps
// the trace lossless (rasterize_contour reproduces hole-free components).
std::vector<Contour> mask_to_contour(const BinaryMask& m, double simplify_eps = 0.0);

// Morphological dilation with a square structuring element of side
// 2 * radius_px + 1. Output dimensions unchanged.
BinaryMask dilate(const BinaryMask& m, int radius_px);

// Foreground pixels with at least one background 4-neighbor or lying on the
// image border.
BinaryMask boundary_pixels(const BinaryMask& m);

// Even-odd scanline fill: pixel (i, j) is foreground iff its center
// (j + 0.5, i + 0.5) is inside the polygon. DegenerateContourError when the
// polygon area is zero.
BinaryMask rasterize_contour(const Contour& c, int width, int height);

// Union of boxes filled by the pixel-center rule (center in [min, max)).
BinaryMask rasterize_boxes(std::span<const BBox> boxes, int width, int height);

// Douglas-Peucker polyline simplification of a closed polygon.
std::vector<Point> simplify_closed_polygon(const std::vector<Point>& vertices, double eps);

}  // namespace georeason
