#include "georeason/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace georeason {

BBox::BBox(double x_min, double y_min, double x_max, double y_max)
    : x_min(x_min), y_min(y_min), x_max(x_max), y_max(y_max) {
  validate_box(*this);
}

void validate_box(const BBox& b) {
  const bool finite = std::isfinite(b.x_min) && std::isfinite(b.y_min) &&
                      std::isfinite(b.x_max) && std::isfinite(b.y_max);
  if (!finite) {
    throw std::invalid_argument("box coordinates must be finite");
  }
  if (b.x_min < 0.0 || b.y_min < 0.0) {
    throw std::invalid_argument("box coordinates must be non-negative");
  }
  if (!(b.x_max > b.x_min) || !(b.y_max > b.y_min)) {
    throw std::invalid_argument("box must have positive width and height");
  }
}

std::array<double, 4> BBox::normalized(double image_width, double image_height) const {
  return {x_min / image_width, y_min / image_height, x_max / image_width, y_max / image_height};
}

std::array<double, 4> BBox::normalized(double image_width, double image_height,
                                       double scale) const {
  auto n = normalized(image_width, image_height);
  for (double& v : n) v *= scale;
  return n;
}

double iou(const BBox& a, const BBox& b) {
  const double ix = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
  const double iy = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
  if (ix <= 0.0 || iy <= 0.0) return 0.0;
  const double inter = ix * iy;
  return inter / (a.area() + b.area() - inter);
}

Point bbox_centroid(const BBox& b) {
  return {(b.x_min + b.x_max) / 2.0, (b.y_min + b.y_max) / 2.0};
}

BinaryMask::BinaryMask(int width, int height) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("mask dimensions must be positive");
  }
  data_.assign(static_cast<std::size_t>(width) * height, 0);
}

BinaryMask::BinaryMask(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("mask dimensions must be positive");
  }
  if (data_.size() != static_cast<std::size_t>(width) * height) {
    throw std::invalid_argument("mask data length must equal width * height");
  }
  for (std::uint8_t v : data_) {
    if (v > 1) throw std::invalid_argument("mask cells must be 0 or 1");
  }
}

std::int64_t BinaryMask::foreground_count() const {
  return std::accumulate(data_.begin(), data_.end(), std::int64_t{0});
}

Contour::Contour(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 3) {
    throw DegenerateContourError("contour needs at least 3 vertices");
  }
  for (std::size_t k = 0; k < vertices_.size(); ++k) {
    const Point& a = vertices_[k];
    const Point& b = vertices_[(k + 1) % vertices_.size()];
    if (a == b) {
      throw DegenerateContourError("consecutive contour vertices must be distinct");
    }
    if (!std::isfinite(a.x) || !std::isfinite(a.y)) {
      throw DegenerateContourError("contour vertices must be finite");
    }
  }
}

double Contour::signed_area() const {
  double acc = 0.0;
  for (std::size_t k = 0; k < vertices_.size(); ++k) {
    const Point& a = vertices_[k];
    const Point& b = vertices_[(k + 1) % vertices_.size()];
    acc += a.x * b.y - b.x * a.y;
  }
  return acc / 2.0;
}

namespace {

struct ComponentInfo {
  int min_row, min_col, max_row, max_col;
  int start_row, start_col;  // topmost, then leftmost pixel
};

// 8-connected component labels in row-major scan order; -1 for background.
std::vector<int> label_components(const BinaryMask& m, std::vector<ComponentInfo>& info) {
  const int w = m.width();
  const int h = m.height();
  std::vector<int> labels(static_cast<std::size_t>(w) * h, -1);
  std::vector<std::pair<int, int>> stack;
  info.clear();
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (!m.at(r, c) || labels[static_cast<std::size_t>(r) * w + c] >= 0) continue;
      const int id = static_cast<int>(info.size());
      info.push_back({r, c, r, c, r, c});
      stack.clear();
      stack.emplace_back(r, c);
      labels[static_cast<std::size_t>(r) * w + c] = id;
      while (!stack.empty()) {
        auto [pr, pc] = stack.back();
        stack.pop_back();
        ComponentInfo& ci = info[id];
        ci.min_row = std::min(ci.min_row, pr);
        ci.min_col = std::min(ci.min_col, pc);
        ci.max_row = std::max(ci.max_row, pr);
        ci.max_col = std::max(ci.max_col, pc);
        for (int dr = -1; dr <= 1; ++dr) {
          for (int dc = -1; dc <= 1; ++dc) {
            const int nr = pr + dr;
            const int nc = pc + dc;
            if (nr < 0 || nr >= h || nc < 0 || nc >= w) continue;
            std::size_t idx = static_cast<std::size_t>(nr) * w + nc;
            if (m.at(nr, nc) && labels[idx] < 0) {
              labels[idx] = id;
              stack.emplace_back(nr, nc);
            }
          }
        }
      }
    }
  }
  return labels;
}

// Component indices sorted by box (y_min, x_min), then remaining extents.
std::vector<int> sorted_component_order(const std::vector<ComponentInfo>& info) {
  std::vector<int> order(info.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const ComponentInfo& ia = info[a];
    const ComponentInfo& ib = info[b];
    return std::tie(ia.min_row, ia.min_col, ia.max_row, ia.max_col) <
           std::tie(ib.min_row, ib.min_col, ib.max_row, ib.max_col);
  });
  return order;
}

BBox component_box(const ComponentInfo& ci) {
  return BBox(ci.min_col, ci.min_row, ci.max_col + 1.0, ci.max_row + 1.0);
}

// Directions for the corner walk: E, S, W, N in screen coordinates.
constexpr int kDx[4] = {1, 0, -1, 0};
constexpr int kDy[4] = {0, 1, 0, -1};

// Walks the crack boundary of one component, keeping foreground on the
// right. At a diagonal pinch the walk turns left, which keeps 8-connected
// cells on a single outer loop.
std::vector<Point> trace_component(const BinaryMask& m, const ComponentInfo& ci) {
  const int w = m.width();
  const int h = m.height();
  auto fg = [&](int row, int col) {
    return row >= 0 && row < h && col >= 0 && col < w && m.at(row, col);
  };
  // Quadrant cells around corner (x, y): NW (y-1,x-1), NE (y-1,x),
  // SW (y,x-1), SE (y,x). Ahead-left / ahead-right per direction.
  auto ahead_left = [&](int x, int y, int dir) {
    switch (dir) {
      case 0: return fg(y - 1, x);      // E -> NE
      case 1: return fg(y, x);          // S -> SE
      case 2: return fg(y, x - 1);      // W -> SW
      default: return fg(y - 1, x - 1); // N -> NW
    }
  };
  auto ahead_right = [&](int x, int y, int dir) {
    switch (dir) {
      case 0: return fg(y, x);          // E -> SE
      case 1: return fg(y, x - 1);      // S -> SW
      case 2: return fg(y - 1, x - 1);  // W -> NW
      default: return fg(y - 1, x);     // N -> NE
    }
  };

  const int sx = ci.start_col;
  const int sy = ci.start_row;
  int x = sx, y = sy, dir = 0;  // start along the top edge of the start cell
  std::vector<Point> verts;
  verts.push_back({static_cast<double>(sx), static_cast<double>(sy)});
  const std::size_t max_steps = 4 * static_cast<std::size_t>(w + 1) * (h + 1) + 8;
  for (std::size_t step = 0; step < max_steps; ++step) {
    const int nx = x + kDx[dir];
    const int ny = y + kDy[dir];
    int ndir;
    if (ahead_left(nx, ny, dir)) {
      ndir = (dir + 3) % 4;  // turn left
    } else if (ahead_right(nx, ny, dir)) {
      ndir = dir;  // straight
    } else {
      ndir = (dir + 1) % 4;  // turn right
    }
    if (nx == sx && ny == sy && ndir == 0) {
      return verts;  // closed loop, back at the start heading east
    }
    if (ndir != dir) {
      verts.push_back({static_cast<double>(nx), static_cast<double>(ny)});
    }
    x = nx;
    y = ny;
    dir = ndir;
  }
  throw std::logic_error("contour trace failed to close");
}

double point_segment_distance(const Point& p, const Point& a, const Point& b) {
  const double vx = b.x - a.x;
  const double vy = b.y - a.y;
  const double len2 = vx * vx + vy * vy;
  double t = 0.0;
  if (len2 > 0.0) {
    t = ((p.x - a.x) * vx + (p.y - a.y) * vy) / len2;
    t = std::clamp(t, 0.0, 1.0);
  }
  const double dx = p.x - (a.x + t * vx);
  const double dy = p.y - (a.y + t * vy);
  return std::hypot(dx, dy);
}

void douglas_peucker(const std::vector<Point>& pts, std::size_t lo, std::size_t hi, double eps,
                     std::vector<bool>& keep) {
  if (hi <= lo + 1) return;
  double best = -1.0;
  std::size_t split = lo;
  for (std::size_t k = lo + 1; k < hi; ++k) {
    const double d = point_segment_distance(pts[k], pts[lo], pts[hi]);
    if (d > best) {
      best = d;
      split = k;
    }
  }
  if (best > eps) {
    keep[split] = true;
    douglas_peucker(pts, lo, split, eps, keep);
    douglas_peucker(pts, split, hi, eps, keep);
  }
}

}  // namespace

std::vector<Point> simplify_closed_polygon(const std::vector<Point>& vertices, double eps) {
  if (eps <= 0.0 || vertices.size() <= 3) return vertices;
  // Anchor at vertex 0 and the vertex farthest from it, then simplify the
  // two open chains between the anchors.
  std::size_t far = 1;
  double best = -1.0;
  for (std::size_t k = 1; k < vertices.size(); ++k) {
    const double d = std::hypot(vertices[k].x - vertices[0].x, vertices[k].y - vertices[0].y);
    if (d > best) {
      best = d;
      far = k;
    }
  }
  std::vector<Point> ring = vertices;
  ring.push_back(vertices[0]);  // close the ring for the second chain
  std::vector<bool> keep(ring.size(), false);
  keep[0] = keep[far] = true;
  douglas_peucker(ring, 0, far, eps, keep);
  douglas_peucker(ring, far, ring.size() - 1, eps, keep);
  std::vector<Point> out;
  for (std::size_t k = 0; k + 1 < ring.size(); ++k) {
    if (keep[k]) out.push_back(ring[k]);
  }
  if (out.size() < 3) return vertices;
  return out;
}

std::vector<BBox> mask_to_bbox(const BinaryMask& m, bool per_component) {
  std::vector<ComponentInfo> info;
  label_components(m, info);
  if (!per_component) {
    if (info.empty()) {
      throw EmptyMaskError("mask_to_bbox requires at least one foreground pixel");
    }
    int min_row = m.height(), min_col = m.width(), max_row = -1, max_col = -1;
    for (const ComponentInfo& ci : info) {
      min_row = std::min(min_row, ci.min_row);
      min_col = std::min(min_col, ci.min_col);
      max_row = std::max(max_row, ci.max_row);
      max_col = std::max(max_col, ci.max_col);
    }
    return {BBox(min_col, min_row, max_col + 1.0, max_row + 1.0)};
  }
  std::vector<BBox> boxes;
  for (int idx : sorted_component_order(info)) {
    boxes.push_back(component_box(info[idx]));
  }
  return boxes;
}

std::vector<BinaryMask> mask_components(const BinaryMask& m) {
  std::vector<ComponentInfo> info;
  const std::vector<int> labels = label_components(m, info);
  std::vector<BinaryMask> out;
  for (int idx : sorted_component_order(info)) {
    BinaryMask comp(m.width(), m.height());
    for (int r = 0; r < m.height(); ++r) {
      for (int c = 0; c < m.width(); ++c) {
        if (labels[static_cast<std::size_t>(r) * m.width() + c] == idx) {
          comp.set(r, c, true);
        }
      }
    }
    out.push_back(std::move(comp));
  }
  return out;
}

std::vector<Contour> mask_to_contour(const BinaryMask& m, double simplify_eps) {
  std::vector<ComponentInfo> info;
  label_components(m, info);
  std::vector<Contour> out;
  for (int idx : sorted_component_order(info)) {
    std::vector<Point> verts = trace_component(m, info[idx]);
    if (simplify_eps > 0.0) {
      verts = simplify_closed_polygon(verts, simplify_eps);
    }
    out.emplace_back(std::move(verts));
  }
  return out;
}

BinaryMask dilate(const BinaryMask& m, int radius_px) {
  if (radius_px < 1) {
    throw std::invalid_argument("dilation radius must be >= 1");
  }
  const int w = m.width();
  const int h = m.height();
  // Square structuring element is separable: horizontal pass, then vertical.
  BinaryMask horiz(w, h);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      bool v = false;
      for (int d = -radius_px; d <= radius_px && !v; ++d) {
        const int cc = c + d;
        v = cc >= 0 && cc < w && m.at(r, cc);
      }
      horiz.set(r, c, v);
    }
  }
  BinaryMask out(w, h);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      bool v = false;
      for (int d = -radius_px; d <= radius_px && !v; ++d) {
        const int rr = r + d;
        v = rr >= 0 && rr < h && horiz.at(rr, c);
      }
      out.set(r, c, v);
    }
  }
  return out;
}

BinaryMask boundary_pixels(const BinaryMask& m) {
  const int w = m.width();
  const int h = m.height();
  BinaryMask out(w, h);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (!m.at(r, c)) continue;
      const bool border = r == 0 || r == h - 1 || c == 0 || c == w - 1;
      const bool exposed = border || !m.at(r - 1, c) || !m.at(r + 1, c) || !m.at(r, c - 1) ||
                           !m.at(r, c + 1);
      out.set(r, c, exposed);
    }
  }
  return out;
}

namespace {

// Even-odd crossing columns for scanline y over one polygon.
void scanline_crossings(const std::vector<Point>& verts, double y, std::vector<double>& xs) {
  xs.clear();
  for (std::size_t k = 0; k < verts.size(); ++k) {
    const Point& a = verts[k];
    const Point& b = verts[(k + 1) % verts.size()];
    // Half-open rule so shared vertices are counted exactly once.
    if ((a.y <= y && b.y > y) || (b.y <= y && a.y > y)) {
      xs.push_back(a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y));
    }
  }
  std::sort(xs.begin(), xs.end());
}

}  // namespace

BinaryMask rasterize_contour(const Contour& c, int width, int height) {
  if (std::abs(c.signed_area()) == 0.0) {
    throw DegenerateContourError("cannot rasterize a zero-area contour");
  }
  BinaryMask out(width, height);
  std::vector<double> xs;
  for (int r = 0; r < height; ++r) {
    const double y = r + 0.5;
    scanline_crossings(c.vertices(), y, xs);
    std::size_t k = 0;
    bool inside = false;
    for (int col = 0; col < width; ++col) {
      const double x = col + 0.5;
      while (k < xs.size() && xs[k] < x) {
        inside = !inside;
        ++k;
      }
      out.set(r, col, inside);
    }
  }
  return out;
}

BinaryMask rasterize_boxes(std::span<const BBox> boxes, int width, int height) {
  BinaryMask out(width, height);
  for (const BBox& b : boxes) {
    // Pixel-center rule, half-open: min <= center < max.
    const int r0 = std::max(0, static_cast<int>(std::ceil(b.y_min - 0.5)));
    const int c0 = std::max(0, static_cast<int>(std::ceil(b.x_min - 0.5)));
    for (int r = r0; r < height && r + 0.5 < b.y_max; ++r) {
      for (int c = c0; c < width && c + 0.5 < b.x_max; ++c) {
        out.set(r, c, true);
      }
    }
  }
  return out;
}

}  // namespace georeason
