#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace texlbp {

// 8-bit intensity raster, row-major.
class GrayPlane {
 public:
  GrayPlane() = default;

  GrayPlane(int width, int height, std::uint8_t fill = 0)
      : width_(width), height_(height) {
    if (width <= 0 || height <= 0) {
      throw std::invalid_argument("GrayPlane: zero-dimension plane");
    }
    data_.assign(static_cast<std::size_t>(width) * height, fill);
  }

  GrayPlane(int width, int height, std::vector<std::uint8_t> data)
      : width_(width), height_(height), data_(std::move(data)) {
    if (width <= 0 || height <= 0) {
      throw std::invalid_argument("GrayPlane: zero-dimension plane");
    }
    if (data_.size() != static_cast<std::size_t>(width) * height) {
      throw std::invalid_argument("GrayPlane: data length != width * height");
    }
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool empty() const noexcept { return data_.empty(); }

  std::uint8_t at(int x, int y) const { return data_[index(x, y)]; }
  std::uint8_t& at(int x, int y) { return data_[index(x, y)]; }

  const std::vector<std::uint8_t>& data() const noexcept { return data_; }
  std::vector<std::uint8_t>& data() noexcept { return data_; }

  bool operator==(const GrayPlane&) const = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

enum class Channel : int { R = 0, G = 1, B = 2 };

// Three planes of identical size, ordered R, G, B.
class RgbImage {
 public:
  RgbImage() = default;

  RgbImage(int width, int height)
      : planes_{GrayPlane(width, height), GrayPlane(width, height),
                GrayPlane(width, height)} {}

  RgbImage(GrayPlane r, GrayPlane g, GrayPlane b)
      : planes_{std::move(r), std::move(g), std::move(b)} {
    for (const auto& p : planes_) {
      if (p.width() != planes_[0].width() || p.height() != planes_[0].height()) {
        throw std::invalid_argument("RgbImage: planes differ in size");
      }
    }
  }

  static RgbImage from_gray(const GrayPlane& g) { return RgbImage(g, g, g); }

  int width() const noexcept { return planes_[0].width(); }
  int height() const noexcept { return planes_[0].height(); }

  const GrayPlane& plane(Channel c) const { return planes_[static_cast<int>(c)]; }
  GrayPlane& plane(Channel c) { return planes_[static_cast<int>(c)]; }
  const GrayPlane& plane(int i) const { return planes_.at(static_cast<std::size_t>(i)); }
  GrayPlane& plane(int i) { return planes_.at(static_cast<std::size_t>(i)); }

  std::array<std::uint8_t, 3> pixel(int x, int y) const {
    return {planes_[0].at(x, y), planes_[1].at(x, y), planes_[2].at(x, y)};
  }

  void set_pixel(int x, int y, std::array<std::uint8_t, 3> rgb) {
    for (int c = 0; c < 3; ++c) planes_[c].at(x, y) = rgb[c];
  }

  bool operator==(const RgbImage&) const = default;

 private:
  std::array<GrayPlane, 3> planes_;
};

// P neighbours on a circle of radius R; uniform_threshold is U_T.
struct OperatorParams {
  int neighbors = 8;
  int radius = 1;
  int uniform_threshold = 2;

  static OperatorParams make(int neighbors, int radius) {
    return make(neighbors, radius, neighbors / 4);
  }

  static OperatorParams make(int neighbors, int radius, int uniform_threshold) {
    OperatorParams p{neighbors, radius, uniform_threshold};
    p.validate();
    return p;
  }

  void validate() const {
    if (neighbors < 4 || neighbors > 32) {
      throw std::invalid_argument("OperatorParams: P must be in [4, 32]");
    }
    if (radius < 1) throw std::invalid_argument("OperatorParams: R must be >= 1");
    if (uniform_threshold < 0) {
      throw std::invalid_argument("OperatorParams: U_T must be >= 0");
    }
  }

  int bins() const noexcept { return neighbors + 2; }

  bool operator==(const OperatorParams&) const = default;
};

struct NeighborhoodSample {
  double center = 0.0;
  std::vector<double> neighbors;
};

namespace detail {

inline double snap_to_lattice(double v) {
  const double r = std::round(v);
  return std::abs(v - r) < 1e-9 ? r : v;
}

}  // namespace detail

// Precomputed sample geometry for one (P, R). Neighbour k sits at angle
// 2*pi*k/P, counter-clockwise from due east; image rows grow downward, so
// the y offset is -R*sin.
class CircularPattern {
 public:
  struct Tap {
    int dx = 0;  // floor of the x offset
    int dy = 0;  // floor of the y offset
    double fx = 0.0;
    double fy = 0.0;
    // Bilinear weights for (x0,y0), (x0+1,y0), (x0,y0+1), (x0+1,y0+1).
    std::array<double, 4> w{1.0, 0.0, 0.0, 0.0};
    bool exact = false;
  };

  explicit CircularPattern(const OperatorParams& params) : params_(params) {
    params.validate();
    taps_.reserve(static_cast<std::size_t>(params.neighbors));
    for (int k = 0; k < params.neighbors; ++k) {
      const double angle = 2.0 * std::numbers::pi * k / params.neighbors;
      const double ox = detail::snap_to_lattice(params.radius * std::cos(angle));
      const double oy = detail::snap_to_lattice(-params.radius * std::sin(angle));
      Tap t;
      t.dx = static_cast<int>(std::floor(ox));
      t.dy = static_cast<int>(std::floor(oy));
      t.fx = ox - t.dx;
      t.fy = oy - t.dy;
      t.exact = t.fx == 0.0 && t.fy == 0.0;
      t.w = {(1.0 - t.fx) * (1.0 - t.fy), t.fx * (1.0 - t.fy), (1.0 - t.fx) * t.fy,
             t.fx * t.fy};
      taps_.push_back(t);
    }
  }

  const OperatorParams& params() const noexcept { return params_; }
  const std::vector<Tap>& taps() const noexcept { return taps_; }
  int size() const noexcept { return static_cast<int>(taps_.size()); }

  int interpolated_taps() const noexcept {
    return static_cast<int>(std::count_if(taps_.begin(), taps_.end(),
                                          [](const Tap& t) { return !t.exact; }));
  }

  // Bilinear value of tap k around (x, y). Values within 1e-9 of an integer
  // are snapped so that ties with the (integer) centre stay exact ties.
  double sample(const GrayPlane& plane, int x, int y, int k) const {
    const Tap& t = taps_[static_cast<std::size_t>(k)];
    const int x0 = x + t.dx;
    const int y0 = y + t.dy;
    if (t.exact) return plane.at(x0, y0);
    const int x1 = t.fx > 0.0 ? x0 + 1 : x0;
    const int y1 = t.fy > 0.0 ? y0 + 1 : y0;
    const double p00 = plane.at(x0, y0);
    const double p10 = plane.at(x1, y0);
    const double p01 = plane.at(x0, y1);
    const double p11 = plane.at(x1, y1);
    const double v = t.w[0] * p00 + t.w[1] * p10 + t.w[2] * p01 + t.w[3] * p11;
    return detail::snap_to_lattice(v);
  }

 private:
  OperatorParams params_;
  std::vector<Tap> taps_;
};

inline bool is_interior(int width, int height, int x, int y, int radius) noexcept {
  return x >= radius && y >= radius && x < width - radius && y < height - radius;
}

inline void require_operator_fits(int width, int height, const OperatorParams& params) {
  const int need = 2 * params.radius + 1;
  if (width < need || height < need) {
    throw std::invalid_argument("image too small for operator (P=" +
                                std::to_string(params.neighbors) +
                                ", R=" + std::to_string(params.radius) + ")");
  }
}

inline NeighborhoodSample sample_neighborhood(const GrayPlane& plane, int x, int y,
                                              const CircularPattern& pattern) {
  const int r = pattern.params().radius;
  if (!is_interior(plane.width(), plane.height(), x, y, r)) {
    throw std::out_of_range("sample_neighborhood: coordinates too close to border");
  }
  NeighborhoodSample s;
  s.center = plane.at(x, y);
  s.neighbors.resize(static_cast<std::size_t>(pattern.size()));
  for (int k = 0; k < pattern.size(); ++k) {
    s.neighbors[static_cast<std::size_t>(k)] = pattern.sample(plane, x, y, k);
  }
  return s;
}

inline NeighborhoodSample sample_neighborhood(const GrayPlane& plane, int x, int y,
                                              const OperatorParams& params) {
  return sample_neighborhood(plane, x, y, CircularPattern(params));
}

// Non-overlapping windows tiled from the top-left in row-major order;
// remainder pixels on the right and bottom are dropped.
inline std::vector<RgbImage> crop_windows(const RgbImage& image, int w, int h) {
  if (w <= 0 || h <= 0) throw std::invalid_argument("crop_windows: non-positive window");
  if (w > image.width() || h > image.height()) {
    throw std::invalid_argument("crop_windows: window larger than image");
  }
  const int cols = image.width() / w;
  const int rows = image.height() / h;
  std::vector<RgbImage> out;
  out.reserve(static_cast<std::size_t>(cols) * rows);
  for (int wy = 0; wy < rows; ++wy) {
    for (int wx = 0; wx < cols; ++wx) {
      RgbImage win(w, h);
      for (int c = 0; c < 3; ++c) {
        const GrayPlane& src = image.plane(c);
        GrayPlane& dst = win.plane(c);
        for (int y = 0; y < h; ++y) {
          const auto* row = &src.data()[static_cast<std::size_t>(wy * h + y) * src.width() +
                                        static_cast<std::size_t>(wx) * w];
          std::copy(row, row + w, &dst.data()[static_cast<std::size_t>(y) * w]);
        }
      }
      out.push_back(std::move(win));
    }
  }
  return out;
}

inline RgbImage crop(const RgbImage& image, int x, int y, int w, int h) {
  if (x < 0 || y < 0 || w <= 0 || h <= 0 || x + w > image.width() ||
      y + h > image.height()) {
    throw std::invalid_argument("crop: rectangle outside image");
  }
  RgbImage out(w, h);
  for (int c = 0; c < 3; ++c) {
    for (int yy = 0; yy < h; ++yy) {
      for (int xx = 0; xx < w; ++xx) out.plane(c).at(xx, yy) = image.plane(c).at(x + xx, y + yy);
    }
  }
  return out;
}

// Per-pixel mean of R, G, B rounded to nearest (sums are integers, so
// sum/3 never lands on .5).
inline GrayPlane mean_plane(const RgbImage& image) {
  GrayPlane out(image.width(), image.height());
  const auto& r = image.plane(Channel::R).data();
  const auto& g = image.plane(Channel::G).data();
  const auto& b = image.plane(Channel::B).data();
  for (std::size_t i = 0; i < r.size(); ++i) {
    const int sum = r[i] + g[i] + b[i];
    out.data()[i] = static_cast<std::uint8_t>((sum + 1) / 3);
  }
  return out;
}

// Rotation by 90 degrees counter-clockwise, `turns` times.
inline GrayPlane rotate90(const GrayPlane& plane, int turns = 1) {
  turns = ((turns % 4) + 4) % 4;
  GrayPlane cur = plane;
  for (int t = 0; t < turns; ++t) {
    GrayPlane next(cur.height(), cur.width());
    for (int y = 0; y < cur.height(); ++y) {
      for (int x = 0; x < cur.width(); ++x) {
        next.at(y, cur.width() - 1 - x) = cur.at(x, y);
      }
    }
    cur = std::move(next);
  }
  return cur;
}

inline RgbImage rotate90(const RgbImage& image, int turns = 1) {
  return RgbImage(rotate90(image.plane(0), turns), rotate90(image.plane(1), turns),
                  rotate90(image.plane(2), turns));
}

}  // namespace texlbp
