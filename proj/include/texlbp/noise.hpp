#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "texlbp/image.hpp"
#include "texlbp/rng.hpp"

namespace texlbp {

struct NoiseSpec {
  double ratio = 0.0;
  std::uint64_t seed = 0;

  void validate() const {
    if (!(ratio >= 0.0 && ratio <= 1.0)) {
      throw std::invalid_argument("noise ratio must be in [0, 1]");
    }
  }
};

// Salt-and-pepper corruption, independent per (pixel, plane) cell.
// Stream order: pixels row-major, planes R, G, B; one draw decides whether
// the cell is hit, and each hit takes one more draw whose top bit picks
// 255 (set) or 0 (clear). `corrupted_cells` counts hits, including hits
// that rewrite a value already at 0 or 255.
inline RgbImage apply_impulse_noise(const RgbImage& image, const NoiseSpec& spec,
                                    std::uint64_t* corrupted_cells = nullptr) {
  spec.validate();
  RgbImage out = image;
  Rng rng(spec.seed);
  std::uint64_t hits = 0;
  const std::size_t n = static_cast<std::size_t>(image.width()) * image.height();
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < 3; ++c) {
      if (uniform01(rng) < spec.ratio) {
        out.plane(c).data()[i] = (rng() >> 63) ? 255 : 0;
        ++hits;
      }
    }
  }
  if (corrupted_cells) *corrupted_cells = hits;
  return out;
}

// Noisy pixels bucketed by how many planes actually changed (K = 1..3).
struct ChannelEffectStats {
  std::array<std::uint64_t, 3> counts{};
  std::uint64_t total_noisy = 0;

  std::optional<std::array<double, 3>> fractions() const {
    if (total_noisy == 0) return std::nullopt;
    std::array<double, 3> f{};
    for (int k = 0; k < 3; ++k) {
      f[static_cast<std::size_t>(k)] =
          static_cast<double>(counts[static_cast<std::size_t>(k)]) / static_cast<double>(total_noisy);
    }
    return f;
  }

  ChannelEffectStats& operator+=(const ChannelEffectStats& o) noexcept {
    for (std::size_t k = 0; k < 3; ++k) counts[k] += o.counts[k];
    total_noisy += o.total_noisy;
    return *this;
  }
};

inline ChannelEffectStats channel_effect_stats(const RgbImage& clean, const RgbImage& noisy) {
  if (clean.width() != noisy.width() || clean.height() != noisy.height()) {
    throw std::invalid_argument("channel_effect_stats: dimension mismatch");
  }
  ChannelEffectStats s;
  const std::size_t n = static_cast<std::size_t>(clean.width()) * clean.height();
  for (std::size_t i = 0; i < n; ++i) {
    int changed = 0;
    for (int c = 0; c < 3; ++c) changed += clean.plane(c).data()[i] != noisy.plane(c).data()[i];
    if (changed == 0) continue;
    ++s.counts[static_cast<std::size_t>(changed - 1)];
    ++s.total_noisy;
  }
  return s;
}

// Conditional binomial: P(K planes changed | at least one changed) when each
// plane changes independently with probability ratio * (1 - noop_probability).
// noop_probability models a replacement that equals the original value.
inline std::array<double, 3> expected_channel_effect(double ratio, double noop_probability = 0.0) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw std::invalid_argument("expected_channel_effect: ratio must be in (0, 1)");
  }
  if (!(noop_probability >= 0.0 && noop_probability < 1.0)) {
    throw std::invalid_argument("expected_channel_effect: noop probability must be in [0, 1)");
  }
  const double p = ratio * (1.0 - noop_probability);
  const double q = 1.0 - p;
  // 1 - q^3 divided through by p, which stays accurate for tiny ratios.
  const double any = 3.0 - 3.0 * p + p * p;
  return {3.0 * q * q / any, 3.0 * p * q / any, p * p / any};
}

}  // namespace texlbp
