#pragma once

// Chaos-game rendering of planar attractors to binary PPM (P6).

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "boxlike/error.hpp"
#include "boxlike/model_io.hpp"

namespace boxlike {

struct Viewport {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 1.0;
  double ymax = 1.0;
};

struct RenderConfig {
  std::size_t width = 800;
  std::size_t height = 800;
  std::uint64_t iterations = 1'000'000;
  std::uint64_t burn_in = 100;
  std::uint64_t seed = 1;
  Viewport viewport;

  void validate() const {
    if (width < 1 || height < 1) throw Error(Errc::invalid_config, "image size must be at least 1x1");
    if (iterations <= burn_in) throw Error(Errc::invalid_config, "iterations must exceed burn_in");
    if (!(viewport.xmax > viewport.xmin && viewport.ymax > viewport.ymin))
      throw Error(Errc::invalid_config, "viewport must have positive extent");
  }
};

/// Binary occupancy image, row 0 at the top (largest y).
class Image {
 public:
  Image(std::size_t width, std::size_t height) : width_(width), height_(height), lit_(width * height, 0) {}

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  bool lit(std::size_t col, std::size_t row) const { return lit_[row * width_ + col] != 0; }
  void set(std::size_t col, std::size_t row) { lit_[row * width_ + col] = 1; }

  std::size_t lit_count() const {
    std::size_t n = 0;
    for (auto v : lit_) n += v;
    return n;
  }

  /// Black points on a white background.
  std::string to_ppm() const {
    std::string out = "P6\n" + std::to_string(width_) + " " + std::to_string(height_) + "\n255\n";
    out.reserve(out.size() + 3 * lit_.size());
    for (auto v : lit_) out.append(3, v ? '\0' : '\xff');
    return out;
  }

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<unsigned char> lit_;
};

/// Iterates a uniformly chosen map from the viewport centre, plotting every
/// point after the first `burn_in`.
inline Image render_chaos_game(const IFSSpec& spec, const RenderConfig& config) {
  if (spec.dim != 2) throw Error(Errc::unsupported_dimension, "rendering requires d = 2");
  validate(spec);
  config.validate();

  const Viewport& vp = config.viewport;
  const double sx = static_cast<double>(config.width) / (vp.xmax - vp.xmin);
  const double sy = static_cast<double>(config.height) / (vp.ymax - vp.ymin);

  Image image(config.width, config.height);
  // mt19937_64 output is fully specified; reducing with % keeps the stream
  // identical across standard libraries.
  std::mt19937_64 rng(config.seed);
  const std::uint64_t n = spec.maps.size();
  std::vector<double> point{0.5 * (vp.xmin + vp.xmax), 0.5 * (vp.ymin + vp.ymax)};

  for (std::uint64_t it = 0; it < config.iterations; ++it) {
    point = spec.maps[rng() % n].apply(point);
    if (it < config.burn_in) continue;
    const double fx = std::floor((point[0] - vp.xmin) * sx);
    const double fy = std::floor((vp.ymax - point[1]) * sy);
    if (fx < 0.0 || fy < 0.0 || fx >= static_cast<double>(config.width) || fy >= static_cast<double>(config.height))
      continue;
    image.set(static_cast<std::size_t>(fx), static_cast<std::size_t>(fy));
  }
  return image;
}

inline void write_ppm(const Image& image, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io_error, "cannot open \"" + path.string() + "\" for writing");
  const std::string bytes = image.to_ppm();
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(Errc::io_error, "failed writing \"" + path.string() + "\"");
}

}  // namespace boxlike
