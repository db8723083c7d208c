#pragma once

// Synthetic images and independent scalar oracles shared by the unit and
// acceptance suites.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "uwiqa/checker.hpp"
#include "uwiqa/colorspace.hpp"
#include "uwiqa/image.hpp"

namespace uwiqa_test {

inline uwiqa::ImageBuffer uniform_rgb(int w, int h, std::uint8_t r, std::uint8_t g,
                                      std::uint8_t b) {
  std::vector<std::uint8_t> s(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3);
  for (std::size_t i = 0; i < s.size(); i += 3) {
    s[i] = r;
    s[i + 1] = g;
    s[i + 2] = b;
  }
  return uwiqa::ImageBuffer::from_u8(w, h, 3, std::move(s));
}

inline uwiqa::ImageBuffer random_rgb(int w, int h, std::uint32_t seed, int lo = 0, int hi = 255) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> dist(lo, hi);
  std::vector<std::uint8_t> s(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3);
  for (auto& v : s) v = static_cast<std::uint8_t>(dist(rng));
  return uwiqa::ImageBuffer::from_u8(w, h, 3, std::move(s));
}

// Textured scene: smooth colour gradients, a grid of sharp-edged tiles and
// mild pixel noise. Rich in edges at several scales.
inline uwiqa::ImageBuffer high_detail(int w, int h, std::uint32_t seed = 7) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> noise(0.0, 6.0);
  std::uniform_int_distribution<int> tile(0, 5);
  const int ts = 6;
  const int tw = (w + ts - 1) / ts;
  const int th = (h + ts - 1) / ts;
  std::vector<int> tiles(static_cast<std::size_t>(tw) * static_cast<std::size_t>(th));
  for (int& t : tiles) t = tile(rng);
  std::vector<std::uint8_t> s(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int t = tiles[static_cast<std::size_t>((y / ts) * tw + x / ts)];
      const double base = 40.0 + 30.0 * t;
      const double wave = 20.0 * std::sin(0.21 * x) * std::cos(0.17 * y);
      const double ch[3] = {base + wave + 0.10 * x, base - wave + 0.05 * y, base + 15.0};
      for (int c = 0; c < 3; ++c) {
        const double v = std::clamp(ch[c] + noise(rng), 1.0, 254.0);
        s[(static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x)) * 3 +
          static_cast<std::size_t>(c)] = static_cast<std::uint8_t>(std::lround(v));
      }
    }
  }
  return uwiqa::ImageBuffer::from_u8(w, h, 3, std::move(s));
}

inline uwiqa::ImageBuffer flip_horizontal(const uwiqa::ImageBuffer& img) {
  auto out = img;
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x)
      for (int c = 0; c < img.channels(); ++c)
        out.u8()[out.index(x, y, c)] = img.u8()[img.index(img.width() - 1 - x, y, c)];
  return out;
}

inline uwiqa::ImageBuffer flip_vertical(const uwiqa::ImageBuffer& img) {
  auto out = img;
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x)
      for (int c = 0; c < img.channels(); ++c)
        out.u8()[out.index(x, y, c)] = img.u8()[img.index(x, img.height() - 1 - y, c)];
  return out;
}

// Independent sRGB -> Lab chain: textbook D65 white (0.95047, 1, 1.08883),
// pow-based companding, long double arithmetic.
inline uwiqa::LabColor oracle_srgb8_to_lab(int r8, int g8, int b8) {
  const auto lin = [](int v) {
    const long double c = v / 255.0L;
    return c <= 0.04045L ? c / 12.92L : std::pow((c + 0.055L) / 1.055L, 2.4L);
  };
  const long double r = lin(r8), g = lin(g8), b = lin(b8);
  const long double X = 0.4124564L * r + 0.3575761L * g + 0.1804375L * b;
  const long double Y = 0.2126729L * r + 0.7151522L * g + 0.0721750L * b;
  const long double Z = 0.0193339L * r + 0.1191920L * g + 0.9503041L * b;
  const auto f = [](long double t) {
    const long double d = 6.0L / 29.0L;
    return t > d * d * d ? std::cbrt(t) : t / (3.0L * d * d) + 4.0L / 29.0L;
  };
  const long double fx = f(X / 0.95047L), fy = f(Y), fz = f(Z / 1.08883L);
  return {static_cast<double>(116.0L * fy - 16.0L), static_cast<double>(500.0L * (fx - fy)),
          static_cast<double>(200.0L * (fy - fz))};
}

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path = std::filesystem::temp_directory_path() /
           ("uwiqa_" + tag + "_" + std::to_string(rd()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// 6x4 chart, one `cell`-pixel square per reference patch, plus a LabelMe-style
// annotation document with one rectangle per patch inset by `inset` pixels.
struct SyntheticChart {
  uwiqa::ImageBuffer image;
  std::string annotations_json;
};

inline SyntheticChart synthetic_chart(const uwiqa::CheckerReference& ref, int cell = 20,
                                      int inset = 3) {
  const int w = 6 * cell, h = 4 * cell;
  uwiqa::ImageBuffer img(w, h, 3, uwiqa::SampleDepth::kU8, uwiqa::Encoding::kSrgb);
  std::string doc = "{\"shapes\": [";
  for (std::size_t i = 0; i < ref.patches().size(); ++i) {
    const auto& p = ref.patches()[i];
    const int cx = static_cast<int>(i % 6) * cell;
    const int cy = static_cast<int>(i / 6) * cell;
    for (int y = cy; y < cy + cell; ++y)
      for (int x = cx; x < cx + cell; ++x) {
        img.u8()[img.index(x, y, 0)] = static_cast<std::uint8_t>(p.srgb8.r);
        img.u8()[img.index(x, y, 1)] = static_cast<std::uint8_t>(p.srgb8.g);
        img.u8()[img.index(x, y, 2)] = static_cast<std::uint8_t>(p.srgb8.b);
      }
    const int x0 = cx + inset, y0 = cy + inset, x1 = cx + cell - inset, y1 = cy + cell - inset;
    if (i) doc += ", ";
    doc += "{\"label\": \"" + p.label + "\", \"points\": [[" + std::to_string(x0) + ", " +
           std::to_string(y0) + "], [" + std::to_string(x1) + ", " + std::to_string(y0) + "], [" +
           std::to_string(x1) + ", " + std::to_string(y1) + "], [" + std::to_string(x0) + ", " +
           std::to_string(y1) + "]]}";
  }
  doc += "]}";
  return {std::move(img), std::move(doc)};
}

}  // namespace uwiqa_test
