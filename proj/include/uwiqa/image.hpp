#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace uwiqa {

enum class SampleDepth { kU8, kUnitFloat };
enum class Encoding { kSrgb, kLinearRgb, kGray };

/// Row-major interleaved pixel container.
///
/// Samples are held either as 8-bit integers in [0,255] or as floats in
/// [0,1], selected by `depth()`. Exactly one of the two storages is populated.
class ImageBuffer {
 public:
  /// Zero-filled buffer. Throws kDegenerateSize for non-positive dimensions
  /// and kInvalidArgument for channel counts other than 1 or 3.
  ImageBuffer(int width, int height, int channels, SampleDepth depth,
              Encoding encoding);

  static ImageBuffer from_u8(int width, int height, int channels,
                             std::vector<std::uint8_t> samples,
                             Encoding encoding = Encoding::kSrgb);
  static ImageBuffer from_float(int width, int height, int channels,
                                std::vector<float> samples,
                                Encoding encoding = Encoding::kSrgb);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return channels_; }
  SampleDepth depth() const noexcept { return depth_; }
  Encoding encoding() const noexcept { return encoding_; }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }
  std::size_t sample_count() const noexcept {
    return pixel_count() * static_cast<std::size_t>(channels_);
  }

  /// Full-scale value of a sample: 255 for 8-bit, 1 for float.
  double max_value() const noexcept {
    return depth_ == SampleDepth::kU8 ? 255.0 : 1.0;
  }

  std::span<const std::uint8_t> u8() const;
  std::span<std::uint8_t> u8();
  std::span<const float> f32() const;
  std::span<float> f32();

  /// Sample in its native scale.
  double at(int x, int y, int c = 0) const {
    const std::size_t i = index(x, y, c);
    return depth_ == SampleDepth::kU8 ? static_cast<double>(u8_[i])
                                      : static_cast<double>(f32_[i]);
  }
  /// Sample normalized to [0,1].
  double unit_at(int x, int y, int c = 0) const {
    return at(x, y, c) / max_value();
  }

  std::size_t index(int x, int y, int c = 0) const noexcept {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
            static_cast<std::size_t>(x)) *
               static_cast<std::size_t>(channels_) +
           static_cast<std::size_t>(c);
  }

  bool same_shape(const ImageBuffer& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_ &&
           channels_ == other.channels_;
  }

  friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

 private:
  int width_;
  int height_;
  int channels_;
  SampleDepth depth_;
  Encoding encoding_;
  std::vector<std::uint8_t> u8_;
  std::vector<float> f32_;
};

/// Float in [0,1] to 8-bit, rounding half away from zero.
std::uint8_t to_u8_sample(double unit) noexcept;

/// Depth conversions. 8-bit to float divides by 255 exactly.
ImageBuffer to_u8(const ImageBuffer& img);
ImageBuffer to_unit_float(const ImageBuffer& img);

/// Decodes a PNG or JPEG into an 8-bit 3-channel sRGB buffer; grayscale
/// sources are expanded to three channels.
ImageBuffer load_image(const std::filesystem::path& path);

/// Writes an 8-bit PNG. Float buffers are rounded to 8-bit first.
void save_png(const ImageBuffer& img, const std::filesystem::path& path);

/// Output-size ratio in (0,1]; output dimension = round(input * num / den).
struct ScaleRatio {
  int num = 1;
  int den = 1;
};

/// Bilinear resampling with center-aligned sample positions and edge clamp.
ImageBuffer resize_bilinear(const ImageBuffer& img, ScaleRatio scale);

/// Y = 0.299 R + 0.587 G + 0.114 B, same depth as the input.
ImageBuffer to_grayscale(const ImageBuffer& img);

/// Single-channel gray view as doubles in 8-bit scale; 3-channel inputs go
/// through `to_grayscale` first.
std::vector<double> gray_plane_8bit(const ImageBuffer& img);

inline constexpr double kLumaR = 0.299;
inline constexpr double kLumaG = 0.587;
inline constexpr double kLumaB = 0.114;

}  // namespace uwiqa
