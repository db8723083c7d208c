#include "uwiqa/image.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "uwiqa/error.hpp"

namespace uwiqa {

namespace {

void check_shape(int width, int height, int channels) {
  if (width < 1 || height < 1) {
    throw Error(ErrorKind::kDegenerateSize,
                "image dimensions must be positive, got " +
                    std::to_string(width) + "x" + std::to_string(height));
  }
  if (channels != 1 && channels != 3) {
    throw Error(ErrorKind::kInvalidArgument,
                "image must have 1 or 3 channels, got " +
                    std::to_string(channels));
  }
}

std::string lower_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return ext;
}

}  // namespace

ImageBuffer::ImageBuffer(int width, int height, int channels, SampleDepth depth,
                         Encoding encoding)
    : width_(width),
      height_(height),
      channels_(channels),
      depth_(depth),
      encoding_(encoding) {
  check_shape(width, height, channels);
  if (depth_ == SampleDepth::kU8) {
    u8_.assign(sample_count(), 0);
  } else {
    f32_.assign(sample_count(), 0.0F);
  }
}

ImageBuffer ImageBuffer::from_u8(int width, int height, int channels,
                                 std::vector<std::uint8_t> samples,
                                 Encoding encoding) {
  check_shape(width, height, channels);
  ImageBuffer img(width, height, channels, SampleDepth::kU8, encoding);
  if (samples.size() != img.sample_count()) {
    throw Error(ErrorKind::kInvalidArgument,
                "sample count " + std::to_string(samples.size()) +
                    " does not match " + std::to_string(img.sample_count()));
  }
  img.u8_ = std::move(samples);
  return img;
}

ImageBuffer ImageBuffer::from_float(int width, int height, int channels,
                                    std::vector<float> samples,
                                    Encoding encoding) {
  check_shape(width, height, channels);
  ImageBuffer img(width, height, channels, SampleDepth::kUnitFloat, encoding);
  if (samples.size() != img.sample_count()) {
    throw Error(ErrorKind::kInvalidArgument,
                "sample count " + std::to_string(samples.size()) +
                    " does not match " + std::to_string(img.sample_count()));
  }
  for (float v : samples) {
    if (!(v >= 0.0F && v <= 1.0F)) {
      throw Error(ErrorKind::kInvalidArgument,
                  "float samples must lie in [0,1]");
    }
  }
  img.f32_ = std::move(samples);
  return img;
}

std::span<const std::uint8_t> ImageBuffer::u8() const {
  if (depth_ != SampleDepth::kU8) {
    throw Error(ErrorKind::kInvalidArgument, "buffer is not 8-bit");
  }
  return u8_;
}

std::span<std::uint8_t> ImageBuffer::u8() {
  if (depth_ != SampleDepth::kU8) {
    throw Error(ErrorKind::kInvalidArgument, "buffer is not 8-bit");
  }
  return u8_;
}

std::span<const float> ImageBuffer::f32() const {
  if (depth_ != SampleDepth::kUnitFloat) {
    throw Error(ErrorKind::kInvalidArgument, "buffer is not float");
  }
  return f32_;
}

std::span<float> ImageBuffer::f32() {
  if (depth_ != SampleDepth::kUnitFloat) {
    throw Error(ErrorKind::kInvalidArgument, "buffer is not float");
  }
  return f32_;
}

std::uint8_t to_u8_sample(double unit) noexcept {
  const double scaled = std::clamp(unit, 0.0, 1.0) * 255.0;
  // std::round is half away from zero.
  return static_cast<std::uint8_t>(std::round(scaled));
}

ImageBuffer to_u8(const ImageBuffer& img) {
  if (img.depth() == SampleDepth::kU8) return img;
  ImageBuffer out(img.width(), img.height(), img.channels(), SampleDepth::kU8,
                  img.encoding());
  auto src = img.f32();
  auto dst = out.u8();
  std::transform(src.begin(), src.end(), dst.begin(),
                 [](float v) { return to_u8_sample(v); });
  return out;
}

ImageBuffer to_unit_float(const ImageBuffer& img) {
  if (img.depth() == SampleDepth::kUnitFloat) return img;
  ImageBuffer out(img.width(), img.height(), img.channels(),
                  SampleDepth::kUnitFloat, img.encoding());
  auto src = img.u8();
  auto dst = out.f32();
  std::transform(src.begin(), src.end(), dst.begin(), [](std::uint8_t v) {
    return static_cast<float>(static_cast<double>(v) / 255.0);
  });
  return out;
}

ImageBuffer load_image(const std::filesystem::path& path) {
  const std::string ext = lower_extension(path);
  if (ext != ".png" && ext != ".jpg" && ext != ".jpeg") {
    throw Error(ErrorKind::kUnsupportedFormat,
                path.string() + ": unsupported image format '" + ext + "'");
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::kIo, path.string() + ": cannot open file");
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (bytes.empty()) {
    throw Error(ErrorKind::kDecode, path.string() + ": empty file");
  }

  cv::Mat decoded;
  try {
    decoded = cv::imdecode(bytes, cv::IMREAD_COLOR);
  } catch (const cv::Exception& e) {
    throw Error(ErrorKind::kDecode, path.string() + ": " + e.what());
  }
  if (decoded.empty() || decoded.type() != CV_8UC3) {
    throw Error(ErrorKind::kDecode,
                path.string() + ": corrupt or undecodable image stream");
  }

  ImageBuffer img(decoded.cols, decoded.rows, 3, SampleDepth::kU8,
                  Encoding::kSrgb);
  auto dst = img.u8();
  for (int y = 0; y < decoded.rows; ++y) {
    const auto* row = decoded.ptr<cv::Vec3b>(y);
    for (int x = 0; x < decoded.cols; ++x) {
      const std::size_t i = img.index(x, y);
      dst[i + 0] = row[x][2];
      dst[i + 1] = row[x][1];
      dst[i + 2] = row[x][0];
    }
  }
  return img;
}

void save_png(const ImageBuffer& img, const std::filesystem::path& path) {
  const ImageBuffer src = to_u8(img);
  const int type = src.channels() == 3 ? CV_8UC3 : CV_8UC1;
  cv::Mat mat(src.height(), src.width(), type);
  auto data = src.u8();
  for (int y = 0; y < src.height(); ++y) {
    auto* row = mat.ptr<std::uint8_t>(y);
    for (int x = 0; x < src.width(); ++x) {
      const std::size_t i = src.index(x, y);
      if (src.channels() == 3) {
        row[3 * x + 0] = data[i + 2];
        row[3 * x + 1] = data[i + 1];
        row[3 * x + 2] = data[i + 0];
      } else {
        row[x] = data[i];
      }
    }
  }
  std::vector<std::uint8_t> encoded;
  if (!cv::imencode(".png", mat, encoded)) {
    throw Error(ErrorKind::kIo, path.string() + ": PNG encoding failed");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::kIo, path.string() + ": cannot open for writing");
  }
  out.write(reinterpret_cast<const char*>(encoded.data()),
            static_cast<std::streamsize>(encoded.size()));
}

ImageBuffer resize_bilinear(const ImageBuffer& img, ScaleRatio scale) {
  if (scale.num <= 0 || scale.den <= 0 || scale.num > scale.den) {
    throw Error(ErrorKind::kInvalidArgument,
                "scale must lie in (0,1], got " + std::to_string(scale.num) +
                    "/" + std::to_string(scale.den));
  }
  const auto scaled = [&](int n) {
    return static_cast<int>(std::round(static_cast<double>(n) * scale.num /
                                       scale.den));
  };
  const int out_w = scaled(img.width());
  const int out_h = scaled(img.height());
  if (out_w < 1 || out_h < 1) {
    throw Error(ErrorKind::kDegenerateSize,
                "resize to " + std::to_string(out_w) + "x" +
                    std::to_string(out_h) + " is degenerate");
  }
  if (out_w == img.width() && out_h == img.height()) return img;

  const double sx = static_cast<double>(img.width()) / out_w;
  const double sy = static_cast<double>(img.height()) / out_h;
  const int channels = img.channels();

  struct Tap {
    int lo;
    int hi;
    double frac;
  };
  const auto taps = [](int out_n, int in_n, double step) {
    std::vector<Tap> result(static_cast<std::size_t>(out_n));
    for (int i = 0; i < out_n; ++i) {
      double pos = (i + 0.5) * step - 0.5;
      pos = std::clamp(pos, 0.0, static_cast<double>(in_n - 1));
      const int lo = static_cast<int>(std::floor(pos));
      const int hi = std::min(lo + 1, in_n - 1);
      result[static_cast<std::size_t>(i)] = {lo, hi, pos - lo};
    }
    return result;
  };
  const std::vector<Tap> xt = taps(out_w, img.width(), sx);
  const std::vector<Tap> yt = taps(out_h, img.height(), sy);

  ImageBuffer out(out_w, out_h, channels, img.depth(), img.encoding());
  for (int y = 0; y < out_h; ++y) {
    const Tap& ty = yt[static_cast<std::size_t>(y)];
    for (int x = 0; x < out_w; ++x) {
      const Tap& tx = xt[static_cast<std::size_t>(x)];
      for (int c = 0; c < channels; ++c) {
        const double top = img.at(tx.lo, ty.lo, c) * (1.0 - tx.frac) +
                           img.at(tx.hi, ty.lo, c) * tx.frac;
        const double bottom = img.at(tx.lo, ty.hi, c) * (1.0 - tx.frac) +
                              img.at(tx.hi, ty.hi, c) * tx.frac;
        const double v = top * (1.0 - ty.frac) + bottom * ty.frac;
        const std::size_t i = out.index(x, y, c);
        if (out.depth() == SampleDepth::kU8) {
          out.u8()[i] = static_cast<std::uint8_t>(
              std::clamp(std::round(v), 0.0, 255.0));
        } else {
          out.f32()[i] = static_cast<float>(std::clamp(v, 0.0, 1.0));
        }
      }
    }
  }
  return out;
}

ImageBuffer to_grayscale(const ImageBuffer& img) {
  if (img.channels() != 3) {
    throw Error(ErrorKind::kInvalidArgument,
                "to_grayscale expects a 3-channel image");
  }
  ImageBuffer out(img.width(), img.height(), 1, img.depth(), Encoding::kGray);
  const std::size_t n = img.pixel_count();
  if (img.depth() == SampleDepth::kU8) {
    auto src = img.u8();
    auto dst = out.u8();
    for (std::size_t p = 0; p < n; ++p) {
      const double y = kLumaR * src[3 * p] + kLumaG * src[3 * p + 1] +
                       kLumaB * src[3 * p + 2];
      dst[p] = static_cast<std::uint8_t>(std::clamp(std::round(y), 0.0, 255.0));
    }
  } else {
    auto src = img.f32();
    auto dst = out.f32();
    for (std::size_t p = 0; p < n; ++p) {
      const double y = kLumaR * src[3 * p] + kLumaG * src[3 * p + 1] +
                       kLumaB * src[3 * p + 2];
      dst[p] = static_cast<float>(std::clamp(y, 0.0, 1.0));
    }
  }
  return out;
}

std::vector<double> gray_plane_8bit(const ImageBuffer& img) {
  const ImageBuffer gray = img.channels() == 1 ? img : to_grayscale(img);
  const ImageBuffer g8 = to_u8(gray);
  auto src = g8.u8();
  return {src.begin(), src.end()};
}

}  // namespace uwiqa
