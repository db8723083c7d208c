#include <doctest.h>

#include "fixtures.hpp"
#include "uwiqa/error.hpp"
#include "uwiqa/image.hpp"

using namespace uwiqa;
using uwiqa_test::TempDir;

namespace {

ErrorKind kind_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::kIo;
}

}  // namespace

TEST_CASE("construction validates shape") {
  CHECK(kind_of([] { ImageBuffer(0, 4, 3, SampleDepth::kU8, Encoding::kSrgb); }) ==
        ErrorKind::kDegenerateSize);
  CHECK(kind_of([] { ImageBuffer(4, 4, 2, SampleDepth::kU8, Encoding::kSrgb); }) ==
        ErrorKind::kInvalidArgument);
  CHECK(kind_of([] { ImageBuffer::from_u8(2, 2, 3, std::vector<std::uint8_t>(5)); }) ==
        ErrorKind::kInvalidArgument);
  CHECK(kind_of([] { ImageBuffer::from_float(1, 1, 1, {1.5f}); }) ==
        ErrorKind::kInvalidArgument);
  const ImageBuffer z(3, 2, 3, SampleDepth::kU8, Encoding::kSrgb);
  CHECK(z.sample_count() == 18);
  CHECK(z.at(2, 1, 2) == 0.0);
  CHECK_THROWS_AS(z.f32(), Error);
}

TEST_CASE("depth conversion") {
  CHECK(to_u8_sample(0.5 / 255.0) == 1);  // half rounds away from zero
  CHECK(to_u8_sample(-3.0) == 0);
  CHECK(to_u8_sample(2.0) == 255);
  const auto img = ImageBuffer::from_u8(1, 1, 3, {0, 128, 255});
  const auto f = to_unit_float(img);
  CHECK(f.f32()[1] == doctest::Approx(128.0 / 255.0).epsilon(1e-7));
  CHECK(to_u8(f) == img);
}

TEST_CASE("load_image decodes PNG and reports failures with the path") {
  TempDir dir("image");
  const auto black = ImageBuffer::from_u8(2, 2, 3, std::vector<std::uint8_t>(12, 0));
  save_png(black, dir.path / "black.png");
  CHECK(load_image(dir.path / "black.png") == black);

  const auto red = ImageBuffer::from_u8(1, 1, 3, {255, 0, 0});
  save_png(red, dir.path / "red.png");
  CHECK(load_image(dir.path / "red.png") == red);

  // Round trip on a noisy image.
  const auto noisy = uwiqa_test::random_rgb(17, 9, 3);
  save_png(noisy, dir.path / "noisy.png");
  CHECK(load_image(dir.path / "noisy.png") == noisy);

  const std::string bytes = uwiqa_test::read_text(dir.path / "noisy.png");
  uwiqa_test::write_text(dir.path / "truncated.png", bytes.substr(0, bytes.size() / 3));
  try {
    load_image(dir.path / "truncated.png");
    FAIL("truncated file decoded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kDecode);
    CHECK(std::string(e.what()).find("truncated.png") != std::string::npos);
  }
  CHECK(kind_of([&] { load_image(dir.path / "missing.png"); }) == ErrorKind::kIo);
  uwiqa_test::write_text(dir.path / "x.bmp", "BM");
  CHECK(kind_of([&] { load_image(dir.path / "x.bmp"); }) == ErrorKind::kUnsupportedFormat);
}

TEST_CASE("resize_bilinear") {
  const auto img = uwiqa_test::random_rgb(13, 7, 11);
  CHECK(resize_bilinear(img, {1, 1}) == img);

  const auto pair = ImageBuffer::from_u8(2, 1, 1, {0, 255}, Encoding::kGray);
  const auto one = resize_bilinear(pair, {1, 2});
  REQUIRE(one.width() == 1);
  CHECK(one.u8()[0] == 128);  // (0 + 255) / 2 = 127.5 rounds up

  const ImageBuffer big(400, 300, 3, SampleDepth::kU8, Encoding::kSrgb);
  const auto q = resize_bilinear(big, {1, 4});
  CHECK(q.width() == 100);
  CHECK(q.height() == 75);

  CHECK_THROWS_AS(resize_bilinear(img, {0, 1}), Error);
  CHECK_THROWS_AS(resize_bilinear(img, {3, 2}), Error);
}

TEST_CASE("to_grayscale") {
  const auto px = ImageBuffer::from_u8(3, 1, 3, {255, 255, 255, 255, 0, 0, 0, 0, 0});
  const auto g = to_grayscale(px);
  CHECK(g.channels() == 1);
  CHECK(g.u8()[0] == 255);
  CHECK(g.u8()[1] == 76);
  CHECK(g.u8()[2] == 0);
  for (int v : {0, 1, 77, 128, 254, 255}) {
    const auto u = static_cast<std::uint8_t>(v);
    CHECK(to_grayscale(ImageBuffer::from_u8(1, 1, 3, {u, u, u})).u8()[0] == v);
  }
}
