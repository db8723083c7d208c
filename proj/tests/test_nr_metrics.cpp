#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "fixtures.hpp"
#include "uwiqa/colorspace.hpp"
#include "uwiqa/error.hpp"
#include "uwiqa/filters.hpp"
#include "uwiqa/nr_metrics.hpp"

using namespace uwiqa;
using uwiqa_test::uniform_rgb;

TEST_CASE("alpha-trimmed statistics") {
  std::vector<double> v(10);
  std::iota(v.begin(), v.end(), 1.0);
  const auto s = alpha_trimmed_stats(v, 0.1);
  CHECK(s.mean == doctest::Approx(5.5));
  // Population variance of 2..9.
  CHECK(s.variance == doctest::Approx(5.25));

  const std::vector<double> sevens{7, 7, 7, 7};
  for (double a : {0.0, 0.1, 0.25}) {
    const auto c = alpha_trimmed_stats(sevens, a);
    CHECK(c.mean == 7.0);
    CHECK(c.variance == 0.0);
  }

  std::mt19937 rng(5);
  std::vector<double> r(101);
  for (double& x : r) x = std::uniform_real_distribution<double>(-50, 50)(rng);
  const auto unsorted = alpha_trimmed_stats(r, 0.1);
  std::sort(r.begin(), r.end());
  const auto sorted = alpha_trimmed_stats(r, 0.1);
  CHECK(unsorted.mean == sorted.mean);
  CHECK(unsorted.variance == sorted.variance);
  CHECK(sorted.mean >= r.front());
  CHECK(sorted.mean <= r.back());

  try {
    alpha_trimmed_stats(std::vector<double>{1.0}, 0.4);
    FAIL("single sample survived a 40% trim");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kEmptyAfterTrim);
  }
  CHECK_THROWS_AS(alpha_trimmed_stats(std::vector<double>{}, 0.0), Error);
}

TEST_CASE("UCIQE fixtures") {
  const auto gray = uciqe(uniform_rgb(32, 32, 128, 128, 128));
  CHECK(gray.sigma_c == doctest::Approx(0.0));
  CHECK(gray.con_l == 0.0);
  CHECK(gray.mu_s == doctest::Approx(0.0));
  CHECK(std::abs(gray.value) < 1e-9);

  std::vector<std::uint8_t> s(20 * 20 * 3);
  for (int y = 0; y < 20; ++y)
    for (int x = 10; x < 20; ++x)
      for (int c = 0; c < 3; ++c) s[static_cast<std::size_t>((y * 20 + x) * 3 + c)] = 255;
  const auto half = uciqe(ImageBuffer::from_u8(20, 20, 3, std::move(s)));
  const MeasureConstants k;
  CHECK(half.sigma_c < 1e-6);
  CHECK(half.mu_s < 1e-6);
  CHECK(half.con_l == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(half.value == doctest::Approx(k.uciqe_weights[1]).epsilon(1e-6));

  const auto img = uwiqa_test::random_rgb(40, 30, 9);
  const auto b = uciqe(img);
  CHECK(b.value == doctest::Approx(k.uciqe_weights[0] * b.sigma_c + k.uciqe_weights[1] * b.con_l +
                                   k.uciqe_weights[2] * b.mu_s)
                       .epsilon(1e-12));
  CHECK(b.sigma_c >= 0.0);
  CHECK(b.con_l >= 0.0);
  CHECK(b.con_l <= 1.0);

  MeasureConstants luma = k;
  luma.uciqe_luminance = UciqeLuminance::kLuma8;
  CHECK(uciqe(img, luma).con_l != b.con_l);
}

TEST_CASE("UIQM fixtures") {
  const auto gray = uiqm(uniform_rgb(32, 32, 128, 128, 128));
  CHECK(gray.uicm == 0.0);
  CHECK(gray.uism == 0.0);
  CHECK(gray.uiconm == 0.0);
  CHECK(gray.value == 0.0);

  const MeasureConstants k;
  const auto red = uiqm(uniform_rgb(32, 32, 255, 0, 0));
  const double expected = -0.0268 * std::sqrt(255.0 * 255.0 + 127.5 * 127.5);
  CHECK(std::abs(red.uicm - expected) < 1e-6);
  CHECK(red.uism == 0.0);
  CHECK(red.uiconm == 0.0);
  CHECK(red.value == doctest::Approx(k.uiqm_weights[0] * expected).epsilon(1e-12));

  const auto img = uwiqa_test::high_detail(64, 48);
  const auto b = uiqm(img);
  CHECK(b.value == doctest::Approx(k.uiqm_weights[0] * b.uicm + k.uiqm_weights[1] * b.uism +
                                   k.uiqm_weights[2] * b.uiconm)
                       .epsilon(1e-12));
  CHECK(b.uism > 0.0);
  CHECK(b.uiconm > 0.0);

  MeasureConstants plip = k;
  plip.uiconm_plip = true;
  const double p = uiconm(img, plip);
  CHECK(std::isfinite(p));
  CHECK(p != b.uiconm);

  try {
    uiqm(uniform_rgb(7, 20, 1, 2, 3));
    FAIL("sub-block image accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kDegenerateSize);
  }
}

TEST_CASE("UIQM accepts float buffers on the same scale") {
  const auto img = uwiqa_test::high_detail(40, 40);
  const auto a = uiqm(img);
  const auto b = uiqm(to_unit_float(img));
  CHECK(b.uicm == doctest::Approx(a.uicm).epsilon(1e-5));
  CHECK(b.uiconm == doctest::Approx(a.uiconm).epsilon(1e-5));
}

TEST_CASE("CCF fixtures") {
  const auto gray = ccf(uniform_rgb(32, 32, 128, 128, 128));
  CHECK(gray.colorfulness == 0.0);
  CHECK(gray.contrast == 0.0);
  CHECK(gray.fog_density == 1.0);

  const MeasureConstants k;
  const auto b = ccf(uwiqa_test::high_detail(64, 48));
  CHECK(b.value == doctest::Approx(k.ccf_weights[0] * b.colorfulness + k.ccf_weights[1] * b.contrast +
                                   k.ccf_weights[2] * b.fog_density)
                       .epsilon(1e-12));
  CHECK(b.colorfulness > 0.0);
  CHECK(b.contrast > 25.0 * k.ccf_gradient_scale);
  CHECK(b.fog_density > 0.0);
  CHECK(b.fog_density < 1.0);
  CHECK(ccf(uwiqa_test::high_detail(64, 48), k, 1e300).contrast == 0.0);
}

TEST_CASE("NR measures are flip invariant on block-aligned images") {
  const auto img = uwiqa_test::high_detail(64, 48, 21);
  for (const auto& f : {uwiqa_test::flip_horizontal(img), uwiqa_test::flip_vertical(img)}) {
    CHECK(uciqe(f).value == doctest::Approx(uciqe(img).value).epsilon(1e-12));
    CHECK(uiqm(f).value == doctest::Approx(uiqm(img).value).epsilon(1e-12));
    CHECK(ccf(f).value == doctest::Approx(ccf(img).value).epsilon(1e-12));
  }
}

TEST_CASE("blur lowers sharpness and CCF contrast") {
  const auto img = uwiqa_test::high_detail(96, 64);
  const auto blurred = gaussian_blur(img, 2.0);
  CHECK(uism(blurred) < uism(img));
  CHECK(ccf(blurred).contrast < ccf(img).contrast);
}

TEST_CASE("boosting chroma does not lower mean saturation") {
  const auto img = uwiqa_test::high_detail(48, 48, 3);
  auto boosted = img;
  auto px = boosted.u8();
  for (std::size_t p = 0; p < img.pixel_count(); ++p) {
    LchColor lch = lab_to_lch(srgb8_to_lab(px[3 * p], px[3 * p + 1], px[3 * p + 2]));
    lch.C *= 1.5;
    const Rgb rgb = lab_to_srgb(lch_to_lab(lch));
    px[3 * p] = to_u8_sample(rgb.r);
    px[3 * p + 1] = to_u8_sample(rgb.g);
    px[3 * p + 2] = to_u8_sample(rgb.b);
  }
  CHECK(uciqe(boosted).mu_s >= uciqe(img).mu_s);
}
