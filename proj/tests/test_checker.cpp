#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "fixtures.hpp"
#include "uwiqa/checker.hpp"
#include "uwiqa/color_accuracy.hpp"
#include "uwiqa/error.hpp"

using namespace uwiqa;

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

PatchAnnotation rect(std::string label, double x0, double y0, double x1, double y1) {
  return {std::move(label), {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}};
}

}  // namespace

TEST_CASE("parse_annotations") {
  const auto one = parse_annotations_text(
      R"({"shapes": [{"label": "gray_1", "points": [[0, 0], [4, 0], [0, 4]], "shape_type": "polygon"}]})");
  REQUIRE(one.size() == 1);
  CHECK(one[0].label == "gray_1");
  CHECK(one[0].polygon.size() == 3);

  try {
    parse_annotations_text(
        R"({"shapes": [{"label": "a", "points": [[0,0],[1,0],[0,1]]},
                        {"label": "a", "points": [[0,0],[1,0],[0,1]]}]})");
    FAIL("duplicate accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kDuplicateLabel);
    CHECK(std::string(e.what()).find("'a'") != std::string::npos);
  }
  CHECK(kind_of([] { parse_annotations_text("{}"); }) == ErrorKind::kMalformedAnnotation);
  CHECK(kind_of([] { parse_annotations_text("not json"); }) == ErrorKind::kMalformedAnnotation);
  CHECK(kind_of([] {
          parse_annotations_text(R"({"shapes": [{"label": "a", "points": [[0,0],[1,0]]}]})");
        }) == ErrorKind::kMalformedAnnotation);
  CHECK(kind_of([] {
          parse_annotations_text(R"({"shapes": [{"label": 3, "points": [[0,0],[1,0],[0,1]]}]})");
        }) == ErrorKind::kMalformedAnnotation);
  CHECK(kind_of([] { parse_annotations("/nonexistent/annotations.json"); }) == ErrorKind::kIo);

  const auto chart = uwiqa_test::synthetic_chart(default_checker_reference());
  const auto full = parse_annotations_text(chart.annotations_json);
  CHECK(full.size() == 24);
  const auto achromatic = std::count_if(full.begin(), full.end(), [](const PatchAnnotation& a) {
    return default_checker_reference().find(a.label)->achromatic;
  });
  CHECK(achromatic == 6);
}

TEST_CASE("reference chart") {
  const auto& ref = default_checker_reference();
  CHECK(ref.patches().size() == 24);
  for (const auto& p : ref.patches()) {
    if (p.achromatic) {
      CHECK(p.srgb8.r == p.srgb8.g);
      CHECK(p.srgb8.g == p.srgb8.b);
    }
  }
  const auto again = parse_checker_reference_text(checker_reference_to_json(ref));
  REQUIRE(again.patches().size() == 24);
  CHECK(again.patches()[5].label == ref.patches()[5].label);
  CHECK(again.patches()[5].srgb8 == ref.patches()[5].srgb8);
  CHECK(kind_of([] { parse_checker_reference_text("[]"); }) == ErrorKind::kConfig);
}

TEST_CASE("patch_mean_color") {
  const auto uniform = uwiqa_test::uniform_rgb(30, 30, 10, 20, 30);
  const Rgb m = patch_mean_color(uniform, rect("p", 3, 4, 25, 20), 2.0);
  CHECK(m.r == 10.0);
  CHECK(m.g == 20.0);
  CHECK(m.b == 30.0);

  // Left half 0, right half 255; the rectangle straddles x = 10 symmetrically.
  auto halves = uwiqa_test::uniform_rgb(20, 10, 0, 0, 0);
  for (int y = 0; y < 10; ++y)
    for (int x = 10; x < 20; ++x)
      for (int c = 0; c < 3; ++c) halves.u8()[halves.index(x, y, c)] = 255;
  for (double erosion : {0.0, 1.0, 2.0}) {
    const Rgb h = patch_mean_color(halves, rect("h", 4, 1, 16, 9), erosion);
    CHECK(h.r == 127.5);
    CHECK(h.b == 127.5);
  }

  CHECK(kind_of([&] { patch_mean_color(uniform, rect("tiny", 5, 5, 8, 8), 2.0); }) ==
        ErrorKind::kEmptyInterior);
  CHECK(kind_of([&] { patch_mean_color(uniform, rect("out", 5, 5, 40, 8), 0.0); }) ==
        ErrorKind::kInvalidArgument);

  // Vertex rotation and reversal leave the interior unchanged.
  const auto noisy = uwiqa_test::random_rgb(40, 40, 77);
  PatchAnnotation poly{"poly", {{3, 5}, {30, 2}, {37, 28}, {18, 36}, {6, 25}}};
  const Rgb base = patch_mean_color(noisy, poly, 2.0);
  for (int k = 0; k < 5; ++k) {
    std::rotate(poly.polygon.begin(), poly.polygon.begin() + 1, poly.polygon.end());
    const Rgb r = patch_mean_color(noisy, poly, 2.0);
    CHECK(r == base);
  }
  std::reverse(poly.polygon.begin(), poly.polygon.end());
  CHECK(patch_mean_color(noisy, poly, 2.0) == base);

  const Rgb med = patch_mean_color(noisy, poly, 2.0, PatchStatistic::kMedian);
  CHECK(med.r >= 0.0);
  CHECK(med.r <= 255.0);
}

TEST_CASE("evaluate_checker") {
  const auto& ref = default_checker_reference();
  const auto chart = uwiqa_test::synthetic_chart(ref);
  const auto anns = parse_annotations_text(chart.annotations_json);

  const auto exact = evaluate_checker(chart.image, anns, ref);
  REQUIRE(exact.size() == 24);
  for (const auto& s : exact) {
    CHECK(s.delta_e00 == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
    CHECK(s.phi_degrees.has_value() == s.achromatic);
    if (s.phi_degrees) CHECK(*s.phi_degrees == 0.0);
  }
  CHECK(evaluate_checker(chart.image, anns, ref) .size() == 24);

  // A gray patch rendered white: lightness-blind angle, non-zero difference.
  auto washed = chart.image;
  const std::size_t idx = 21;  // neutral_5
  REQUIRE(ref.patches()[idx].label == "neutral_5");
  for (int y = 60; y < 80; ++y)
    for (int x = 60; x < 80; ++x)
      for (int c = 0; c < 3; ++c) washed.u8()[washed.index(x, y, c)] = 255;
  const auto scores = evaluate_checker(washed, anns, ref, {}, exact);
  const auto& n5 = scores[idx];
  CHECK(*n5.phi_degrees == 0.0);
  CHECK(n5.delta_e00 > kImperceptibleDeltaE);
  CHECK(n5.delta_e_worse_than_original);
  CHECK_FALSE(n5.phi_worse_than_original);
  CHECK_FALSE(scores[0].worse_than_original());

  CheckerOptions all;
  all.phi_all_patches = true;
  for (const auto& s : evaluate_checker(chart.image, anns, ref, all)) CHECK(s.phi_degrees.has_value());

  std::vector<PatchAnnotation> stray{rect("no_such_patch", 1, 1, 15, 15)};
  CHECK(kind_of([&] { evaluate_checker(chart.image, stray, ref); }) == ErrorKind::kUnmatchedLabel);
}

TEST_CASE("achromatic patch scores match a per-pixel recomputation") {
  // Noisy near-neutral patch; the oracle walks every pixel centre itself.
  std::mt19937 rng(11);
  std::normal_distribution<double> n(0.0, 8.0);
  auto img = uwiqa_test::uniform_rgb(40, 40, 0, 0, 0);
  for (int y = 0; y < 40; ++y)
    for (int x = 0; x < 40; ++x) {
      img.u8()[img.index(x, y, 0)] = static_cast<std::uint8_t>(std::clamp(130.0 + n(rng), 0.0, 255.0));
      img.u8()[img.index(x, y, 1)] = static_cast<std::uint8_t>(std::clamp(118.0 + n(rng), 0.0, 255.0));
      img.u8()[img.index(x, y, 2)] = static_cast<std::uint8_t>(std::clamp(101.0 + n(rng), 0.0, 255.0));
    }
  const PatchAnnotation ann = rect("neutral_5", 5, 5, 35, 35);
  double sum[3] = {0, 0, 0};
  int count = 0;
  for (int y = 0; y < 40; ++y)
    for (int x = 0; x < 40; ++x) {
      const double cx = x + 0.5, cy = y + 0.5;
      if (cx - 5 > 2 && 35 - cx > 2 && cy - 5 > 2 && 35 - cy > 2) {
        for (int c = 0; c < 3; ++c) sum[c] += img.at(x, y, c);
        ++count;
      }
    }
  REQUIRE(count == 26 * 26);
  const double r = sum[0] / count, g = sum[1] / count, b = sum[2] / count;
  const double phi = std::acos((r + g + b) / (std::sqrt(3.0) * std::sqrt(r * r + g * g + b * b))) *
                     180.0 / M_PI;
  const LabColor ref_lab = srgb8_to_lab(122, 122, 122);
  const double de = ciede2000(ref_lab, srgb_to_lab({r / 255, g / 255, b / 255})).value;

  const auto scores = evaluate_checker(img, std::span(&ann, 1), default_checker_reference());
  CHECK(scores[0].measured_rgb.r == doctest::Approx(r).epsilon(1e-12));
  CHECK(*scores[0].phi_degrees == doctest::Approx(phi).epsilon(1e-9));
  CHECK(scores[0].delta_e00 == doctest::Approx(de).epsilon(1e-9));
}
