#include <doctest.h>

#include <cmath>
#include <random>

#include "dtuna/image.hpp"
#include "test_support.hpp"

using namespace dtuna;

TEST_CASE("normalize_u8 divides by 255") {
    ImageU8 img(3, 1, {0, 0, 0, 255, 255, 255, 128, 128, 128});
    const ImageF f = normalize_u8(img);
    CHECK(f.channels == 3);
    CHECK(f.at(0, 0, 0) == 0.0);
    CHECK(f.at(1, 0, 1) == 1.0);
    CHECK(f.at(2, 0, 2) == doctest::Approx(0.50196078431).epsilon(1e-10));
    CHECK(f.at(2, 0, 2) == 128.0 / 255.0);
}

TEST_CASE("denormalize rounds half up after clamping") {
    ImageF f(2, 2, 3);
    f.data = {1.0, 0.0, 0.5, -0.3, 1.7, 127.4 / 255.0, 0.999, 0.001, 0.6 / 255.0, 1.6 / 255.0, 2.4 / 255.0, 0.25};
    const ImageU8 u = denormalize(f);
    CHECK(u.data[0] == 255);
    CHECK(u.data[1] == 0);
    CHECK(u.data[2] == 128);  // 127.5 -> 128
    CHECK(u.data[3] == 0);
    CHECK(u.data[4] == 255);
    CHECK(u.data[5] == 127);
    CHECK(u.data[6] == 255);
    CHECK(u.data[7] == 0);
    CHECK(u.data[8] == 1);
    CHECK(u.data[9] == 2);
    CHECK(u.data[10] == 2);
    CHECK(u.data[11] == 64);  // 63.75
}

TEST_CASE("denormalize rejects NaN") {
    ImageF f(1, 1, 3, 0.5);
    f.data[1] = std::nan("");
    CHECK_THROWS_AS(denormalize(f), std::domain_error);
}

TEST_CASE("u8 -> float -> u8 is the identity for every byte") {
    ImageU8 img(256, 1);
    for (int v = 0; v < 256; ++v) {
        for (int c = 0; c < 3; ++c) img.at(v, 0, c) = static_cast<std::uint8_t>(v);
    }
    CHECK(denormalize(normalize_u8(img)) == img);
}

TEST_CASE("ImageU8 invariants") {
    CHECK_THROWS_AS(ImageU8(0, 4), InvalidArgument);
    CHECK_THROWS_AS(ImageU8(2, 2, std::vector<std::uint8_t>(11)), InvalidArgument);
    CHECK_NOTHROW(ImageU8(2, 2, std::vector<std::uint8_t>(12)));
}

TEST_CASE("rgb_to_hsv reference points") {
    ImageF img(4, 1, 3);
    img.data = {1, 0, 0, 0.5, 0.5, 0.5, 0, 1, 0, 0, 0, 1};
    const Hsv hsv = rgb_to_hsv(img);
    CHECK(hsv.h.data[0] == 0.0);
    CHECK(hsv.s.data[0] == 1.0);
    CHECK(hsv.v.data[0] == 1.0);
    CHECK(hsv.h.data[1] == 0.0);
    CHECK(hsv.s.data[1] == 0.0);
    CHECK(hsv.v.data[1] == 0.5);
    CHECK(hsv.h.data[2] == doctest::Approx(1.0 / 3.0));
    CHECK(hsv.h.data[3] == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("black has zero saturation") {
    ImageF img(1, 1, 3, 0.0);
    const Hsv hsv = rgb_to_hsv(img);
    CHECK(hsv.s.data[0] == 0.0);
    CHECK(hsv.v.data[0] == 0.0);
}

TEST_CASE("HSV round trip on random pixels") {
    const ImageF img = test::random_image(1000, 1, 7);
    const Hsv hsv = rgb_to_hsv(img);
    for (double h : hsv.h.data) {
        CHECK(h >= 0.0);
        CHECK(h < 1.0);
    }
    const ImageF back = hsv_to_rgb(hsv.h, hsv.s, hsv.v);
    CHECK(test::max_abs_diff(img, back) < 1e-12);
}

TEST_CASE("YCbCr reference points and round trip") {
    ImageF img(2, 1, 3);
    img.data = {0, 0, 0, 1, 1, 1};
    const YCbCr ycc = rgb_to_ycbcr(img);
    CHECK(ycc.y.data[0] == 0.0);
    CHECK(ycc.cb.data[0] == 0.5);
    CHECK(ycc.cr.data[0] == 0.5);
    CHECK(ycc.y.data[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ycc.cb.data[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ycc.cr.data[1] == doctest::Approx(0.5).epsilon(1e-12));

    const ImageF rnd = test::random_image(1000, 1, 11);
    const YCbCr r = rgb_to_ycbcr(rnd);
    CHECK(test::max_abs_diff(rnd, ycbcr_to_rgb(r.y, r.cb, r.cr)) < 1e-9);
}

TEST_CASE("minmax_normalize") {
    SUBCASE("already spanning") {
        ChannelF c(3, 1);
        c.data = {0, 0.5, 1};
        const auto r = minmax_normalize(c);
        CHECK_FALSE(r.degenerate);
        CHECK(r.value.data == std::vector<double>{0, 0.5, 1});
    }
    SUBCASE("rescales") {
        ChannelF c(2, 1);
        c.data = {2, 4};
        const auto r = minmax_normalize(c);
        CHECK(r.value.data == std::vector<double>{0, 1});
    }
    SUBCASE("constant input is flagged and zeroed") {
        ChannelF c(2, 1, 0.3);
        const auto r = minmax_normalize(c);
        CHECK(r.degenerate);
        CHECK(r.value.data == std::vector<double>{0, 0});
    }
    SUBCASE("joint over channels") {
        ImageF img(1, 1, 3);
        img.data = {0.2, 0.4, 0.6};
        const auto r = minmax_normalize(img);
        CHECK(r.value.data[0] == 0.0);
        CHECK(r.value.data[1] == doctest::Approx(0.5));
        CHECK(r.value.data[2] == 1.0);
    }
}

TEST_CASE("minmax output spans exactly [0,1] on random planes") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    for (int trial = 0; trial < 200; ++trial) {
        ChannelF c(7, 5);
        for (double& x : c.data) x = dist(gen);
        const auto r = minmax_normalize(c);
        const auto [lo, hi] = std::minmax_element(r.value.data.begin(), r.value.data.end());
        CHECK(*lo == 0.0);
        CHECK(*hi == 1.0);
    }
}

TEST_CASE("gamma_correct") {
    ImageF img(2, 1, 3);
    img.data = {0.25, 0.5, 0.0, 1.0, 0.3, 0.7};
    CHECK(gamma_correct(img, 1.0) == img);
    const ImageF half = gamma_correct(img, 0.5);
    CHECK(half.data[0] == doctest::Approx(0.5).epsilon(1e-15));
    const ImageF sq = gamma_correct(img, 2.0);
    CHECK(sq.data[1] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(sq.data[2] == 0.0);
    CHECK(sq.data[3] == 1.0);
    CHECK_THROWS_AS(gamma_correct(img, 0.0), InvalidArgument);
    CHECK_THROWS_AS(gamma_correct(img, -1.0), InvalidArgument);
}

TEST_CASE("gamma then inverse gamma is the identity on (0,1]") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> x_dist(1e-6, 1.0);
    std::uniform_real_distribution<double> g_dist(0.2, 5.0);
    for (int trial = 0; trial < 100; ++trial) {
        ImageF img(10, 10, 3);
        for (double& x : img.data) x = x_dist(gen);
        const double g = g_dist(gen);
        CHECK(test::max_abs_diff(gamma_correct(gamma_correct(img, g), 1.0 / g), img) < 1e-9);
    }
}
