#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include <gtest/gtest.h>
#include <jpeglib.h>

#include "fintrace/error.hpp"
#include "fintrace/image.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace fintrace;

namespace {

fs::path temp_path(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / "fintrace_tests";
    fs::create_directories(dir);
    return dir / name;
}

RgbImage random_rgb(std::mt19937& rng, int w, int h)
{
    std::uniform_int_distribution<int> byte(0, 255);
    RgbImage img(w, h);
    for (auto& p : img.pixels())
        p = {std::uint8_t(byte(rng)), std::uint8_t(byte(rng)), std::uint8_t(byte(rng))};
    return img;
}

// Reference 2:1 halving done in floating point over whatever pixels exist
// in each 2x2 box.
RgbImage reference_halve(const RgbImage& img)
{
    RgbImage out((img.width() + 1) / 2, (img.height() + 1) / 2);
    for (int y = 0; y < out.height(); ++y)
        for (int x = 0; x < out.width(); ++x) {
            double sum[3] = {0, 0, 0};
            int n = 0;
            for (int dy = 0; dy < 2; ++dy)
                for (int dx = 0; dx < 2; ++dx) {
                    if (!img.in_bounds(2 * x + dx, 2 * y + dy))
                        continue;
                    const Rgb p = img.at(2 * x + dx, 2 * y + dy);
                    sum[0] += p.r, sum[1] += p.g, sum[2] += p.b;
                    ++n;
                }
            auto avg = [&](double s) { return std::uint8_t(std::floor(s / n + 0.5)); };
            out.at(x, y) = {avg(sum[0]), avg(sum[1]), avg(sum[2])};
        }
    return out;
}

void write_jpeg(const RgbImage& img, const fs::path& path)
{
    jpeg_compress_struct cinfo;
    jpeg_error_mgr jerr;
    cinfo.err = jpeg_std_error(&jerr);
    jpeg_create_compress(&cinfo);
    FILE* f = std::fopen(path.c_str(), "wb");
    ASSERT_NE(f, nullptr);
    jpeg_stdio_dest(&cinfo, f);
    cinfo.image_width = JDIMENSION(img.width());
    cinfo.image_height = JDIMENSION(img.height());
    cinfo.input_components = 3;
    cinfo.in_color_space = JCS_RGB;
    jpeg_set_defaults(&cinfo);
    jpeg_set_quality(&cinfo, 95, TRUE);
    jpeg_start_compress(&cinfo, TRUE);
    while (cinfo.next_scanline < cinfo.image_height) {
        auto row = const_cast<JSAMPLE*>(
            reinterpret_cast<const JSAMPLE*>(img.row(int(cinfo.next_scanline)).data()));
        jpeg_write_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_compress(&cinfo);
    jpeg_destroy_compress(&cinfo);
    std::fclose(f);
}

}  // namespace

TEST(LoadImage, WhitePngDecodesToNineWhitePixels)
{
    const auto path = temp_path("white3.png");
    save_png(RgbImage(3, 3, Rgb{255, 255, 255}), path);
    const RgbImage img = load_image(path);
    ASSERT_EQ(img.width(), 3);
    ASSERT_EQ(img.height(), 3);
    for (const Rgb& p : img.pixels())
        EXPECT_EQ(p, (Rgb{255, 255, 255}));
}

TEST(LoadImage, RejectsImagesBelowMinimum)
{
    const auto path = temp_path("tiny.png");
    save_png(RgbImage(2, 2, Rgb{1, 2, 3}), path);
    EXPECT_THROW(load_image(path), InvalidArgument);
}

TEST(LoadImage, SynthfinRoundTripsByteForByte)
{
    const auto scene = fixtures::make_scene(fixtures::SceneFamily::luma_separable, 7);
    const auto path = temp_path("synthfin.png");
    save_png(scene.image, path);
    const RgbImage img = load_image(path);
    EXPECT_EQ(img.width(), scene.image.width());
    EXPECT_EQ(img.height(), scene.image.height());
    EXPECT_TRUE(img == scene.image);
}

TEST(LoadImage, GrayPngExpandsToRgb)
{
    GrayImage g(4, 3);
    for (int y = 0; y < 3; ++y)
        for (int x = 0; x < 4; ++x)
            g.at(x, y) = std::uint8_t(10 * x + 50 * y);
    const auto path = temp_path("gray.png");
    save_png(g, path);
    const RgbImage img = load_image(path);
    for (int y = 0; y < 3; ++y)
        for (int x = 0; x < 4; ++x)
            EXPECT_EQ(img.at(x, y), (Rgb{g.at(x, y), g.at(x, y), g.at(x, y)}));
}

TEST(LoadImage, DecodesJpeg)
{
    const auto path = temp_path("flat.jpg");
    write_jpeg(RgbImage(16, 8, Rgb{200, 100, 50}), path);
    const RgbImage img = load_image(path);
    ASSERT_EQ(img.width(), 16);
    ASSERT_EQ(img.height(), 8);
    for (const Rgb& p : img.pixels()) {
        EXPECT_NEAR(p.r, 200, 3);
        EXPECT_NEAR(p.g, 100, 3);
        EXPECT_NEAR(p.b, 50, 3);
    }
}

TEST(LoadImage, MissingAndCorruptFilesAreIoErrors)
{
    EXPECT_THROW(load_image(temp_path("does-not-exist.png")), IoError);

    const auto bogus = temp_path("bogus.png");
    std::ofstream(bogus) << "this is not an image";
    EXPECT_THROW(load_image(bogus), IoError);

    const auto truncated = temp_path("truncated.png");
    save_png(RgbImage(20, 20, Rgb{9, 9, 9}), truncated);
    fs::resize_file(truncated, 40);
    EXPECT_THROW(load_image(truncated), IoError);
}

TEST(Downsample, SmallImageIsUnchanged)
{
    std::mt19937 rng(1);
    const RgbImage img = random_rgb(rng, 400, 300);
    const Downsampled d = downsample(img, 600);
    EXPECT_EQ(d.scale, 1);
    EXPECT_TRUE(d.image == img);

    const RgbImage tiny = random_rgb(rng, 3, 3);
    const Downsampled t = downsample(tiny, 3);
    EXPECT_EQ(t.scale, 1);
    EXPECT_TRUE(t.image == tiny);
}

TEST(Downsample, TwoHalvingsMatchReferenceBoxFilter)
{
    std::mt19937 rng(2);
    const RgbImage img = random_rgb(rng, 2048, 1536);
    const Downsampled d = downsample(img, 600);
    EXPECT_EQ(d.scale, 4);
    ASSERT_EQ(d.image.width(), 512);
    ASSERT_EQ(d.image.height(), 384);
    EXPECT_TRUE(d.image == reference_halve(reference_halve(img)));
}

TEST(Downsample, OddSizesAverageTheExistingPixels)
{
    std::mt19937 rng(3);
    const RgbImage img = random_rgb(rng, 13, 11);
    const Downsampled d = downsample(img, 6);
    EXPECT_EQ(d.scale, 4);
    EXPECT_EQ(d.image.width(), 4);
    EXPECT_EQ(d.image.height(), 3);
    EXPECT_TRUE(d.image == reference_halve(reference_halve(img)));

    // 13x7 -> 7x4; a further halving would leave 2 rows.
    const RgbImage flat = random_rgb(rng, 13, 7);
    const Downsampled f = downsample(flat, 6);
    EXPECT_EQ(f.scale, 2);
    EXPECT_EQ(f.image.width(), 7);
    EXPECT_EQ(f.image.height(), 4);
    EXPECT_TRUE(f.image == reference_halve(flat));
}

TEST(Downsample, NeverShrinksBelowMinimumSide)
{
    // 1000x5 -> 500x3; halving again would leave 2 rows.
    const Downsampled d = downsample(RgbImage(1000, 5, Rgb{1, 1, 1}), 10);
    EXPECT_EQ(d.image.height(), 3);
    EXPECT_EQ(d.image.width(), 500);
    EXPECT_EQ(d.scale, 2);
    EXPECT_THROW(downsample(RgbImage(4, 4), 2), InvalidArgument);
}

TEST(Crop, FullRectIsIdentity)
{
    std::mt19937 rng(4);
    const RgbImage img = random_rgb(rng, 12, 9);
    EXPECT_TRUE(crop(img, img.bounds()) == img);
}

TEST(Crop, SubImageOrigin)
{
    std::mt19937 rng(5);
    const RgbImage img = random_rgb(rng, 10, 10);
    const RgbImage c = crop(img, {2, 2, 5, 5});
    ASSERT_EQ(c.width(), 5);
    ASSERT_EQ(c.height(), 5);
    EXPECT_EQ(c.at(0, 0), img.at(2, 2));
    EXPECT_EQ(c.at(4, 4), img.at(6, 6));
}

TEST(Crop, OutOfBoundsOrDegenerateRectThrows)
{
    const RgbImage img(10, 10);
    EXPECT_THROW(crop(img, {6, 0, 5, 5}), InvalidArgument);
    EXPECT_THROW(crop(img, {-1, 0, 5, 5}), InvalidArgument);
    EXPECT_THROW(crop(img, {0, 0, 2, 5}), InvalidArgument);
}

TEST(Luma, KnownValues)
{
    EXPECT_EQ(luma({255, 255, 255}), 255);
    EXPECT_EQ(luma({255, 0, 0}), 76);
    EXPECT_EQ(luma({0, 255, 0}), 150);
    EXPECT_EQ(luma({0, 0, 255}), 29);
    EXPECT_EQ(luma({0, 0, 0}), 0);
}

TEST(Luma, MatchesExactRationalOracle)
{
    for (int r = 0; r < 256; r += 3)
        for (int g = 0; g < 256; g += 5)
            for (int b = 0; b < 256; ++b) {
                const Rgb p{std::uint8_t(r), std::uint8_t(g), std::uint8_t(b)};
                ASSERT_EQ(luma(p), oracle::luma(p)) << r << "," << g << "," << b;
            }
}

TEST(Luma, MonotoneInEveryChannel)
{
    std::mt19937 rng(6);
    std::uniform_int_distribution<int> byte(0, 254), ch(0, 2);
    for (int i = 0; i < 20000; ++i) {
        Rgb p{std::uint8_t(byte(rng)), std::uint8_t(byte(rng)), std::uint8_t(byte(rng))};
        Rgb q = p;
        switch (ch(rng)) {
        case 0: ++q.r; break;
        case 1: ++q.g; break;
        default: ++q.b; break;
        }
        ASSERT_LE(luma(p), luma(q));
    }
}

TEST(Luma, ImageConversionIsPerPixel)
{
    std::mt19937 rng(7);
    const RgbImage img = random_rgb(rng, 9, 5);
    const GrayImage g = rgb_to_luma(img);
    for (int y = 0; y < 5; ++y)
        for (int x = 0; x < 9; ++x)
            EXPECT_EQ(g.at(x, y), oracle::luma(img.at(x, y)));
}

TEST(Cyan, KnownValues)
{
    EXPECT_EQ(cyan({0, 0, 0}), 0);
    EXPECT_EQ(cyan({0, 255, 255}), 255);
    EXPECT_EQ(cyan({128, 128, 128}), 0);
    EXPECT_EQ(cyan({255, 255, 255}), 0);
}

TEST(Cyan, NeutralGraysAreZero)
{
    for (int v = 0; v < 256; ++v)
        EXPECT_EQ(cyan({std::uint8_t(v), std::uint8_t(v), std::uint8_t(v)}), 0);
}

TEST(Cyan, EqualsBrightestChannelMinusRed)
{
    // c - k = (1 - r) - (1 - max(r, g, b)) without renormalisation.
    for (int r = 0; r < 256; r += 3)
        for (int g = 0; g < 256; g += 5)
            for (int b = 0; b < 256; ++b) {
                const Rgb p{std::uint8_t(r), std::uint8_t(g), std::uint8_t(b)};
                ASSERT_EQ(cyan(p), std::max({r, g, b}) - r) << r << "," << g << "," << b;
            }
}

TEST(Histogram, Counting)
{
    const GrayImage zeros(3, 3);
    const Histogram h0 = histogram(zeros);
    EXPECT_EQ(h0.bins[0], 9u);
    EXPECT_EQ(h0.total, 9u);

    GrayImage g(3, 3, 200);
    for (int i = 0; i < 4; ++i)
        g.at(i % 3, i / 3) = 10;
    const Histogram h = histogram(g);
    EXPECT_EQ(h.bins[10], 4u);
    EXPECT_EQ(h.bins[200], 5u);
}

TEST(Histogram, ConservesPixelCount)
{
    std::mt19937 rng(8);
    for (int i = 0; i < 20; ++i) {
        std::uniform_int_distribution<int> dim(3, 40);
        const RgbImage img = random_rgb(rng, dim(rng), dim(rng));
        const Histogram h = histogram(rgb_to_luma(img));
        std::uint64_t sum = 0;
        for (auto c : h.bins)
            sum += c;
        EXPECT_EQ(sum, h.total);
        EXPECT_EQ(h.total, std::uint64_t(img.width()) * img.height());
    }
}
