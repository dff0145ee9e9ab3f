#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "fintrace/geometry.hpp"

namespace fintrace {

// Smallest width and height accepted anywhere in the pipeline.
inline constexpr int kMinImageDim = 3;

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend constexpr bool operator==(const Rgb&, const Rgb&) = default;
};
static_assert(sizeof(Rgb) == 3, "Rgb rasters are handed to codecs as packed bytes");

// Row-major raster of pixels. Plain value type; copies are deep.
template <typename Pixel>
class Raster {
public:
    Raster() = default;
    Raster(int width, int height, Pixel fill = {});
    Raster(int width, int height, std::vector<Pixel> pixels);

    int width() const { return width_; }
    int height() const { return height_; }
    bool empty() const { return pixels_.empty(); }
    bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }
    Rect bounds() const { return {0, 0, width_, height_}; }

    const Pixel& at(int x, int y) const { return pixels_[std::size_t(y) * width_ + x]; }
    Pixel& at(int x, int y) { return pixels_[std::size_t(y) * width_ + x]; }

    std::span<const Pixel> row(int y) const
    {
        return {pixels_.data() + std::size_t(y) * width_, std::size_t(width_)};
    }
    std::span<const Pixel> pixels() const { return pixels_; }
    std::span<Pixel> pixels() { return pixels_; }

    friend bool operator==(const Raster&, const Raster&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<Pixel> pixels_;
};

using RgbImage = Raster<Rgb>;
using GrayImage = Raster<std::uint8_t>;

extern template class Raster<Rgb>;
extern template class Raster<std::uint8_t>;

struct Histogram {
    std::array<std::uint64_t, 256> bins{};
    std::uint64_t total = 0;
};

struct Downsampled {
    RgbImage image;
    int scale = 1;  // full-resolution pixels per working pixel, always 2^k
};

// Decodes a PNG or JPEG file (sniffed by magic bytes). Alpha is dropped.
// Throws IoError for unreadable/undecodable files and InvalidArgument for
// images below 3x3.
RgbImage load_image(const std::filesystem::path& path);

void save_png(const RgbImage& img, const std::filesystem::path& path);
void save_png(const GrayImage& img, const std::filesystem::path& path);

// Binary PGM (P5) dump of an intensity image.
void write_pgm(const GrayImage& img, const std::filesystem::path& path);

// Repeated 2:1 box-filter halving until max(width, height) <= max_dim.
// Odd trailing rows/columns are averaged over the pixels that exist.
// Halving stops early rather than shrink either side below 3 px.
Downsampled downsample(const RgbImage& img, int max_dim);

RgbImage crop(const RgbImage& img, Rect r);

// Y = round(0.299 R + 0.587 G + 0.114 B), half up.
GrayImage rgb_to_luma(const RgbImage& img);

// Cyan channel of the subtractive RGB -> CMYK transform with the black
// component removed by subtraction (no 1-k renormalisation).
GrayImage rgb_to_cyan(const RgbImage& img);

std::uint8_t luma(Rgb px);
std::uint8_t cyan(Rgb px);

Histogram histogram(const GrayImage& g);

}  // namespace fintrace
