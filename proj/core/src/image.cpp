#include "fintrace/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fintrace/error.hpp"

namespace fintrace {

template <typename Pixel>
Raster<Pixel>::Raster(int width, int height, Pixel fill)
    : width_(width), height_(height)
{
    if (width < 0 || height < 0)
        throw InvalidArgument("raster dimensions must be non-negative");
    pixels_.assign(std::size_t(width) * std::size_t(height), fill);
}

template <typename Pixel>
Raster<Pixel>::Raster(int width, int height, std::vector<Pixel> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels))
{
    if (width < 0 || height < 0)
        throw InvalidArgument("raster dimensions must be non-negative");
    if (pixels_.size() != std::size_t(width) * std::size_t(height))
        throw InvalidArgument("pixel count does not match " + std::to_string(width) + "x" +
                              std::to_string(height));
}

template class Raster<Rgb>;
template class Raster<std::uint8_t>;

namespace {

Rgb box_average(const RgbImage& img, int x0, int y0)
{
    unsigned r = 0, g = 0, b = 0, n = 0;
    for (int y = y0; y < std::min(y0 + 2, img.height()); ++y) {
        for (int x = x0; x < std::min(x0 + 2, img.width()); ++x) {
            const Rgb& p = img.at(x, y);
            r += p.r;
            g += p.g;
            b += p.b;
            ++n;
        }
    }
    // round half up
    return {std::uint8_t((r + n / 2) / n), std::uint8_t((g + n / 2) / n),
            std::uint8_t((b + n / 2) / n)};
}

RgbImage halve(const RgbImage& img)
{
    RgbImage out((img.width() + 1) / 2, (img.height() + 1) / 2);
    for (int y = 0; y < out.height(); ++y)
        for (int x = 0; x < out.width(); ++x)
            out.at(x, y) = box_average(img, 2 * x, 2 * y);
    return out;
}

template <typename Fn>
GrayImage map_pixels(const RgbImage& img, Fn fn)
{
    GrayImage out(img.width(), img.height());
    auto src = img.pixels();
    auto dst = out.pixels();
    std::transform(src.begin(), src.end(), dst.begin(), fn);
    return out;
}

}  // namespace

Downsampled downsample(const RgbImage& img, int max_dim)
{
    if (max_dim < kMinImageDim)
        throw InvalidArgument("max_dim must be at least 3");
    Downsampled out{img, 1};
    while (std::max(out.image.width(), out.image.height()) > max_dim) {
        const int w = (out.image.width() + 1) / 2;
        const int h = (out.image.height() + 1) / 2;
        if (std::min(w, h) < kMinImageDim)
            break;
        out.image = halve(out.image);
        out.scale *= 2;
    }
    return out;
}

RgbImage crop(const RgbImage& img, Rect r)
{
    if (r.w < kMinImageDim || r.h < kMinImageDim)
        throw InvalidArgument("crop rectangle must be at least 3x3");
    if (r.x < 0 || r.y < 0 || r.x + r.w > img.width() || r.y + r.h > img.height())
        throw InvalidArgument("crop rectangle (" + std::to_string(r.x) + "," + std::to_string(r.y) +
                              "," + std::to_string(r.w) + "," + std::to_string(r.h) +
                              ") exceeds image " + std::to_string(img.width()) + "x" +
                              std::to_string(img.height()));
    std::vector<Rgb> px;
    px.reserve(std::size_t(r.w) * r.h);
    for (int y = r.y; y < r.y + r.h; ++y) {
        auto row = img.row(y).subspan(r.x, r.w);
        px.insert(px.end(), row.begin(), row.end());
    }
    return RgbImage(r.w, r.h, std::move(px));
}

std::uint8_t luma(Rgb px)
{
    // Integer form of 0.299 R + 0.587 G + 0.114 B, rounded half up.
    return std::uint8_t((299u * px.r + 587u * px.g + 114u * px.b + 500u) / 1000u);
}

std::uint8_t cyan(Rgb px)
{
    const double r = px.r / 255.0;
    const double g = px.g / 255.0;
    const double b = px.b / 255.0;
    double c = 1.0 - r;
    const double m = 1.0 - g;
    const double y = 1.0 - b;
    const double k = std::min({c, m, y});
    if (k == 1.0)
        c = 0.0;
    else
        c = c - k;
    return std::uint8_t(std::floor(c * 255.0 + 0.5));
}

GrayImage rgb_to_luma(const RgbImage& img) { return map_pixels(img, luma); }

GrayImage rgb_to_cyan(const RgbImage& img) { return map_pixels(img, cyan); }

Histogram histogram(const GrayImage& g)
{
    Histogram h;
    for (std::uint8_t v : g.pixels())
        ++h.bins[v];
    h.total = g.pixels().size();
    return h;
}

}  // namespace fintrace
