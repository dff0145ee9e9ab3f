#pragma once

#include <cstdint>
#include <filesystem>
#include <string_view>
#include <initializer_list>
#include <vector>

#include "fintrace/geometry.hpp"
#include "fintrace/image.hpp"

namespace fintrace {

enum class Connectivity { four, eight };

// One bit per pixel, rows padded to whole 64-bit words. 1 = foreground
// (dark, candidate fin), 0 = background. Reads outside the raster return
// background, which is the border policy of every neighbourhood operation.
class BinaryImage {
public:
    BinaryImage() = default;
    BinaryImage(int width, int height, bool fill = false);

    // Test/debug helper: one string per row, '#' or '1' is foreground.
    static BinaryImage from_rows(std::initializer_list<std::string_view> rows);

    int width() const { return width_; }
    int height() const { return height_; }
    bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }

    bool get(int x, int y) const
    {
        if (!in_bounds(x, y))
            return false;
        return (words_[word_index(x, y)] >> (x & 63)) & 1u;
    }
    bool get(Point p) const { return get(p.x, p.y); }
    void set(int x, int y, bool v);
    void set(Point p, bool v) { set(p.x, p.y, v); }

    // 9-bit raster-order encoding of the 3x3 window centred on (x, y):
    // bit 0 = top-left, bit 4 = centre, bit 8 = bottom-right.
    unsigned neighborhood(int x, int y) const;

    std::size_t count() const;
    bool none() const;

    std::vector<Point> foreground() const;

    friend bool operator==(const BinaryImage&, const BinaryImage&) = default;

    friend BinaryImage bit_and(const BinaryImage& a, const BinaryImage& b);
    friend BinaryImage bit_xor(const BinaryImage& a, const BinaryImage& b);
    friend BinaryImage bit_or(const BinaryImage& a, const BinaryImage& b);
    friend BinaryImage bit_not(const BinaryImage& a);

private:
    std::size_t word_index(int x, int y) const
    {
        return std::size_t(y) * words_per_row_ + std::size_t(x >> 6);
    }
    void clear_padding();

    int width_ = 0;
    int height_ = 0;
    int words_per_row_ = 0;
    std::vector<std::uint64_t> words_;
};

// Calls fn(x, y, window) for every pixel in raster order with the pixel's
// 9-bit neighbourhood index, updated incrementally along each row.
template <typename Fn>
void for_each_neighborhood(const BinaryImage& b, Fn&& fn)
{
    constexpr unsigned keep = 0b011'011'011;
    for (int y = 0; y < b.height(); ++y) {
        auto column = [&](int x) {
            return unsigned(b.get(x, y - 1)) | unsigned(b.get(x, y)) << 3 |
                   unsigned(b.get(x, y + 1)) << 6;
        };
        unsigned window = column(0) << 2;
        for (int x = 0; x < b.width(); ++x) {
            window = ((window >> 1) & keep) | (column(x + 1) << 2);
            fn(x, y, window);
        }
    }
}

// bit = 1 where intensity <= t.
BinaryImage threshold_apply(const GrayImage& g, int t);

// A foreground pixel turns background when at least n of its 8 neighbours
// are background. n = 1 is the standard erosion.
BinaryImage erode(const BinaryImage& b, int n = 1);

// A background pixel turns foreground when at least n of its 8 neighbours
// are foreground and those neighbours form a single 8-connected cluster
// within the window, so a flip never bridges two local clusters.
BinaryImage dilate(const BinaryImage& b, int n = 1);

BinaryImage open(const BinaryImage& b, int n = 1);

// Foreground pixels with at least one background 8-neighbour.
BinaryImage boundary(const BinaryImage& b);

struct ComponentLabels {
    int width = 0;
    int height = 0;
    std::vector<int> labels;          // 0 = background, ids numbered in raster order of first pixel
    std::vector<std::size_t> sizes;   // indexed by id; sizes[0] is always 0
    int count = 0;

    int at(int x, int y) const { return labels[std::size_t(y) * width + x]; }
};

ComponentLabels connected_components(const BinaryImage& b, Connectivity connectivity);

BinaryImage component_mask(const ComponentLabels& labels, int id);

// Largest component; ties go to the lowest id. Throws on an empty image.
BinaryImage largest_component(const BinaryImage& b,
                              Connectivity connectivity = Connectivity::eight);

// Largest component touching a square window around seed whose radius
// doubles from 4 px up to max_radius; whole-image largest component when
// the window never meets foreground. Throws on an empty image.
BinaryImage component_at_seed(const BinaryImage& b, Point seed, int max_radius,
                              Connectivity connectivity = Connectivity::eight);

// Binary PBM (P4); foreground is written black.
void write_pbm(const BinaryImage& b, const std::filesystem::path& path);

}  // namespace fintrace
