#include "fintrace/binary_image.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <fstream>
#include <string>

#include "fintrace/error.hpp"

namespace fintrace {

BinaryImage::BinaryImage(int width, int height, bool fill)
    : width_(width), height_(height), words_per_row_((width + 63) / 64)
{
    if (width < 0 || height < 0)
        throw InvalidArgument("binary image dimensions must be non-negative");
    words_.assign(std::size_t(words_per_row_) * height, fill ? ~std::uint64_t{0} : 0);
    clear_padding();
}

BinaryImage BinaryImage::from_rows(std::initializer_list<std::string_view> rows)
{
    const int h = int(rows.size());
    const int w = h == 0 ? 0 : int(rows.begin()->size());
    BinaryImage b(w, h);
    int y = 0;
    for (std::string_view row : rows) {
        if (int(row.size()) != w)
            throw InvalidArgument("ragged rows in BinaryImage::from_rows");
        for (int x = 0; x < w; ++x)
            b.set(x, y, row[x] == '#' || row[x] == '1');
        ++y;
    }
    return b;
}

void BinaryImage::set(int x, int y, bool v)
{
    if (!in_bounds(x, y))
        throw InvalidArgument("BinaryImage::set out of bounds");
    const std::uint64_t mask = std::uint64_t{1} << (x & 63);
    if (v)
        words_[word_index(x, y)] |= mask;
    else
        words_[word_index(x, y)] &= ~mask;
}

void BinaryImage::clear_padding()
{
    const int tail = width_ & 63;
    if (tail == 0 || words_per_row_ == 0)
        return;
    const std::uint64_t mask = (std::uint64_t{1} << tail) - 1;
    for (int y = 0; y < height_; ++y)
        words_[std::size_t(y) * words_per_row_ + words_per_row_ - 1] &= mask;
}

unsigned BinaryImage::neighborhood(int x, int y) const
{
    unsigned idx = 0;
    int bit = 0;
    for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx, ++bit)
            idx |= unsigned(get(x + dx, y + dy)) << bit;
    return idx;
}

std::size_t BinaryImage::count() const
{
    std::size_t n = 0;
    for (std::uint64_t w : words_)
        n += std::size_t(std::popcount(w));
    return n;
}

bool BinaryImage::none() const
{
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::vector<Point> BinaryImage::foreground() const
{
    std::vector<Point> pts;
    for (int y = 0; y < height_; ++y)
        for (int x = 0; x < width_; ++x)
            if (get(x, y))
                pts.push_back({x, y});
    return pts;
}

namespace {

void require_same_shape(const BinaryImage& a, const BinaryImage& b)
{
    if (a.width() != b.width() || a.height() != b.height())
        throw InvalidArgument("binary images differ in size: " + std::to_string(a.width()) + "x" +
                              std::to_string(a.height()) + " vs " + std::to_string(b.width()) +
                              "x" + std::to_string(b.height()));
}

constexpr unsigned kCenterBit = 1u << 4;
constexpr unsigned kRingMask = 0x1FFu & ~kCenterBit;

// Foreground cells of the window ring (centre excluded) form at most one
// 8-connected cluster.
constexpr bool ring_single_cluster(unsigned idx)
{
    const unsigned cells = idx & kRingMask;
    if (cells == 0)
        return false;
    unsigned seen = 1u << std::countr_zero(cells);
    for (bool grew = true; grew;) {
        grew = false;
        for (int c = 0; c < 9; ++c) {
            if (!(cells >> c & 1u) || (seen >> c & 1u))
                continue;
            for (int d = 0; d < 9; ++d) {
                if (!(seen >> d & 1u))
                    continue;
                const int dx = c % 3 - d % 3;
                const int dy = c / 3 - d / 3;
                if (dx >= -1 && dx <= 1 && dy >= -1 && dy <= 1) {
                    seen |= 1u << c;
                    grew = true;
                    break;
                }
            }
        }
    }
    return seen == cells;
}

using Table = std::array<bool, 512>;

// Neighbourhood maps: for each coefficient n in 1..8 and each window,
// the new value of the centre pixel.
struct MorphTables {
    std::array<Table, 9> erode{};
    std::array<Table, 9> dilate{};

    MorphTables()
    {
        for (int n = 1; n <= 8; ++n) {
            for (unsigned idx = 0; idx < 512; ++idx) {
                const int fg = std::popcount(idx & kRingMask);
                const bool center = idx & kCenterBit;
                erode[n][idx] = center && (8 - fg) < n;
                dilate[n][idx] = center || (fg >= n && ring_single_cluster(idx));
            }
        }
    }
};

const MorphTables& tables()
{
    static const MorphTables t;
    return t;
}

BinaryImage apply_table(const BinaryImage& b, const Table& table)
{
    BinaryImage out(b.width(), b.height());
    for_each_neighborhood(b, [&](int x, int y, unsigned idx) {
        if (table[idx])
            out.set(x, y, true);
    });
    return out;
}

void require_coefficient(int n)
{
    if (n < 1 || n > 8)
        throw InvalidArgument("morphology coefficient must be in 1..8, got " + std::to_string(n));
}

}  // namespace

BinaryImage bit_and(const BinaryImage& a, const BinaryImage& b)
{
    require_same_shape(a, b);
    BinaryImage out = a;
    for (std::size_t i = 0; i < out.words_.size(); ++i)
        out.words_[i] &= b.words_[i];
    return out;
}

BinaryImage bit_xor(const BinaryImage& a, const BinaryImage& b)
{
    require_same_shape(a, b);
    BinaryImage out = a;
    for (std::size_t i = 0; i < out.words_.size(); ++i)
        out.words_[i] ^= b.words_[i];
    return out;
}

BinaryImage bit_or(const BinaryImage& a, const BinaryImage& b)
{
    require_same_shape(a, b);
    BinaryImage out = a;
    for (std::size_t i = 0; i < out.words_.size(); ++i)
        out.words_[i] |= b.words_[i];
    return out;
}

BinaryImage bit_not(const BinaryImage& a)
{
    BinaryImage out = a;
    for (auto& w : out.words_)
        w = ~w;
    out.clear_padding();
    return out;
}

BinaryImage threshold_apply(const GrayImage& g, int t)
{
    BinaryImage out(g.width(), g.height());
    for (int y = 0; y < g.height(); ++y) {
        auto row = g.row(y);
        for (int x = 0; x < g.width(); ++x)
            if (int(row[x]) <= t)
                out.set(x, y, true);
    }
    return out;
}

BinaryImage erode(const BinaryImage& b, int n)
{
    require_coefficient(n);
    return apply_table(b, tables().erode[n]);
}

BinaryImage dilate(const BinaryImage& b, int n)
{
    require_coefficient(n);
    return apply_table(b, tables().dilate[n]);
}

BinaryImage open(const BinaryImage& b, int n) { return dilate(erode(b, n), n); }

BinaryImage boundary(const BinaryImage& b) { return bit_xor(b, erode(b, 1)); }

void write_pbm(const BinaryImage& b, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write " + path.string());
    out << "P4\n" << b.width() << ' ' << b.height() << '\n';
    std::vector<char> row(std::size_t(b.width() + 7) / 8);
    for (int y = 0; y < b.height(); ++y) {
        std::fill(row.begin(), row.end(), 0);
        for (int x = 0; x < b.width(); ++x)
            if (b.get(x, y))
                row[std::size_t(x) / 8] = char(row[std::size_t(x) / 8] | (0x80 >> (x % 8)));
        out.write(row.data(), std::streamsize(row.size()));
    }
    if (!out)
        throw IoError("write failed: " + path.string());
}

}  // namespace fintrace
