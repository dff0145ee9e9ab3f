#include <bit>
#include <cmath>
#include <cstdlib>
#include <algorithm>
#include <string>

#include "fintrace/error.hpp"
#include "fintrace/threshold.hpp"

namespace fintrace {

namespace {

bool cell(unsigned window, int x, int y) { return (window >> (y * 3 + x)) & 1u; }

}  // namespace

int window_regions(unsigned window, Connectivity connectivity)
{
    int regions = 0;
    unsigned seen = 0;
    for (int start = 0; start < 9; ++start) {
        if (seen >> start & 1u)
            continue;
        ++regions;
        const bool color = window >> start & 1u;
        unsigned frontier = 1u << start;
        seen |= frontier;
        while (frontier) {
            const int c = std::countr_zero(frontier);
            frontier &= frontier - 1;
            for (int d = 0; d < 9; ++d) {
                if ((seen >> d & 1u) || bool(window >> d & 1u) != color)
                    continue;
                const int dx = std::abs(c % 3 - d % 3);
                const int dy = std::abs(c / 3 - d / 3);
                const bool adjacent = connectivity == Connectivity::four ? dx + dy == 1
                                                                         : std::max(dx, dy) == 1;
                if (adjacent) {
                    seen |= 1u << d;
                    frontier |= 1u << d;
                }
            }
        }
    }
    return regions;
}

int window_short_edges(unsigned window)
{
    int edges = 0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 2; ++b)
            edges += int(cell(window, b, a) != cell(window, b + 1, a)) +
                     int(cell(window, a, b) != cell(window, a, b + 1));
    return edges;
}

int window_long_edges(unsigned window)
{
    int edges = 0;
    // Each of the four interior grid lines carries three unit segments. A
    // segment extends its predecessor when both exist and the same colour
    // lies on the same side.
    for (int line = 0; line < 2; ++line) {
        for (bool vertical : {true, false}) {
            int prev_polarity = -1;
            for (int along = 0; along < 3; ++along) {
                const bool near = vertical ? cell(window, line, along) : cell(window, along, line);
                const bool far =
                    vertical ? cell(window, line + 1, along) : cell(window, along, line + 1);
                if (near == far) {
                    prev_polarity = -1;
                    continue;
                }
                if (int(near) != prev_polarity)
                    ++edges;
                prev_polarity = int(near);
            }
        }
    }
    return edges;
}

PixelarityLut build_pixelarity_lut(Connectivity regions)
{
    PixelarityLut lut;
    lut.regions = regions;
    for (unsigned idx = 0; idx < 512; ++idx)
        lut.scores[idx] = std::uint8_t(window_regions(idx, regions) + window_long_edges(idx));
    return lut;
}

double mean_pixelarity(const BinaryImage& b, const PixelarityLut& lut)
{
    if (b.width() < kMinImageDim || b.height() < kMinImageDim)
        throw InvalidArgument("pixelarity needs an image of at least 3x3");
    std::uint64_t total = 0;
    const int w = b.width(), h = b.height();
    for_each_neighborhood(b, [&](int x, int y, unsigned idx) {
        if (x > 0 && y > 0 && x < w - 1 && y < h - 1)
            total += lut.scores[idx];
    });
    return double(total) / (double(w - 2) * double(h - 2));
}

std::string_view to_string(CurveCategory c)
{
    switch (c) {
    case CurveCategory::local_minimum:
        return "local-minimum";
    case CurveCategory::plateau:
        return "plateau";
    case CurveCategory::monotone:
        return "monotone";
    }
    return "unknown";
}

PixelarityCurve pixelarity_curve(const GrayImage& g, const PixelarityLut& lut,
                                 const CurveConfig& cfg)
{
    if (cfg.step < 1)
        throw InvalidArgument("curve step must be positive");
    PixelarityCurve curve;
    for (int t = 0; t <= 255; t += cfg.step)
        curve.samples.push_back({t, mean_pixelarity(threshold_apply(g, t), lut)});
    curve.category = select_threshold_from_curve(curve, cfg).category;
    return curve;
}

namespace {

struct Run {
    std::size_t first = 0;
    std::size_t last = 0;
    double value = 0.0;
};

std::vector<Run> merge_runs(const std::vector<CurveSample>& samples, double tolerance)
{
    std::vector<Run> runs;
    double anchor = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double v = samples[i].mean_score;
        if (!runs.empty() && std::abs(v - anchor) <= tolerance * anchor) {
            runs.back().last = i;
            sum += v;
            runs.back().value = sum / double(i - runs.back().first + 1);
            continue;
        }
        runs.push_back({i, i, v});
        anchor = sum = v;
    }
    return runs;
}

}  // namespace

CurveSelection select_threshold_from_curve(const PixelarityCurve& curve, const CurveConfig& cfg)
{
    if (curve.samples.empty())
        throw InvalidArgument("pixelarity curve has no samples");

    const auto& s = curve.samples;
    const std::vector<Run> runs = merge_runs(s, cfg.plateau_tolerance);
    const int step = std::max(cfg.step, 1);
    auto midpoint = [&](const Run& r) {
        const int mid = (s[r.first].threshold + s[r.last].threshold) / 2;
        return mid / step * step;
    };

    for (std::size_t r = 1; r + 1 < runs.size(); ++r)
        if (runs[r].value < runs[r - 1].value && runs[r].value < runs[r + 1].value)
            return {midpoint(runs[r]), CurveCategory::local_minimum, false};

    double lowest_before = runs.front().value;
    for (std::size_t r = 1; r + 1 < runs.size(); ++r) {
        const std::size_t len = runs[r].last - runs[r].first + 1;
        if (len >= std::size_t(cfg.min_plateau_samples) && runs[r].value > lowest_before)
            return {midpoint(runs[r]), CurveCategory::plateau, false};
        lowest_before = std::min(lowest_before, runs[r].value);
    }
    return {0, CurveCategory::monotone, true};
}

}  // namespace fintrace
