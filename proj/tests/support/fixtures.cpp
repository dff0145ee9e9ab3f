#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace fintrace::fixtures {

std::string_view family_name(SceneFamily f)
{
    switch (f) {
    case SceneFamily::luma_separable:
        return "A";
    case SceneFamily::cyan_only:
        return "B";
    case SceneFamily::noise:
        return "C";
    }
    return "?";
}

namespace {

std::uint8_t clamp8(double v) { return std::uint8_t(std::clamp(std::lround(v), 0L, 255L)); }

// Dolphin silhouette: a gently curved back with a rounded, rear-leaning
// fin. top(x) is the first dolphin row in column x.
struct Silhouette {
    double back_y = 0.0;
    double back_curve = 0.0;
    double center_x = 0.0;
    double fin_start = 0.0;
    double fin_length = 0.0;
    double fin_height = 0.0;
    double skew = 1.0;

    double back(double x) const { return back_y + back_curve * (x - center_x) * (x - center_x); }

    double fin(double x) const
    {
        const double u = (x - fin_start) / fin_length;
        if (u <= 0.0 || u >= 1.0)
            return 0.0;
        return fin_height * std::sin(std::numbers::pi * std::pow(u, skew));
    }

    double top(double x) const { return back(x) - fin(x); }
};

Silhouette random_silhouette(std::mt19937& rng, int width, int height, int upscale)
{
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    auto between = [&](double lo, double hi) { return lo + (hi - lo) * u01(rng); };
    const double s = upscale;
    Silhouette sil;
    sil.fin_length = s * between(110.0, 150.0);
    sil.fin_start = s * between(90.0, 130.0);
    sil.fin_height = sil.fin_length * between(0.6, 0.8);
    sil.skew = between(1.3, 1.8);
    sil.center_x = sil.fin_start + sil.fin_length * between(0.3, 0.7);
    sil.back_y = height - s * between(95.0, 115.0);
    // Back drops by about 20 px at the far image edge.
    const double reach = std::max(sil.center_x, width - sil.center_x);
    sil.back_curve = s * between(15.0, 25.0) / (reach * reach);
    return sil;
}

}  // namespace

FinScene make_scene(SceneFamily family, std::uint32_t seed, const SceneOptions& opts)
{
    std::mt19937 rng(seed * 2654435761u + 17u);
    const int w = opts.width * opts.upscale;
    const int h = opts.height * opts.upscale;
    const Silhouette sil = random_silhouette(rng, w, h, opts.upscale);

    FinScene scene;
    scene.mask = BinaryImage(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (y >= sil.top(x))
                scene.mask.set(x, y, true);

    const double x0 = sil.fin_start, x1 = sil.fin_start + sil.fin_length;
    Vec2 last{x0, sil.top(x0)};
    scene.truth_arc.push_back(last);
    for (double x = x0; x <= x1; x += 0.005) {
        const Vec2 p{x, sil.top(x)};
        if (std::hypot(p.x - last.x, p.y - last.y) >= 0.2) {
            scene.truth_arc.push_back(p);
            last = p;
        }
    }
    scene.truth_arc.push_back({x1, sil.top(x1)});
    scene.endpoints = {{int(std::lround(x0)), int(std::lround(sil.top(x0)))},
                       {int(std::lround(x1)), int(std::lround(sil.top(x1)))}};

    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_int_distribution<int> byte(0, 255);
    std::vector<Rgb> px(std::size_t(w) * h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            Rgb& p = px[std::size_t(y) * w + x];
            const bool dolphin = scene.mask.get(x, y);
            switch (family) {
            case SceneFamily::luma_separable: {
                // fin luma ~55 (sigma 8), water ~190 (sigma 10); noise is
                // mostly shared across channels so hue survives.
                const double base[2][3] = {{52, 55, 60}, {175, 195, 205}};
                const double shared = gauss(rng) * (dolphin ? 8.0 : 10.0);
                const auto& c = base[dolphin ? 0 : 1];
                p = {clamp8(c[0] + shared + 2.0 * gauss(rng)),
                     clamp8(c[1] + shared + 2.0 * gauss(rng)),
                     clamp8(c[2] + shared + 2.0 * gauss(rng))};
                break;
            }
            case SceneFamily::cyan_only: {
                // luma ~106 vs ~109; cyan ~0-20 vs ~65.
                const double base[2][3] = {{112, 105, 100}, {75, 120, 140}};
                const double shared = gauss(rng) * 8.0;
                const auto& c = base[dolphin ? 0 : 1];
                p = {clamp8(c[0] + shared + 6.0 * gauss(rng)),
                     clamp8(c[1] + shared + 6.0 * gauss(rng)),
                     clamp8(c[2] + shared + 6.0 * gauss(rng))};
                break;
            }
            case SceneFamily::noise:
                p = {std::uint8_t(byte(rng)), std::uint8_t(byte(rng)), std::uint8_t(byte(rng))};
                break;
            }
        }
    }
    scene.image = RgbImage(w, h, std::move(px));
    return scene;
}

BimodalImage make_bimodal(std::uint32_t seed, int width, int height)
{
    std::mt19937 rng(seed * 40503u + 7u);
    std::uniform_int_distribution<int> dark(40, 80), bright(160, 220), sigma(5, 15);
    BimodalImage out;
    out.dark_mean = dark(rng);
    out.bright_mean = bright(rng);
    out.dark_sigma = sigma(rng);
    out.bright_sigma = sigma(rng);

    // Reuse the scene silhouette at a smaller size for spatial structure.
    SceneOptions opts{width, height, 1};
    const FinScene scene = make_scene(SceneFamily::luma_separable, seed, opts);

    std::normal_distribution<double> gauss(0.0, 1.0);
    out.image = GrayImage(width, height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const bool d = scene.mask.get(x, y);
            out.dark_pixels += d;
            out.image.at(x, y) = d ? clamp8(out.dark_mean + out.dark_sigma * gauss(rng))
                                   : clamp8(out.bright_mean + out.bright_sigma * gauss(rng));
        }
    }
    return out;
}

double hausdorff(const std::vector<Point>& chain, const std::vector<Vec2>& curve)
{
    if (chain.empty() || curve.empty())
        return std::numeric_limits<double>::infinity();
    auto d2 = [](Point p, Vec2 q) {
        const double dx = p.x - q.x, dy = p.y - q.y;
        return dx * dx + dy * dy;
    };
    double worst = 0.0;
    for (Point p : chain) {
        double best = std::numeric_limits<double>::infinity();
        for (Vec2 q : curve)
            best = std::min(best, d2(p, q));
        worst = std::max(worst, best);
    }
    for (Vec2 q : curve) {
        double best = std::numeric_limits<double>::infinity();
        for (Point p : chain)
            best = std::min(best, d2(p, q));
        worst = std::max(worst, best);
    }
    return std::sqrt(worst);
}

GrayImage split_image(int width, int height, std::uint8_t a, std::uint8_t b)
{
    GrayImage g(width, height);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            g.at(x, y) = x < width / 2 ? a : b;
    return g;
}

}  // namespace fintrace::fixtures
