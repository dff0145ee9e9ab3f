#include <cmath>
#include <random>

#include <benchmark/benchmark.h>

#include "fintrace/binary_image.hpp"
#include "fintrace/pipeline.hpp"
#include "fintrace/threshold.hpp"

using namespace fintrace;

namespace {

BinaryImage random_binary(int w, int h, double density, std::uint32_t seed)
{
    std::mt19937 rng(seed);
    std::bernoulli_distribution bit(density);
    BinaryImage b(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            b.set(x, y, bit(rng));
    return b;
}

GrayImage random_gray(int w, int h, std::uint32_t seed)
{
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> level(0, 255);
    GrayImage g(w, h);
    for (auto& p : g.pixels())
        p = std::uint8_t(level(rng));
    return g;
}

// Dark back with a sine-shaped fin on noisy bright water.
struct Scene {
    std::shared_ptr<RgbImage> image;
    EndpointPair endpoints;
};

Scene make_fin(int w, int h)
{
    const int base = h * 2 / 3;
    const int x0 = w / 4;
    const int x1 = w * 3 / 5;
    const double height = 0.7 * (x1 - x0);
    std::mt19937 rng(7);
    std::normal_distribution<double> noise(0.0, 8.0);
    auto img = std::make_shared<RgbImage>(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double top = base;
            if (x > x0 && x < x1) {
                const double u = double(x - x0) / (x1 - x0);
                top -= height * std::sin(M_PI * std::pow(u, 1.5));
            }
            const bool body = y >= top;
            const double n = noise(rng);
            auto c = [&](int v) { return std::uint8_t(std::clamp(int(std::lround(v + n)), 0, 255)); };
            img->at(x, y) = body ? Rgb{c(50), c(55), c(60)} : Rgb{c(175), c(195), c(205)};
        }
    }
    return {img, {{x0, base}, {x1, base}}};
}

void BM_BuildLut(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(build_pixelarity_lut(Connectivity::four));
}
BENCHMARK(BM_BuildLut);

void BM_MeanPixelarity(benchmark::State& state)
{
    const int side = int(state.range(0));
    const BinaryImage b = random_binary(side, side, 0.5, 1);
    const PixelarityLut& lut = default_pixelarity_lut();
    for (auto _ : state)
        benchmark::DoNotOptimize(mean_pixelarity(b, lut));
    state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_MeanPixelarity)->Arg(128)->Arg(512);

void BM_PixelarityCurve(benchmark::State& state)
{
    const GrayImage g = random_gray(300, 200, 2);
    const PixelarityLut& lut = default_pixelarity_lut();
    for (auto _ : state)
        benchmark::DoNotOptimize(pixelarity_curve(g, lut));
}
BENCHMARK(BM_PixelarityCurve);

void BM_Erode(benchmark::State& state)
{
    const BinaryImage b = random_binary(512, 512, 0.6, 3);
    const int n = int(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(erode(b, n));
}
BENCHMARK(BM_Erode)->Arg(1)->Arg(5);

void BM_Dilate(benchmark::State& state)
{
    const BinaryImage b = random_binary(512, 512, 0.4, 4);
    for (auto _ : state)
        benchmark::DoNotOptimize(dilate(b, 1));
}
BENCHMARK(BM_Dilate);

void BM_Components(benchmark::State& state)
{
    const BinaryImage b = random_binary(512, 512, 0.5, 5);
    for (auto _ : state)
        benchmark::DoNotOptimize(connected_components(b, Connectivity::four));
}
BENCHMARK(BM_Components);

void BM_Autotrace(benchmark::State& state)
{
    const Scene s = make_fin(int(state.range(0)), int(state.range(0)) * 3 / 4);
    TraceRequest req;
    req.image = s.image;
    req.endpoints = s.endpoints;
    for (auto _ : state)
        benchmark::DoNotOptimize(autotrace(req));
}
BENCHMARK(BM_Autotrace)->Arg(400)->Arg(1600)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
