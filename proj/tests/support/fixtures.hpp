#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "fintrace/binary_image.hpp"
#include "fintrace/image.hpp"
#include "fintrace/outline.hpp"

namespace fintrace::fixtures {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

// A: dark fin on bright water (separable in luma and in cyan).
// B: fin and water of near-identical luma, separable only in cyan.
// C: per-pixel uniform RGB noise; nothing to find.
enum class SceneFamily { luma_separable, cyan_only, noise };

std::string_view family_name(SceneFamily f);

struct FinScene {
    RgbImage image;
    BinaryImage mask;             // dolphin (fin + back) pixels
    std::vector<Vec2> truth_arc;  // fin edge from start to end, sub-pixel samples
    EndpointPair endpoints;
};

struct SceneOptions {
    int width = 400;
    int height = 300;
    // Multiplies all geometry; use > 1 to produce images that get downsampled.
    int upscale = 1;
};

FinScene make_scene(SceneFamily family, std::uint32_t seed, const SceneOptions& opts = {});

// Grey image: the fin mask at dark_mean, the rest at bright_mean, Gaussian
// noise per region.
struct BimodalImage {
    GrayImage image;
    int dark_mean = 0;
    int bright_mean = 0;
    int dark_sigma = 0;
    int bright_sigma = 0;
    std::size_t dark_pixels = 0;
};

BimodalImage make_bimodal(std::uint32_t seed, int width = 160, int height = 120);

// Symmetric Hausdorff distance between chain pixels and a sampled curve.
double hausdorff(const std::vector<Point>& chain, const std::vector<Vec2>& curve);

// Two-tone raster: left half `a`, right half `b` (split on a vertical line).
GrayImage split_image(int width, int height, std::uint8_t a, std::uint8_t b);

}  // namespace fintrace::fixtures
