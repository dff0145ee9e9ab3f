#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "fintrace/binary_image.hpp"
#include "fintrace/image.hpp"

namespace fintrace {

// ---------------------------------------------------------------------------
// Histogram valley (concavity) analysis
// ---------------------------------------------------------------------------

struct ValleyConfig {
    // Each position is judged on the summed counts of [i - radius, i + radius],
    // truncated at the histogram ends.
    int neighborhood_radius = 15;
    // Neighbouring means within this percentage of the current one are level.
    int level_tolerance_percent = 2;
    // A second region whose peak lies closer than this many levels to the
    // end of the first valley marks the fin as two-toned.
    int two_tone_gap = 26;
};

struct ValleyAnalysis {
    int first_valley = 0;
    int first_valley_end = 0;
    std::optional<int> second_valley;
    std::optional<int> second_peak;
    int chosen = 0;
    bool two_toned = false;
};

// Left-to-right concavity scan for the first (and second) histogram valley.
// A valley is a run of minimum positions entered by a decrease that itself
// followed an increase and a peak or plateau. Returns nullopt when no valley
// exists; throws InvalidArgument on an empty histogram.
std::optional<ValleyAnalysis> find_valley_threshold(const Histogram& h,
                                                    const ValleyConfig& cfg = {});

// ---------------------------------------------------------------------------
// Pixelarity
// ---------------------------------------------------------------------------

inline constexpr int kMinPixelarity = 1;
inline constexpr int kMaxPixelarity = 21;

// Score for every 3x3 arrangement, indexed like BinaryImage::neighborhood.
struct PixelarityLut {
    std::array<std::uint8_t, 512> scores{};
    Connectivity regions = Connectivity::four;
};

// Number of same-colour regions (both colours counted) inside the window.
int window_regions(unsigned window, Connectivity connectivity);
// Adjacent differing-colour pixel pairs inside the window (at most 12).
int window_short_edges(unsigned window);
// Short edges merged where one continues another along the same line with
// the same colour on the same side.
int window_long_edges(unsigned window);

// score = regions + long edges. Four-connected regions are the metric;
// the eight-connected table exists for comparison.
PixelarityLut build_pixelarity_lut(Connectivity regions = Connectivity::four);

inline int score_window(unsigned window, const PixelarityLut& lut)
{
    return lut.scores[window & 0x1FFu];
}

// Mean score over all interior 3x3 placements. Throws below 3x3.
double mean_pixelarity(const BinaryImage& b, const PixelarityLut& lut);

enum class CurveCategory { local_minimum, plateau, monotone };

std::string_view to_string(CurveCategory c);

struct CurveSample {
    int threshold = 0;
    double mean_score = 0.0;
};

struct CurveConfig {
    int step = 5;
    // Consecutive samples within this relative distance of a run's first
    // sample merge into one run.
    double plateau_tolerance = 0.01;
    int min_plateau_samples = 3;
};

struct PixelarityCurve {
    std::vector<CurveSample> samples;
    CurveCategory category = CurveCategory::monotone;
};

struct CurveSelection {
    int threshold = 0;
    CurveCategory category = CurveCategory::monotone;
    bool provisional = false;  // set only for the monotone fallback of 0
};

// Mean pixelarity of threshold_apply(g, t) for t = 0, step, ... <= 255.
PixelarityCurve pixelarity_curve(const GrayImage& g, const PixelarityLut& lut,
                                 const CurveConfig& cfg = {});

CurveSelection select_threshold_from_curve(const PixelarityCurve& curve,
                                           const CurveConfig& cfg = {});

}  // namespace fintrace
