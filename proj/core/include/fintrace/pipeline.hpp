#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fintrace/binary_image.hpp"
#include "fintrace/image.hpp"
#include "fintrace/outline.hpp"
#include "fintrace/threshold.hpp"

namespace fintrace {

enum class Tier { automatic, approach1, approach2 };

std::string_view to_string(Tier t);

// Receives intermediate rasters when set; stage names are stable and used
// as file stems by the CLI's --debug-dir.
struct DebugSink {
    std::function<void(std::string_view stage, const GrayImage&)> gray;
    std::function<void(std::string_view stage, const BinaryImage&)> binary;
};

struct TraceConfig {
    int max_dim = 600;

    // Refinement schedule: standard opens, coefficient erosions repeated to
    // a fixpoint (capped), then as many dilations as standard erosions,
    // finally ANDed with the unrefined threshold image.
    int open_iterations = 2;
    int strong_erosion_coefficient = 5;
    int strong_erosion_cap = 10;

    // Bounding box used when no viewport is supplied.
    int crop_padding = 100;
    double crop_height_factor = 1.5;

    // Seed search radius = max(min, factor * secant length), working pixels.
    double seed_radius_factor = 0.5;
    int min_seed_radius = 8;

    ValleyConfig valley;
    CurveConfig curve;
    WalkConfig walk;
    ValidationConfig validation;
    DebugSink debug;
};

struct TraceRequest {
    std::shared_ptr<const RgbImage> image;
    EndpointPair endpoints;          // full-resolution coordinates
    std::optional<Rect> viewport;    // full-resolution coordinates
    Tier tier = Tier::automatic;
    TraceConfig config;
};

struct Preprocessed {
    RgbImage working;
    Rect crop;
    int scale = 1;
    EndpointPair endpoints;  // working coordinates
};

// Box spanning the endpoints padded horizontally, height = factor * width,
// bottom edge `padding` below the lower endpoint; clamped to the image.
Rect endpoint_crop(const EndpointPair& e, Rect image, int padding, double height_factor);

// Validates the request, crops (viewport or endpoint box) and downsamples.
// Throws InvalidArgument / OrientationError on malformed requests.
Preprocessed preprocess(const TraceRequest& req);

// Intermediate counts and decisions for one approach.
struct StageReport {
    TraceMethod method = TraceMethod::approach1;
    bool success = false;
    std::optional<int> threshold;
    bool provisional_threshold = false;
    std::optional<ValleyAnalysis> valley;
    std::optional<PixelarityCurve> curve;
    std::size_t foreground_pixels = 0;
    std::size_t refined_pixels = 0;
    std::size_t blob_pixels = 0;
    std::size_t boundary_pixels = 0;
    std::size_t outline_pixels = 0;
    std::size_t chain_points = 0;
    bool closed_form = false;
    std::string failed_stage;  // empty on success
    std::string reason;        // empty on success
};

struct ApproachResult {
    std::optional<ChainOutline> outline;  // working coordinates, validated
    StageReport report;
};

// Cleans a thresholded image; the result is always a subset of `initial`.
BinaryImage refine(const BinaryImage& initial, const TraceConfig& cfg);

// Shared tail of both approaches: seed-restricted blob, boundary, largest
// outline, bisector walk and validation. Fills the report as it goes.
std::optional<ChainOutline> extract_outline(const BinaryImage& thresholded,
                                            const EndpointPair& e, const TraceConfig& cfg,
                                            StageReport& report);

// Luma + histogram valley.
ApproachResult approach1(const RgbImage& working, const EndpointPair& e, const TraceConfig& cfg);

// Cyan channel + pixelarity sweep.
ApproachResult approach2(const RgbImage& working, const EndpointPair& e, const TraceConfig& cfg);

const PixelarityLut& default_pixelarity_lut();

struct TraceDiagnostics {
    Rect crop;
    int scale = 1;
    int working_width = 0;
    int working_height = 0;
    EndpointPair working_endpoints;
    std::vector<StageReport> stages;  // in execution order
};

struct TraceResult {
    bool success = false;
    std::optional<ChainOutline> outline;  // full-resolution coordinates
    std::optional<TraceMethod> method;
    std::optional<int> threshold;
    TraceDiagnostics diagnostics;

    // One entry per failed approach, "<method>: <stage>: <reason>".
    std::vector<std::string> rejection_reasons() const;
};

// Tiered trace: approach 1, then approach 2 only if the first fails (per
// tier). Algorithmic failure is returned, never thrown.
TraceResult autotrace(const TraceRequest& req);

}  // namespace fintrace
