#include "fintrace/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fintrace/error.hpp"

namespace fintrace {

std::string_view to_string(Tier t)
{
    switch (t) {
    case Tier::automatic:
        return "auto";
    case Tier::approach1:
        return "approach1";
    case Tier::approach2:
        return "approach2";
    }
    return "auto";
}

Rect endpoint_crop(const EndpointPair& e, Rect image, int padding, double height_factor)
{
    const int left = std::min(e.start.x, e.end.x) - padding;
    const int right = std::max(e.start.x, e.end.x) + padding;  // exclusive
    const int width = right - left;
    const int height = int(std::lround(height_factor * width));
    const int bottom = std::max(e.start.y, e.end.y) + padding;  // exclusive
    const int top = bottom - height;

    const int x0 = std::max(image.x, left);
    const int y0 = std::max(image.y, top);
    const int x1 = std::min(image.x + image.w, right);
    const int y1 = std::min(image.y + image.h, bottom);
    return {x0, y0, x1 - x0, y1 - y0};
}

Preprocessed preprocess(const TraceRequest& req)
{
    if (!req.image || req.image->empty())
        throw InvalidArgument("trace request has no image");
    const RgbImage& img = *req.image;
    const EndpointPair& e = req.endpoints;
    if (!img.bounds().contains(e.start) || !img.bounds().contains(e.end))
        throw InvalidArgument("endpoints lie outside the image");
    require_orientation(e);

    Rect box;
    if (req.viewport) {
        box = *req.viewport;
        if (!box.contains(e.start) || !box.contains(e.end))
            throw InvalidArgument("endpoints lie outside the viewport");
    } else {
        box = endpoint_crop(e, img.bounds(), req.config.crop_padding,
                            req.config.crop_height_factor);
    }
    if (box.w < kMinImageDim || box.h < kMinImageDim)
        throw InvalidArgument("degenerate crop: " + std::to_string(box.w) + "x" +
                              std::to_string(box.h));

    Downsampled ds = downsample(crop(img, box), req.config.max_dim);
    Preprocessed out;
    out.crop = box;
    out.scale = ds.scale;
    out.working = std::move(ds.image);
    auto to_working = [&](Point p) {
        return Point{std::clamp((p.x - box.x) / out.scale, 0, out.working.width() - 1),
                     std::clamp((p.y - box.y) / out.scale, 0, out.working.height() - 1)};
    };
    out.endpoints = {to_working(e.start), to_working(e.end)};
    if (out.endpoints.start.x >= out.endpoints.end.x)
        throw InvalidArgument("endpoints collapse onto one column after downsampling");
    return out;
}

const PixelarityLut& default_pixelarity_lut()
{
    static const PixelarityLut lut = build_pixelarity_lut(Connectivity::four);
    return lut;
}

namespace {

void emit(const TraceConfig& cfg, std::string_view stage, const BinaryImage& b)
{
    if (cfg.debug.binary)
        cfg.debug.binary(stage, b);
}

void emit(const TraceConfig& cfg, std::string_view stage, const GrayImage& g)
{
    if (cfg.debug.gray)
        cfg.debug.gray(stage, g);
}

std::string stage_name(const StageReport& r, std::string_view stage)
{
    return std::string(to_string(r.method)) + "_" + std::string(stage);
}

void fail(StageReport& r, std::string stage, std::string reason)
{
    r.success = false;
    r.failed_stage = std::move(stage);
    r.reason = std::move(reason);
}

// Runs an approach body; library errors raised by stage preconditions are
// recorded as a failed report instead of escaping. Malformed endpoints
// are the caller's fault and still throw.
template <typename Body>
ApproachResult guarded(TraceMethod method, Body body)
{
    ApproachResult out;
    out.report.method = method;
    try {
        body(out);
    } catch (const OrientationError&) {
        throw;
    } catch (const Error& err) {
        out.outline.reset();
        fail(out.report, "pipeline", err.what());
    }
    return out;
}

}  // namespace

BinaryImage refine(const BinaryImage& initial, const TraceConfig& cfg)
{
    BinaryImage b = initial;
    for (int i = 0; i < cfg.open_iterations; ++i)
        b = open(b, 1);
    for (int i = 0; i < cfg.strong_erosion_cap; ++i) {
        BinaryImage next = erode(b, cfg.strong_erosion_coefficient);
        if (next == b)
            break;
        b = std::move(next);
    }
    for (int i = 0; i < cfg.open_iterations; ++i)
        b = dilate(b, 1);
    return bit_and(b, initial);
}

std::optional<ChainOutline> extract_outline(const BinaryImage& thresholded,
                                            const EndpointPair& e, const TraceConfig& cfg,
                                            StageReport& report)
{
    report.foreground_pixels = thresholded.count();
    emit(cfg, stage_name(report, "c_threshold"), thresholded);

    const BinaryImage refined = refine(thresholded, cfg);
    report.refined_pixels = refined.count();
    emit(cfg, stage_name(report, "d_refined"), refined);
    if (refined.none()) {
        fail(report, "refine", "no foreground left after morphological refinement");
        return std::nullopt;
    }

    const Rect bounds{0, 0, thresholded.width(), thresholded.height()};
    const SecantGeometry geo = compute_secant(e, bounds);
    const int radius = std::max(cfg.min_seed_radius, int(std::lround(cfg.seed_radius_factor * geo.length)));
    const BinaryImage blob = component_at_seed(refined, geo.fin_seed, radius);
    report.blob_pixels = blob.count();
    emit(cfg, stage_name(report, "e_blob"), blob);

    const BinaryImage edge = boundary(blob);
    report.boundary_pixels = edge.count();
    emit(cfg, stage_name(report, "f_boundary"), edge);

    const BinaryImage outline = largest_component(edge, Connectivity::four);
    report.outline_pixels = outline.count();
    emit(cfg, stage_name(report, "g_outline"), outline);

    ChainOutline chain;
    try {
        chain = walk_outline(outline, geo, e, cfg.walk);
    } catch (const OutlineError& err) {
        fail(report, "walk", err.what());
        return std::nullopt;
    }
    chain.method = report.method;
    chain.threshold = report.threshold.value_or(0);
    report.chain_points = chain.points.size();
    report.closed_form = chain.closed_form;

    if (auto rejection = validate_outline(chain, e, cfg.validation)) {
        std::string reason = std::move(*rejection);
        if (report.provisional_threshold)
            reason += " (provisional threshold 0 rejected; a manual trace is needed)";
        fail(report, "validate", std::move(reason));
        return std::nullopt;
    }
    report.success = true;
    return chain;
}

ApproachResult approach1(const RgbImage& working, const EndpointPair& e, const TraceConfig& cfg)
{
    return guarded(TraceMethod::approach1, [&](ApproachResult& out) {
        StageReport& report = out.report;
        const GrayImage gray = rgb_to_luma(working);
        emit(cfg, "approach1_b_luma", gray);
        const auto valley = find_valley_threshold(histogram(gray), cfg.valley);
        if (!valley) {
            fail(report, "threshold", "no histogram valley found");
            return;
        }
        report.valley = valley;
        report.threshold = valley->chosen;
        out.outline = extract_outline(threshold_apply(gray, valley->chosen), e, cfg, report);
    });
}

ApproachResult approach2(const RgbImage& working, const EndpointPair& e, const TraceConfig& cfg)
{
    return guarded(TraceMethod::approach2, [&](ApproachResult& out) {
        StageReport& report = out.report;
        const GrayImage cyan_image = rgb_to_cyan(working);
        emit(cfg, "approach2_b_cyan", cyan_image);
        PixelarityCurve curve = pixelarity_curve(cyan_image, default_pixelarity_lut(), cfg.curve);
        const CurveSelection pick = select_threshold_from_curve(curve, cfg.curve);
        report.curve = std::move(curve);
        report.threshold = pick.threshold;
        report.provisional_threshold = pick.provisional;
        // The fin is cyan-poor, so low cyan (<= t) already selects it.
        out.outline = extract_outline(threshold_apply(cyan_image, pick.threshold), e, cfg, report);
    });
}

std::vector<std::string> TraceResult::rejection_reasons() const
{
    std::vector<std::string> out;
    for (const StageReport& r : diagnostics.stages)
        if (!r.success)
            out.push_back(std::string(to_string(r.method)) + ": " + r.failed_stage + ": " + r.reason);
    return out;
}

TraceResult autotrace(const TraceRequest& req)
{
    const Preprocessed pre = preprocess(req);

    TraceResult result;
    result.diagnostics.crop = pre.crop;
    result.diagnostics.scale = pre.scale;
    result.diagnostics.working_width = pre.working.width();
    result.diagnostics.working_height = pre.working.height();
    result.diagnostics.working_endpoints = pre.endpoints;

    std::vector<TraceMethod> order;
    if (req.tier != Tier::approach2)
        order.push_back(TraceMethod::approach1);
    if (req.tier != Tier::approach1)
        order.push_back(TraceMethod::approach2);

    for (TraceMethod m : order) {
        ApproachResult r = m == TraceMethod::approach1
                               ? approach1(pre.working, pre.endpoints, req.config)
                               : approach2(pre.working, pre.endpoints, req.config);
        result.diagnostics.stages.push_back(r.report);
        if (r.outline) {
            result.success = true;
            result.method = m;
            result.threshold = r.outline->threshold;
            result.outline = rescale_outline(*r.outline, pre.scale, {pre.crop.x, pre.crop.y});
            break;
        }
    }
    return result;
}

}  // namespace fintrace
