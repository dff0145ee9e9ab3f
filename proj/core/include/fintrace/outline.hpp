#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fintrace/binary_image.hpp"
#include "fintrace/error.hpp"
#include "fintrace/geometry.hpp"

namespace fintrace {

// Shown whenever the end point lies left of the start point.
inline constexpr std::string_view kOrientationGuidance =
    "Click the start point before the end point: the dolphin must be swimming to the "
    "user's left, so the fin's end lies to the right of its start.";

class OrientationError : public InvalidArgument {
public:
    OrientationError() : InvalidArgument(std::string(kOrientationGuidance)) {}
};

// Algorithmic dead end while forming an outline (nothing on the bisector,
// empty trimmed chain). The pipeline reports it as a failure value.
class OutlineError : public Error {
public:
    using Error::Error;
};

struct EndpointPair {
    Point start;
    Point end;

    friend constexpr bool operator==(const EndpointPair&, const EndpointPair&) = default;
};

// Throws OrientationError unless start.x < end.x.
void require_orientation(const EndpointPair& e);

enum class TraceMethod { approach1, approach2, manual };

std::string_view to_string(TraceMethod m);
std::optional<TraceMethod> parse_trace_method(std::string_view s);

struct ChainOutline {
    std::vector<Point> points;
    TraceMethod method = TraceMethod::manual;
    int threshold = 0;
    int scale = 1;
    bool closed_form = false;

    friend bool operator==(const ChainOutline&, const ChainOutline&) = default;
};

struct SecantGeometry {
    int secant_y = 0;       // min of the endpoint rows
    double length = 0.0;    // Euclidean distance between the endpoints
    int bisector_x = 0;
    Point fin_seed;         // on the bisector, half a secant above the secant line
};

SecantGeometry compute_secant(const EndpointPair& e, Rect bounds);

struct WalkConfig {
    // Columns either side of the bisector searched when the bisector
    // column itself holds no boundary pixel.
    int bisector_search = 5;
};

// Walks a one-pixel, four-connected boundary from its northmost pixel on
// the bisector: east first, then west (prepending), with neither walk
// allowed to cross to the other side of the seed column. The chain is
// then trimmed to the points nearest the user's endpoints and oriented
// start -> end. Throws OutlineError on the documented dead ends.
ChainOutline walk_outline(const BinaryImage& boundary, const SecantGeometry& geo,
                          const EndpointPair& e, const WalkConfig& cfg = {});

// Legacy greedy walk from the leftmost (then topmost) boundary pixel with
// east-north-south-west move priority.
std::vector<Point> legacy_walk(const BinaryImage& boundary);

// Legacy automatic endpoints: start is the first point that begins two
// consecutive north-east moves (one north, one east), end is the last point
// that concludes two consecutive south-east moves. nullopt when either is
// missing or they come out mis-ordered.
std::optional<EndpointPair> detect_endpoints_auto(const BinaryImage& boundary);

struct ValidationConfig {
    double min_length_factor = 1.2;
    double approach_fraction = 0.10;
    double approach_min_px = 10.0;
};

double arc_length(const std::vector<Point>& points);

// nullopt when the outline is acceptable, otherwise the rejection reason.
std::optional<std::string> validate_outline(const ChainOutline& o, const EndpointPair& e,
                                            const ValidationConfig& cfg = {});

// Maps each point to offset + scale * p, drops consecutive duplicates and
// bridges the gaps with four-connected line segments.
ChainOutline rescale_outline(const ChainOutline& o, int scale, Point offset);

// Four-connected digital segment from a to b, both ends included.
std::vector<Point> four_connected_line(Point a, Point b);

}  // namespace fintrace
