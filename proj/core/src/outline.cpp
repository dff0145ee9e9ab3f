#include "fintrace/outline.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace fintrace {

void require_orientation(const EndpointPair& e)
{
    if (e.start.x >= e.end.x)
        throw OrientationError();
}

std::string_view to_string(TraceMethod m)
{
    switch (m) {
    case TraceMethod::approach1:
        return "approach1";
    case TraceMethod::approach2:
        return "approach2";
    case TraceMethod::manual:
        return "manual";
    }
    return "manual";
}

std::optional<TraceMethod> parse_trace_method(std::string_view s)
{
    for (auto m : {TraceMethod::approach1, TraceMethod::approach2, TraceMethod::manual})
        if (to_string(m) == s)
            return m;
    return std::nullopt;
}

SecantGeometry compute_secant(const EndpointPair& e, Rect bounds)
{
    require_orientation(e);
    if (!bounds.contains(e.start) || !bounds.contains(e.end))
        throw InvalidArgument("endpoints lie outside the image");
    SecantGeometry g;
    g.secant_y = std::min(e.start.y, e.end.y);
    g.length = distance(e.start, e.end);
    g.bisector_x = (e.start.x + e.end.x + 1) / 2;
    const int seed_y = int(std::floor(g.secant_y - g.length / 2.0 + 0.5));
    g.fin_seed = {std::clamp(g.bisector_x, bounds.x, bounds.x + bounds.w - 1),
                  std::clamp(seed_y, bounds.y, bounds.y + bounds.h - 1)};
    return g;
}

namespace {

// Clockwise on screen (y grows downward).
constexpr std::array<Point, 4> kDirs = {Point{1, 0}, Point{0, 1}, Point{-1, 0}, Point{0, -1}};
constexpr int kEast = 0, kSouth = 1, kWest = 2, kNorth = 3;

class Visited {
public:
    Visited(int w, int h) : w_(w), bits_(std::size_t(w) * h) {}
    bool test(Point p) const { return bits_[std::size_t(p.y) * w_ + p.x]; }
    void mark(Point p) { bits_[std::size_t(p.y) * w_ + p.x] = true; }

private:
    int w_;
    std::vector<bool> bits_;
};

// Greedy walk: continue straight, else turn clockwise, else counter-
// clockwise, else reverse. Stops when no allowed unvisited neighbour remains.
template <typename Allowed>
std::vector<Point> greedy_walk(const BinaryImage& b, Point from, int dir, Visited& visited,
                               Allowed allowed)
{
    std::vector<Point> path;
    Point p = from;
    for (;;) {
        bool moved = false;
        for (int turn : {0, 1, 3, 2}) {
            const int d = (dir + turn) % 4;
            const Point q = p + kDirs[d];
            if (b.get(q) && !visited.test(q) && allowed(q)) {
                visited.mark(q);
                path.push_back(q);
                p = q;
                dir = d;
                moved = true;
                break;
            }
        }
        if (!moved)
            return path;
    }
}

std::optional<Point> northmost_in_column(const BinaryImage& b, int x)
{
    if (x < 0 || x >= b.width())
        return std::nullopt;
    for (int y = 0; y < b.height(); ++y)
        if (b.get(x, y))
            return Point{x, y};
    return std::nullopt;
}

std::size_t nearest_index(const std::vector<Point>& chain, Point target)
{
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < chain.size(); ++i) {
        const double d = distance(chain[i], target);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

}  // namespace

ChainOutline walk_outline(const BinaryImage& boundary, const SecantGeometry& geo,
                          const EndpointPair& e, const WalkConfig& cfg)
{
    require_orientation(e);
    std::optional<Point> seed;
    for (int k = 0; k <= cfg.bisector_search && !seed; ++k) {
        seed = northmost_in_column(boundary, geo.bisector_x - k);
        if (!seed && k > 0)
            seed = northmost_in_column(boundary, geo.bisector_x + k);
    }
    if (!seed)
        throw OutlineError("no boundary pixel near bisector column " +
                           std::to_string(geo.bisector_x));

    const int column = seed->x;
    Visited visited(boundary.width(), boundary.height());
    visited.mark(*seed);
    const auto east = greedy_walk(boundary, *seed, kEast, visited,
                                  [column](Point q) { return q.x >= column; });
    const auto west = greedy_walk(boundary, *seed, kWest, visited,
                                  [column](Point q) { return q.x <= column; });

    std::vector<Point> chain(west.rbegin(), west.rend());
    chain.push_back(*seed);
    chain.insert(chain.end(), east.begin(), east.end());

    ChainOutline out;
    out.closed_form = chain.size() > 3 && four_adjacent(chain.front(), chain.back());

    const std::size_t is = nearest_index(chain, e.start);
    const std::size_t ie = nearest_index(chain, e.end);
    if (is == ie)
        throw OutlineError("start and end points map to the same outline pixel");
    const auto [lo, hi] = std::minmax(is, ie);
    out.points.assign(chain.begin() + std::ptrdiff_t(lo), chain.begin() + std::ptrdiff_t(hi) + 1);
    if (is > ie)
        std::reverse(out.points.begin(), out.points.end());
    return out;
}

std::vector<Point> legacy_walk(const BinaryImage& boundary)
{
    std::optional<Point> start;
    for (int x = 0; x < boundary.width() && !start; ++x)
        start = northmost_in_column(boundary, x);
    if (!start)
        return {};

    Visited visited(boundary.width(), boundary.height());
    visited.mark(*start);
    std::vector<Point> chain{*start};
    Point p = *start;
    for (;;) {
        bool moved = false;
        for (int d : {kEast, kNorth, kSouth, kWest}) {
            const Point q = p + kDirs[d];
            if (boundary.get(q) && !visited.test(q)) {
                visited.mark(q);
                chain.push_back(q);
                p = q;
                moved = true;
                break;
            }
        }
        if (!moved)
            return chain;
    }
}

std::optional<EndpointPair> detect_endpoints_auto(const BinaryImage& boundary)
{
    const std::vector<Point> chain = legacy_walk(boundary);
    if (chain.size() < 3)
        return std::nullopt;

    auto is_pair = [&](std::size_t i, Point vertical) {
        const Point a = chain[i + 1] - chain[i];
        const Point b = chain[i + 2] - chain[i + 1];
        const Point east{1, 0};
        return (a == east && b == vertical) || (a == vertical && b == east);
    };

    std::optional<Point> start, end;
    for (std::size_t i = 0; i + 2 < chain.size(); ++i) {
        if (!start && is_pair(i, {0, -1}))
            start = chain[i];
        if (is_pair(i, {0, 1}))
            end = chain[i + 2];
    }
    if (!start || !end || start->x >= end->x)
        return std::nullopt;
    return EndpointPair{*start, *end};
}

double arc_length(const std::vector<Point>& points)
{
    double len = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i)
        len += distance(points[i - 1], points[i]);
    return len;
}

std::optional<std::string> validate_outline(const ChainOutline& o, const EndpointPair& e,
                                            const ValidationConfig& cfg)
{
    if (o.points.size() < 2)
        return "outline has fewer than two points";
    const double secant = distance(e.start, e.end);
    const double arc = arc_length(o.points);
    std::ostringstream why;
    if (arc < cfg.min_length_factor * secant) {
        why << "outline too short: arc length " << arc << " < " << cfg.min_length_factor
            << " x secant " << secant;
        return why.str();
    }
    const double tolerance = std::max(cfg.approach_fraction * secant, cfg.approach_min_px);
    const double d_start = distance(o.points.front(), e.start);
    const double d_end = distance(o.points.back(), e.end);
    if (d_start > tolerance || d_end > tolerance) {
        why << "outline does not approach the "
            << (d_start > tolerance ? "start" : "end") << " point: distance "
            << std::max(d_start, d_end) << " > " << tolerance;
        return why.str();
    }
    return std::nullopt;
}

std::vector<Point> four_connected_line(Point a, Point b)
{
    std::vector<Point> line{a};
    const int dx = std::abs(b.x - a.x), dy = std::abs(b.y - a.y);
    const int sx = b.x > a.x ? 1 : -1, sy = b.y > a.y ? 1 : -1;
    Point p = a;
    int ix = 0, iy = 0;
    while (ix < dx || iy < dy) {
        // Step along whichever axis crosses its next pixel boundary first:
        // (ix + 0.5) / dx vs (iy + 0.5) / dy, compared without division.
        if (iy == dy || (ix < dx && (2 * ix + 1) * dy <= (2 * iy + 1) * dx)) {
            p.x += sx;
            ++ix;
        } else {
            p.y += sy;
            ++iy;
        }
        line.push_back(p);
    }
    return line;
}

ChainOutline rescale_outline(const ChainOutline& o, int scale, Point offset)
{
    if (scale < 1)
        throw InvalidArgument("rescale factor must be at least 1");
    ChainOutline out = o;
    out.scale = o.scale * scale;
    out.points.clear();
    for (Point p : o.points) {
        const Point q{offset.x + scale * p.x, offset.y + scale * p.y};
        if (out.points.empty()) {
            out.points.push_back(q);
            continue;
        }
        if (q == out.points.back())
            continue;
        const auto seg = four_connected_line(out.points.back(), q);
        out.points.insert(out.points.end(), seg.begin() + 1, seg.end());
    }
    return out;
}

}  // namespace fintrace
