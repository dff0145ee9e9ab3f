#include <algorithm>
#include <vector>

#include "fintrace/binary_image.hpp"
#include "fintrace/error.hpp"

namespace fintrace {

namespace {

constexpr Point kFourSteps[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
constexpr Point kEightSteps[] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1},
                                 {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};

// Id of the largest component, lowest id on ties; 0 when `candidate`
// accepts none.
template <typename Pred>
int largest_id(const ComponentLabels& labels, Pred candidate)
{
    int best = 0;
    for (int id = 1; id <= labels.count; ++id)
        if (candidate(id) && (best == 0 || labels.sizes[id] > labels.sizes[best]))
            best = id;
    return best;
}

}  // namespace

ComponentLabels connected_components(const BinaryImage& b, Connectivity connectivity)
{
    ComponentLabels out;
    out.width = b.width();
    out.height = b.height();
    out.labels.assign(std::size_t(b.width()) * b.height(), 0);
    out.sizes.push_back(0);

    std::span<const Point> steps = connectivity == Connectivity::four
                                       ? std::span<const Point>(kFourSteps)
                                       : std::span<const Point>(kEightSteps);
    std::vector<Point> stack;
    for (int y = 0; y < b.height(); ++y) {
        for (int x = 0; x < b.width(); ++x) {
            if (!b.get(x, y) || out.at(x, y) != 0)
                continue;
            const int id = ++out.count;
            std::size_t size = 0;
            out.labels[std::size_t(y) * out.width + x] = id;
            stack.push_back({x, y});
            while (!stack.empty()) {
                const Point p = stack.back();
                stack.pop_back();
                ++size;
                for (Point d : steps) {
                    const Point q = p + d;
                    if (!b.get(q))
                        continue;
                    int& label = out.labels[std::size_t(q.y) * out.width + q.x];
                    if (label == 0) {
                        label = id;
                        stack.push_back(q);
                    }
                }
            }
            out.sizes.push_back(size);
        }
    }
    return out;
}

BinaryImage component_mask(const ComponentLabels& labels, int id)
{
    BinaryImage out(labels.width, labels.height);
    for (int y = 0; y < labels.height; ++y)
        for (int x = 0; x < labels.width; ++x)
            if (labels.at(x, y) == id)
                out.set(x, y, true);
    return out;
}

BinaryImage largest_component(const BinaryImage& b, Connectivity connectivity)
{
    const ComponentLabels labels = connected_components(b, connectivity);
    if (labels.count == 0)
        throw InvalidArgument("no foreground pixels: cannot select a largest component");
    return component_mask(labels, largest_id(labels, [](int) { return true; }));
}

BinaryImage component_at_seed(const BinaryImage& b, Point seed, int max_radius,
                              Connectivity connectivity)
{
    if (!b.in_bounds(seed.x, seed.y))
        throw InvalidArgument("seed lies outside the image");
    const ComponentLabels labels = connected_components(b, connectivity);
    if (labels.count == 0)
        throw InvalidArgument("no foreground pixels: cannot select a component");

    std::vector<bool> in_window(std::size_t(labels.count) + 1);
    for (int radius = std::min(4, max_radius); radius > 0;) {
        std::fill(in_window.begin(), in_window.end(), false);
        bool any = false;
        const int x0 = std::max(0, seed.x - radius), x1 = std::min(b.width() - 1, seed.x + radius);
        const int y0 = std::max(0, seed.y - radius), y1 = std::min(b.height() - 1, seed.y + radius);
        for (int y = y0; y <= y1; ++y)
            for (int x = x0; x <= x1; ++x)
                if (int id = labels.at(x, y)) {
                    in_window[id] = true;
                    any = true;
                }
        if (any)
            return component_mask(labels, largest_id(labels, [&](int id) { return in_window[id]; }));
        if (radius >= max_radius)
            break;
        radius = std::min(radius * 2, max_radius);
    }
    return component_mask(labels, largest_id(labels, [](int) { return true; }));
}

}  // namespace fintrace
