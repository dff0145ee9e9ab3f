#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>

#include "fintrace/error.hpp"
#include "fintrace/threshold.hpp"

namespace fintrace {

namespace {

// Windowed count sums, truncated at the histogram ends. Comparisons stay
// in integers so scaling every count by a constant cannot change the
// outcome.
using Smoothed = std::array<std::int64_t, 256>;

Smoothed smooth(const Histogram& h, int radius)
{
    Smoothed s{};
    for (int i = 0; i < 256; ++i) {
        const int lo = std::max(0, i - radius);
        const int hi = std::min(255, i + radius);
        for (int j = lo; j <= hi; ++j)
            s[i] += std::int64_t(h.bins[j]);
    }
    return s;
}

enum class Trend { rising, falling, level };

Trend trend(const Smoothed& s, int i, int tolerance_percent)
{
    const std::int64_t diff = s[i + 1] - s[i];
    if (std::llabs(diff) * 100 <= s[i] * tolerance_percent)
        return Trend::level;
    return diff > 0 ? Trend::rising : Trend::falling;
}

struct Valley {
    int start = 0;
    int end = 0;
    int center() const { return (start + end) / 2; }
};

// Resumable left-to-right trend scan; each call
// returns the next completed valley.
class ValleyScanner {
public:
    ValleyScanner(const Smoothed& s, int tolerance_percent) : s_(s), tol_(tolerance_percent) {}

    std::optional<Valley> next()
    {
        for (; pos_ < 255; ++pos_) {
            const Trend t = trend(s_, pos_, tol_);
            switch (state_) {
            case State::seeking_rise:
                if (t == Trend::rising)
                    state_ = State::rising;
                break;
            case State::rising:
                if (t == Trend::falling) {
                    state_ = State::falling;
                    floor_start_ = pos_ + 1;
                }
                break;
            case State::falling:
                if (t == Trend::falling) {
                    floor_start_ = pos_ + 1;
                } else if (t == Trend::rising) {
                    state_ = State::rising;
                    Valley v{floor_start_, pos_};
                    ++pos_;
                    return v;
                }
                break;
            }
        }
        return std::nullopt;
    }

private:
    enum class State { seeking_rise, rising, falling };

    const Smoothed& s_;
    int tol_;
    int pos_ = 0;
    int floor_start_ = 0;
    State state_ = State::seeking_rise;
};

}  // namespace

std::optional<ValleyAnalysis> find_valley_threshold(const Histogram& h, const ValleyConfig& cfg)
{
    if (h.total == 0)
        throw InvalidArgument("cannot analyse an empty histogram");
    if (cfg.neighborhood_radius < 0 || cfg.level_tolerance_percent < 0)
        throw InvalidArgument("valley configuration must be non-negative");

    const Smoothed s = smooth(h, cfg.neighborhood_radius);
    ValleyScanner scanner(s, cfg.level_tolerance_percent);

    const auto first = scanner.next();
    if (!first)
        return std::nullopt;

    ValleyAnalysis out;
    out.first_valley = first->center();
    out.first_valley_end = first->end;
    out.chosen = out.first_valley;

    if (const auto second = scanner.next()) {
        out.second_valley = second->center();
        int peak = first->end + 1;
        for (int i = peak + 1; i < second->start; ++i)
            if (s[i] > s[peak])
                peak = i;
        out.second_peak = peak;
        if (peak - first->end < cfg.two_tone_gap) {
            out.two_toned = true;
            out.chosen = *out.second_valley;
        }
    }
    return out;
}

}  // namespace fintrace
