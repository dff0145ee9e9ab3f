#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>

#include "fintrace/geometry.hpp"
#include "fintrace/pipeline.hpp"

namespace fintrace::app {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitUsage = 1;    // bad flags, unreadable input, orientation
inline constexpr int kExitFailure = 2;  // the trace itself failed

// "x,y" and "x,y,w,h"; whitespace around fields is tolerated.
std::optional<Point> parse_point(std::string_view s);
std::optional<Rect> parse_rect(std::string_view s);
// "auto", "1", "2", "approach1", "approach2".
std::optional<Tier> parse_tier(std::string_view s);

struct TraceOptions {
    std::filesystem::path image;
    Point start;
    Point end;
    std::optional<Rect> viewport;
    Tier tier = Tier::automatic;
    std::optional<std::filesystem::path> out;        // stdout when absent
    std::optional<std::filesystem::path> text_out;   // "x y" lines, success only
    std::optional<std::filesystem::path> debug_dir;  // per-stage PGM/PBM dumps
    int max_dim = 600;
};

// Success writes the outline JSON; algorithmic failure writes the full
// result with diagnostics. Returns an exit code, never throws.
int run_trace(const TraceOptions& opts, std::ostream& out, std::ostream& err);

struct BatchOptions {
    std::filesystem::path manifest;
    std::filesystem::path out_dir;
    Tier tier = Tier::automatic;
    int max_dim = 600;
};

// One result JSON per row plus summary.csv in out_dir. Exit 0 when any row
// succeeded, 2 when none did, 1 when the manifest is unreadable or empty.
int run_batch(const BatchOptions& opts, std::ostream& out, std::ostream& err);

int run_lut_dump(const std::filesystem::path& path, std::ostream& err);

// Debug sink writing <dir>/<stage>.pgm and <dir>/<stage>.pbm.
DebugSink directory_sink(const std::filesystem::path& dir);

}  // namespace fintrace::app
