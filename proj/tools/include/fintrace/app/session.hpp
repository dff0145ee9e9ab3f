#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "fintrace/image.hpp"
#include "fintrace/outline.hpp"
#include "fintrace/pipeline.hpp"

namespace fintrace::app {

struct AcceptedOutline {
    std::uint64_t revision = 0;
    ChainOutline outline;
};

struct ImageInfo {
    std::string id;
    std::filesystem::path path;
    int width = 0;
    int height = 0;
};

// Images are registered up front; afterwards the id map is read-only and
// each image's mutable state sits behind its own mutex.
class SessionStore {
public:
    // Registers one file, or every PNG/JPEG directly inside a directory.
    // Ids are file stems, suffixed -2, -3, ... on collision.
    std::vector<std::string> add(const std::filesystem::path& path);

    std::vector<ImageInfo> list() const;
    std::optional<ImageInfo> info(const std::string& id) const;
    std::shared_ptr<const RgbImage> image(const std::string& id) const;

    void record_trace(const std::string& id, TraceResult result);
    std::optional<TraceResult> last_trace(const std::string& id) const;

    // Stores a new immutable revision (last write wins) and mirrors it to
    // <image stem>.outline.json beside the source image.
    AcceptedOutline accept(const std::string& id, ChainOutline outline);
    std::optional<AcceptedOutline> accepted(const std::string& id) const;

    static std::filesystem::path outline_path(const std::filesystem::path& image);

private:
    struct Entry {
        ImageInfo info;
        std::shared_ptr<const RgbImage> pixels;
        mutable std::mutex mutex;
        std::optional<TraceResult> last;
        std::vector<std::shared_ptr<const AcceptedOutline>> revisions;
    };

    Entry* find(const std::string& id) const;

    std::map<std::string, std::unique_ptr<Entry>> entries_;
};

}  // namespace fintrace::app
