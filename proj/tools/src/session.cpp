#include "fintrace/app/session.hpp"

#include <algorithm>
#include <fstream>

#include "fintrace/error.hpp"
#include "fintrace/serialize.hpp"

namespace fs = std::filesystem;

namespace fintrace::app {

namespace {

bool is_image_file(const fs::path& p)
{
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

}  // namespace

std::vector<std::string> SessionStore::add(const fs::path& path)
{
    std::vector<fs::path> files;
    if (fs::is_directory(path)) {
        for (const auto& entry : fs::directory_iterator(path))
            if (entry.is_regular_file() && is_image_file(entry.path()))
                files.push_back(entry.path());
        std::sort(files.begin(), files.end());
    } else {
        files.push_back(path);
    }

    std::vector<std::string> ids;
    for (const fs::path& file : files) {
        auto entry = std::make_unique<Entry>();
        entry->pixels = std::make_shared<const RgbImage>(load_image(file));
        std::string id = file.stem().string();
        for (int n = 2; entries_.count(id); ++n)
            id = file.stem().string() + "-" + std::to_string(n);
        entry->info = {id, file, entry->pixels->width(), entry->pixels->height()};
        entries_.emplace(id, std::move(entry));
        ids.push_back(id);
    }
    return ids;
}

SessionStore::Entry* SessionStore::find(const std::string& id) const
{
    const auto it = entries_.find(id);
    return it == entries_.end() ? nullptr : it->second.get();
}

std::vector<ImageInfo> SessionStore::list() const
{
    std::vector<ImageInfo> out;
    for (const auto& [id, entry] : entries_)
        out.push_back(entry->info);
    return out;
}

std::optional<ImageInfo> SessionStore::info(const std::string& id) const
{
    if (const Entry* e = find(id))
        return e->info;
    return std::nullopt;
}

std::shared_ptr<const RgbImage> SessionStore::image(const std::string& id) const
{
    const Entry* e = find(id);
    return e ? e->pixels : nullptr;
}

void SessionStore::record_trace(const std::string& id, TraceResult result)
{
    Entry* e = find(id);
    if (!e)
        throw InvalidArgument("unknown image " + id);
    std::lock_guard lock(e->mutex);
    e->last = std::move(result);
}

std::optional<TraceResult> SessionStore::last_trace(const std::string& id) const
{
    const Entry* e = find(id);
    if (!e)
        return std::nullopt;
    std::lock_guard lock(e->mutex);
    return e->last;
}

fs::path SessionStore::outline_path(const fs::path& image)
{
    return image.parent_path() / (image.stem().string() + ".outline.json");
}

AcceptedOutline SessionStore::accept(const std::string& id, ChainOutline outline)
{
    Entry* e = find(id);
    if (!e)
        throw InvalidArgument("unknown image " + id);
    std::lock_guard lock(e->mutex);
    auto stored = std::make_shared<const AcceptedOutline>(
        AcceptedOutline{e->revisions.size() + 1, std::move(outline)});
    e->revisions.push_back(stored);

    nlohmann::json doc = outline_to_json(stored->outline);
    doc["image"] = e->info.path.filename().string();
    doc["revision"] = stored->revision;
    const fs::path target = outline_path(e->info.path);
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!(f << doc.dump(2) << '\n'))
            throw IoError("cannot write " + tmp.string());
    }
    fs::rename(tmp, target);
    return *stored;
}

std::optional<AcceptedOutline> SessionStore::accepted(const std::string& id) const
{
    const Entry* e = find(id);
    if (!e)
        return std::nullopt;
    std::lock_guard lock(e->mutex);
    if (e->revisions.empty())
        return std::nullopt;
    return *e->revisions.back();
}

}  // namespace fintrace::app
