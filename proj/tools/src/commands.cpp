#include "fintrace/app/commands.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fintrace/app/manifest.hpp"
#include "fintrace/error.hpp"
#include "fintrace/serialize.hpp"

namespace fs = std::filesystem;

namespace fintrace::app {

namespace {

std::optional<std::vector<int>> parse_ints(std::string_view s, std::size_t n)
{
    std::vector<int> out;
    for (std::size_t pos = 0;;) {
        const std::size_t comma = std::min(s.find(',', pos), s.size());
        std::string_view field = s.substr(pos, comma - pos);
        while (!field.empty() && field.front() == ' ')
            field.remove_prefix(1);
        while (!field.empty() && field.back() == ' ')
            field.remove_suffix(1);
        int v = 0;
        const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (field.empty() || ec != std::errc() || end != field.data() + field.size())
            return std::nullopt;
        out.push_back(v);
        if (comma == s.size())
            break;
        pos = comma + 1;
    }
    if (out.size() != n)
        return std::nullopt;
    return out;
}

void write_text(const std::optional<fs::path>& path, const std::string& text, std::ostream& out)
{
    if (!path) {
        out << text;
        return;
    }
    std::ofstream f(*path, std::ios::binary);
    if (!(f << text))
        throw IoError("cannot write " + path->string());
}

}  // namespace

std::optional<Point> parse_point(std::string_view s)
{
    const auto v = parse_ints(s, 2);
    if (!v)
        return std::nullopt;
    return Point{(*v)[0], (*v)[1]};
}

std::optional<Rect> parse_rect(std::string_view s)
{
    const auto v = parse_ints(s, 4);
    if (!v)
        return std::nullopt;
    return Rect{(*v)[0], (*v)[1], (*v)[2], (*v)[3]};
}

std::optional<Tier> parse_tier(std::string_view s)
{
    if (s == "auto")
        return Tier::automatic;
    if (s == "1" || s == "approach1")
        return Tier::approach1;
    if (s == "2" || s == "approach2")
        return Tier::approach2;
    return std::nullopt;
}

DebugSink directory_sink(const fs::path& dir)
{
    fs::create_directories(dir);
    DebugSink sink;
    sink.gray = [dir](std::string_view stage, const GrayImage& g) {
        write_pgm(g, dir / (std::string(stage) + ".pgm"));
    };
    sink.binary = [dir](std::string_view stage, const BinaryImage& b) {
        write_pbm(b, dir / (std::string(stage) + ".pbm"));
    };
    return sink;
}

int run_trace(const TraceOptions& opts, std::ostream& out, std::ostream& err)
{
    try {
        TraceRequest req;
        req.image = std::make_shared<RgbImage>(load_image(opts.image));
        req.endpoints = {opts.start, opts.end};
        req.viewport = opts.viewport;
        req.tier = opts.tier;
        req.config.max_dim = opts.max_dim;
        if (opts.debug_dir)
            req.config.debug = directory_sink(*opts.debug_dir);

        const TraceResult result = autotrace(req);
        if (result.success) {
            write_text(opts.out, outline_to_json(*result.outline).dump(2) + "\n", out);
            if (opts.text_out)
                write_text(opts.text_out, outline_to_text(*result.outline), out);
            return kExitSuccess;
        }
        write_text(opts.out, to_json(result).dump(2) + "\n", out);
        for (const std::string& reason : result.rejection_reasons())
            err << "fintrace: " << reason << '\n';
        err << "fintrace: automatic tracing failed; a manual trace is needed\n";
        return kExitFailure;
    } catch (const std::exception& e) {
        err << "fintrace: " << e.what() << '\n';
        return kExitUsage;
    }
}

namespace {

std::string summary_reason(const TraceResult& r)
{
    std::string joined;
    for (const std::string& reason : r.rejection_reasons())
        joined += (joined.empty() ? "" : "; ") + reason;
    return joined;
}

}  // namespace

int run_batch(const BatchOptions& opts, std::ostream& out, std::ostream& err)
{
    std::vector<ManifestRow> rows;
    try {
        std::ifstream in(opts.manifest);
        if (!in)
            throw IoError("cannot open manifest " + opts.manifest.string());
        rows = parse_manifest(in);
        fs::create_directories(opts.out_dir);
    } catch (const std::exception& e) {
        err << "fintrace: " << e.what() << '\n';
        return kExitUsage;
    }
    if (rows.empty()) {
        err << "fintrace: manifest " << opts.manifest.string() << " has no rows\n";
        return kExitUsage;
    }

    const fs::path base = opts.manifest.parent_path();
    std::ofstream summary(opts.out_dir / "summary.csv", std::ios::binary);
    summary << "image,outcome,method,threshold,reason\n";
    int successes = 0, index = 0;
    for (const ManifestRow& row : rows) {
        ++index;
        std::string outcome = "error", method, threshold, reason = row.error;
        if (row.ok()) {
            try {
                const fs::path image = fs::path(row.image).is_absolute() ? fs::path(row.image)
                                                                         : base / row.image;
                TraceRequest req;
                req.image = std::make_shared<RgbImage>(load_image(image));
                req.endpoints = *row.endpoints;
                req.viewport = row.viewport;
                req.tier = opts.tier;
                req.config.max_dim = opts.max_dim;
                const TraceResult result = autotrace(req);

                std::ostringstream name;
                name << index << '_' << fs::path(row.image).stem().string() << ".json";
                std::ofstream(opts.out_dir / name.str(), std::ios::binary)
                    << to_json(result).dump(2) << '\n';

                outcome = result.success ? "success" : "failure";
                if (result.method)
                    method = to_string(*result.method);
                if (result.threshold)
                    threshold = std::to_string(*result.threshold);
                reason = summary_reason(result);
                successes += result.success;
            } catch (const std::exception& e) {
                reason = e.what();
            }
        }
        summary << csv_escape(row.image) << ',' << outcome << ',' << method << ',' << threshold
                << ',' << csv_escape(reason) << '\n';
        out << row.image << ": " << outcome << (method.empty() ? "" : " (" + method + ")") << '\n';
        if (outcome == "error")
            err << "fintrace: manifest line " << row.line << ": " << reason << '\n';
    }
    out << successes << " of " << rows.size() << " traced\n";
    return successes > 0 ? kExitSuccess : kExitFailure;
}

int run_lut_dump(const fs::path& path, std::ostream& err)
{
    std::ofstream f(path, std::ios::binary);
    if (!(f << lut_to_csv(default_pixelarity_lut()))) {
        err << "fintrace: cannot write " << path.string() << '\n';
        return kExitUsage;
    }
    return kExitSuccess;
}

}  // namespace fintrace::app
