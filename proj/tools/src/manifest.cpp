#include "fintrace/app/manifest.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <istream>
#include <map>

#include "fintrace/error.hpp"

namespace fintrace::app {

std::vector<std::string> split_csv(std::string_view line)
{
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"')
                fields.back() += '"', ++i;
            else if (c == '"')
                quoted = false;
            else
                fields.back() += c;
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else if (c != '\r') {
            fields.back() += c;
        }
    }
    for (auto& f : fields) {
        const auto first = f.find_first_not_of(" \t");
        const auto last = f.find_last_not_of(" \t");
        f = first == std::string::npos ? std::string() : f.substr(first, last - first + 1);
    }
    return fields;
}

std::string csv_escape(std::string_view field)
{
    if (field.find_first_of(",\"\n") == std::string_view::npos)
        return std::string(field);
    std::string out = "\"";
    for (char c : field)
        out += c == '"' ? std::string("\"\"") : std::string(1, c == '\n' ? ' ' : c);
    return out + '"';
}

namespace {

constexpr std::array<std::string_view, 5> kRequired = {"image", "start_x", "start_y", "end_x",
                                                       "end_y"};
constexpr std::array<std::string_view, 4> kViewport = {"vx", "vy", "vw", "vh"};

std::optional<int> to_int(const std::string& s)
{
    int v = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || end != s.data() + s.size())
        return std::nullopt;
    return v;
}

}  // namespace

std::vector<ManifestRow> parse_manifest(std::istream& in)
{
    std::string line;
    int lineno = 0;
    std::map<std::string, std::size_t> column;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        const auto names = split_csv(line);
        for (std::size_t i = 0; i < names.size(); ++i)
            column[names[i]] = i;
        break;
    }
    if (column.empty())
        throw IoError("manifest is empty");
    for (auto name : kRequired)
        if (!column.count(std::string(name)))
            throw IoError("manifest header lacks column " + std::string(name));

    std::vector<ManifestRow> rows;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        const auto fields = split_csv(line);
        auto field = [&](std::string_view name) -> std::string {
            const auto it = column.find(std::string(name));
            return it != column.end() && it->second < fields.size() ? fields[it->second] : "";
        };

        ManifestRow row;
        row.line = lineno;
        row.image = field("image");
        if (row.image.empty()) {
            row.error = "missing image path";
            rows.push_back(std::move(row));
            continue;
        }
        std::array<std::optional<int>, 4> e;
        for (std::size_t i = 0; i < 4; ++i)
            e[i] = to_int(field(kRequired[i + 1]));
        if (std::any_of(e.begin(), e.end(), [](auto& v) { return !v; })) {
            row.error = "missing or non-integer endpoint coordinate";
            rows.push_back(std::move(row));
            continue;
        }
        row.endpoints = EndpointPair{{*e[0], *e[1]}, {*e[2], *e[3]}};

        std::array<std::string, 4> v;
        for (std::size_t i = 0; i < 4; ++i)
            v[i] = field(kViewport[i]);
        const auto filled = std::count_if(v.begin(), v.end(), [](auto& s) { return !s.empty(); });
        if (filled == 4) {
            std::array<std::optional<int>, 4> n;
            for (std::size_t i = 0; i < 4; ++i)
                n[i] = to_int(v[i]);
            if (std::any_of(n.begin(), n.end(), [](auto& x) { return !x; }))
                row.error = "non-integer viewport";
            else
                row.viewport = Rect{*n[0], *n[1], *n[2], *n[3]};
        } else if (filled != 0) {
            row.error = "viewport needs all of vx, vy, vw, vh";
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace fintrace::app
