#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fintrace/geometry.hpp"
#include "fintrace/outline.hpp"

namespace fintrace::app {

// Header: image,start_x,start_y,end_x,end_y,vx,vy,vw,vh (viewport columns
// optional; all four or none).
struct ManifestRow {
    int line = 0;
    std::string image;
    std::optional<EndpointPair> endpoints;
    std::optional<Rect> viewport;
    std::string error;  // non-empty when the row cannot be traced

    bool ok() const { return error.empty(); }
};

// Splits one CSV record; double quotes may wrap fields containing commas.
std::vector<std::string> split_csv(std::string_view line);
std::string csv_escape(std::string_view field);

// Throws IoError when the header is missing or lacks a required column.
std::vector<ManifestRow> parse_manifest(std::istream& in);

}  // namespace fintrace::app
