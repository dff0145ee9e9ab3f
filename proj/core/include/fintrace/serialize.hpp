#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "fintrace/outline.hpp"
#include "fintrace/pipeline.hpp"
#include "fintrace/threshold.hpp"

namespace fintrace {

// {"method","threshold","scale","closed_form","points":[[x,y],...]}
nlohmann::json outline_to_json(const ChainOutline& o);
// Inverse of outline_to_json; missing provenance fields take defaults.
// Throws InvalidArgument on malformed input.
ChainOutline outline_from_json(const nlohmann::json& j);

// One "x y" line per point.
std::string outline_to_text(const ChainOutline& o);
std::vector<Point> points_from_text(std::string_view text);

// Accepts [x, y] or {"x": .., "y": ..}.
Point point_from_json(const nlohmann::json& j);
// Accepts [x, y, w, h] or {"x","y","w","h"}.
Rect rect_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ValleyAnalysis& v);
nlohmann::json to_json(const PixelarityCurve& c);
nlohmann::json to_json(const StageReport& r);
nlohmann::json to_json(const TraceResult& r);

// "index,score" header followed by 512 rows.
std::string lut_to_csv(const PixelarityLut& lut);

}  // namespace fintrace
