#include "fintrace/serialize.hpp"

#include <sstream>

#include "fintrace/error.hpp"

namespace fintrace {

using nlohmann::json;

namespace {

json point_json(Point p) { return json::array({p.x, p.y}); }

json rect_json(Rect r) { return json::array({r.x, r.y, r.w, r.h}); }

int as_int(const json& j, std::string_view what)
{
    if (!j.is_number_integer())
        throw InvalidArgument(std::string(what) + " must be an integer");
    return j.get<int>();
}

}  // namespace

Point point_from_json(const json& j)
{
    if (j.is_array() && j.size() == 2)
        return {as_int(j[0], "x"), as_int(j[1], "y")};
    if (j.is_object() && j.contains("x") && j.contains("y"))
        return {as_int(j["x"], "x"), as_int(j["y"], "y")};
    throw InvalidArgument("point must be [x, y] or {\"x\": .., \"y\": ..}");
}

Rect rect_from_json(const json& j)
{
    if (j.is_array() && j.size() == 4)
        return {as_int(j[0], "x"), as_int(j[1], "y"), as_int(j[2], "w"), as_int(j[3], "h")};
    if (j.is_object() && j.contains("x") && j.contains("y") && j.contains("w") && j.contains("h"))
        return {as_int(j["x"], "x"), as_int(j["y"], "y"), as_int(j["w"], "w"),
                as_int(j["h"], "h")};
    throw InvalidArgument("rectangle must be [x, y, w, h] or {\"x\",\"y\",\"w\",\"h\"}");
}

json outline_to_json(const ChainOutline& o)
{
    json points = json::array();
    for (Point p : o.points)
        points.push_back(point_json(p));
    return {{"method", to_string(o.method)},
            {"threshold", o.threshold},
            {"scale", o.scale},
            {"closed_form", o.closed_form},
            {"points", std::move(points)}};
}

ChainOutline outline_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("points") || !j["points"].is_array())
        throw InvalidArgument("outline JSON needs a \"points\" array");
    ChainOutline o;
    for (const json& p : j["points"])
        o.points.push_back(point_from_json(p));
    if (j.contains("method")) {
        if (!j["method"].is_string())
            throw InvalidArgument("method must be a string");
        auto m = parse_trace_method(j["method"].get<std::string>());
        if (!m)
            throw InvalidArgument("unknown method " + j["method"].get<std::string>());
        o.method = *m;
    }
    if (j.contains("threshold"))
        o.threshold = as_int(j["threshold"], "threshold");
    if (j.contains("scale"))
        o.scale = as_int(j["scale"], "scale");
    if (j.contains("closed_form")) {
        if (!j["closed_form"].is_boolean())
            throw InvalidArgument("closed_form must be a boolean");
        o.closed_form = j["closed_form"].get<bool>();
    }
    return o;
}

std::string outline_to_text(const ChainOutline& o)
{
    std::ostringstream out;
    for (Point p : o.points)
        out << p.x << ' ' << p.y << '\n';
    return out.str();
}

std::vector<Point> points_from_text(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::vector<Point> pts;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        std::istringstream fields(line);
        Point p;
        std::string extra;
        if (!(fields >> p.x >> p.y) || (fields >> extra))
            throw InvalidArgument("line " + std::to_string(lineno) + ": expected \"x y\"");
        pts.push_back(p);
    }
    return pts;
}

json to_json(const ValleyAnalysis& v)
{
    json j = {{"first_valley", v.first_valley},
              {"first_valley_end", v.first_valley_end},
              {"second_valley", nullptr},
              {"second_peak", nullptr},
              {"chosen", v.chosen},
              {"two_toned", v.two_toned}};
    if (v.second_valley)
        j["second_valley"] = *v.second_valley;
    if (v.second_peak)
        j["second_peak"] = *v.second_peak;
    return j;
}

json to_json(const PixelarityCurve& c)
{
    json samples = json::array();
    for (const CurveSample& s : c.samples)
        samples.push_back(json::array({s.threshold, s.mean_score}));
    return {{"category", to_string(c.category)}, {"samples", std::move(samples)}};
}

json to_json(const StageReport& r)
{
    json j = {{"method", to_string(r.method)},
              {"success", r.success},
              {"threshold", nullptr},
              {"provisional_threshold", r.provisional_threshold},
              {"foreground_pixels", r.foreground_pixels},
              {"refined_pixels", r.refined_pixels},
              {"blob_pixels", r.blob_pixels},
              {"boundary_pixels", r.boundary_pixels},
              {"outline_pixels", r.outline_pixels},
              {"chain_points", r.chain_points},
              {"closed_form", r.closed_form}};
    if (r.threshold)
        j["threshold"] = *r.threshold;
    if (r.valley)
        j["valley"] = to_json(*r.valley);
    if (r.curve)
        j["pixelarity"] = to_json(*r.curve);
    if (!r.success) {
        j["failed_stage"] = r.failed_stage;
        j["reason"] = r.reason;
    }
    return j;
}

json to_json(const TraceResult& r)
{
    const TraceDiagnostics& d = r.diagnostics;
    json stages = json::array();
    for (const StageReport& s : d.stages)
        stages.push_back(to_json(s));
    json j = {{"outcome", r.success ? "success" : "failure"},
              {"method", nullptr},
              {"threshold", nullptr},
              {"outline", nullptr},
              {"reasons", r.rejection_reasons()},
              {"diagnostics",
               {{"crop", rect_json(d.crop)},
                {"scale", d.scale},
                {"working_size", json::array({d.working_width, d.working_height})},
                {"working_endpoints",
                 {{"start", point_json(d.working_endpoints.start)},
                  {"end", point_json(d.working_endpoints.end)}}},
                {"stages", std::move(stages)}}}};
    if (r.method)
        j["method"] = to_string(*r.method);
    if (r.threshold)
        j["threshold"] = *r.threshold;
    if (r.outline)
        j["outline"] = outline_to_json(*r.outline);
    return j;
}

std::string lut_to_csv(const PixelarityLut& lut)
{
    std::ostringstream out;
    out << "index,score\n";
    for (std::size_t i = 0; i < lut.scores.size(); ++i)
        out << i << ',' << int(lut.scores[i]) << '\n';
    return out.str();
}

}  // namespace fintrace
