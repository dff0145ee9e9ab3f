#include "fintrace/app/server.hpp"

#include <fstream>
#include <iterator>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "fintrace/error.hpp"
#include "fintrace/serialize.hpp"

namespace fintrace::app {

using nlohmann::json;

namespace {

void send_json(httplib::Response& res, int status, const json& body)
{
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message)
{
    send_json(res, status, {{"error", message}});
}

std::string content_type_for(const std::filesystem::path& p)
{
    std::string ext = p.extension().string();
    for (auto& c : ext)
        c = char(std::tolower(static_cast<unsigned char>(c)));
    return ext == ".png" ? "image/png" : "image/jpeg";
}

std::optional<json> parse_body(const httplib::Request& req, httplib::Response& res)
{
    json body = json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object()) {
        send_error(res, 400, "request body must be a JSON object");
        return std::nullopt;
    }
    return body;
}

}  // namespace

struct ApiServer::Impl {
    SessionStore& store;
    ServerOptions opts;
    httplib::Server http;

    Impl(SessionStore& s, ServerOptions o) : store(s), opts(std::move(o)) { routes(); }

    void routes()
    {
        http.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
            send_json(res, 200, {{"status", "ok"}});
        });

        http.Get("/api/images", [this](const httplib::Request&, httplib::Response& res) {
            json list = json::array();
            for (const ImageInfo& i : store.list())
                list.push_back({{"id", i.id},
                                {"name", i.path.filename().string()},
                                {"width", i.width},
                                {"height", i.height}});
            send_json(res, 200, list);
        });

        http.Get("/api/images/:id", [this](const httplib::Request& req, httplib::Response& res) {
            const auto info = store.info(req.path_params.at("id"));
            if (!info)
                return send_error(res, 404, "unknown image");
            std::ifstream f(info->path, std::ios::binary);
            std::string bytes((std::istreambuf_iterator<char>(f)), {});
            if (!f && !f.eof())
                return send_error(res, 500, "cannot read image file");
            res.set_content(std::move(bytes), content_type_for(info->path));
        });

        http.Post("/api/trace", [this](const httplib::Request& req, httplib::Response& res) {
            trace(req, res);
        });

        http.Get("/api/outlines/:id", [this](const httplib::Request& req, httplib::Response& res) {
            const std::string id = req.path_params.at("id");
            if (!store.info(id))
                return send_error(res, 404, "unknown image");
            const auto acc = store.accepted(id);
            if (!acc)
                return send_error(res, 404, "no accepted outline");
            send_json(res, 200,
                      {{"image_id", id}, {"revision", acc->revision}, {"outline", outline_to_json(acc->outline)}});
        });

        http.Post("/api/outlines/:id/accept", [this](const httplib::Request& req, httplib::Response& res) {
            accept(req, res);
        });

        if (opts.static_dir)
            http.set_mount_point("/", opts.static_dir->string());

        http.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
            try {
                std::rethrow_exception(ep);
            } catch (const std::exception& e) {
                send_error(res, 500, e.what());
            } catch (...) {
                send_error(res, 500, "internal error");
            }
        });
    }

    void trace(const httplib::Request& req, httplib::Response& res)
    {
        const auto body = parse_body(req, res);
        if (!body)
            return;
        TraceRequest tr;
        std::string id;
        try {
            if (!body->contains("image_id") || !(*body)["image_id"].is_string())
                return send_error(res, 400, "image_id must be a string");
            id = (*body)["image_id"].get<std::string>();
            if (!body->contains("start") || !body->contains("end"))
                return send_error(res, 400, "start and end are required");
            tr.endpoints = {point_from_json((*body)["start"]), point_from_json((*body)["end"])};
            if (body->contains("viewport") && !(*body)["viewport"].is_null())
                tr.viewport = rect_from_json((*body)["viewport"]);
            if (body->contains("tier")) {
                const json& t = (*body)["tier"];
                const std::string name = t.is_string() ? t.get<std::string>() : "";
                if (name == "auto")
                    tr.tier = Tier::automatic;
                else if (name == "approach1" || name == "1")
                    tr.tier = Tier::approach1;
                else if (name == "approach2" || name == "2")
                    tr.tier = Tier::approach2;
                else
                    return send_error(res, 400, "tier must be auto, approach1 or approach2");
            }
        } catch (const InvalidArgument& e) {
            return send_error(res, 400, e.what());
        }

        tr.image = store.image(id);
        if (!tr.image)
            return send_error(res, 404, "unknown image " + id);
        tr.config.max_dim = opts.max_dim;

        try {
            TraceResult result = autotrace(tr);
            json out = to_json(result);
            out["image_id"] = id;
            store.record_trace(id, std::move(result));
            send_json(res, 200, out);
        } catch (const OrientationError& e) {
            send_json(res, 422, {{"error", e.what()}, {"guidance", std::string(kOrientationGuidance)}});
        } catch (const InvalidArgument& e) {
            send_error(res, 400, e.what());
        }
    }

    void accept(const httplib::Request& req, httplib::Response& res)
    {
        const std::string id = req.path_params.at("id");
        const auto info = store.info(id);
        if (!info)
            return send_error(res, 404, "unknown image");
        const auto body = parse_body(req, res);
        if (!body)
            return;

        ChainOutline outline;
        try {
            if (!body->contains("points") || !(*body)["points"].is_array())
                return send_error(res, 400, "points must be an array");
            outline = outline_from_json(*body);
        } catch (const InvalidArgument& e) {
            return send_error(res, 400, e.what());
        }
        if (!body->contains("method"))
            outline.method = TraceMethod::manual;
        if (outline.points.size() < 2)
            return send_error(res, 400, "an outline needs at least two points");
        const Rect bounds{0, 0, info->width, info->height};
        for (Point p : outline.points)
            if (!bounds.contains(p))
                return send_error(res, 400, "outline point outside the image");

        const AcceptedOutline stored = store.accept(id, std::move(outline));
        send_json(res, 200,
                  {{"image_id", id},
                   {"revision", stored.revision},
                   {"points", stored.outline.points.size()},
                   {"method", to_string(stored.outline.method)},
                   {"path", SessionStore::outline_path(info->path).string()}});
    }
};

ApiServer::ApiServer(SessionStore& store, ServerOptions opts)
    : impl_(std::make_unique<Impl>(store, std::move(opts)))
{
}

ApiServer::~ApiServer() { stop(); }

int ApiServer::bind()
{
    const auto& o = impl_->opts;
    const int port = o.port == 0 ? impl_->http.bind_to_any_port(o.host)
                                 : (impl_->http.bind_to_port(o.host, o.port) ? o.port : -1);
    if (port < 0)
        throw Error("cannot bind " + o.host + ":" + std::to_string(o.port));
    return port;
}

void ApiServer::serve() { impl_->http.listen_after_bind(); }

void ApiServer::stop()
{
    if (impl_ && impl_->http.is_running())
        impl_->http.stop();
}

}  // namespace fintrace::app
