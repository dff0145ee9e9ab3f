#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "fintrace/app/session.hpp"

namespace fintrace::app {

struct ServerOptions {
    std::string host = "127.0.0.1";
    int port = 8080;  // 0 picks a free port
    std::optional<std::filesystem::path> static_dir;
    int max_dim = 600;
};

// JSON API over a SessionStore:
//   GET  /healthz
//   GET  /api/images                 -> [{id, name, width, height}]
//   GET  /api/images/{id}            -> original file bytes
//   POST /api/trace                  -> TraceResult JSON (failure is 200)
//   GET  /api/outlines/{id}          -> latest accepted outline
//   POST /api/outlines/{id}/accept   -> {image_id, revision, ...}
class ApiServer {
public:
    ApiServer(SessionStore& store, ServerOptions opts);
    ~ApiServer();
    ApiServer(const ApiServer&) = delete;
    ApiServer& operator=(const ApiServer&) = delete;

    // Binds and returns the port actually used; throws Error on failure.
    int bind();
    // Serves until stop(); call after bind().
    void serve();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace fintrace::app
