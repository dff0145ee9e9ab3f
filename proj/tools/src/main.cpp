#include <csignal>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "fintrace/app/commands.hpp"
#include "fintrace/app/server.hpp"
#include "fintrace/app/session.hpp"
#include "fintrace/error.hpp"

namespace {

using namespace fintrace;
using namespace fintrace::app;

// CLI11 validators that reuse the command parsers.
template <typename T, typename Parse>
std::function<std::string(std::string&)> checked(Parse parse, T& target, const char* what)
{
    return [parse, &target, what](std::string& s) -> std::string {
        auto v = parse(s);
        if (!v)
            return std::string("expected ") + what + ", got '" + s + "'";
        target = *v;
        return {};
    };
}

ApiServer* g_server = nullptr;

extern "C" void on_signal(int)
{
    if (g_server)
        g_server->stop();
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Dorsal fin outline extraction"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "fintrace 0.3.0");

    TraceOptions trace;
    std::string start, end, viewport, tier = "auto";
    std::string out, text_out, debug_dir;
    auto* cmd_trace = app.add_subcommand("trace", "Trace one fin outline");
    cmd_trace->add_option("--image", trace.image, "PNG or JPEG photograph")->required()->check(CLI::ExistingFile);
    cmd_trace->add_option("--start", start, "Leading-edge endpoint x,y")
        ->required()
        ->check(CLI::Validator(checked(parse_point, trace.start, "x,y"), "X,Y"));
    cmd_trace->add_option("--end", end, "Trailing-edge endpoint x,y")
        ->required()
        ->check(CLI::Validator(checked(parse_point, trace.end, "x,y"), "X,Y"));
    cmd_trace->add_option("--viewport", viewport, "Crop rectangle x,y,w,h")
        ->check(CLI::Validator(
            [&](std::string& s) -> std::string {
                auto r = parse_rect(s);
                if (!r)
                    return "expected x,y,w,h, got '" + s + "'";
                trace.viewport = *r;
                return {};
            },
            "X,Y,W,H"));
    cmd_trace->add_option("--tier", tier, "auto, approach1 or approach2")
        ->check(CLI::Validator(checked(parse_tier, trace.tier, "a tier"), "TIER"));
    cmd_trace->add_option("--out", out, "Outline JSON path (default stdout)");
    cmd_trace->add_option("--text-out", text_out, "Plain \"x y\" outline path");
    cmd_trace->add_option("--debug-dir", debug_dir, "Directory for per-stage images");
    cmd_trace->add_option("--max-dim", trace.max_dim, "Working resolution cap")->check(CLI::Range(8, 100000));

    BatchOptions batch;
    std::string batch_tier = "auto";
    auto* cmd_batch = app.add_subcommand("batch", "Trace every row of a CSV manifest");
    cmd_batch->add_option("--manifest", batch.manifest, "CSV with image,start_x,start_y,end_x,end_y")
        ->required()
        ->check(CLI::ExistingFile);
    cmd_batch->add_option("--out-dir", batch.out_dir, "Result directory")->required();
    cmd_batch->add_option("--tier", batch_tier, "auto, approach1 or approach2")
        ->check(CLI::Validator(checked(parse_tier, batch.tier, "a tier"), "TIER"));
    cmd_batch->add_option("--max-dim", batch.max_dim, "Working resolution cap")->check(CLI::Range(8, 100000));

    ServerOptions serve;
    std::vector<std::string> sources;
    std::string static_dir;
    auto* cmd_serve = app.add_subcommand("serve", "Run the HTTP API");
    cmd_serve->add_option("--host", serve.host, "Bind address");
    cmd_serve->add_option("--port", serve.port, "Port, 0 for any free port")->check(CLI::Range(0, 65535));
    cmd_serve->add_option("--static", static_dir, "Directory served at /")->check(CLI::ExistingDirectory);
    cmd_serve->add_option("--max-dim", serve.max_dim, "Working resolution cap")->check(CLI::Range(8, 100000));
    cmd_serve->add_option("images", sources, "Image files or directories")->required()->check(CLI::ExistingPath);

    std::string lut_path;
    auto* cmd_lut = app.add_subcommand("lut", "Export the pixelarity lookup table");
    cmd_lut->add_option("--dump", lut_path, "CSV output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitSuccess : kExitUsage;
    }

    if (*cmd_trace) {
        if (!out.empty())
            trace.out = out;
        if (!text_out.empty())
            trace.text_out = text_out;
        if (!debug_dir.empty())
            trace.debug_dir = debug_dir;
        return run_trace(trace, std::cout, std::cerr);
    }
    if (*cmd_batch)
        return run_batch(batch, std::cout, std::cerr);
    if (*cmd_lut)
        return run_lut_dump(lut_path, std::cerr);

    try {
        SessionStore store;
        for (const std::string& s : sources)
            store.add(s);
        if (store.list().empty()) {
            std::cerr << "fintrace: no PNG or JPEG images found\n";
            return kExitUsage;
        }
        if (!static_dir.empty())
            serve.static_dir = static_dir;
        ApiServer server(store, serve);
        const int port = server.bind();
        g_server = &server;
        std::signal(SIGINT, on_signal);
        std::signal(SIGTERM, on_signal);
        std::cout << "listening on http://" << serve.host << ':' << port << '\n' << std::flush;
        server.serve();
        g_server = nullptr;
    } catch (const std::exception& e) {
        std::cerr << "fintrace: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitSuccess;
}
