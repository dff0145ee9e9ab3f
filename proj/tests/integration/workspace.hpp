#pragma once

#include <filesystem>
#include <string>

#include "fixtures.hpp"

namespace fintrace::fixtures {

// Fresh scratch directory, removed on destruction.
class TempDir {
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

// Writes the scene as PNG and returns its path.
std::filesystem::path write_scene(const TempDir& dir, const std::string& name, SceneFamily family,
                                  std::uint32_t seed);

std::string read_file(const std::filesystem::path& p);

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

// Runs a command line through the shell, capturing stdout and stderr.
RunResult run(const std::string& command, const TempDir& scratch);

std::string quote(const std::filesystem::path& p);

}  // namespace fintrace::fixtures
