#pragma once

// Spawns the built CLI and captures stdout + exit code.  Tests pass
// the binary path in via the QUARTET_CLI_BIN compile definition.

#include <array>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <sys/wait.h>

struct CliResult {
    int code = -1;
    std::string out;
};

inline CliResult run_cli(const std::string& args, bool merge_stderr = false) {
    const std::string cmd =
        std::string(QUARTET_CLI_BIN) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed for: " + cmd);
    CliResult res;
    std::array<char, 4096> buf{};
    size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), n);
    const int status = pclose(pipe);
    res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}
