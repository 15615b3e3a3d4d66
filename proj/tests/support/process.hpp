#pragma once

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace testutil {

struct CommandResult {
    int exit_code = -1;
    std::string out;
};

// Runs a shell command, capturing standard output; standard error is discarded.
inline CommandResult run(const std::string& command) {
    CommandResult r;
    FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

inline std::string cli() { return std::string("\"") + QTOR_CLI_PATH + "\""; }
inline std::string data(const std::string& rel) { return std::string("\"") + QTOR_DATA_DIR + "/" + rel + "\""; }

}  // namespace testutil
