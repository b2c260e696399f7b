#pragma once

#include <ostream>
#include <string>
#include <vector>

#ifndef ERGOLAB_VERSION
#define ERGOLAB_VERSION "0.0.0"
#endif

namespace ergolab::cli {

inline constexpr const char* kArtifactVersion = ERGOLAB_VERSION;

enum ExitCode : int {
    exit_ok = 0,
    exit_io = 1,
    exit_validation = 2,
    exit_numerical = 3,
    exit_check_failed = 4,
};

/// Entry point behind the `ergolab` binary. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ergolab::cli
