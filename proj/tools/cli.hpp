#pragma once

#include <string>
#include <vector>

namespace mts::cli {

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
};

enum ExitCode { kOk = 0, kVerifyFailed = 1, kUsage = 2, kLimit = 3 };

// One command line without the program name. Reads MTS_HORIZON from the environment.
Outcome run(const std::vector<std::string>& args);

}  // namespace mts::cli
