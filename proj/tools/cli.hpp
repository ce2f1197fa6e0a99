#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nnca::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kInternalError = 1,
    kBadInput = 2,
    kBadConfig = 3,
    kIterationCap = 4,
};

/// Entry point shared by the executable and the tests. args excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nnca::cli
