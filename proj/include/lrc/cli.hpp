#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lrc::cli {

enum ExitCode : int { kSuccess = 0, kInputError = 1, kVerifyFailure = 2, kIoError = 3 };

/// Runs one `lrcham` invocation. `args` excludes the program name. Results go
/// to `--out` or `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lrc::cli
