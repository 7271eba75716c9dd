#pragma once

namespace ionspin::cli {

/// Full command line (argv[0] included). Returns the process exit code:
/// 0 ok, 2 usage or configuration error, 3 numerical failure.
int run(int argc, const char* const* argv);

}  // namespace ionspin::cli
