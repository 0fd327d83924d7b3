#pragma once

#include <iosfwd>

namespace kgqa {

// Entry point of the kgqa command-line tool. Returns the process exit code:
// 0 success, 1 usage error, 2 data error, 3 backend error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kgqa
