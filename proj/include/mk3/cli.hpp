#pragma once

#include <iosfwd>

namespace mk3 {

// Full mk3 command-line entry point, parameterized over streams so the
// commands are testable in-process. Returns the process exit code: 0 for
// success, 1 when a check or diff found a mismatch, 2 for usage or input
// errors.
int mk3_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err);

}  // namespace mk3
