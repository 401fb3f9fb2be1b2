#pragma once

#include <iosfwd>

namespace jd::cli {

// Exit codes: 0 success, 2 usage, 3 data validation, 4 numeric failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace jd::cli
