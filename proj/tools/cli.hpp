#pragma once

#include <iosfwd>

namespace blockade::cli {

/// Exit codes: 0 success, 1 usage error, 2 solver error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int cli_main(int argc, const char* const* argv);

}  // namespace blockade::cli
