#pragma once

namespace adslf {

// Batch front end.  Exit codes: 0 success, 1 usage error, 2 verification
// failure, 3 numeric failure (with a node report where available).
int cli_run(int argc, const char* const* argv);

}  // namespace adslf
