#pragma once

namespace sdcm {

/// Entry point of the sdcm command line tool (run / analyze /
/// list-scenarios). Returns the process exit code: 0 on success, 2 for
/// configuration errors, 3 when a simulation diverges.
int cli_main(int argc, const char* const* argv);

}  // namespace sdcm
