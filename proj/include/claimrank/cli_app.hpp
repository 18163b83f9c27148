#pragma once

namespace claimrank {

/// Command-line entry point (predict / evaluate / sweep / ingest-check).
/// Returns the process exit code: 0 success, 1 usage error, 2 data error,
/// 3 internal error.
int run_cli(int argc, const char* const* argv);

}  // namespace claimrank
