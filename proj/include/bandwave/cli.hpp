#pragma once

namespace bandwave {

// Entry point behind the `bandwave` binary: metrics / reorder / reach /
// render / bench / gen-philosophers.  Returns the process exit status.
int cli_dispatch(int argc, const char* const* argv);

}  // namespace bandwave
