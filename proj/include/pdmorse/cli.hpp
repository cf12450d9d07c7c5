#pragma once

#include <iosfwd>

namespace pdm {

/// Entry point of the pdmorse tool. Returns 0 on success, 1 on validation
/// or physics errors (one `error: kind=... message="..."` line on err) and
/// 2 on usage errors.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pdm
