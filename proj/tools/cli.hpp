// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace witt {

/// Runs the wittvec command line with args (program name excluded) and
/// returns the exit code: 0 success, 1 usage, 2 capability gap,
/// 3 verification failure, 4 internal error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace witt
