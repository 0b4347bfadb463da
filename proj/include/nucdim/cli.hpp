#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nucdim {

// Batch front end.  Subcommands: analyze, unfurl, paths, compose,
// spectrum, twist, dad, bound.  Exit codes: 0 success, 1 precondition
// errors, 2 verification failures, 64 usage errors.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace nucdim
