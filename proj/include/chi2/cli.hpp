#pragma once

#include "chi2/errors.hpp"

#include <iosfwd>

namespace chi2::cli {

int exit_code(ErrorClass c);

// full command line, argv[0] included
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace chi2::cli
