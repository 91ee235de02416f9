#pragma once

#include <ostream>

namespace gkl {

// The gkl command line, callable in-process. Exit codes: 0 ok, 1 a suite
// failed, 2 bad flag or config, 3 quadrature failure.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gkl
