#pragma once

#include <ostream>

namespace bpr {

// exit status: 0 ok, 1 verification failure, 2 usage error
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace bpr
