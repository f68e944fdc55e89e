#pragma once

#include <string>

namespace lpdo {

// Shortest decimal text that round-trips to the same double. Used for every
// CSV body so outputs are byte-stable.
std::string format_double(double value);

}  // namespace lpdo
