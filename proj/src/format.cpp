#include "lattice_pdo/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace lpdo {

std::string format_double(double value)
{
    if (value == 0.0)
        return "0";  // folds -0
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), end);
}

}  // namespace lpdo
